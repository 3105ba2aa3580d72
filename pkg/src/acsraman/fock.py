"""Truncated two-mode Fock space.

States are sparse maps from occupation pairs ``(n_a, n_b)`` to complex
amplitudes, with a cutoff on the total quanta ``n_a + n_b``.  The angular
momentum operators built from the two modes (J+ = a†b, J- = ab†,
Jz = (a†a - b†b)/2) conserve total quanta, so all the heavy math happens
inside a fixed-quanta block: the (2j+1)-dimensional subspace with
``n_a + n_b = 2j``.  ``BlockVector`` / ``BlockMatrix`` are the dense
representations confined to one such block.

Block index convention: entry ``l`` of a BlockVector is the amplitude of
``|2j-l> ⊗ |l>``, i.e. ``l`` counts quanta in mode b.

Everything here is immutable after construction and every operation is a
pure function, so values can be shared freely across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from .errors import CutoffOverflow

DEFAULT_CUTOFF = 64

# Ladder / angular momentum operator tags.
LADDER_OPS = ("a", "adag", "b", "bdag")
SCHWINGER_OPS = ("jp", "jm", "jz")


class ModeOccupation(NamedTuple):
    """Occupation pair: quanta in mode a and in mode b."""

    n_a: int
    n_b: int

    @property
    def total(self) -> int:
        return self.n_a + self.n_b


@dataclass(frozen=True)
class TwoModeState:
    """Sparse complex amplitude map over two-mode occupations.

    ``amplitudes`` maps (n_a, n_b) to a complex amplitude; occupations with
    total quanta above ``cutoff`` are rejected at construction.  The map is
    treated as immutable after construction.
    """

    amplitudes: Mapping[ModeOccupation, complex]
    cutoff: int = DEFAULT_CUTOFF

    def __post_init__(self):
        if self.cutoff < 0:
            raise ValueError(f"cutoff must be non-negative, got {self.cutoff}")
        clean: dict[ModeOccupation, complex] = {}
        for occ, amp in self.amplitudes.items():
            occ = ModeOccupation(int(occ[0]), int(occ[1]))
            if occ.n_a < 0 or occ.n_b < 0:
                raise ValueError(f"negative occupation {occ}")
            if occ.total > self.cutoff:
                raise CutoffOverflow(
                    f"occupation {tuple(occ)} exceeds cutoff {self.cutoff}"
                )
            amp = complex(amp)
            if not (math.isfinite(amp.real) and math.isfinite(amp.imag)):
                raise ValueError(f"non-finite amplitude at {tuple(occ)}")
            clean[occ] = amp
        object.__setattr__(self, "amplitudes", clean)

    def amplitude(self, n_a: int, n_b: int) -> complex:
        """Amplitude of |n_a> ⊗ |n_b| (0 for absent entries)."""
        return self.amplitudes.get(ModeOccupation(n_a, n_b), 0j)

    def norm_sq(self) -> float:
        return sum(abs(a) ** 2 for a in self.amplitudes.values())

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    def normalized(self) -> "TwoModeState":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero state")
        return TwoModeState(
            {occ: amp / n for occ, amp in self.amplitudes.items()}, self.cutoff
        )

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.amplitudes.values())


def basis_state(n_a: int, n_b: int, cutoff: int = DEFAULT_CUTOFF) -> TwoModeState:
    """Single Fock ket |n_a> ⊗ |n_b> with unit amplitude."""
    return TwoModeState({ModeOccupation(n_a, n_b): 1.0 + 0j}, cutoff)


def zero_state(cutoff: int = DEFAULT_CUTOFF) -> TwoModeState:
    return TwoModeState({}, cutoff)


def ladder(state: TwoModeState, which: str) -> TwoModeState:
    """Apply one ladder operator (a, a†, b or b†) to a state.

    a|n> = sqrt(n)|n-1> and a†|n> = sqrt(n+1)|n+1>, acting on the chosen
    mode and leaving the other untouched.  Annihilating an empty mode
    yields no term; creation past the cutoff raises CutoffOverflow because
    the truncated result would silently lose weight.
    """
    if which not in LADDER_OPS:
        raise ValueError(f"unknown ladder operator {which!r}, expected one of {LADDER_OPS}")
    out: dict[ModeOccupation, complex] = {}
    for (n_a, n_b), amp in state.amplitudes.items():
        if which == "a":
            if n_a == 0:
                continue
            target, factor = ModeOccupation(n_a - 1, n_b), math.sqrt(n_a)
        elif which == "adag":
            if n_a + n_b + 1 > state.cutoff:
                raise CutoffOverflow(
                    f"a† on ({n_a},{n_b}) exceeds cutoff {state.cutoff}"
                )
            target, factor = ModeOccupation(n_a + 1, n_b), math.sqrt(n_a + 1)
        elif which == "b":
            if n_b == 0:
                continue
            target, factor = ModeOccupation(n_a, n_b - 1), math.sqrt(n_b)
        else:  # bdag
            if n_a + n_b + 1 > state.cutoff:
                raise CutoffOverflow(
                    f"b† on ({n_a},{n_b}) exceeds cutoff {state.cutoff}"
                )
            target, factor = ModeOccupation(n_a, n_b + 1), math.sqrt(n_b + 1)
        out[target] = out.get(target, 0j) + factor * amp
    return TwoModeState(out, state.cutoff)


def schwinger(state: TwoModeState, which: str) -> TwoModeState:
    """Apply J+ = a†b, J- = ab† or Jz = (a†a - b†b)/2 to a state.

    Each term keeps its total quanta, so this never overflows the cutoff.
    """
    if which not in SCHWINGER_OPS:
        raise ValueError(f"unknown operator {which!r}, expected one of {SCHWINGER_OPS}")
    out: dict[ModeOccupation, complex] = {}
    for (n_a, n_b), amp in state.amplitudes.items():
        if which == "jp":
            if n_b == 0:
                continue
            target = ModeOccupation(n_a + 1, n_b - 1)
            factor = math.sqrt(n_b * (n_a + 1))
        elif which == "jm":
            if n_a == 0:
                continue
            target = ModeOccupation(n_a - 1, n_b + 1)
            factor = math.sqrt(n_a * (n_b + 1))
        else:  # jz
            target = ModeOccupation(n_a, n_b)
            factor = 0.5 * (n_a - n_b)
        out[target] = out.get(target, 0j) + factor * amp
    return TwoModeState(out, state.cutoff)


def inner_product(bra: TwoModeState, ket: TwoModeState) -> complex:
    """<bra|ket> = sum over occupations of conj(bra) * ket."""
    if len(bra.amplitudes) > len(ket.amplitudes):
        return complex(inner_product(ket, bra)).conjugate()
    total = 0j
    for occ, amp in bra.amplitudes.items():
        other = ket.amplitudes.get(occ)
        if other is not None:
            total += amp.conjugate() * other
    return total


@dataclass(frozen=True)
class BlockVector:
    """Dense complex vector in the fixed-quanta block n_a + n_b = 2j.

    Entry ``l`` is the amplitude of |2j-l> ⊗ |l>.
    """

    two_j: int
    amps: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.two_j < 0:
            raise ValueError(f"two_j must be non-negative, got {self.two_j}")
        amps = np.asarray(self.amps, dtype=complex).copy()
        if amps.shape != (self.two_j + 1,):
            raise ValueError(
                f"block with 2j={self.two_j} needs {self.two_j + 1} amplitudes, "
                f"got shape {amps.shape}"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def dim(self) -> int:
        return self.two_j + 1

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))


@dataclass(frozen=True)
class BlockMatrix:
    """Dense complex operator on one fixed-quanta block, BlockVector basis."""

    two_j: int
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.two_j < 0:
            raise ValueError(f"two_j must be non-negative, got {self.two_j}")
        d = self.two_j + 1
        entries = np.asarray(self.entries, dtype=complex).copy()
        if entries.shape != (d, d):
            raise ValueError(
                f"block with 2j={self.two_j} needs a {d}x{d} matrix, "
                f"got shape {entries.shape}"
            )
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return self.two_j + 1

    def hermiticity_defect(self) -> float:
        """Max entrywise |M - M†|."""
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return self.hermiticity_defect() < tol

    def apply(self, v: BlockVector) -> BlockVector:
        if v.two_j != self.two_j:
            raise ValueError(f"block mismatch: matrix 2j={self.two_j}, vector 2j={v.two_j}")
        return BlockVector(self.two_j, self.entries @ v.amps)


def block_extract(state: TwoModeState, two_j: int) -> BlockVector:
    """Project a state onto the block n_a + n_b = 2j (dropping the rest)."""
    amps = np.zeros(two_j + 1, dtype=complex)
    for (n_a, n_b), amp in state.amplitudes.items():
        if n_a + n_b == two_j:
            amps[n_b] = amp
    return BlockVector(two_j, amps)


def block_embed(v: BlockVector, cutoff: int = DEFAULT_CUTOFF) -> TwoModeState:
    """Embed a block vector back into the sparse two-mode representation."""
    if cutoff < v.two_j:
        raise CutoffOverflow(
            f"cutoff {cutoff} cannot hold a block with 2j={v.two_j}"
        )
    amplitudes = {
        ModeOccupation(v.two_j - l, l): amp
        for l, amp in enumerate(v.amps)
        if amp != 0
    }
    return TwoModeState(amplitudes, cutoff)


def jp_matrix(two_j: int) -> np.ndarray:
    """J+ = a†b on the 2j-block: moves one quantum from mode b to mode a."""
    d = two_j + 1
    m = np.zeros((d, d), dtype=complex)
    for l in range(1, d):
        # |2j-l, l> -> sqrt(l (2j-l+1)) |2j-l+1, l-1>
        m[l - 1, l] = math.sqrt(l * (two_j - l + 1))
    return m


def jm_matrix(two_j: int) -> np.ndarray:
    """J- = ab† on the 2j-block."""
    return jp_matrix(two_j).conj().T


def jz_matrix(two_j: int) -> np.ndarray:
    """Jz = (a†a - b†b)/2, diagonal with entries j - l."""
    d = two_j + 1
    return np.diag([0.5 * (two_j - 2 * l) for l in range(d)]).astype(complex)


def enumerate_occupations(n_max: int) -> Iterable[ModeOccupation]:
    """All occupations with total quanta <= n_max, block by block."""
    for total in range(n_max + 1):
        for n_b in range(total + 1):
            yield ModeOccupation(total - n_b, n_b)
