"""Two coupled oscillator model with antisymmetric beam-splitter coupling.

    H = w1 a†a + w2 b†b - i*lam (a†b - a b†)

H conserves total quanta, so it splits into fixed-quanta blocks of
dimension 2j+1.  Within each block the spin coherent states labeled by
the two roots tau_pm of

    i*lam*tau^2 + (w2 - w1)*tau + i*lam = 0

are exact eigenstates with energies 2j*A and 2j*B, where A and B are the
normal-mode frequencies of the coupled pair.  The full block spectrum is
{A*n + B*(2j-n)}, which ``spectrum_closed`` enumerates and a self-contained
cyclic Jacobi eigensolver (``block_spectrum_oracle``) verifies without
reusing any of the closed-form algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import NoConvergence, ZeroCoupling
from .fock import BlockMatrix, jm_matrix, jp_matrix
from .states import ACSLabel, build_acs


@dataclass(frozen=True)
class RamanParams:
    """Mode frequencies w1, w2 (both > 0) and coupling strength lam."""

    omega1: float
    omega2: float
    lam: float

    def __post_init__(self):
        if not (self.omega1 > 0 and math.isfinite(self.omega1)):
            raise ValueError(f"omega1 must be positive and finite, got {self.omega1}")
        if not (self.omega2 > 0 and math.isfinite(self.omega2)):
            raise ValueError(f"omega2 must be positive and finite, got {self.omega2}")
        if not math.isfinite(self.lam):
            raise ValueError(f"lam must be finite, got {self.lam}")


@dataclass(frozen=True)
class NormalModes:
    """Normal-mode frequencies of the coupled pair, A >= B."""

    A: float
    B: float


class Branch(Enum):
    PLUS = "plus"
    MINUS = "minus"


def _splitting(p: RamanParams) -> float:
    """sqrt((w1-w2)^2 + 4 lam^2), the normal-mode splitting."""
    return math.hypot(p.omega1 - p.omega2, 2.0 * p.lam)


def normal_modes(p: RamanParams) -> NormalModes:
    """A = (w1+w2+splitting)/2, B = (w1+w2-splitting)/2."""
    s = p.omega1 + p.omega2
    r = _splitting(p)
    return NormalModes(A=0.5 * (s + r), B=0.5 * (s - r))


def tau_pm(p: RamanParams) -> tuple[complex, complex]:
    """Coherent-state labels of the two eigenbranches.

    tau_pm = ((w1-w2) ± splitting) / (2i*lam); both roots are purely
    imaginary and multiply to 1.  Undefined at lam = 0, where the
    Hamiltonian is already diagonal.
    """
    if p.lam == 0.0:
        raise ZeroCoupling("tau labels are undefined at lam = 0")
    delta = p.omega1 - p.omega2
    r = _splitting(p)
    # x / (2i*lam) = -i * x / (2*lam) for real x: keep the real part exactly 0.
    tau_plus = complex(0.0, -(delta + r) / (2.0 * p.lam))
    tau_minus = complex(0.0, -(delta - r) / (2.0 * p.lam))
    return tau_plus, tau_minus


def energy(p: RamanParams, two_j: int, branch: Branch) -> float:
    """Block eigenvalue on the chosen branch: 2j*A (plus) or 2j*B (minus)."""
    if two_j < 0:
        raise ValueError(f"two_j must be non-negative, got {two_j}")
    nm = normal_modes(p)
    j = 0.5 * two_j
    return 2.0 * j * (nm.A if branch is Branch.PLUS else nm.B)


def hamiltonian_block(p: RamanParams, two_j: int) -> BlockMatrix:
    """H restricted to the block n_a + n_b = 2j (Hermitian, tridiagonal).

    Diagonal: w1*(2j-l) + w2*l.  Coupling: -i*lam*(J+ - J-).
    """
    if two_j < 0:
        raise ValueError(f"two_j must be non-negative, got {two_j}")
    d = two_j + 1
    h = np.zeros((d, d), dtype=complex)
    for l in range(d):
        h[l, l] = p.omega1 * (two_j - l) + p.omega2 * l
    h += -1j * p.lam * (jp_matrix(two_j) - jm_matrix(two_j))
    return BlockMatrix(two_j, h)


def branch_tau(p: RamanParams, branch: Branch) -> complex:
    tp, tm = tau_pm(p)
    return tp if branch is Branch.PLUS else tm


def eigen_residual_of(p: RamanParams, v, branch: Branch) -> float:
    """||H v - E v|| for a supplied block vector against the branch energy."""
    h = hamiltonian_block(p, v.two_j).entries
    e = energy(p, v.two_j, branch)
    return float(np.linalg.norm(h @ v.amps - e * v.amps))


def eigen_residual(p: RamanParams, two_j: int, branch: Branch) -> float:
    """||H v - E v|| for the coherent eigenstate of the chosen branch."""
    tau = branch_tau(p, branch)
    return eigen_residual_of(p, build_acs(ACSLabel(two_j, tau)), branch)


def spectrum_closed(p: RamanParams, two_j: int) -> np.ndarray:
    """Block spectrum {A*n + B*(2j-n), n = 0..2j}, sorted ascending.

    Endpoints reproduce the branch energies 2j*B and 2j*A.
    """
    if two_j < 0:
        raise ValueError(f"two_j must be non-negative, got {two_j}")
    nm = normal_modes(p)
    n = np.arange(two_j + 1, dtype=float)
    return np.sort(nm.A * n + nm.B * (two_j - n))


def _jacobi_rotate(a: np.ndarray, p_: int, q_: int) -> None:
    """Zero a[p_, q_] of a Hermitian matrix by a unitary plane rotation."""
    apq = a[p_, q_]
    mag = abs(apq)
    if mag == 0.0:
        return
    phase = apq / mag
    d_pp = a[p_, p_].real
    d_qq = a[q_, q_].real
    zeta = (d_qq - d_pp) / (2.0 * mag)
    t = math.copysign(1.0, zeta) / (abs(zeta) + math.hypot(1.0, zeta))
    c = 1.0 / math.hypot(1.0, t)
    s = t * c
    # Unitary V = diag-phase * real rotation; apply A <- A V, then A <- V† A.
    col_p = a[:, p_].copy()
    col_q = a[:, q_].copy()
    a[:, p_] = c * col_p - (s * phase.conjugate()) * col_q
    a[:, q_] = s * col_p + (c * phase.conjugate()) * col_q
    row_p = a[p_, :].copy()
    row_q = a[q_, :].copy()
    a[p_, :] = c * row_p - (s * phase) * row_q
    a[q_, :] = s * row_p + (c * phase) * row_q


def _off_diagonal_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def block_spectrum_oracle(
    p: RamanParams,
    two_j: int,
    tol: float = 1e-12,
    max_sweeps: int = 100,
) -> np.ndarray:
    """Block eigenvalues by cyclic Jacobi sweeps, sorted ascending.

    Self-contained complex-Hermitian diagonalizer: sweeps all (p, q) pairs
    in order, rotating each pivot to zero, until the off-diagonal Frobenius
    norm drops below ``tol``.  Independent of the closed-form spectrum.
    """
    h = hamiltonian_block(p, two_j)
    a = h.entries.copy()
    d = a.shape[0]
    if d == 1:
        return np.array([a[0, 0].real])
    for _ in range(max_sweeps):
        if _off_diagonal_norm(a) < tol:
            return np.sort(np.diag(a).real)
        for p_ in range(d - 1):
            for q_ in range(p_ + 1, d):
                _jacobi_rotate(a, p_, q_)
    if _off_diagonal_norm(a) < tol:
        return np.sort(np.diag(a).real)
    raise NoConvergence(
        f"Jacobi sweeps exhausted ({max_sweeps}) with off-norm "
        f"{_off_diagonal_norm(a):.3g} above {tol:.3g}"
    )
