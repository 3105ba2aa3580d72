"""SU(2) coherent states in the two-mode (Schwinger) realization.

A spin-j coherent state labeled by a complex number tau lives in the
fixed-quanta block n_a + n_b = 2j.  Its expansion over that block is a
binomial profile,

    amp[l] = (1+|tau|^2)^(-j) * sqrt(C(2j, l)) * tau^(2j-l),

which this module evaluates in two interchangeable ways: the closed-form
expansion above (``build_acs``) and a unitary rotation of the bottom
ladder state by a hand-rolled matrix exponential
(``build_acs_exponential_oracle``).  The two constructions are kept
independent so each can serve as a check on the other.

The sphere chart is tau = exp(-i*phi) * tan(theta/2); the south pole
theta = pi (infinite |tau|) is excluded from the chart.  The state it
would describe, |2j> ⊗ |0>, is reachable as the top Dicke state instead.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    CombinatoricsOverflow,
    ExponentialNoConvergence,
    PoleAtSouthPole,
)
from .fock import BlockVector, jm_matrix, jp_matrix, jz_matrix

# Hard ceiling on block size: keeps log-space combinatorics well away from
# any loss of the ~1e-12 coefficient accuracy the rest of the library assumes.
MAX_TWO_J = 200

# Blocks at most this large use exact integer binomials and direct complex
# powers (a couple of ulp per coefficient); larger blocks switch to
# log-magnitude + phase evaluation, exponentiating once per coefficient.
_DIRECT_TWO_J = 100
_DIRECT_LOG10_LIMIT = 280.0

_SOUTH_POLE_MARGIN = 1e-9


@dataclass(frozen=True)
class ACSAngles:
    """Point on the sphere: polar angle theta in [0, pi], azimuth phi in [0, 2*pi)."""

    theta: float
    phi: float

    def __post_init__(self):
        if not (0.0 <= self.theta <= math.pi):
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        if not (0.0 <= self.phi < 2.0 * math.pi):
            raise ValueError(f"phi must lie in [0, 2*pi), got {self.phi}")


@dataclass(frozen=True)
class ACSLabel:
    """Coherent-state label: block size 2j and complex tau."""

    two_j: int
    tau: complex

    def __post_init__(self):
        if self.two_j < 0:
            raise ValueError(f"two_j must be non-negative, got {self.two_j}")
        tau = complex(self.tau)
        if not (math.isfinite(tau.real) and math.isfinite(tau.imag)):
            raise ValueError(f"tau must be finite, got {tau}")
        object.__setattr__(self, "tau", tau)


@dataclass(frozen=True)
class DickeLabel:
    """Angular momentum basis label (j, m), stored as 2j and half-integer m."""

    two_j: int
    m: float

    def __post_init__(self):
        if self.two_j < 0:
            raise ValueError(f"two_j must be non-negative, got {self.two_j}")
        two_m = 2.0 * self.m
        if two_m != round(two_m):
            raise ValueError(f"m must be a half-integer, got {self.m}")
        two_m = int(round(two_m))
        if abs(two_m) > self.two_j:
            raise ValueError(f"|m| must not exceed j, got m={self.m}, 2j={self.two_j}")
        if (self.two_j + two_m) % 2 != 0:
            raise ValueError(
                f"j+m must be an integer, got m={self.m} with 2j={self.two_j}"
            )

    @property
    def n_a(self) -> int:
        """Quanta in mode a: j + m."""
        return (self.two_j + int(round(2 * self.m))) // 2

    @property
    def n_b(self) -> int:
        """Quanta in mode b: j - m."""
        return (self.two_j - int(round(2 * self.m))) // 2


def mu_from_angles(ang: ACSAngles) -> complex:
    """Rotation parameter mu = (theta/2) * exp(-i*phi)."""
    return 0.5 * ang.theta * cmath.exp(-1j * ang.phi)


def tau_from_angles(ang: ACSAngles) -> complex:
    """Stereographic label tau = exp(-i*phi) * tan(theta/2).

    Raises PoleAtSouthPole within 1e-9 of theta = pi, where tan blows up.
    """
    if ang.theta >= math.pi - _SOUTH_POLE_MARGIN:
        raise PoleAtSouthPole(
            f"theta={ang.theta} is numerically at the south pole; "
            "the tau chart is singular there"
        )
    return cmath.exp(-1j * ang.phi) * math.tan(0.5 * ang.theta)


def build_dicke(lbl: DickeLabel) -> BlockVector:
    """Basis state |j,m> = |j+m> ⊗ |j-m>: a single unit amplitude at l = j-m."""
    amps = np.zeros(lbl.two_j + 1, dtype=complex)
    amps[lbl.n_b] = 1.0
    return BlockVector(lbl.two_j, amps)


def _check_two_j(two_j: int) -> None:
    if two_j > MAX_TWO_J:
        raise CombinatoricsOverflow(
            f"2j={two_j} exceeds the supported ceiling {MAX_TWO_J}"
        )


def build_acs(lbl: ACSLabel) -> BlockVector:
    """Coherent state from the closed-form binomial expansion.

    The coefficients are taken literally (no rephasing, no renormalizing);
    the profile is normalized by construction up to rounding.
    """
    _check_two_j(lbl.two_j)
    two_j = lbl.two_j
    tau = lbl.tau
    amps = np.zeros(two_j + 1, dtype=complex)
    if two_j == 0:
        amps[0] = 1.0
        return BlockVector(0, amps)
    r = abs(tau)
    if r == 0.0:
        amps[two_j] = 1.0  # only the tau^0 term survives
        return BlockVector(two_j, amps)

    j = 0.5 * two_j
    log10_big = 0.5 * math.log10(math.comb(two_j, two_j // 2)) + two_j * max(
        0.0, math.log10(r)
    )
    log10_den = j * math.log10(1.0 + r * r)
    if (
        two_j <= _DIRECT_TWO_J
        and log10_big < _DIRECT_LOG10_LIMIT
        and log10_den < _DIRECT_LOG10_LIMIT
    ):
        norm = (1.0 + r * r) ** (-j)
        for l in range(two_j + 1):
            amps[l] = math.sqrt(math.comb(two_j, l)) * tau ** (two_j - l) * norm
    else:
        ln_norm = -j * math.log1p(r * r)
        ln_r = math.log(r)
        psi = cmath.phase(tau)
        lg = math.lgamma
        for l in range(two_j + 1):
            k = two_j - l
            ln_mag = (
                0.5 * (lg(two_j + 1) - lg(l + 1) - lg(k + 1)) + k * ln_r + ln_norm
            )
            amps[l] = cmath.exp(complex(ln_mag, k * psi))
    return BlockVector(two_j, amps)


def build_acs_from_angles(ang: ACSAngles, two_j: int) -> BlockVector:
    return build_acs(ACSLabel(two_j, tau_from_angles(ang)))


def _taylor_expm(x: np.ndarray, tol: float = 1e-16, max_terms: int = 60) -> np.ndarray:
    """exp(x) by truncated Taylor series, valid for ||x||_1 <= 1/2.

    Stops once the series tail bound 2*theta^(k+1)/(k+1)! drops below tol;
    raises ExponentialNoConvergence if max_terms is not enough.
    """
    theta = float(np.linalg.norm(x, 1))
    acc = np.eye(x.shape[0], dtype=complex)
    term = np.eye(x.shape[0], dtype=complex)
    for k in range(1, max_terms + 1):
        term = term @ x / k
        acc = acc + term
        if 2.0 * theta ** (k + 1) / math.factorial(k + 1) < tol:
            return acc
    raise ExponentialNoConvergence(
        f"series tail bound not met within {max_terms} terms (theta={theta:.3g})"
    )


def _expm(m: np.ndarray) -> np.ndarray:
    """Scaling-and-squaring matrix exponential for small dense matrices."""
    norm = float(np.linalg.norm(m, 1))
    squarings = 0 if norm <= 0.5 else int(math.ceil(math.log2(norm / 0.5)))
    result = _taylor_expm(m / 2.0**squarings)
    for _ in range(squarings):
        result = result @ result
    return result


def build_acs_exponential_oracle(ang: ACSAngles, two_j: int) -> BlockVector:
    """Coherent state built by unitary rotation of the bottom ladder state.

    Exponentiates mu*J+ - conj(mu)*J- restricted to the 2j-block (it is
    anti-Hermitian there, so the exponential is unitary) and applies it to
    |j, -j>.  Independent of the binomial-expansion route.
    """
    _check_two_j(two_j)
    if ang.theta >= math.pi - _SOUTH_POLE_MARGIN:
        raise PoleAtSouthPole(
            f"theta={ang.theta} is numerically at the south pole"
        )
    mu = mu_from_angles(ang)
    gen = mu * jp_matrix(two_j) - mu.conjugate() * jm_matrix(two_j)
    unitary = _expm(gen)
    bottom = build_dicke(DickeLabel(two_j, -0.5 * two_j))
    return BlockVector(two_j, unitary @ bottom.amps)


def acs_overlap_closed(two_j: int, tau_prime: complex, tau: complex) -> complex:
    """Overlap <tau'|tau> from the closed-form kernel.

    (1 + conj(tau')*tau)^(2j) / ((1+|tau|^2)^j * (1+|tau'|^2)^j)

    Antilinear in the bra label, matching the numeric inner product of the
    constructed states.
    """
    _check_two_j(two_j)
    if two_j == 0:
        return 1.0 + 0j
    tau = complex(tau)
    tau_prime = complex(tau_prime)
    base = 1.0 + tau_prime.conjugate() * tau
    if base == 0:
        return 0j
    rb = abs(base)
    j = 0.5 * two_j
    log10_big = two_j * max(0.0, math.log10(rb))
    log10_den = j * (
        math.log10(1.0 + abs(tau) ** 2) + math.log10(1.0 + abs(tau_prime) ** 2)
    )
    if (
        two_j <= _DIRECT_TWO_J
        and log10_big < _DIRECT_LOG10_LIMIT
        and log10_den < _DIRECT_LOG10_LIMIT
    ):
        den = ((1.0 + abs(tau) ** 2) * (1.0 + abs(tau_prime) ** 2)) ** j
        return base**two_j / den
    ln_mag = (
        two_j * math.log(rb)
        - j * (math.log1p(abs(tau) ** 2) + math.log1p(abs(tau_prime) ** 2))
    )
    return cmath.exp(complex(ln_mag, two_j * cmath.phase(base)))


def relation_residuals(v: BlockVector, tau: complex) -> tuple[float, float, float]:
    """Residual norms of the three ladder identities a coherent state obeys.

    r1 = ||(J- + tau^2 J+) v - 2j tau v||
    r2 = ||(J- + tau Jz) v - j tau v||
    r3 = ||(tau J+ - Jz) v - j v||
    """
    two_j = v.two_j
    j = 0.5 * two_j
    amps = v.amps
    jp_v = jp_matrix(two_j) @ amps
    jm_v = jm_matrix(two_j) @ amps
    jz_v = jz_matrix(two_j) @ amps
    r1 = np.linalg.norm(jm_v + tau * tau * jp_v - 2.0 * j * tau * amps)
    r2 = np.linalg.norm(jm_v + tau * jz_v - j * tau * amps)
    r3 = np.linalg.norm(tau * jp_v - jz_v - j * amps)
    return float(r1), float(r2), float(r3)


def eigenrelation_residuals(lbl: ACSLabel) -> tuple[float, float, float]:
    """relation_residuals for the state built from the label."""
    return relation_residuals(build_acs(lbl), lbl.tau)
