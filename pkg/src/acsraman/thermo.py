"""Closed-form thermodynamics of the coupled-oscillator model.

The spectrum is {A*n + B*m} over non-negative integers n, m, so the trace
of exp(-beta*H) factorizes into two geometric series, one per normal mode:

    Z(beta) = Z_plus * Z_minus,   Z_branch = 1 / (1 - exp(-beta*freq))

and the internal energy -d(ln Z)/d(beta) is A/(e^(A*beta)-1) + B/(e^(B*beta)-1).
Convergence needs both normal-mode frequencies strictly positive, i.e.
w1*w2 > lam^2; anything at or past that boundary fails loudly.

``spectral_sum_oracle`` recomputes Z and the internal energy by brute
force, summing Boltzmann weights over explicit block spectra, as an
independent check on the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadBeta, TailTooFat, UnstableBranch, UnstableSystem
from .raman import RamanParams, block_spectrum_oracle, normal_modes, spectrum_closed

# Tail thresholds for the brute-force sum: a block is negligible once its
# slowest-decaying weight e^(-beta*B*2j) falls below _TAIL_REQUIRED; blocks
# are summed a little further, down to _TAIL_SUMMED, for margin.
_TAIL_REQUIRED = 1e-12
_TAIL_SUMMED = 1e-15
_HARD_BLOCK_CAP = 10_000


@dataclass(frozen=True)
class ThermoParams:
    """Inverse temperature, strictly positive."""

    beta: float

    def __post_init__(self):
        if not (self.beta > 0 and math.isfinite(self.beta)):
            raise BadBeta(f"beta must be positive and finite, got {self.beta}")


@dataclass(frozen=True)
class ThermoResult:
    """Partition functions and internal energy at one temperature."""

    beta: float
    z_plus: float
    z_minus: float
    z_total: float
    internal_energy: float

    def __post_init__(self):
        if abs(self.z_total - self.z_plus * self.z_minus) > 1e-12 * self.z_total:
            raise ValueError("z_total must be the product of the branch values")
        if self.z_plus < 1.0 or self.z_minus < 1.0 or self.z_total < 1.0:
            raise ValueError("partition functions must be >= 1")
        if self.internal_energy < 0.0:
            raise ValueError("internal energy must be non-negative")


def stability(p: RamanParams) -> bool:
    """True iff both normal modes are strictly positive (w1*w2 > lam^2)."""
    return p.omega1 * p.omega2 - p.lam * p.lam > 0.0


def branch_partition(freq: float, beta: float) -> float:
    """Geometric series sum(exp(-beta*freq*k), k >= 0) = 1/(1 - e^(-beta*freq))."""
    if beta <= 0 or not math.isfinite(beta):
        raise BadBeta(f"beta must be positive and finite, got {beta}")
    if freq <= 0:
        raise UnstableBranch(
            f"branch frequency {freq} is not positive; the trace diverges"
        )
    return 1.0 / (-math.expm1(-beta * freq))


def internal_energy(p: RamanParams, t: ThermoParams) -> float:
    """Internal energy A/(e^(A*beta)-1) + B/(e^(B*beta)-1)."""
    if not stability(p):
        raise UnstableSystem(
            f"w1*w2={p.omega1 * p.omega2} <= lam^2={p.lam**2}: no thermal state"
        )
    nm = normal_modes(p)
    return nm.A / math.expm1(nm.A * t.beta) + nm.B / math.expm1(nm.B * t.beta)


def total_partition(p: RamanParams, t: ThermoParams) -> ThermoResult:
    """Branch and total partition functions plus the internal energy."""
    if not stability(p):
        raise UnstableSystem(
            f"w1*w2={p.omega1 * p.omega2} <= lam^2={p.lam**2}: no thermal state"
        )
    nm = normal_modes(p)
    z_plus = branch_partition(nm.A, t.beta)
    z_minus = branch_partition(nm.B, t.beta)
    return ThermoResult(
        beta=t.beta,
        z_plus=z_plus,
        z_minus=z_minus,
        z_total=z_plus * z_minus,
        internal_energy=internal_energy(p, t),
    )


def spectral_sum_oracle(
    p: RamanParams,
    t: ThermoParams,
    j_cap: int = _HARD_BLOCK_CAP,
    use_jacobi: bool = False,
) -> tuple[float, float]:
    """Brute-force Z and internal energy from explicit block spectra.

    Sums Boltzmann weights block by block until the slowest-decaying weight
    is negligible.  Raises TailTooFat when the tail bound cannot be met
    within ``j_cap`` blocks (capped at 10^4).  With ``use_jacobi`` the block
    spectra come from the Jacobi eigensolver instead of the closed form,
    making the check independent of the normal-mode algebra end to end.
    """
    if not stability(p):
        raise UnstableSystem(
            f"w1*w2={p.omega1 * p.omega2} <= lam^2={p.lam**2}: no thermal state"
        )
    nm = normal_modes(p)
    decay = t.beta * nm.B
    blocks_required = int(math.ceil(-math.log(_TAIL_REQUIRED) / decay))
    if blocks_required > min(j_cap, _HARD_BLOCK_CAP):
        raise TailTooFat(
            f"tail bound needs {blocks_required} blocks, cap is "
            f"{min(j_cap, _HARD_BLOCK_CAP)}"
        )
    blocks_summed = min(int(math.ceil(-math.log(_TAIL_SUMMED) / decay)), j_cap)
    z = 0.0
    weighted_energy = 0.0
    for two_j in range(blocks_summed + 1):
        if use_jacobi:
            energies = block_spectrum_oracle(p, two_j)
        else:
            energies = spectrum_closed(p, two_j)
        w = np.exp(-t.beta * energies)
        z += float(np.sum(w))
        weighted_energy += float(np.sum(energies * w))
    return z, weighted_energy / z
