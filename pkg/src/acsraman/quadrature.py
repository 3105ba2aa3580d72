"""Sphere quadrature for the coherent-state resolutions of identity.

The weighted projector integral (2j+1) * ∫ dΩ/4π |tau><tau| equals the
identity on the 2j-block, and summing the blocks over all j gives the
identity on the whole truncated Fock space.  Both statements are checked
here by exact quadrature: Gauss-Legendre in u = cos(theta) crossed with a
uniform azimuthal grid.

The integrand matrix elements are polynomials of degree <= 2j in u times
harmonics e^(i*k*phi) with |k| <= 2j, so the quadrature is exact (not just
accurate) once the grid meets the bounds below; deviations from identity
are then pure rounding noise, which is what makes 1e-13-level assertions
on the reports meaningful.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import GridTooCoarse
from .fock import enumerate_occupations
from .states import ACSAngles, build_acs_from_angles

_ENV_SERIAL = "ACS_DETERMINISTIC_REDUCTION"


@dataclass(frozen=True)
class SphereGrid:
    """Product grid: Gauss-Legendre nodes in cos(theta) x uniform azimuths.

    ``theta`` and ``theta_weight`` are the Gauss-Legendre nodes mapped to
    [0, pi] and their weights (summing to 2, the length of [-1, 1]); the
    azimuthal average uses ``phi_count`` equally spaced points.  The
    combined weight of grid point (i, k) is theta_weight[i] / (2 * phi_count),
    normalizing the full solid-angle measure to 1.
    """

    theta: np.ndarray = field(repr=False)
    theta_weight: np.ndarray = field(repr=False)
    phi_count: int

    def __post_init__(self):
        theta = np.asarray(self.theta, dtype=float).copy()
        weight = np.asarray(self.theta_weight, dtype=float).copy()
        if theta.ndim != 1 or theta.shape != weight.shape:
            raise ValueError("theta and theta_weight must be matching 1-d arrays")
        if self.phi_count < 1:
            raise ValueError(f"phi_count must be positive, got {self.phi_count}")
        theta.setflags(write=False)
        weight.setflags(write=False)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "theta_weight", weight)

    @property
    def theta_count(self) -> int:
        return self.theta.shape[0]

    def total_weight(self) -> float:
        """Sum of all combined weights; 1 for a consistent grid."""
        return float(np.sum(self.theta_weight)) / 2.0

    def phi_values(self) -> np.ndarray:
        return 2.0 * math.pi * np.arange(self.phi_count) / self.phi_count


def build_grid(two_j: int) -> SphereGrid:
    """Default grid meeting the exactness bounds for the 2j-block.

    theta nodes: 2j + 2.  Azimuths: 4*ceil(j) + 2, the smallest even-ceiling
    count that clears the harmonic bound for both integer and half-integer j.
    """
    if two_j < 0:
        raise ValueError(f"two_j must be non-negative, got {two_j}")
    theta_count = two_j + 2
    phi_count = 4 * ((two_j + 1) // 2) + 2
    u, w = np.polynomial.legendre.leggauss(theta_count)
    return SphereGrid(theta=np.arccos(u), theta_weight=w, phi_count=phi_count)


def grid_meets_bounds(grid: SphereGrid, two_j: int) -> bool:
    """Exactness bounds: phi_count >= 4j+2 and theta nodes >= j+1."""
    return grid.phi_count >= two_j + 2 + two_j and 2 * grid.theta_count >= two_j + 2


@dataclass(frozen=True)
class ResolutionReport:
    """Outcome of an identity-resolution check."""

    two_j: int
    max_abs_deviation: float
    theta_count: int
    phi_count: int
    n_max: int | None = None


def _assemble_block(two_j: int, grid: SphereGrid) -> np.ndarray:
    """(2j+1) * quadrature sum of |tau><tau| over the grid, on the 2j-block."""
    d = two_j + 1
    phis = grid.phi_values()
    weights = []
    vectors = []
    for theta, w_theta in zip(grid.theta, grid.theta_weight):
        w = w_theta / (2.0 * grid.phi_count)
        for phi in phis:
            v = build_acs_from_angles(ACSAngles(theta, phi), two_j)
            weights.append(w)
            vectors.append(v.amps)
    if os.environ.get(_ENV_SERIAL) == "1":
        acc = np.zeros((d, d), dtype=complex)
        for w, v in zip(weights, vectors):
            acc += w * np.outer(v, v.conj())
        return d * acc
    w_arr = np.asarray(weights)
    v_arr = np.asarray(vectors)
    return d * np.einsum("k,ki,kj->ij", w_arr, v_arr, v_arr.conj())


def identity_resolution_j(
    two_j: int,
    grid: SphereGrid | None = None,
    check_bounds: bool = True,
) -> ResolutionReport:
    """Check that the weighted projector sum is the identity on one block.

    Assembles (2j+1) * sum of weight * |tau><tau| over the grid and reports
    the max entrywise deviation from the identity matrix.  With
    ``check_bounds`` (the default) a grid below the exactness bounds raises
    GridTooCoarse; pass ``check_bounds=False`` to measure how badly a
    deliberately coarse grid fails.
    """
    if two_j < 0:
        raise ValueError(f"two_j must be non-negative, got {two_j}")
    if grid is None:
        grid = build_grid(two_j)
    if check_bounds and not grid_meets_bounds(grid, two_j):
        raise GridTooCoarse(
            f"grid ({grid.theta_count} theta nodes, {grid.phi_count} azimuths) "
            f"violates the exactness bounds for 2j={two_j}"
        )
    m = _assemble_block(two_j, grid)
    deviation = float(np.max(np.abs(m - np.eye(two_j + 1))))
    return ResolutionReport(
        two_j=two_j,
        max_abs_deviation=deviation,
        theta_count=grid.theta_count,
        phi_count=grid.phi_count,
    )


def identity_resolution_full(max_two_j: int, n_max: int) -> ResolutionReport:
    """Check the all-j resolution of identity on the truncated Fock space.

    Sums the per-block weighted projector integrals for 2j = 0..max_two_j
    and compares against the identity on the space with total quanta
    <= n_max.  Blocks beyond n_max vanish on that space, so the truncated
    sum is exact; each block uses its own default grid.
    """
    if max_two_j < 0:
        raise ValueError(f"max_two_j must be non-negative, got {max_two_j}")
    if n_max > max_two_j:
        raise ValueError(
            f"n_max={n_max} exceeds max_two_j={max_two_j}; the sum would not "
            "cover the requested space"
        )
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    occupations = list(enumerate_occupations(n_max))
    index = {occ: i for i, occ in enumerate(occupations)}
    dim = len(index)
    m = np.zeros((dim, dim), dtype=complex)
    largest_grid: SphereGrid | None = None
    for two_j in range(min(max_two_j, n_max) + 1):
        grid = build_grid(two_j)
        if not grid_meets_bounds(grid, two_j):
            raise GridTooCoarse(f"default grid inadequate for 2j={two_j}")
        largest_grid = grid
        block = _assemble_block(two_j, grid)
        # Block occupations in BlockVector order: l = n_b = 0..2j.
        rows = [index[(two_j - l, l)] for l in range(two_j + 1)]
        m[np.ix_(rows, rows)] += block
    deviation = float(np.max(np.abs(m - np.eye(dim))))
    assert largest_grid is not None
    return ResolutionReport(
        two_j=max_two_j,
        max_abs_deviation=deviation,
        theta_count=largest_grid.theta_count,
        phi_count=largest_grid.phi_count,
        n_max=n_max,
    )
