"""Acceptance suite: one test per criterion, each at its pinned tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS/FAIL
line per criterion.  Random draws are seeded, so the suite is
deterministic.
"""

import math
from pathlib import Path

import numpy as np
import pytest

from acsraman.cli import main
from acsraman.errors import UnstableSystem
from acsraman.quadrature import (
    SphereGrid,
    build_grid,
    identity_resolution_full,
    identity_resolution_j,
)
from acsraman.raman import (
    Branch,
    RamanParams,
    block_spectrum_oracle,
    eigen_residual,
    energy,
    spectrum_closed,
    tau_pm,
)
from acsraman.states import (
    ACSAngles,
    ACSLabel,
    acs_overlap_closed,
    build_acs,
    build_acs_exponential_oracle,
    build_acs_from_angles,
    eigenrelation_residuals,
)
from acsraman.thermo import ThermoParams, spectral_sum_oracle, total_partition

GOLDEN_DIR = Path(__file__).parent / "golden"
SEED = 20260811


def _report(criterion: int, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"[acceptance] criterion {criterion}: {status} ({detail})")


def _random_params(rng, lam_range=(0.05, 2.0)):
    w1, w2 = rng.uniform(0.2, 3.0, 2)
    lam = rng.uniform(*lam_range) * rng.choice([-1.0, 1.0])
    return RamanParams(w1, w2, lam)


def _random_tau(rng, max_mag=10.0):
    ang = rng.uniform(0.0, 2.0 * math.pi)
    return rng.uniform(0.0, max_mag) * complex(math.cos(ang), math.sin(ang))


def _explicit_fixture(two_j: int, tau: complex) -> np.ndarray:
    """The four explicitly tabulated eigenstates at tau = -i or +i."""
    s6 = math.sqrt(6.0)
    s3 = math.sqrt(3.0)
    table = {
        1: np.array([tau, 1.0]) / math.sqrt(2.0),
        2: np.array([-1.0, math.sqrt(2.0) * tau, 1.0]) / 2.0,
        3: np.array([-tau, -s3, s3 * tau, 1.0]) / 2.0**1.5,
        4: np.array([1.0, -2.0 * tau, -s6, 2.0 * tau, 1.0]) / 4.0,
    }
    return table[two_j].astype(complex)


def test_criterion_1_fixture_fidelity(tmp_path):
    worst = 0.0
    for two_j in (1, 2, 3, 4):
        for tau in (-1j, 1j):
            got = build_acs(ACSLabel(two_j, tau)).amps
            expected = _explicit_fixture(two_j, tau)
            worst = max(worst, float(np.max(np.abs(got - expected))))
    componentwise_ok = worst < 1e-14

    golden_ok = True
    for two_j in (1, 2, 3, 4):
        out = tmp_path / f"acs_{two_j}.csv"
        code = main(["acs", "--two-j", str(two_j), "--tau-re", "0",
                     "--tau-im", "-1", "--output", str(out)])
        golden = (GOLDEN_DIR / f"acs_two_j_{two_j}.csv").read_bytes()
        golden_ok = golden_ok and code == 0 and out.read_bytes() == golden
    out = tmp_path / "acs_1.json"
    code = main(["acs", "--two-j", "1", "--tau-re", "0", "--tau-im", "-1",
                 "--format", "json", "--output", str(out)])
    golden = (GOLDEN_DIR / "acs_two_j_1.json").read_bytes()
    golden_ok = golden_ok and code == 0 and out.read_bytes() == golden

    ok = componentwise_ok and golden_ok
    _report(1, ok, f"max component error {worst:.3g}, golden bytes "
                   f"{'match' if golden_ok else 'differ'}")
    assert componentwise_ok
    assert golden_ok


def test_criterion_2_eigenstate_theorem():
    rng = np.random.default_rng(SEED)
    worst_ratio = 0.0
    for _ in range(200):
        p = _random_params(rng)
        two_j = int(rng.integers(0, 41))
        bound = 1e-10 * (two_j + 1) * max(p.omega1, p.omega2, abs(p.lam))
        for branch in (Branch.PLUS, Branch.MINUS):
            residual = eigen_residual(p, two_j, branch)
            worst_ratio = max(worst_ratio, residual / bound)
    ok = worst_ratio < 1.0
    _report(2, ok, f"worst residual at {worst_ratio:.3g} of its bound, 200 draws")
    assert ok


def test_criterion_3_oracle_spectrum_equivalence():
    rng = np.random.default_rng(SEED + 1)
    worst = 0.0
    endpoint_worst = 0.0
    for _ in range(100):
        p = _random_params(rng)
        two_j = int(rng.integers(0, 21))
        closed = spectrum_closed(p, two_j)
        oracle = block_spectrum_oracle(p, two_j)
        worst = max(worst, float(np.max(np.abs(closed - oracle))))
        endpoint_worst = max(
            endpoint_worst,
            abs(closed[0] - energy(p, two_j, Branch.MINUS)),
            abs(closed[-1] - energy(p, two_j, Branch.PLUS)),
        )
    ok = worst < 1e-9 and endpoint_worst < 1e-12
    _report(3, ok, f"max |oracle-closed| {worst:.3g}, endpoint defect "
                   f"{endpoint_worst:.3g}, 100 draws")
    assert ok


def test_criterion_4_overlap_kernel():
    rng = np.random.default_rng(SEED + 2)
    worst = 0.0
    for _ in range(500):
        two_j = int(rng.integers(0, 41))
        tau, tau_prime = _random_tau(rng), _random_tau(rng)
        numeric = np.vdot(
            build_acs(ACSLabel(two_j, tau_prime)).amps,
            build_acs(ACSLabel(two_j, tau)).amps,
        )
        closed = acs_overlap_closed(two_j, tau_prime, tau)
        worst = max(worst, abs(numeric - closed))
    ortho_worst = 0.0
    for _ in range(50):
        p = _random_params(rng)
        two_j = int(rng.integers(1, 41))
        tp, tm = tau_pm(p)
        ortho_worst = max(
            ortho_worst,
            abs(acs_overlap_closed(two_j, tp, tm)),
            abs(np.vdot(build_acs(ACSLabel(two_j, tp)).amps,
                        build_acs(ACSLabel(two_j, tm)).amps)),
        )
    ok = worst < 1e-12 and ortho_worst < 1e-12
    _report(4, ok, f"max kernel mismatch {worst:.3g} over 500 draws, "
                   f"branch overlap {ortho_worst:.3g}")
    assert ok


def test_criterion_5_eigenvector_relations():
    rng = np.random.default_rng(SEED + 3)
    worst = 0.0
    for _ in range(300):
        two_j = int(rng.integers(0, 41))
        tau = _random_tau(rng)
        worst = max(worst, max(eigenrelation_residuals(ACSLabel(two_j, tau))))
    ok = worst < 1e-10
    _report(5, ok, f"worst relation residual {worst:.3g}, 300 draws")
    assert ok


def test_criterion_6_completeness():
    block_worst = max(
        identity_resolution_j(two_j).max_abs_deviation for two_j in range(17)
    )
    full_worst = max(
        identity_resolution_full(n_max, n_max).max_abs_deviation
        for n_max in (0, 4, 12)
    )
    control_floor = math.inf
    for two_j in (2, 3, 4, 6, 8, 10, 12):
        base = build_grid(two_j)
        coarse = SphereGrid(base.theta, base.theta_weight, phi_count=two_j)
        report = identity_resolution_j(two_j, coarse, check_bounds=False)
        control_floor = min(control_floor, report.max_abs_deviation)
    ok = block_worst < 1e-13 and full_worst < 1e-12 and control_floor > 1e-3
    _report(6, ok, f"block deviation {block_worst:.3g}, full {full_worst:.3g}, "
                   f"coarse-grid control floor {control_floor:.3g}")
    assert ok


def test_criterion_7_unitary_path_consistency():
    rng = np.random.default_rng(SEED + 4)
    worst = 0.0
    for _ in range(60):
        ang = ACSAngles(rng.uniform(0.0, math.pi - 0.01),
                        rng.uniform(0.0, 2.0 * math.pi))
        two_j = int(rng.integers(0, 17))
        via_expm = build_acs_exponential_oracle(ang, two_j).amps
        via_expansion = build_acs_from_angles(ang, two_j).amps
        worst = max(worst, float(np.linalg.norm(via_expm - via_expansion)))
    ok = worst < 1e-10
    _report(7, ok, f"worst 2-norm gap {worst:.3g}, 60 draws up to 2j=16")
    assert ok


def test_criterion_8_thermodynamics():
    rng = np.random.default_rng(SEED + 5)
    betas = np.linspace(0.2, 5.0, 8)
    worst_z = worst_u = 0.0
    worst_fd = 0.0
    for _ in range(20):
        w1, w2 = rng.uniform(0.5, 2.5, 2)
        lam = rng.uniform(0.0, 0.7) * math.sqrt(w1 * w2) * rng.choice([-1.0, 1.0])
        p = RamanParams(w1, w2, lam)
        for beta in betas:
            t = ThermoParams(float(beta))
            res = total_partition(p, t)
            z_oracle, u_oracle = spectral_sum_oracle(p, t)
            worst_z = max(worst_z, abs(res.z_total - z_oracle) / z_oracle)
            worst_u = max(worst_u, abs(res.internal_energy - u_oracle) / u_oracle)
        beta = float(rng.uniform(0.3, 4.0))
        h = 1e-6
        ln_z = lambda b: math.log(total_partition(p, ThermoParams(b)).z_total)
        fd = -(ln_z(beta + h) - ln_z(beta - h)) / (2.0 * h)
        u = total_partition(p, ThermoParams(beta)).internal_energy
        worst_fd = max(worst_fd, abs(u - fd) / abs(u))

    reference = RamanParams(1.0, 1.0, 0.5)
    t1 = ThermoParams(1.0)
    u_ref = total_partition(reference, t1).internal_energy
    expected = 1.5 / math.expm1(1.5) + 0.5 / math.expm1(0.5)
    _, u_ref_oracle = spectral_sum_oracle(reference, t1)
    ref_ok = (abs(u_ref - expected) < 1e-12
              and abs(u_ref - u_ref_oracle) / u_ref < 1e-8)

    ok = worst_z < 1e-8 and worst_u < 1e-8 and worst_fd < 1e-6 and ref_ok
    _report(8, ok, f"rel. gaps: Z {worst_z:.3g}, U {worst_u:.3g}, "
                   f"finite-diff {worst_fd:.3g}, reference point "
                   f"{'ok' if ref_ok else 'bad'}")
    assert ok


def test_criterion_9_stability_gate(capsys):
    raised = 0
    cases = [RamanParams(2.0, 1.0, math.sqrt(2.0)),   # boundary w1*w2 = lam^2
             RamanParams(2.0, 1.0, 1.6),
             RamanParams(1.0, 1.0, -1.0)]
    for p in cases:
        with pytest.raises(UnstableSystem):
            total_partition(p, ThermoParams(1.0))
        raised += 1
    exit_code = main(["thermo", "--w1", "2", "--w2", "1", "--lambda", "1.5",
                      "--beta-min", "1", "--beta-max", "2", "--steps", "2"])
    capsys.readouterr()
    ok = raised == len(cases) and exit_code == 3
    _report(9, ok, f"{raised}/{len(cases)} unstable inputs rejected, "
                   f"CLI exit code {exit_code}")
    assert ok
