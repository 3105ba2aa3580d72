import math

import numpy as np
import pytest

from acsraman.errors import BadBeta, TailTooFat, UnstableBranch, UnstableSystem
from acsraman.raman import RamanParams
from acsraman.thermo import (
    ThermoParams,
    ThermoResult,
    branch_partition,
    internal_energy,
    spectral_sum_oracle,
    stability,
    total_partition,
)


def stable_params(rng):
    w1, w2 = rng.uniform(0.5, 2.5, 2)
    lam = rng.uniform(0.0, 0.7) * math.sqrt(w1 * w2) * rng.choice([-1.0, 1.0])
    return RamanParams(w1, w2, lam)


class TestStability:
    def test_weak_coupling_stable(self):
        assert stability(RamanParams(1, 1, 0.5))

    def test_critical_coupling_unstable(self):
        assert not stability(RamanParams(2, 1, math.sqrt(2)))

    def test_uncoupled_stable(self):
        assert stability(RamanParams(0.3, 4.0, 0.0))


class TestBranchPartition:
    def test_log_two_value(self):
        assert branch_partition(1.0, math.log(2.0)) == pytest.approx(2.0, abs=1e-14)

    def test_cold_limit(self):
        assert branch_partition(1.0, 50.0) == pytest.approx(1.0, abs=1e-20)

    def test_zero_frequency_rejected(self):
        with pytest.raises(UnstableBranch):
            branch_partition(0.0, 1.0)

    def test_bad_beta_rejected(self):
        with pytest.raises(BadBeta):
            branch_partition(1.0, 0.0)
        with pytest.raises(BadBeta):
            branch_partition(1.0, -2.0)

    def test_always_at_least_one(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            assert branch_partition(rng.uniform(0.01, 5), rng.uniform(0.01, 5)) >= 1.0


class TestTotalPartition:
    def test_symmetric_closed_form(self):
        beta = math.log(2.0)
        res = total_partition(RamanParams(1, 1, 0.5), ThermoParams(beta))
        z_plus = 1.0 / (1.0 - 2.0 ** (-1.5))
        z_minus = 1.0 / (1.0 - 2.0 ** (-0.5))
        assert res.z_plus == pytest.approx(z_plus, rel=1e-14)
        assert res.z_minus == pytest.approx(z_minus, rel=1e-14)
        assert res.z_total == pytest.approx(z_plus * z_minus, rel=1e-14)

    def test_cold_limit_vacuum_dominates(self):
        res = total_partition(RamanParams(1, 1, 0.5), ThermoParams(60.0))
        assert res.z_total == pytest.approx(1.0, abs=1e-12)

    def test_unstable_rejected(self):
        with pytest.raises(UnstableSystem):
            total_partition(RamanParams(2, 1, math.sqrt(2)), ThermoParams(1.0))
        with pytest.raises(UnstableSystem):
            total_partition(RamanParams(2, 1, 1.6), ThermoParams(1.0))

    def test_bad_beta_rejected(self):
        with pytest.raises(BadBeta):
            total_partition(RamanParams(1, 1, 0.5), ThermoParams(-1.0))


class TestInternalEnergy:
    def test_reference_value(self):
        u = internal_energy(RamanParams(1, 1, 0.5), ThermoParams(1.0))
        expected = 1.5 / math.expm1(1.5) + 0.5 / math.expm1(0.5)
        assert u == pytest.approx(expected, rel=1e-15)
        assert u == pytest.approx(1.201571, abs=5e-6)

    def test_cold_limit_vanishes(self):
        assert internal_energy(RamanParams(1, 1, 0.5), ThermoParams(120.0)) < 1e-20

    def test_hot_limit_equipartition(self):
        beta = 1e-4
        u = internal_energy(RamanParams(1, 1, 0.5), ThermoParams(beta))
        assert u * beta / 2.0 == pytest.approx(1.0, rel=1e-2)

    def test_monotone_decreasing_in_beta(self):
        p = RamanParams(1.3, 0.9, 0.4)
        betas = np.linspace(0.2, 5.0, 25)
        values = [internal_energy(p, ThermoParams(float(b))) for b in betas]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_matches_log_derivative_of_z(self):
        rng = np.random.default_rng(1)
        for _ in range(5):
            p = stable_params(rng)
            beta = rng.uniform(0.3, 4.0)
            h = 1e-6
            ln_z = lambda b: math.log(
                total_partition(p, ThermoParams(b)).z_total
            )
            fd = -(ln_z(beta + h) - ln_z(beta - h)) / (2 * h)
            u = internal_energy(p, ThermoParams(beta))
            assert u == pytest.approx(fd, rel=1e-6)


class TestSpectralSumOracle:
    def test_matches_closed_forms(self):
        p = RamanParams(1, 1, 0.5)
        t = ThermoParams(1.0)
        z, u = spectral_sum_oracle(p, t)
        res = total_partition(p, t)
        assert z == pytest.approx(res.z_total, rel=1e-8)
        assert u == pytest.approx(res.internal_energy, rel=1e-8)

    def test_cold_limit_with_few_blocks(self):
        z, u = spectral_sum_oracle(RamanParams(1, 1, 0.5), ThermoParams(50.0), j_cap=2)
        assert z == pytest.approx(1.0, abs=1e-10)
        assert u == pytest.approx(0.0, abs=1e-9)

    def test_tail_too_fat(self):
        # Nearly critical coupling: the lower normal mode is tiny and the
        # block sum would need millions of terms.
        with pytest.raises(TailTooFat):
            spectral_sum_oracle(RamanParams(1, 1, 0.99999), ThermoParams(0.5))

    def test_unstable_rejected(self):
        with pytest.raises(UnstableSystem):
            spectral_sum_oracle(RamanParams(2, 1, 1.5), ThermoParams(1.0))

    def test_jacobi_spectra_agree_with_closed(self):
        p = RamanParams(1, 1, 0.5)
        t = ThermoParams(2.0)
        z_closed, u_closed = spectral_sum_oracle(p, t)
        z_jacobi, u_jacobi = spectral_sum_oracle(p, t, use_jacobi=True)
        assert z_jacobi == pytest.approx(z_closed, rel=1e-9)
        assert u_jacobi == pytest.approx(u_closed, rel=1e-9)


class TestThermoResult:
    def test_product_invariant_enforced(self):
        with pytest.raises(ValueError):
            ThermoResult(beta=1.0, z_plus=2.0, z_minus=2.0, z_total=5.0,
                         internal_energy=1.0)

    def test_partition_floor_enforced(self):
        with pytest.raises(ValueError):
            ThermoResult(beta=1.0, z_plus=0.5, z_minus=2.0, z_total=1.0,
                         internal_energy=1.0)

    def test_energy_sign_enforced(self):
        with pytest.raises(ValueError):
            ThermoResult(beta=1.0, z_plus=2.0, z_minus=2.0, z_total=4.0,
                         internal_energy=-0.1)
