import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qgatelab.lattice import (CRITICAL_RATIO, BHParams, ConvergenceError, PotentialParams, PulseProfile,
                              TwoSpeciesParams, adiabatic_phases, balanced_params, build_bh_hamiltonian,
                              collisional_U, condensate_fraction, critical_depth, dense_ground_state,
                              effective_Hab2, effective_Hab4, effective_Hbb, effective_shift_deviation,
                              gate_time_estimate, ground_state, lanczos_ground_state, one_body_density,
                              open_chain_orbital, simulate_gate, site_statistics, transition_scan, tunneling_J,
                              two_site_two_species)
from qgatelab.lattice.couplings import ratio_U_over_J
from qgatelab.lattice.hubbard import restrict

# [DERIVED] values from the closed-form coupling formulas evaluated with mpmath at 30 digits, frozen
U_AT_16 = 0.017920000000  # 4 a_s V0^(3/4) E_R^(1/4) / sqrt(lambda L) at V0 = 16 E_R
J_AT_16 = 1.758588330929618e-3


def test_couplings():
    assert collisional_U(PotentialParams(16.0)) == pytest.approx(U_AT_16, rel=1e-10)
    assert tunneling_J(16.0) == pytest.approx(J_AT_16, rel=1e-12)
    V = critical_depth()
    assert ratio_U_over_J(V) == pytest.approx(CRITICAL_RATIO, rel=1e-10)
    with pytest.raises(ValueError):
        PotentialParams(-1.0)


@given(st.floats(1.0, 60.0))
def test_ratio_increases_with_depth(V):
    assert ratio_U_over_J(V * 1.01) > ratio_U_over_J(V)


def test_bh_params_validation():
    with pytest.raises(ValueError):
        BHParams(1, 1, 1, 2)
    with pytest.raises(ValueError):
        BHParams(1, 1, 4, 2, boundary="twisted")
    with pytest.raises(ValueError):
        BHParams(-1, 1, 4, 2)
    assert BHParams(1, 1, 10, 8).dimension == 24310
    with pytest.raises(ValueError):
        build_bh_hamiltonian(BHParams(1, 1, 20, 20))


def test_hamiltonian_is_hermitian_and_matvec_consistent():
    H = build_bh_hamiltonian(BHParams(2.0, 1.0, 4, 3, "periodic"))
    D = H.to_dense()
    assert np.allclose(D, D.T)
    x = np.random.default_rng(0).standard_normal(H.dimension)
    assert np.allclose(H.matvec(x), D @ x)


def test_two_sites_one_atom():
    H = build_bh_hamiltonian(BHParams(5.0, 1.0, 2, 1)).to_dense()
    assert np.allclose(np.linalg.eigvalsh(H), [-1, 1])


def test_noninteracting_ground_energy():
    W, A = 5, 3
    E, _ = ground_state(build_bh_hamiltonian(BHParams(0.0, 1.0, W, A)))
    assert E == pytest.approx(-2 * A * math.cos(math.pi / (W + 1)), abs=1e-8)


@pytest.mark.parametrize("W,A,bc", [(4, 4, "open"), (5, 3, "periodic"), (6, 3, "open"), (3, 6, "open"),
                                    (8, 3, "periodic")])
@pytest.mark.parametrize("u", [0.1, 3.0, 50.0])
def test_lanczos_matches_dense(W, A, bc, u):
    H = build_bh_hamiltonian(BHParams(u, 1.0, W, A, bc))
    assert H.dimension <= 500
    E_dense, v_dense = dense_ground_state(H.to_dense())
    res = lanczos_ground_state(H.matvec, H.dimension, tol=1e-11)
    assert abs(res.energy - E_dense) < 1e-10
    assert abs(abs(res.vector @ v_dense) - 1) < 1e-10


def test_lanczos_reports_nonconvergence():
    H = build_bh_hamiltonian(BHParams(1.0, 1.0, 6, 6))
    with pytest.raises(ConvergenceError):
        lanczos_ground_state(H.matvec, H.dimension, tol=1e-14, max_iter=5, krylov=3)


def test_site_statistics_limits():
    _, mott = ground_state(build_bh_hamiltonian(BHParams(1000.0, 1.0, 6, 6)))
    st_m = site_statistics(mott)
    assert np.allclose(st_m.mean, 1, atol=1e-2) and st_m.variance.max() < 0.02
    _, free = ground_state(build_bh_hamiltonian(BHParams(0.0, 1.0, 6, 6)))
    phi2 = open_chain_orbital(6) ** 2
    st_f = site_statistics(free)
    # ideal condensate: binomial occupation of the lowest orbital
    assert np.allclose(st_f.mean, 6 * phi2, atol=1e-6)
    assert np.allclose(st_f.variance, 6 * phi2 * (1 - phi2), atol=1e-6)
    assert condensate_fraction(free) == pytest.approx(1.0, abs=1e-6)


def test_one_body_density_trace():
    _, psi = ground_state(build_bh_hamiltonian(BHParams(2.0, 1.0, 5, 4)))
    rho = one_body_density(psi)
    assert np.trace(rho).real == pytest.approx(4.0)
    assert np.allclose(rho, rho.conj().T)


def test_scan_is_monotone_and_marks_crossing():
    scan = transition_scan(np.geomspace(0.5, 200, 8), 6, 6, threshold=0.1)
    v = [r["max_site_variance"] for r in scan.rows]
    assert all(a > b for a, b in zip(v, v[1:]))
    assert scan.crossing is not None and 0.5 < scan.crossing < 200
    assert scan.reference_ratio == CRITICAL_RATIO


# ---------------------------------------------------------------- two-species models

def test_effective_models_against_generic_builder():
    p = TwoSpeciesParams(1.3, 0.7, 0.9, 0.11, 0.05)
    H, states = two_site_two_species(p, 0, 2)
    Hbb = restrict(H, states, [(0, 1, 0, 1), (0, 2, 0, 0), (0, 0, 0, 2)])
    assert np.allclose(Hbb, effective_Hbb(p.J_b, p.U_bb, bosonic=True))
    assert not np.allclose(Hbb, effective_Hbb(p.J_b, p.U_bb))
    H, states = two_site_two_species(p, 1, 1)
    H4 = restrict(H, states, [(1, 1, 0, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 0, 1, 1)])
    # the printed 4x4 matrix carries the hopping labels swapped
    assert np.allclose(H4, effective_Hab4(p.J_b, p.J_a, p.U_ab))
    assert not np.allclose(H4, effective_Hab4(p.J_a, p.J_b, p.U_ab))
    H2 = restrict(H, states, [(1, 0, 0, 1), (1, 1, 0, 0)])
    assert np.allclose(H2, effective_Hab2(p.J_b, p.U_ab))


def test_raman_term_couples_species():
    H, states = two_site_two_species(TwoSpeciesParams(1, 1, 1, 0, 0, 0.2), 1, 0, include_raman=True)
    assert np.allclose(restrict(H, states, [(1, 0, 0, 0), (0, 1, 0, 0)]), [[0, -0.2], [-0.2, 0]])


@pytest.mark.parametrize("kind", ["bb", "ab"])
def test_second_order_shift_converges(kind):
    devs, slope = effective_shift_deviation(kind, [0.005, 0.01, 0.02, 0.04])
    assert devs[0] < 1e-3
    assert slope == pytest.approx(2.0, abs=0.1)


def test_pulse_profiles():
    sq = PulseProfile.square(10, 0.1, 0.2)
    ph = adiabatic_phases(sq, TwoSpeciesParams(1, 1, 2, 0.1, 0.2))
    assert ph.I == pytest.approx(2 * 0.1 * 0.2 * 10)
    s2 = PulseProfile.from_dict({"shape": "sin2", "T": 10, "J_a": 0.0, "J_b": 0.1})
    # <sin^4> over a period is 3/8
    assert adiabatic_phases(s2, TwoSpeciesParams(1, 1, 2, 0, 0.1)).phase_11 == pytest.approx(-2 * 0.01 * 10 * 3 / 8 / 2,
                                                                                            rel=1e-8)
    with pytest.raises(ValueError):
        PulseProfile.from_dict({"shape": "gauss", "T": 1, "J_a": 0, "J_b": 0})
    with pytest.raises(ValueError):
        adiabatic_phases(PulseProfile.square(1, 0, 0, samples=8), TwoSpeciesParams(1, 1, 1))


def test_balanced_params_satisfy_condition():
    p = balanced_params(0.05, 0.03, 0.0025)
    lhs = p.J_a ** 2 / p.U_aa + p.J_b ** 2 / p.U_bb
    rhs = (p.J_a ** 2 + p.J_b ** 2) / p.U_ab
    assert lhs == pytest.approx(rhs)
    ph = adiabatic_phases(PulseProfile.sin2(100, p.J_a, p.J_b), p)
    assert abs(ph.balanced) < 1e-12


def test_simulate_gate_short_cz():
    p = TwoSpeciesParams(1, 1, 2, 0, 0.02)
    T = math.pi / 4 / (0.02 ** 2 * 3 / 8 * 2 * (1 - 0.5))
    rep = simulate_gate(PulseProfile.sin2(T, 0, 0.02), p, "cz")
    assert rep.leakage < 1e-3
    assert rep.phase_error < 5e-3
    assert rep.norm_drift < 1e-8
    assert set(rep.to_dict()) >= {"phases", "leakage", "conditional_phase", "adiabatic"}


def test_simulate_gate_validation():
    with pytest.raises(ValueError):
        simulate_gate(PulseProfile.sin2(1, 0, 0.1), TwoSpeciesParams(1, 1, 1), "iswap")


def test_gate_time_scales_inversely_with_error():
    assert gate_time_estimate(error=1e-3) == pytest.approx(10 * gate_time_estimate(error=1e-2))
