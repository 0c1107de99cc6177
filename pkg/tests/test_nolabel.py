import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dslocc.errors import ContractError, ZeroNormState
from dslocc.nolabel import (
    EnsembleState,
    Mode,
    SingleParticleKet,
    Spin,
    TwoParticleKet,
    apply_sp_map,
    basis_ket,
    bell_ket,
    normalize_ket,
    product_ket,
    sp_inner,
    spatial_spin_ket,
    tp_inner,
)
from dslocc.oracle import symmetrize


def random_sp_ket(rng, normalized=True):
    amps = rng.normal(size=8) + 1j * rng.normal(size=8)
    if normalized:
        amps = amps / np.linalg.norm(amps)
    return SingleParticleKet(amps)


def random_tp_ket(rng, eta, n_terms=2):
    terms = tuple(
        (complex(rng.normal(), rng.normal()), random_sp_ket(rng), random_sp_ket(rng))
        for _ in range(n_terms)
    )
    return TwoParticleKet(eta, terms)


class TestSingleParticle:
    def test_basis_self_inner(self):
        k = basis_ket(Mode.A, Spin.UP)
        assert sp_inner(k, k) == 1.0

    def test_orthogonal_modes(self):
        assert sp_inner(basis_ket(Mode.A, Spin.UP), basis_ket(Mode.B, Spin.UP)) == 0.0

    def test_orthogonal_spins(self):
        assert sp_inner(basis_ket(Mode.L, Spin.UP), basis_ket(Mode.L, Spin.DOWN)) == 0.0

    def test_overlap_of_spread_wave_functions(self):
        # <psi1|psi2> = conj(l) l' + conj(r) r' when both live on L, R
        l, r = 0.6, 0.8j
        lp, rp = 1 / np.sqrt(2), 1j / np.sqrt(2)
        psi1 = spatial_spin_ket({Mode.L: l, Mode.R: r}, Spin.UP)
        psi2 = spatial_spin_ket({Mode.L: lp, Mode.R: rp}, Spin.UP)
        expected = np.conj(l) * lp + np.conj(r) * rp
        assert sp_inner(psi1, psi2) == pytest.approx(expected, abs=1e-15)

    def test_conjugate_linearity(self):
        rng = np.random.default_rng(7)
        a, b = random_sp_ket(rng), random_sp_ket(rng)
        c = 0.3 - 1.2j
        assert sp_inner(a.scaled(c), b) == pytest.approx(np.conj(c) * sp_inner(a, b))
        assert sp_inner(a, b.scaled(c)) == pytest.approx(c * sp_inner(a, b))


class TestTwoParticleInner:
    def test_distinct_modes_are_normalized(self):
        for eta in (+1, -1):
            k = product_ket(eta, basis_ket(Mode.A, Spin.UP), basis_ket(Mode.B, Spin.DOWN))
            assert tp_inner(k, k) == pytest.approx(1.0, abs=1e-15)

    def test_parallel_spin_overlap_norm(self):
        # <psi1 up, psi2 up | psi1 up, psi2 up> = 1 + eta |<psi1|psi2>|^2
        rng = np.random.default_rng(1)
        for eta in (+1, -1):
            s1 = rng.normal(size=2) + 1j * rng.normal(size=2)
            s1 /= np.linalg.norm(s1)
            s2 = rng.normal(size=2) + 1j * rng.normal(size=2)
            s2 /= np.linalg.norm(s2)
            psi1 = spatial_spin_ket({Mode.L: s1[0], Mode.R: s1[1]}, Spin.UP)
            psi2 = spatial_spin_ket({Mode.L: s2[0], Mode.R: s2[1]}, Spin.UP)
            ov = np.conj(s1[0]) * s2[0] + np.conj(s1[1]) * s2[1]
            k = product_ket(eta, psi1, psi2)
            assert tp_inner(k, k).real == pytest.approx(1 + eta * abs(ov) ** 2, abs=1e-12)

    def test_antisymmetric_combination_norm(self):
        # the deformed singlet has squared norm 1 - eta |<psi1|psi2>|^2
        for eta in (+1, -1):
            l, r = np.sqrt(0.8), np.sqrt(0.2)
            lp, rp = np.sqrt(0.2), np.sqrt(0.8)
            ov = l * lp + r * rp
            s = 1 / np.sqrt(2)
            ket = TwoParticleKet(
                eta,
                (
                    (s, spatial_spin_ket({Mode.L: l, Mode.R: r}, Spin.UP),
                     spatial_spin_ket({Mode.L: lp, Mode.R: rp}, Spin.DOWN)),
                    (-s, spatial_spin_ket({Mode.L: l, Mode.R: r}, Spin.DOWN),
                     spatial_spin_ket({Mode.L: lp, Mode.R: rp}, Spin.UP)),
                ),
            )
            assert tp_inner(ket, ket).real == pytest.approx(1 - eta * ov**2, abs=1e-12)

    def test_statistics_mismatch_rejected(self):
        a = bell_ket("psi_minus", +1)
        b = bell_ket("psi_minus", -1)
        with pytest.raises(ContractError):
            tp_inner(a, b)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.sampled_from([+1, -1]))
    def test_slot_exchange_gives_eta(self, seed, eta):
        rng = np.random.default_rng(seed)
        x = random_tp_ket(rng, eta)
        y = random_tp_ket(rng, eta)
        assert abs(tp_inner(x.swapped(), y) - eta * tp_inner(x, y)) <= 1e-12

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.sampled_from([+1, -1]))
    def test_self_inner_real_nonnegative(self, seed, eta):
        rng = np.random.default_rng(seed)
        x = random_tp_ket(rng, eta)
        n2 = tp_inner(x, x)
        assert abs(n2.imag) <= 1e-12
        assert n2.real >= -1e-12

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.sampled_from([+1, -1]))
    def test_coalescing_preserves_the_state(self, seed, eta):
        rng = np.random.default_rng(seed)
        x = random_tp_ket(rng, eta)
        y = random_tp_ket(rng, eta)
        assert abs(tp_inner(x.coalesced(), y) - tp_inner(x, y)) <= 1e-10

    def test_labeled_space_equivalence_on_500_random_kets(self):
        # <sym(a,b)|sym(c,d)> in the 64-dim labeled space must equal exactly
        # twice the no-label rule value
        rng = np.random.default_rng(2024)
        for _ in range(500):
            eta = int(rng.choice([-1, 1]))
            a, b, c, d = (random_sp_ket(rng) for _ in range(4))
            labeled = np.vdot(symmetrize(a, b, eta), symmetrize(c, d, eta))
            nolabel = tp_inner(product_ket(eta, a, b), product_ket(eta, c, d))
            assert abs(labeled - 2.0 * nolabel) <= 1e-12

    def test_pauli_exclusion(self):
        rng = np.random.default_rng(3)
        phi = random_sp_ket(rng)
        k = product_ket(-1, phi, phi)
        assert abs(tp_inner(k, k)) <= 1e-12


class TestNormalize:
    def test_already_normalized(self):
        k = product_ket(-1, basis_ket(Mode.A, Spin.UP), basis_ket(Mode.B, Spin.DOWN))
        normalized, n2 = normalize_ket(k)
        assert n2 == pytest.approx(1.0, abs=1e-15)
        assert tp_inner(normalized, normalized).real == pytest.approx(1.0, abs=1e-12)

    def test_returns_original_squared_norm(self):
        for eta in (+1, -1):
            l, r = np.sqrt(0.7), np.sqrt(0.3)
            psi1u = spatial_spin_ket({Mode.L: l, Mode.R: r}, Spin.UP)
            psi1d = spatial_spin_ket({Mode.L: l, Mode.R: r}, Spin.DOWN)
            psi2u = spatial_spin_ket({Mode.L: r, Mode.R: l}, Spin.UP)
            psi2d = spatial_spin_ket({Mode.L: r, Mode.R: l}, Spin.DOWN)
            s = 1 / np.sqrt(2)
            deformed_singlet = TwoParticleKet(eta, ((s, psi1u, psi2d), (-s, psi1d, psi2u)))
            normalized, n2 = normalize_ket(deformed_singlet)
            ov = 2 * l * r
            assert n2 == pytest.approx(1 - eta * ov**2, abs=1e-12)
            assert tp_inner(normalized, normalized).real == pytest.approx(1.0, abs=1e-12)

    def test_fermionic_double_occupation_raises(self):
        psi = spatial_spin_ket({Mode.L: 0.6, Mode.R: 0.8}, Spin.UP)
        with pytest.raises(ZeroNormState):
            normalize_ket(product_ket(-1, psi, psi))


class TestApplyMap:
    def test_identity(self):
        k = bell_ket("psi_minus", -1)
        out = apply_sp_map(k, np.eye(8))
        diff = tp_inner(k, k) - tp_inner(k, out) - tp_inner(out, k) + tp_inner(out, out)
        assert abs(diff) <= 1e-12

    def test_relabeling_map(self):
        m = np.zeros((8, 8), dtype=complex)
        for spin in Spin:
            m[2 * Mode.L + spin, 2 * Mode.A + spin] = 1.0
            m[2 * Mode.R + spin, 2 * Mode.B + spin] = 1.0
        out = apply_sp_map(product_ket(+1, basis_ket(Mode.A, Spin.UP), basis_ket(Mode.B, Spin.DOWN)), m)
        expected = product_ket(+1, basis_ket(Mode.L, Spin.UP), basis_ket(Mode.R, Spin.DOWN))
        assert abs(tp_inner(expected, out) - 1.0) <= 1e-12

    def test_overlap_creating_map(self):
        # A -> psi1, B -> psi2 sends |A up, B dn> to |psi1 up, psi2 dn>
        l, r = np.sqrt(0.8), np.sqrt(0.2)
        m = np.zeros((8, 8), dtype=complex)
        for spin in Spin:
            m[2 * Mode.L + spin, 2 * Mode.A + spin] = l
            m[2 * Mode.R + spin, 2 * Mode.A + spin] = r
            m[2 * Mode.L + spin, 2 * Mode.B + spin] = r
            m[2 * Mode.R + spin, 2 * Mode.B + spin] = l
        out = apply_sp_map(product_ket(-1, basis_ket(Mode.A, Spin.UP), basis_ket(Mode.B, Spin.DOWN)), m)
        expected = product_ket(
            -1,
            spatial_spin_ket({Mode.L: l, Mode.R: r}, Spin.UP),
            spatial_spin_ket({Mode.L: r, Mode.R: l}, Spin.DOWN),
        )
        assert abs(tp_inner(expected, out) - tp_inner(expected, expected)) <= 1e-12

    def test_single_slot_application(self):
        flip = np.zeros((8, 8), dtype=complex)
        for mode in Mode:
            flip[2 * mode, 2 * mode + 1] = 1.0
            flip[2 * mode + 1, 2 * mode] = 1.0
        k = product_ket(+1, basis_ket(Mode.A, Spin.UP), basis_ket(Mode.B, Spin.DOWN))
        first = apply_sp_map(k, flip, slot="first")
        expected = product_ket(+1, basis_ket(Mode.A, Spin.DOWN), basis_ket(Mode.B, Spin.DOWN))
        assert abs(tp_inner(expected, first) - 1.0) <= 1e-12
        second = apply_sp_map(k, flip, slot="second")
        expected = product_ket(+1, basis_ket(Mode.A, Spin.UP), basis_ket(Mode.B, Spin.UP))
        assert abs(tp_inner(expected, second) - 1.0) <= 1e-12

    def test_rejects_bad_slot(self):
        with pytest.raises(ContractError):
            apply_sp_map(bell_ket("psi_minus", -1), np.eye(8), slot="third")


class TestEnsemble:
    def test_weights_must_sum_to_one(self):
        k = bell_ket("psi_minus", -1)
        with pytest.raises(ContractError):
            EnsembleState(-1, ((0.6, k), (0.3, k)))

    def test_components_must_be_normalized(self):
        k = bell_ket("psi_minus", -1).scaled(0.5)
        with pytest.raises(ContractError):
            EnsembleState(-1, ((1.0, k),))

    def test_mixture_renormalizes(self):
        k1 = bell_ket("psi_minus", -1)
        k2 = product_ket(-1, basis_ket(Mode.A, Spin.UP), basis_ket(Mode.B, Spin.UP))
        state = EnsembleState.mixture(-1, [(0.3, k1), (0.1, k2)])
        assert sum(w for w, _ in state.components) == pytest.approx(1.0, abs=1e-15)
