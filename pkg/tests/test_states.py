import numpy as np
import pytest
from hypothesis import given, strategies as st

from belldyn.states import (
    BellDiagonalState,
    NotBellDiagonalError,
    PauliAxis,
    UnphysicalStateError,
    bell_spectrum,
    check_density_matrix,
    extract_coefficients,
    reduced_state,
    sample_bell_diagonal,
    to_density_matrix,
    von_neumann_entropy,
)


def bell_states():
    """A few hand-picked valid coefficient triples."""
    return [
        BellDiagonalState(0.0, 0.0, 0.0),
        BellDiagonalState(0.1, 0.5, 0.3),
        BellDiagonalState(1.0, -0.5, 0.5),
        BellDiagonalState(-0.3, 0.2, -0.1),
        BellDiagonalState(1.0, -1.0, 1.0),
    ]


class TestValidation:
    def test_maximally_mixed_is_valid(self):
        s = BellDiagonalState(0.0, 0.0, 0.0)
        assert s.chi == 0.0

    @pytest.mark.parametrize(
        "coeffs",
        [
            (1.1, 0.0, 0.0),
            (0.0, -1.5, 0.0),
            (0.8, 0.8, 0.8),  # inside the cube but outside the tetrahedron
            (1.0, 1.0, 1.0),
        ],
    )
    def test_unphysical_rejected(self, coeffs):
        with pytest.raises(UnphysicalStateError):
            BellDiagonalState(*coeffs)

    def test_nan_rejected(self):
        with pytest.raises(UnphysicalStateError):
            BellDiagonalState(float("nan"), 0.0, 0.0)

    def test_pure_bell_state_on_boundary(self):
        # an extreme point of the tetrahedron must construct fine
        s = BellDiagonalState(1.0, -1.0, 1.0)
        lam = bell_spectrum(s)
        assert lam.max() == pytest.approx(1.0, abs=1e-15)


def test_spectrum_matches_eigendecomposition():
    rng = np.random.default_rng(7)
    for s in sample_bell_diagonal(25, rng):
        lam_closed = np.sort(bell_spectrum(s))
        lam_numeric = np.sort(np.linalg.eigvalsh(to_density_matrix(s)))
        assert np.allclose(lam_closed, lam_numeric, atol=1e-14)


def test_spectrum_order_is_fixed():
    # psi+, psi-, phi+, phi- for a state where all four differ
    lam = bell_spectrum(BellDiagonalState(0.1, 0.5, 0.3))
    assert lam == pytest.approx([0.225, 0.425, 0.325, 0.025], abs=1e-15)


def test_density_matrix_roundtrip():
    rng = np.random.default_rng(11)
    for s in sample_bell_diagonal(25, rng):
        back = extract_coefficients(to_density_matrix(s))
        assert back.coefficients == pytest.approx(s.coefficients, abs=1e-13)


def test_extract_rejects_non_bell_diagonal():
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = 1.0  # |00><00| is a product state, not Bell diagonal
    with pytest.raises(NotBellDiagonalError):
        extract_coefficients(rho)


def test_check_density_matrix_rejects_bad_trace():
    rho = to_density_matrix(BellDiagonalState(0.1, 0.5, 0.3)) * 1.01
    with pytest.raises(UnphysicalStateError):
        check_density_matrix(rho)


def test_check_density_matrix_rejects_non_hermitian():
    rho = to_density_matrix(BellDiagonalState(0.1, 0.5, 0.3)).astype(complex)
    rho[0, 1] += 1e-6j
    with pytest.raises(UnphysicalStateError):
        check_density_matrix(rho)


def test_reduced_states_are_maximally_mixed():
    for s in bell_states():
        rho = to_density_matrix(s)
        for side in ("A", "B"):
            red = reduced_state(rho, side)
            assert np.allclose(red, np.eye(2) / 2.0, atol=1e-14)


def test_entropy_of_maximally_mixed():
    assert von_neumann_entropy(BellDiagonalState(0.0, 0.0, 0.0)) == pytest.approx(2.0)


def test_entropy_of_pure_state_is_zero():
    assert von_neumann_entropy(BellDiagonalState(1.0, -1.0, 1.0)) == pytest.approx(0.0, abs=1e-12)


def test_entropy_verified_value():
    # reference entropy for (0.1, 0.5, 0.3), computed from the numeric
    # eigenvalues {0.225, 0.425, 0.325, 0.025} before the closed form existed
    s = BellDiagonalState(0.1, 0.5, 0.3)
    assert von_neumann_entropy(s) == pytest.approx(1.668880353635593, abs=1e-14)


def test_entropy_accepts_matrix_and_spectrum():
    s = BellDiagonalState(0.1, 0.5, 0.3)
    h_state = von_neumann_entropy(s)
    h_matrix = von_neumann_entropy(to_density_matrix(s))
    h_spec = von_neumann_entropy(bell_spectrum(s))
    assert h_matrix == pytest.approx(h_state, abs=1e-13)
    assert h_spec == pytest.approx(h_state, abs=1e-15)


def test_chi_axis_tie_breaks_low():
    assert BellDiagonalState(0.5, -0.5, 0.2).chi_axis == PauliAxis.X
    assert BellDiagonalState(0.1, -0.5, 0.5).chi_axis == PauliAxis.Y


@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_sampler_only_emits_valid_states(seed):
    rng = np.random.default_rng(seed)
    for s in sample_bell_diagonal(5, rng):
        assert bell_spectrum(s).min() >= -1e-12


def test_sampler_is_deterministic():
    a = sample_bell_diagonal(10, np.random.default_rng(42))
    b = sample_bell_diagonal(10, np.random.default_rng(42))
    assert [s.coefficients for s in a] == [s.coefficients for s in b]
