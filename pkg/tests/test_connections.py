from __future__ import annotations

import numpy as np
import pytest

from affine_kahler.connections import (
    AffineConnection,
    HolomorphyKind,
    ThetaField,
    connection_from_theta,
    curvature_at,
    holomorphy_type,
    linear_curvature_at_zero,
    nabla_j_residual,
    torsion_residual,
)
from affine_kahler.polynomials import ComplexPoly, PolyScalar
from affine_kahler.sampling import (
    random_antiholomorphic_theta,
    random_degree_one_theta,
    random_holomorphic_theta,
    random_point,
)
from affine_kahler.tensors import (
    SpaceConfig,
    classify_symmetries,
    j_parity_residuals,
    ricci_traces,
)


def x_var(m_bar: int, line: int, coeff: float = 1.0) -> PolyScalar:
    return PolyScalar.variable(m_bar, line - 1, coeff)


def y_var(m_bar: int, line: int, coeff: float = 1.0) -> PolyScalar:
    return PolyScalar.variable(m_bar, m_bar + line - 1, coeff)


# -- connection assembly -------------------------------------------------------

def test_connection_zero_theta_is_flat(cfg2):
    conn = connection_from_theta(ThetaField.zero(2))
    assert not conn.gamma
    assert curvature_at(conn, np.zeros(4)).norm() == 0.0


def test_connection_entries_follow_the_defining_equations(cfg2):
    # Theta_111 = x1 - i y1: nabla_e1 e1 = x1 e1 - y1 f1, nabla_e1 f1 = y1 e1 + x1 f1
    theta = ThetaField(2, {(1, 1, 1): ComplexPoly.z_bar(2, 1)})
    conn = connection_from_theta(theta)
    assert conn.christoffel(0, 0, 0).coeffs == x_var(2, 1).coeffs
    assert conn.christoffel(0, 0, 2).coeffs == y_var(2, 1, -1.0).coeffs
    assert conn.christoffel(0, 2, 0).coeffs == y_var(2, 1).coeffs
    assert conn.christoffel(0, 2, 2).coeffs == x_var(2, 1).coeffs
    assert conn.christoffel(2, 2, 0).coeffs == x_var(2, 1, -1.0).coeffs
    assert conn.christoffel(2, 2, 2).coeffs == y_var(2, 1).coeffs


def test_connection_mbar3_off_diagonal_entry():
    # Theta_112 = x3 + i y3: nabla_e1 e1 = x3 e2 + y3 f2
    theta = ThetaField(3, {(1, 1, 2): ComplexPoly.z(3, 3)})
    conn = connection_from_theta(theta)
    assert conn.christoffel(0, 0, 1).coeffs == x_var(3, 3).coeffs
    assert conn.christoffel(0, 0, 4).coeffs == y_var(3, 3).coeffs


def test_generated_connections_are_torsion_free_and_parallelize_j(rng):
    for m_bar in (2, 3):
        cfg = SpaceConfig(m_bar)
        for maker in (random_degree_one_theta, random_holomorphic_theta, random_antiholomorphic_theta):
            conn = connection_from_theta(maker(cfg, rng))
            assert torsion_residual(conn) == 0.0
            assert nabla_j_residual(conn) == 0.0


def test_torsion_residual_detects_asymmetry():
    gamma = {(0, 1, 0): PolyScalar.constant(2, 1.0)}
    conn = AffineConnection(SpaceConfig(2), gamma)
    assert torsion_residual(conn) == 1.0


def test_nabla_j_residual_detects_non_kahler_data():
    # A single constant Gamma[e1][e1][e1] = 1 cannot commute with J.
    gamma = {(0, 0, 0): PolyScalar.constant(2, 1.0)}
    conn = AffineConnection(SpaceConfig(2), gamma)
    assert nabla_j_residual(conn) > 0.0


def test_degree_cap_is_enforced():
    big = ComplexPoly.z(2, 1)
    for _ in range(6):
        big = big * ComplexPoly.z(2, 1)
    with pytest.raises(ValueError, match="degree"):
        ThetaField(2, {(1, 1, 1): big})
    ThetaField(2, {(1, 1, 1): big}, degree_cap=7)  # configurable


# -- curvature ------------------------------------------------------------------

def test_curvature_of_flat_connection_everywhere_zero(rng):
    conn = connection_from_theta(ThetaField.zero(2))
    for _ in range(3):
        assert curvature_at(conn, random_point(SpaceConfig(2), rng)).norm() == 0.0


def test_curvature_witness_entry(cfg2):
    theta = ThetaField(2, {(1, 1, 1): ComplexPoly.z_bar(2, 1)})
    curv = curvature_at(connection_from_theta(theta), np.zeros(4))
    assert curv.entries[0, 2, 0, 2] == 2.0  # operator value 2 f1 on (e1, f1) e1


def test_linear_route_equals_christoffel_route(rng):
    for m_bar in (2, 3):
        cfg = SpaceConfig(m_bar)
        for _ in range(5):
            theta = random_degree_one_theta(cfg, rng)
            via_table = linear_curvature_at_zero(theta)
            via_gamma = curvature_at(connection_from_theta(theta), np.zeros(cfg.m))
            assert np.array_equal(via_table.entries, via_gamma.entries)


def test_linear_route_rejects_bad_input():
    quad = ComplexPoly.z(2, 1) * ComplexPoly.z(2, 1)
    with pytest.raises(ValueError, match="degree"):
        linear_curvature_at_zero(ThetaField(2, {(1, 1, 1): quad}))
    with pytest.raises(ValueError, match="origin"):
        linear_curvature_at_zero(ThetaField(2, {(1, 1, 1): ComplexPoly.constant(2, 1.0)}))


def complex_product_curvature_oracle(theta: ThetaField) -> np.ndarray:
    """Independent oracle for the purely quadratic part of the curvature.

    For fields with no linear part, the origin curvature comes from the
    Christoffel products alone and, viewed complex-linearly, equals
    C^{ijk}_l = sum_a (Theta_ial Theta_jka - Theta_jal Theta_ika) evaluated
    at the origin.  Returns the complex operator block as an array over
    (i, j, k, l).
    """
    m_bar = theta.m_bar
    origin = np.zeros(2 * m_bar)

    def value(i: int, j: int, k: int) -> complex:
        poly = theta.entry(i, j, k)
        return complex(poly.u.eval(origin), poly.v.eval(origin))

    out = np.zeros((m_bar, m_bar, m_bar, m_bar), dtype=complex)
    for i in range(1, m_bar + 1):
        for j in range(1, m_bar + 1):
            for k in range(1, m_bar + 1):
                for ell in range(1, m_bar + 1):
                    out[i - 1, j - 1, k - 1, ell - 1] = sum(
                        value(i, a, ell) * value(j, k, a) - value(j, a, ell) * value(i, k, a)
                        for a in range(1, m_bar + 1)
                    )
    return out


def test_quadratic_curvature_matches_complex_product_oracle(rng):
    # Constant plus purely quadratic entries: no linear part, so the origin
    # curvature is exactly the Christoffel product term.
    for m_bar in (2, 3):
        cfg = SpaceConfig(m_bar)
        entries = {}
        for i in range(1, m_bar + 1):
            for j in range(i, m_bar + 1):
                for k in range(1, m_bar + 1):
                    const = ComplexPoly.constant(m_bar, *rng.standard_normal(2))
                    quad = (
                        ComplexPoly.z(m_bar, int(rng.integers(1, m_bar + 1)))
                        * ComplexPoly.z_bar(m_bar, int(rng.integers(1, m_bar + 1)))
                    ).scale(*rng.standard_normal(2))
                    entries[(i, j, k)] = const + quad
        theta = ThetaField(m_bar, entries)
        curv = curvature_at(connection_from_theta(theta), np.zeros(cfg.m))
        oracle = complex_product_curvature_oracle(theta)
        for i in range(m_bar):
            for j in range(m_bar):
                for k in range(m_bar):
                    for ell in range(m_bar):
                        got_re = curv.entries[i, j, k, ell]
                        got_im = curv.entries[i, j, k, m_bar + ell]
                        want = oracle[i, j, k, ell]
                        assert got_re == pytest.approx(want.real, abs=1e-12)
                        assert got_im == pytest.approx(want.imag, abs=1e-12)


def test_curvature_point_shape_is_validated(cfg2):
    conn = connection_from_theta(ThetaField.zero(2))
    with pytest.raises(ValueError, match="coordinates"):
        curvature_at(conn, np.zeros(3))


# -- holomorphy ------------------------------------------------------------------

def test_holomorphy_classification_of_named_fields():
    hol = ThetaField(3, {(1, 1, 2): ComplexPoly.z(3, 3)})
    assert holomorphy_type(hol).kind is HolomorphyKind.HOLOMORPHIC
    assert holomorphy_type(hol).vanishes_at_origin

    anti = ThetaField(3, {(1, 1, 2): ComplexPoly.z_bar(3, 3)})
    assert holomorphy_type(anti).kind is HolomorphyKind.ANTIHOLOMORPHIC
    assert holomorphy_type(anti).vanishes_at_origin

    const = ThetaField(2, {(1, 1, 1): ComplexPoly.constant(2, 2.5, -1.0)})
    both = holomorphy_type(const)
    assert both.kind is HolomorphyKind.BOTH
    assert not both.vanishes_at_origin

    mixed = ThetaField(2, {(1, 1, 1): ComplexPoly.z(2, 1) + ComplexPoly.z_bar(2, 2)})
    assert holomorphy_type(mixed).kind is HolomorphyKind.NEITHER


def test_random_generators_have_the_advertised_types(rng):
    cfg = SpaceConfig(2)
    hol = holomorphy_type(random_holomorphic_theta(cfg, rng))
    assert hol.kind in (HolomorphyKind.HOLOMORPHIC, HolomorphyKind.BOTH)
    anti = holomorphy_type(random_antiholomorphic_theta(cfg, rng))
    assert anti.kind in (HolomorphyKind.ANTIHOLOMORPHIC, HolomorphyKind.BOTH)
    assert anti.vanishes_at_origin


# -- parity laws -------------------------------------------------------------------

def test_holomorphic_curvature_is_odd_everywhere(rng):
    for m_bar in (2, 3):
        cfg = SpaceConfig(m_bar)
        for _ in range(3):
            conn = connection_from_theta(random_holomorphic_theta(cfg, rng))
            for _ in range(5):
                curv = curvature_at(conn, random_point(cfg, rng))
                _odd, even = j_parity_residuals(curv)
                assert even <= 1e-9
                report = classify_symmetries(curv)
                assert report.in_K


def test_antiholomorphic_curvature_is_even_at_origin_only_claimed(rng):
    for m_bar in (2, 3):
        cfg = SpaceConfig(m_bar)
        for _ in range(3):
            theta = random_antiholomorphic_theta(cfg, rng)
            conn = connection_from_theta(theta)
            curv = curvature_at(conn, np.zeros(cfg.m))
            odd, _even = j_parity_residuals(curv)
            assert odd <= 1e-9


def test_curvature_in_k_at_generic_points(rng):
    cfg = SpaceConfig(2)
    theta = random_degree_one_theta(cfg, rng)
    conn = connection_from_theta(theta)
    for _ in range(5):
        report = classify_symmetries(curvature_at(conn, random_point(cfg, rng)))
        assert report.in_K


# -- witness traces through the connection layer ------------------------------------

def test_trace_table_of_the_two_parameter_witness():
    # Theta_111 = r1 (x1 - i y1), Theta_122 = r2 (y1 + i x1), r = (1, 1)
    theta = ThetaField(
        2,
        {
            (1, 1, 1): ComplexPoly.z_bar(2, 1),
            (1, 2, 2): ComplexPoly.z_bar(2, 1).scale(0.0, 1.0),
        },
    )
    curv = curvature_at(connection_from_theta(theta), np.zeros(4))
    traces = ricci_traces(curv)
    assert traces.tau == -4.0
    assert traces.tau_tilde_j == -4.0
    assert traces.rho14.entries[0, 0] == -2.0
    assert traces.rho14.entries[0, 2] == 2.0
    assert traces.rho14.entries[2, 0] == -2.0


def test_swap_complex_coordinates_relabels_both_indices_and_variables():
    theta = ThetaField(3, {(1, 1, 2): ComplexPoly.z_bar(3, 1)})
    swapped = theta.swap_complex_coordinates(1, 2)
    assert set(swapped.entries) == {(2, 2, 1)}
    poly = swapped.entries[(2, 2, 1)]
    assert poly.u.coeffs == PolyScalar.variable(3, 1).coeffs          # x2
    assert poly.v.coeffs == PolyScalar.variable(3, 4, -1.0).coeffs    # -y2
