"""Realizing admissible curvature tensors as curvatures of polynomial connections.

The degree-1, origin-vanishing coefficient fields form a finite-dimensional
real parameter space: each entry Theta_{ijk} (i <= j) contributes, per
complex coordinate line a, a holomorphic direction c * z_a and an
antiholomorphic direction c * conj(z_a), each with a real and an imaginary
unit coefficient.  Curvature at the origin is linear in these parameters, so
realization reduces to a (minimum-norm) least-squares solve against the
assembled column matrix.  The column span equals the whole admissible space,
and the holomorphic / antiholomorphic column subsets span exactly the odd /
even J-parity parts; both facts are verified when the map is built.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .connections import (
    HolomorphyKind,
    ThetaField,
    connection_from_theta,
    curvature_at,
    holomorphy_type,
    linear_curvature_at_zero,
    nabla_j_residual,
    torsion_residual,
)
from .decomposition import kahler_parity_subspaces, kahler_space_basis, kahler_space_dimension
from .errors import InternalCheckFailure
from .linalg import least_squares_solve
from .polynomials import ComplexPoly
from .tensors import (
    DEFAULT_TOL,
    SpaceConfig,
    Tensor4,
    classify_symmetries,
    j_parity_residuals,
    j_parity_split,
    require_in_k,
)

#: Relative residual bound for a successful realization.
REALIZE_TOL = 1e-8

HOLOMORPHIC = "hol"
ANTIHOLOMORPHIC = "anti"


class ColumnKey(NamedTuple):
    """One real parameter of a degree-1 coefficient field.

    ``kind`` selects the holomorphic (c * z_a) or antiholomorphic
    (c * conj(z_a)) direction and ``part`` the real or imaginary unit
    coefficient.  Columns are ordered by entry (i, j, k), then line a,
    then kind (hol before anti), then part (re before im).
    """

    i: int
    j: int
    k: int
    a: int
    kind: str
    part: str


def _column_keys(m_bar: int) -> tuple[ColumnKey, ...]:
    keys = []
    for i in range(1, m_bar + 1):
        for j in range(i, m_bar + 1):
            for k in range(1, m_bar + 1):
                for a in range(1, m_bar + 1):
                    for kind in (HOLOMORPHIC, ANTIHOLOMORPHIC):
                        for part in ("re", "im"):
                            keys.append(ColumnKey(i, j, k, a, kind, part))
    return tuple(keys)


def _unit_theta(m_bar: int, key: ColumnKey) -> ThetaField:
    base = ComplexPoly.z(m_bar, key.a) if key.kind == HOLOMORPHIC else ComplexPoly.z_bar(m_bar, key.a)
    coeff = base if key.part == "re" else base.scale(0.0, 1.0)
    return ThetaField(m_bar, {(key.i, key.j, key.k): coeff})


def theta_from_coefficients(
    config: SpaceConfig, keys: tuple[ColumnKey, ...], coeffs: np.ndarray
) -> ThetaField:
    """Rebuild the coefficient field described by a parameter vector."""
    m_bar = config.m_bar
    entries: dict[tuple[int, int, int], ComplexPoly] = {}
    for key, value in zip(keys, coeffs):
        if value == 0.0:
            continue
        base = ComplexPoly.z(m_bar, key.a) if key.kind == HOLOMORPHIC else ComplexPoly.z_bar(m_bar, key.a)
        term = base.scale(value, 0.0) if key.part == "re" else base.scale(0.0, value)
        idx = (key.i, key.j, key.k)
        entries[idx] = entries[idx] + term if idx in entries else term
    return ThetaField(m_bar, entries)


@dataclass(frozen=True)
class CurvatureCoefficientMap:
    """Linear map from degree-1 coefficient parameters to curvature at the origin."""

    config: SpaceConfig
    matrix: np.ndarray  # shape (m^4, n_columns)
    columns: tuple[ColumnKey, ...]

    def column_mask(self, kind: str) -> np.ndarray:
        return np.array([key.kind == kind for key in self.columns])

    def rank(self, tol: float | None = None) -> int:
        svals = np.linalg.svd(self.matrix, compute_uv=False)
        cutoff = max(self.matrix.shape) * np.finfo(float).eps * svals[0] if tol is None else tol
        return int(np.sum(svals > cutoff))

    def restricted_rank(self, kind: str, tol: float | None = None) -> int:
        sub = self.matrix[:, self.column_mask(kind)]
        svals = np.linalg.svd(sub, compute_uv=False)
        cutoff = max(sub.shape) * np.finfo(float).eps * svals[0] if tol is None else tol
        return int(np.sum(svals > cutoff))


_map_cache: dict[int, CurvatureCoefficientMap] = {}
_map_lock = threading.Lock()


def clear_map_cache() -> None:
    """Drop the cached coefficient maps (used to time cold assembly)."""
    with _map_lock:
        _map_cache.clear()


def curvature_coefficient_map(config: SpaceConfig) -> CurvatureCoefficientMap:
    """Assemble (and verify) the parameter-to-curvature matrix for this m_bar.

    Every column is the origin curvature of a unit coefficient direction and
    must satisfy the defining identities; the total rank must equal dim K and
    the holomorphic / antiholomorphic restricted ranks must equal the odd /
    even parity dimensions.  A failure here is an internal error.
    """
    with _map_lock:
        cached = _map_cache.get(config.m_bar)
        if cached is not None:
            return cached

        kahler_space_basis(config)  # validates m_bar and warms the K cache
        m_bar = config.m_bar
        keys = _column_keys(m_bar)
        cols = np.stack(
            [linear_curvature_at_zero(_unit_theta(m_bar, key)).flatten() for key in keys],
            axis=1,
        )
        built = CurvatureCoefficientMap(config=config, matrix=cols, columns=keys)

        worst = 0.0
        for idx in range(cols.shape[1]):
            report = classify_symmetries(Tensor4.from_flat(config, cols[:, idx]))
            worst = max(worst, max(report.violations[n] for n in ("antisym12", "bianchi1", "kahler_last2_1h")))
        if worst > 1e-12:
            raise InternalCheckFailure(f"a coefficient-map column violates the identities by {worst:.3e}")

        expected = kahler_space_dimension(m_bar)
        if built.rank() != expected:
            raise InternalCheckFailure(
                f"coefficient map rank {built.rank()} != dim K = {expected}"
            )
        plus, minus = kahler_parity_subspaces(config)
        if built.restricted_rank(HOLOMORPHIC) != minus.dim:
            raise InternalCheckFailure("holomorphic columns do not span the odd-parity part")
        if built.restricted_rank(ANTIHOLOMORPHIC) != plus.dim:
            raise InternalCheckFailure("antiholomorphic columns do not span the even-parity part")

        _map_cache[config.m_bar] = built
        return built


@dataclass(frozen=True)
class RealizationResult:
    """A coefficient field realizing a prescribed curvature at the origin."""

    theta: ThetaField
    residual: float
    verified: bool
    parity_mode: str
    report: dict[str, float]


def verify_realization(tensor: Tensor4, theta: ThetaField) -> dict[str, float]:
    """Recompute every claim about a realization from scratch.

    Returns residuals only (never raises on mismatch): the defining-identity
    violation of the input, the torsion and nabla-J coefficients of the
    rebuilt connection, and the misfit of its origin curvature against the
    input.
    """
    conn = connection_from_theta(theta)
    report = classify_symmetries(tensor)
    curv = curvature_at(conn, np.zeros(tensor.config.m))
    return {
        "input_in_k": max(report.violations[n] for n in ("antisym12", "bianchi1", "kahler_last2_1h")),
        "torsion": torsion_residual(conn),
        "nabla_j": nabla_j_residual(conn),
        "curvature_match": float(np.linalg.norm(curv.entries - tensor.entries)),
    }


def realize(
    tensor: Tensor4,
    mode: str = "joint",
    tol: float = DEFAULT_TOL,
    point_rng: np.random.Generator | None = None,
) -> RealizationResult:
    """Solve for a degree-1, origin-vanishing coefficient field with the
    prescribed curvature at the origin.

    ``joint`` solves over all parameter directions at once; ``split``
    decomposes the input by J-parity, solves the odd part over holomorphic
    directions and the even part over antiholomorphic ones, and adds the two
    fields.  A residual above the tolerance is reported as an internal error
    since the parameter space is verified to span the whole admissible space.

    The report also samples the curvature at five non-origin points and
    records its distance from each parity eigenspace there (informational).
    """
    require_in_k(tensor, tol=tol)
    if mode not in ("joint", "split"):
        raise ValueError(f"unknown mode {mode!r}")
    cmap = curvature_coefficient_map(tensor.config)
    target = tensor.flatten()

    if mode == "joint":
        coeffs, _ = least_squares_solve(cmap.matrix, target)
        theta = theta_from_coefficients(tensor.config, cmap.columns, coeffs)
    else:
        plus, minus = j_parity_split(tensor, tol=tol)
        hol_mask = cmap.column_mask(HOLOMORPHIC)
        anti_mask = ~hol_mask
        hol_coeffs, _ = least_squares_solve(cmap.matrix[:, hol_mask], minus.flatten())
        anti_coeffs, _ = least_squares_solve(cmap.matrix[:, anti_mask], plus.flatten())
        theta_hol = theta_from_coefficients(
            tensor.config, tuple(k for k in cmap.columns if k.kind == HOLOMORPHIC), hol_coeffs
        )
        theta_anti = theta_from_coefficients(
            tensor.config, tuple(k for k in cmap.columns if k.kind == ANTIHOLOMORPHIC), anti_coeffs
        )
        theta = theta_hol + theta_anti

    report = verify_realization(tensor, theta)
    scale = max(1.0, tensor.norm())
    residual = report["curvature_match"]
    verified = (
        residual <= REALIZE_TOL * scale
        and report["torsion"] == 0.0
        and report["nabla_j"] == 0.0
    )
    if not verified:
        raise InternalCheckFailure(
            f"realization residual {residual:.3e} exceeds {REALIZE_TOL:.1e} * {scale:.3e}; "
            "the parameter space is supposed to span every admissible tensor"
        )

    rng = point_rng if point_rng is not None else np.random.default_rng(0)
    conn = connection_from_theta(theta)
    odd_worst = even_worst = 0.0
    for _ in range(5):
        point = rng.uniform(-1.0, 1.0, size=tensor.config.m)
        odd, even = j_parity_residuals(curvature_at(conn, point))
        odd_worst = max(odd_worst, odd)
        even_worst = max(even_worst, even)
    report["offsite_max_odd_part"] = odd_worst
    report["offsite_max_even_part"] = even_worst

    # A purely holomorphic field must keep its curvature odd at every point,
    # not only at the origin; for mixed fields the numbers are informational.
    if holomorphy_type(theta).kind is HolomorphyKind.HOLOMORPHIC and even_worst > tol * scale:
        raise InternalCheckFailure(
            f"holomorphic realization has even-parity curvature {even_worst:.3e} "
            "away from the origin"
        )

    return RealizationResult(
        theta=theta,
        residual=residual,
        verified=verified,
        parity_mode=mode,
        report=report,
    )


def split_components(result: RealizationResult) -> tuple[ThetaField, ThetaField]:
    """Separate a realization's field into holomorphic and antiholomorphic parts.

    Each entry polynomial of a degree-1 field splits uniquely into a z-linear
    and a conj(z)-linear part; constants are absent since realizations vanish
    at the origin.
    """
    m_bar = result.theta.m_bar
    hol_entries: dict[tuple[int, int, int], ComplexPoly] = {}
    anti_entries: dict[tuple[int, int, int], ComplexPoly] = {}
    for key, poly in result.theta.entries.items():
        hol = ComplexPoly.zero(m_bar)
        anti = ComplexPoly.zero(m_bar)
        for a in range(1, m_bar + 1):
            ux = poly.u.coeffs.get(_unit_powers(m_bar, a - 1), 0.0)
            uy = poly.u.coeffs.get(_unit_powers(m_bar, m_bar + a - 1), 0.0)
            vx = poly.v.coeffs.get(_unit_powers(m_bar, a - 1), 0.0)
            vy = poly.v.coeffs.get(_unit_powers(m_bar, m_bar + a - 1), 0.0)
            # c*z_a has (ux, uy, vx, vy) = (re, -im, im, re);
            # c*conj(z_a) has (re, im, im, -re).
            hol_re = (ux + vy) / 2.0
            hol_im = (vx - uy) / 2.0
            anti_re = (ux - vy) / 2.0
            anti_im = (vx + uy) / 2.0
            hol = hol + ComplexPoly.z(m_bar, a).scale(hol_re, hol_im)
            anti = anti + ComplexPoly.z_bar(m_bar, a).scale(anti_re, anti_im)
        if not hol.is_zero():
            hol_entries[key] = hol
        if not anti.is_zero():
            anti_entries[key] = anti
    return ThetaField(m_bar, hol_entries), ThetaField(m_bar, anti_entries)


def _unit_powers(m_bar: int, index: int) -> tuple[int, ...]:
    powers = [0] * (2 * m_bar)
    powers[index] = 1
    return tuple(powers)
