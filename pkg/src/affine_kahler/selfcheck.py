"""Seeded end-to-end invariant suite, runnable from the command line.

Each group re-checks the mathematical contracts of one layer on randomized
inputs: trace identities on the parity eigenspaces, projection completeness
and orthogonality of the twelve-module split, trace-map rank facts, the two
isomorphism spot checks, connection identities and curvature parity laws,
realization round trips, and serialization.  The report is a deterministic
function of (m_bar, trials, seed).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .connections import (
    HolomorphyKind,
    connection_from_theta,
    curvature_at,
    holomorphy_type,
    linear_curvature_at_zero,
    nabla_j_residual,
    torsion_residual,
)
from .decomposition import (
    W_LABELS,
    bilinear_subspaces,
    kahler_constraint_matrix,
    kahler_parity_subspaces,
    kahler_space_basis,
    w_dimension_formulas,
    w_project,
    w_subspaces,
)
from .linalg import nullspace
from .realization import (
    curvature_coefficient_map,
    realize,
    split_components,
    verify_realization,
)
from .sampling import (
    random_antiholomorphic_theta,
    random_degree_one_theta,
    random_holomorphic_theta,
    random_kahler_tensor,
    random_point,
)
from .serialization import (
    tensor_from_payload,
    tensor_to_payload,
    theta_from_payload,
    theta_to_payload,
)
from .tensors import (
    SpaceConfig,
    Tensor4,
    classify_symmetries,
    j_parity_residuals,
    j_parity_split,
    ricci_traces,
    standard_complex_structure,
)


@dataclass(frozen=True)
class CheckItem:
    name: str
    worst: float
    tol: float

    def __post_init__(self) -> None:
        # numpy scalars leak in from reductions; keep the report JSON-clean
        object.__setattr__(self, "worst", float(self.worst))
        object.__setattr__(self, "tol", float(self.tol))

    @property
    def ok(self) -> bool:
        return bool(self.worst <= self.tol)


@dataclass(frozen=True)
class SelfTestReport:
    m_bar: int
    trials: int
    seed: int
    items: tuple[CheckItem, ...]

    @property
    def ok(self) -> bool:
        return all(item.ok for item in self.items)

    def render(self) -> str:
        lines = [f"selftest m_bar={self.m_bar} trials={self.trials} seed={self.seed}"]
        for item in self.items:
            status = "OK  " if item.ok else "FAIL"
            lines.append(f"{status} {item.name:<44} worst={item.worst:.6e} tol={item.tol:.1e}")
        passed = sum(item.ok for item in self.items)
        lines.append(f"{passed}/{len(self.items)} checks passed")
        return "\n".join(lines)


def _j_pull(mat: np.ndarray, jmat: np.ndarray) -> np.ndarray:
    return jmat.T @ mat @ jmat


def _trace_identities(config: SpaceConfig, rng: np.random.Generator, trials: int) -> list[CheckItem]:
    jmat = standard_complex_structure(config).entries
    worst_j13 = worst_minus13 = worst_minus14 = worst_plus14 = worst_plus13 = 0.0
    worst_tau = worst_split = worst_pyth = worst_idem = 0.0
    for _ in range(trials):
        tensor = random_kahler_tensor(config, rng)
        traces = ricci_traces(tensor)
        rho13, rho14 = traces.rho13.entries, traces.rho14.entries
        worst_j13 = max(worst_j13, float(np.max(np.abs(_j_pull(rho13, jmat) - rho13))))
        worst_tau = max(worst_tau, abs(traces.tau + np.trace(rho13)))

        plus, minus = j_parity_split(tensor)
        recon = plus.entries + minus.entries - tensor.entries
        worst_split = max(worst_split, float(np.max(np.abs(recon))))
        pyth = tensor.norm() ** 2 - plus.norm() ** 2 - minus.norm() ** 2
        worst_pyth = max(worst_pyth, abs(pyth) / max(1.0, tensor.norm() ** 2))
        replus, reminus = j_parity_split(plus)
        worst_idem = max(worst_idem, float(np.max(np.abs(replus.entries - plus.entries))), reminus.norm())

        minus_traces = ricci_traces(minus)
        worst_minus13 = max(worst_minus13, minus_traces.rho13.norm())
        r14m = minus_traces.rho14.entries
        worst_minus14 = max(worst_minus14, float(np.max(np.abs(_j_pull(r14m, jmat) + r14m))))
        plus_traces = ricci_traces(plus)
        r14p, r13p = plus_traces.rho14.entries, plus_traces.rho13.entries
        worst_plus14 = max(worst_plus14, float(np.max(np.abs(_j_pull(r14p, jmat) - r14p))))
        worst_plus13 = max(worst_plus13, float(np.max(np.abs(_j_pull(r13p, jmat) - r13p))))
    return [
        CheckItem("traces.rho13_j_invariant_on_K", worst_j13, 1e-9),
        CheckItem("traces.tau_equals_minus_trace_rho13", worst_tau, 1e-9),
        CheckItem("parity.split_reconstructs", worst_split, 1e-12),
        CheckItem("parity.pythagoras", worst_pyth, 1e-12),
        CheckItem("parity.idempotent", worst_idem, 1e-12),
        CheckItem("traces.rho13_vanishes_on_K_minus", worst_minus13, 1e-9),
        CheckItem("traces.rho14_j_odd_on_K_minus", worst_minus14, 1e-9),
        CheckItem("traces.rho14_j_even_on_K_plus", worst_plus14, 1e-9),
        CheckItem("traces.rho13_j_even_on_K_plus", worst_plus13, 1e-9),
    ]


def _decomposition_checks(config: SpaceConfig, rng: np.random.Generator, trials: int) -> list[CheckItem]:
    spaces = w_subspaces(config)
    worst_complete = worst_orth = worst_parity = 0.0
    for _ in range(trials):
        a = random_kahler_tensor(config, rng)
        b = random_kahler_tensor(config, rng)
        da, db = w_project(a), w_project(b)
        worst_complete = max(worst_complete, da.residual / max(1.0, a.norm()))
        scale = max(1.0, a.norm() * b.norm())
        for la in W_LABELS:
            for lb in W_LABELS:
                if la == lb:
                    continue
                inner = da.components[la].inner(db.components[lb])
                worst_orth = max(worst_orth, abs(inner) / scale)
        plus, minus = j_parity_split(a)
        dplus, dminus = w_project(plus), w_project(minus)
        for label in W_LABELS:
            ref = dminus if label in ("W2", "W4", "W12") else dplus
            gap = da.components[label] - ref.components[label]
            worst_parity = max(worst_parity, gap.norm() / max(1.0, a.norm()))

    # Rank facts about the trace maps on the constructed modules.
    m = config.m
    jmat = standard_complex_structure(config).entries

    def rho14_of(flat: np.ndarray) -> np.ndarray:
        return np.einsum("abca->bc", flat.reshape(m, m, m, m))

    def rho13_of(flat: np.ndarray) -> np.ndarray:
        return np.einsum("abad->bd", flat.reshape(m, m, m, m))

    w5w6 = np.vstack([spaces["W5"].basis, spaces["W6"].basis])
    taus = np.array(
        [[np.trace(rho14_of(row)), np.sum(jmat * rho14_of(row))] for row in w5w6]
    )
    tau_rank = int(np.linalg.matrix_rank(taus, tol=1e-8))

    dims = w_dimension_formulas(config.m_bar)
    bil = bilinear_subspaces(config)

    def image_rank_and_residual(space, fn, target_label):
        images = np.stack([fn(row).reshape(-1) for row in space.basis])
        rank = int(np.linalg.matrix_rank(images, tol=1e-8))
        target = bil[target_label]
        resid = max(target.residual(img) for img in images)
        return rank, resid

    r2, res2 = image_rank_and_residual(spaces["W2"], rho14_of, "S2-")
    r4, res4 = image_rank_and_residual(spaces["W4"], rho14_of, "L2-")
    m0 = np.vstack([spaces[l].basis for l in ("W1", "W3", "W7", "W8")])
    joint = np.stack(
        [np.concatenate([rho14_of(row).reshape(-1), rho13_of(row).reshape(-1)]) for row in m0]
    )
    joint_rank = int(np.linalg.matrix_rank(joint, tol=1e-8))

    return [
        CheckItem("modules.projection_complete", worst_complete, 1e-9),
        CheckItem("modules.pairwise_orthogonal", worst_orth, 1e-9),
        CheckItem("modules.parity_consistent", worst_parity, 1e-9),
        CheckItem("modules.tau_pair_bijective_on_W5W6", float(2 - tau_rank), 0.0),
        CheckItem("modules.rho14_rank_on_W2", float(dims["W2"] - r2), 0.0),
        CheckItem("modules.rho14_image_in_S2minus", res2, 1e-9),
        CheckItem("modules.rho14_rank_on_W4", float(dims["W4"] - r4), 0.0),
        CheckItem("modules.rho14_image_in_L2minus", res4, 1e-9),
        CheckItem(
            "modules.joint_trace_rank_on_M0",
            float(4 * (config.m_bar ** 2 - 1) - joint_rank),
            0.0,
        ),
    ]


def _isomorphism_checks(config: SpaceConfig) -> list[CheckItem]:
    m = config.m
    jmat = standard_complex_structure(config).entries
    bil = bilinear_subspaces(config)
    spaces = w_subspaces(config)

    lam = bil["L2_0+"]
    images = np.stack([(row.reshape(m, m) @ jmat).reshape(-1) for row in lam.basis]) if lam.dim else np.zeros((0, m * m))
    s_target = bil["S2_0+"]
    worst_resid = max((s_target.residual(img) for img in images), default=0.0)
    rank = int(np.linalg.matrix_rank(images, tol=1e-8)) if lam.dim else 0
    lam_checks = [
        CheckItem("iso.L2plus_to_S2plus_lands", worst_resid, 1e-9),
        CheckItem("iso.L2plus_to_S2plus_rank", float(lam.dim - rank), 0.0),
    ]

    w9 = spaces["W9"]
    w10 = spaces["W10"]
    imgs = (
        np.stack(
            [
                np.einsum("abce,ed->abcd", row.reshape(m, m, m, m), jmat).reshape(-1)
                for row in w9.basis
            ]
        )
        if w9.dim
        else np.zeros((0, m ** 4))
    )
    worst_w10 = max((w10.residual(img) for img in imgs), default=0.0)
    rank9 = int(np.linalg.matrix_rank(imgs, tol=1e-8)) if w9.dim else 0
    return lam_checks + [
        CheckItem("iso.W9_to_W10_lands", worst_w10, 1e-9),
        CheckItem("iso.W9_to_W10_rank", float(w9.dim - rank9), 0.0),
    ]


def _connection_checks(config: SpaceConfig, rng: np.random.Generator, trials: int) -> list[CheckItem]:
    worst_torsion = worst_nabla = worst_link = 0.0
    worst_in_k = worst_hol = worst_anti = anti_offsite = 0.0
    n_points = 5
    for _ in range(trials):
        theta = random_degree_one_theta(config, rng)
        conn = connection_from_theta(theta)
        worst_torsion = max(worst_torsion, torsion_residual(conn))
        worst_nabla = max(worst_nabla, nabla_j_residual(conn))
        gap = (
            linear_curvature_at_zero(theta).entries
            - curvature_at(conn, np.zeros(config.m)).entries
        )
        worst_link = max(worst_link, float(np.max(np.abs(gap))))

        hol = random_holomorphic_theta(config, rng)
        hconn = connection_from_theta(hol)
        worst_torsion = max(worst_torsion, torsion_residual(hconn))
        worst_nabla = max(worst_nabla, nabla_j_residual(hconn))
        for _ in range(n_points):
            curv = curvature_at(hconn, random_point(config, rng))
            report = classify_symmetries(curv)
            worst_in_k = max(
                report.violations["antisym12"],
                report.violations["bianchi1"],
                report.violations["kahler_last2_1h"],
                worst_in_k,
            )
            _odd, even = j_parity_residuals(curv)
            worst_hol = max(worst_hol, even)

        anti = random_antiholomorphic_theta(config, rng)
        aconn = connection_from_theta(anti)
        odd, _ = j_parity_residuals(curvature_at(aconn, np.zeros(config.m)))
        worst_anti = max(worst_anti, odd)
        # measured but never asserted: away from the origin the curvature of
        # an antiholomorphic field has no guaranteed parity
        for _ in range(2):
            offsite_odd, _even = j_parity_residuals(curvature_at(aconn, random_point(config, rng)))
            anti_offsite = max(anti_offsite, offsite_odd)
    return [
        CheckItem("connection.torsion_free", worst_torsion, 0.0),
        CheckItem("connection.parallel_J", worst_nabla, 0.0),
        CheckItem("connection.linear_route_matches", worst_link, 1e-12),
        CheckItem("connection.curvature_in_K_at_points", worst_in_k, 1e-9),
        CheckItem("connection.holomorphic_curvature_odd", worst_hol, 1e-9),
        CheckItem("connection.antiholomorphic_origin_even", worst_anti, 1e-9),
        CheckItem("connection.antiholomorphic_offsite_odd_info", anti_offsite, float("inf")),
    ]


def _realization_checks(config: SpaceConfig, rng: np.random.Generator, trials: int) -> list[CheckItem]:
    cmap = curvature_coefficient_map(config)
    plus, minus = kahler_parity_subspaces(config)
    rank_gap = float(kahler_space_basis(config).dim - cmap.rank())
    hol_gap = float(minus.dim - cmap.restricted_rank("hol"))
    anti_gap = float(plus.dim - cmap.restricted_rank("anti"))

    hol_cols = cmap.matrix[:, cmap.column_mask("hol")]
    anti_cols = cmap.matrix[:, cmap.column_mask("anti")]
    worst_col_parity = 0.0
    for col in hol_cols.T:
        worst_col_parity = max(
            worst_col_parity, j_parity_residuals(Tensor4.from_flat(config, col))[1]
        )
    for col in anti_cols.T:
        worst_col_parity = max(
            worst_col_parity, j_parity_residuals(Tensor4.from_flat(config, col))[0]
        )

    worst_round = worst_purity = 0.0
    for _ in range(trials):
        tensor = random_kahler_tensor(config, rng)
        for mode in ("joint", "split"):
            result = realize(tensor, mode=mode)
            report = verify_realization(tensor, result.theta)
            worst_round = max(
                worst_round, report["curvature_match"] / max(1.0, tensor.norm())
            )
            if mode == "split":
                hol_part, anti_part = split_components(result)
                ok_hol = holomorphy_type(hol_part).kind in (
                    HolomorphyKind.HOLOMORPHIC,
                    HolomorphyKind.BOTH,
                )
                ok_anti = holomorphy_type(anti_part).kind in (
                    HolomorphyKind.ANTIHOLOMORPHIC,
                    HolomorphyKind.BOTH,
                )
                vanish = result.theta.vanishes_at_origin()
                worst_purity = max(worst_purity, 0.0 if (ok_hol and ok_anti and vanish) else 1.0)
    return [
        CheckItem("realization.map_rank_equals_dim_K", rank_gap, 0.0),
        CheckItem("realization.hol_columns_span_K_minus", hol_gap, 0.0),
        CheckItem("realization.anti_columns_span_K_plus", anti_gap, 0.0),
        CheckItem("realization.column_parity", worst_col_parity, 1e-12),
        CheckItem("realization.round_trip", worst_round, 1e-8),
        CheckItem("realization.split_mode_purity", worst_purity, 0.0),
    ]


def _serialization_checks(config: SpaceConfig, rng: np.random.Generator, trials: int) -> list[CheckItem]:
    worst_tensor = worst_theta = 0.0
    for _ in range(trials):
        tensor = random_kahler_tensor(config, rng)
        back = tensor_from_payload(tensor_to_payload(tensor))
        worst_tensor = max(worst_tensor, float(np.max(np.abs(back.entries - tensor.entries))))
        theta = random_holomorphic_theta(config, rng)
        rebuilt = theta_from_payload(theta_to_payload(theta))
        worst_theta = max(worst_theta, 0.0 if rebuilt.entries == theta.entries else 1.0)
    return [
        CheckItem("files.tensor_round_trip_exact", worst_tensor, 0.0),
        CheckItem("files.theta_round_trip_exact", worst_theta, 0.0),
    ]


def _constraint_idempotence(config: SpaceConfig) -> list[CheckItem]:
    mat = kahler_constraint_matrix(config)
    first = nullspace(mat).dim
    second = nullspace(mat).dim
    return [CheckItem("linalg.nullspace_dimension_stable", float(first - second), 0.0)]


def run_selftest(m_bar: int, trials: int, seed: int) -> SelfTestReport:
    """Run every invariant group at the given size with a seeded generator."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    config = SpaceConfig(m_bar)
    rng = np.random.default_rng(seed)
    items: list[CheckItem] = []
    items += _trace_identities(config, rng, trials)
    items += _decomposition_checks(config, rng, max(1, trials // 2))
    items += _isomorphism_checks(config)
    items += _connection_checks(config, rng, max(1, trials // 2))
    items += _realization_checks(config, rng, max(1, trials // 2))
    items += _serialization_checks(config, rng, max(1, trials // 4))
    items += _constraint_idempotence(config)
    return SelfTestReport(m_bar=m_bar, trials=trials, seed=seed, items=tuple(items))
