"""Construction of the admissible tensor space K and its twelve-module split.

K is realized concretely as the nullspace of the integer constraint matrix of
the three defining identities (antisymmetry in the first pair, the first
Bianchi identity, J-invariance of the last pair) inside R^(m^4).  The twelve
mutually orthogonal submodules W1..W12 are carved out of the parity
eigenspaces K+ and K- by kernel and symmetry conditions on the trace maps;
every dimension and orthogonality claim is re-verified during construction
and a failure raises loudly instead of returning a bad basis.

Bilinear forms decompose in parallel into six pieces: symmetric/antisymmetric
crossed with J-parity, with the metric and Kahler-form lines split off the
J-even symmetric and antisymmetric parts respectively.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np

from .errors import DomainViolation, InternalCheckFailure
from .linalg import Subspace, complement_within, kernel_within, nullspace, orthonormalize
from .tensors import (
    DEFAULT_TOL,
    Bilinear2,
    SpaceConfig,
    Tensor4,
    apply_j_slots,
    kahler_form,
    require_in_k,
    standard_complex_structure,
)

W_LABELS = tuple(f"W{i}" for i in range(1, 13))

BILINEAR_LABELS = ("S2-", "S2_0+", "R<.,.>", "L2-", "L2_0+", "R.Omega")

#: Labels reported by the dimension table, in print order.
DIMENSION_LABELS = ("K", "K+", "K-") + W_LABELS + ("S2-", "S2_0+", "L2-", "L2_0+")

_MIN_M_BAR = 2

#: Absolute singular-value floor for rank decisions during module
#: construction; the trace/symmetry maps have O(1) content on unit tensors.
_RANK_TOL = 1e-8


def _require_decomposable(m_bar: int) -> None:
    if m_bar < _MIN_M_BAR:
        raise DomainViolation(
            f"the module decomposition requires m_bar >= {_MIN_M_BAR}, got {m_bar}"
        )


# ---------------------------------------------------------------------------
# closed-form dimensions
# ---------------------------------------------------------------------------

def _exact_div(num: int, den: int) -> int:
    if num % den:
        raise InternalCheckFailure(f"dimension formula {num}/{den} is not integral")
    return num // den


def w_dimension_formulas(m_bar: int) -> dict[str, int]:
    """Closed-form dimensions of the twelve modules."""
    n = m_bar
    dims = {
        "W1": n * n - 1,
        "W2": n * (n + 1),
        "W3": n * n - 1,
        "W4": n * (n - 1),
        "W5": 1,
        "W6": 1,
        "W7": n * n - 1,
        "W8": n * n - 1,
        "W9": _exact_div(n * n * (n - 1) * (n + 3), 4),
        "W10": _exact_div(n * n * (n - 1) * (n + 3), 4),
        "W11": _exact_div((n - 1) * (n + 1) * (n - 2) * (n + 2), 2),
        "W12": _exact_div(2 * n * n * (n - 2) * (n + 2), 3),
    }
    return dims


def kahler_space_dimension(m_bar: int) -> int:
    """dim K = m_bar^2 (m_bar + 1) (5 m_bar - 2) / 3."""
    return _exact_div(m_bar * m_bar * (m_bar + 1) * (5 * m_bar - 2), 3)


@dataclass(frozen=True)
class DimensionTable:
    """Closed-form dimensions for every labelled space at a given m_bar."""

    m_bar: int
    dims: dict[str, int]


def module_dimension_table(m_bar: int) -> DimensionTable:
    """Closed-form dimension of K, its parity parts, W1..W12 and the bilinear pieces."""
    _require_decomposable(m_bar)
    n = m_bar
    dims = dict(w_dimension_formulas(n))
    dims["K"] = kahler_space_dimension(n)
    dims["K-"] = dims["W2"] + dims["W4"] + dims["W12"]
    dims["K+"] = dims["K"] - dims["K-"]
    dims["S2-"] = n * (n + 1)
    dims["S2_0+"] = n * n - 1
    dims["L2-"] = n * (n - 1)
    dims["L2_0+"] = n * n - 1
    if sum(dims[label] for label in W_LABELS) != dims["K"]:
        raise InternalCheckFailure("module dimensions do not sum to dim K")
    return DimensionTable(m_bar=n, dims=dims)


# ---------------------------------------------------------------------------
# the constraint space K
# ---------------------------------------------------------------------------

def _slot_permutation_matrix(m: int, perm_of_slots) -> np.ndarray:
    """Dense matrix P with (P A)[a,b,c,d] = A[perm_of_slots(a,b,c,d)]."""
    n = m ** 4
    grids = np.indices((m, m, m, m)).reshape(4, -1)
    pa, pb, pc, pd = perm_of_slots(*grids)
    cols = ((pa * m + pb) * m + pc) * m + pd
    mat = np.zeros((n, n))
    mat[np.arange(n), cols] = 1.0
    return mat


def kahler_constraint_matrix(config: SpaceConfig) -> np.ndarray:
    """Integer constraint matrix whose kernel is K, stacked identity by identity."""
    m = config.m
    n = m ** 4
    eye = np.eye(n)

    antisym = eye + _slot_permutation_matrix(m, lambda a, b, c, d: (b, a, c, d))
    bianchi = (
        eye
        + _slot_permutation_matrix(m, lambda a, b, c, d: (b, c, a, d))
        + _slot_permutation_matrix(m, lambda a, b, c, d: (c, a, b, d))
    )

    perm, signs = config.j_action()
    grids = np.indices((m, m, m, m)).reshape(4, -1)
    a, b, c, d = grids
    cols = ((a * m + b) * m + perm[c]) * m + perm[d]
    vals = signs[c] * signs[d]
    j_inv = np.array(eye)
    j_inv[np.arange(n), cols] -= vals

    return np.vstack([antisym, bianchi, j_inv])


_kahler_cache: dict[int, Subspace] = {}
_parity_cache: dict[int, tuple[Subspace, Subspace]] = {}
_w_cache: dict[int, dict[str, Subspace]] = {}
_bilinear_cache: dict[int, dict[str, Subspace]] = {}
# Re-entrant: builders call each other while holding the lock, which keeps
# construction at-most-once per size under concurrency.
_cache_lock = threading.RLock()


def clear_caches() -> None:
    """Drop every per-size cache (used to time cold construction)."""
    with _cache_lock:
        _kahler_cache.clear()
        _parity_cache.clear()
        _w_cache.clear()
        _bilinear_cache.clear()


def kahler_space_basis(config: SpaceConfig) -> Subspace:
    """Orthonormal basis of K inside R^(m^4); dimension checked against the formula."""
    _require_decomposable(config.m_bar)
    with _cache_lock:
        cached = _kahler_cache.get(config.m_bar)
        if cached is not None:
            return cached
        space = nullspace(kahler_constraint_matrix(config))
        expected = kahler_space_dimension(config.m_bar)
        if space.dim != expected:
            raise InternalCheckFailure(
                f"dim K = {space.dim} from the constraint kernel, expected {expected}"
            )
        _kahler_cache[config.m_bar] = space
        return space


def _parity_conjugate_flat(config: SpaceConfig, flat: np.ndarray) -> np.ndarray:
    m = config.m
    return apply_j_slots(flat.reshape(m, m, m, m), config, (0, 1, 2, 3)).reshape(-1)


def kahler_parity_subspaces(config: SpaceConfig) -> tuple[Subspace, Subspace]:
    """(K+, K-): eigenspaces of full J-conjugation inside K."""
    with _cache_lock:
        cached = _parity_cache.get(config.m_bar)
        if cached is not None:
            return cached
        space = kahler_space_basis(config)
        conj = np.stack([_parity_conjugate_flat(config, row) for row in space.basis])
        plus = _orthonormal_rows((space.basis + conj) / 2.0, space.ambient_dim)
        minus = _orthonormal_rows((space.basis - conj) / 2.0, space.ambient_dim)
        if plus.dim + minus.dim != space.dim:
            raise InternalCheckFailure("parity eigenspaces do not fill K")
        _parity_cache[config.m_bar] = (plus, minus)
        return plus, minus


def _orthonormal_rows(rows: np.ndarray, ambient_dim: int) -> Subspace:
    return orthonormalize(rows, ambient_dim=ambient_dim)


# ---------------------------------------------------------------------------
# trace and symmetry maps on flattened tensors
# ---------------------------------------------------------------------------

def _rho13_flat(m: int, flat: np.ndarray) -> np.ndarray:
    return np.einsum("abad->bd", flat.reshape(m, m, m, m)).reshape(-1)


def _rho14_flat(m: int, flat: np.ndarray) -> np.ndarray:
    return np.einsum("abca->bc", flat.reshape(m, m, m, m)).reshape(-1)


def _rho14_antisym_flat(m: int, flat: np.ndarray) -> np.ndarray:
    rho = np.einsum("abca->bc", flat.reshape(m, m, m, m))
    return (rho - rho.T).reshape(-1)


def _rho14_sym_flat(m: int, flat: np.ndarray) -> np.ndarray:
    rho = np.einsum("abca->bc", flat.reshape(m, m, m, m))
    return (rho + rho.T).reshape(-1)


def _rho13_antisym_flat(m: int, flat: np.ndarray) -> np.ndarray:
    rho = np.einsum("abad->bd", flat.reshape(m, m, m, m))
    return (rho - rho.T).reshape(-1)


def _rho13_sym_flat(m: int, flat: np.ndarray) -> np.ndarray:
    rho = np.einsum("abad->bd", flat.reshape(m, m, m, m))
    return (rho + rho.T).reshape(-1)


def _swap34_plus_flat(m: int, flat: np.ndarray) -> np.ndarray:
    arr = flat.reshape(m, m, m, m)
    return (arr + np.einsum("abdc->abcd", arr)).reshape(-1)


def _swap34_minus_flat(m: int, flat: np.ndarray) -> np.ndarray:
    arr = flat.reshape(m, m, m, m)
    return (arr - np.einsum("abdc->abcd", arr)).reshape(-1)


def _map_on_basis(space: Subspace, fn) -> np.ndarray:
    if space.dim == 0:
        return np.zeros((0, 0))
    return np.stack([fn(row) for row in space.basis], axis=1)


def _scalar_traces_map(config: SpaceConfig, space: Subspace) -> np.ndarray:
    m = config.m
    jmat = standard_complex_structure(config).entries

    def both(flat: np.ndarray) -> np.ndarray:
        rho14 = np.einsum("abca->bc", flat.reshape(m, m, m, m))
        return np.array([np.trace(rho14), np.sum(jmat * rho14)])

    return _map_on_basis(space, both)


# ---------------------------------------------------------------------------
# the twelve modules
# ---------------------------------------------------------------------------

def _check_pairwise_orthogonal(spaces: dict[str, Subspace], tol: float) -> None:
    labels = list(spaces)
    for a_idx, la in enumerate(labels):
        for lb in labels[a_idx + 1 :]:
            sa, sb = spaces[la], spaces[lb]
            if sa.dim == 0 or sb.dim == 0:
                continue
            overlap = float(np.max(np.abs(sa.basis @ sb.basis.T)))
            if overlap > tol:
                raise InternalCheckFailure(
                    f"modules {la} and {lb} are not orthogonal: overlap {overlap:.3e}"
                )


def w_subspaces(config: SpaceConfig) -> dict[str, Subspace]:
    """The twelve mutually orthogonal submodules of K, as concrete subspaces.

    Construction: split K into the parity eigenspaces; inside K- take the
    rho14 kernel (W12) and split its complement by the symmetry type of rho14
    (W2 symmetric, W4 antisymmetric).  Inside K+ the joint rho13/rho14 kernel
    N+ splits by last-two-slot symmetry into W9 (antisymmetric), W10
    (symmetric) and the leftover W11; the complement of N+ carries the two
    scalar traces, whose kernel M0 splits into the rho13 kernel (W1 + W3,
    separated by the symmetry type of rho14) and its complement (W7 + W8,
    separated by the symmetry type of rho13), while the trace part itself
    splits into W5 (tau_tilde = 0) and W6 (tau = 0).

    Dimensions and pairwise orthogonality are verified against the closed
    forms; any mismatch raises InternalCheckFailure.
    """
    _require_decomposable(config.m_bar)
    with _cache_lock:
        cached = _w_cache.get(config.m_bar)
        if cached is not None:
            return cached
        return _build_w_subspaces(config)


def _build_w_subspaces(config: SpaceConfig) -> dict[str, Subspace]:
    m = config.m
    plus, minus = kahler_parity_subspaces(config)
    spaces: dict[str, Subspace] = {}

    # K- side: W12, then W2 / W4.
    w12 = kernel_within(minus, _map_on_basis(minus, lambda f: _rho14_flat(m, f)), tol=_RANK_TOL)
    w2w4 = complement_within(w12, minus)
    spaces["W12"] = w12
    spaces["W2"] = kernel_within(w2w4, _map_on_basis(w2w4, lambda f: _rho14_antisym_flat(m, f)), tol=_RANK_TOL)
    spaces["W4"] = kernel_within(w2w4, _map_on_basis(w2w4, lambda f: _rho14_sym_flat(m, f)), tol=_RANK_TOL)

    # K+ side: the joint trace kernel N+ and its complement M+.
    def rho_both(flat: np.ndarray) -> np.ndarray:
        return np.concatenate([_rho13_flat(m, flat), _rho14_flat(m, flat)])

    n_plus = kernel_within(plus, _map_on_basis(plus, rho_both), tol=_RANK_TOL)
    spaces["W9"] = kernel_within(n_plus, _map_on_basis(n_plus, lambda f: _swap34_plus_flat(m, f)), tol=_RANK_TOL)
    spaces["W10"] = kernel_within(n_plus, _map_on_basis(n_plus, lambda f: _swap34_minus_flat(m, f)), tol=_RANK_TOL)
    w9w10 = _orthonormal_rows(
        np.vstack([spaces["W9"].basis, spaces["W10"].basis]), n_plus.ambient_dim
    )
    spaces["W11"] = complement_within(w9w10, n_plus)

    m_plus = complement_within(n_plus, plus)
    m0 = kernel_within(m_plus, _scalar_traces_map(config, m_plus), tol=_RANK_TOL)
    w5w6 = complement_within(m0, m_plus)
    jmat = standard_complex_structure(config).entries

    def tau_tilde_only(flat: np.ndarray) -> np.ndarray:
        rho14 = np.einsum("abca->bc", flat.reshape(m, m, m, m))
        return np.array([np.sum(jmat * rho14)])

    def tau_only(flat: np.ndarray) -> np.ndarray:
        rho14 = np.einsum("abca->bc", flat.reshape(m, m, m, m))
        return np.array([np.trace(rho14)])

    spaces["W5"] = kernel_within(w5w6, _map_on_basis(w5w6, tau_tilde_only), tol=_RANK_TOL)
    spaces["W6"] = kernel_within(w5w6, _map_on_basis(w5w6, tau_only), tol=_RANK_TOL)

    w1w3 = kernel_within(m0, _map_on_basis(m0, lambda f: _rho13_flat(m, f)), tol=_RANK_TOL)
    w7w8 = complement_within(w1w3, m0)
    spaces["W1"] = kernel_within(w1w3, _map_on_basis(w1w3, lambda f: _rho14_antisym_flat(m, f)), tol=_RANK_TOL)
    spaces["W3"] = kernel_within(w1w3, _map_on_basis(w1w3, lambda f: _rho14_sym_flat(m, f)), tol=_RANK_TOL)
    spaces["W7"] = kernel_within(w7w8, _map_on_basis(w7w8, lambda f: _rho13_antisym_flat(m, f)), tol=_RANK_TOL)
    spaces["W8"] = kernel_within(w7w8, _map_on_basis(w7w8, lambda f: _rho13_sym_flat(m, f)), tol=_RANK_TOL)

    expected = w_dimension_formulas(config.m_bar)
    for label in W_LABELS:
        if spaces[label].dim != expected[label]:
            raise InternalCheckFailure(
                f"{label} has dimension {spaces[label].dim}, expected {expected[label]}"
            )
    _check_pairwise_orthogonal(spaces, tol=1e-10)

    ordered = {label: spaces[label] for label in W_LABELS}
    _w_cache[config.m_bar] = ordered
    return ordered


@dataclass(frozen=True)
class WDecomposition:
    """Projections of a tensor onto W1..W12 plus the leftover residual."""

    components: dict[str, Tensor4]
    norms: dict[str, float]
    residual: float


def w_project(tensor: Tensor4, tol: float = DEFAULT_TOL) -> WDecomposition:
    """Orthogonal projection of a tensor in K onto each of the twelve modules."""
    require_in_k(tensor, tol=tol)
    spaces = w_subspaces(tensor.config)
    flat = tensor.flatten()
    components: dict[str, Tensor4] = {}
    norms: dict[str, float] = {}
    total = np.zeros_like(flat)
    for label, space in spaces.items():
        coords = space.coordinates(flat)
        comp = coords @ space.basis if space.dim else np.zeros_like(flat)
        total += comp
        components[label] = Tensor4.from_flat(tensor.config, comp)
        norms[label] = float(np.linalg.norm(coords))
    residual = float(np.linalg.norm(flat - total))
    return WDecomposition(components=components, norms=norms, residual=residual)


# ---------------------------------------------------------------------------
# bilinear decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BilinearDecomposition:
    """Six-way split of a bilinear form.

    The scalar parts are stored as the matching multiple of the metric and of
    the Kahler 2-form, so the six entries sum back to the input.
    """

    s2_minus: Bilinear2
    s2_zero_plus: Bilinear2
    scalar_metric_part: Bilinear2
    lambda2_minus: Bilinear2
    lambda2_zero_plus: Bilinear2
    scalar_omega_part: Bilinear2

    def parts(self) -> dict[str, Bilinear2]:
        return {
            "S2-": self.s2_minus,
            "S2_0+": self.s2_zero_plus,
            "R<.,.>": self.scalar_metric_part,
            "L2-": self.lambda2_minus,
            "L2_0+": self.lambda2_zero_plus,
            "R.Omega": self.scalar_omega_part,
        }

    def total(self) -> Bilinear2:
        parts = list(self.parts().values())
        out = parts[0]
        for part in parts[1:]:
            out = out + part
        return out


def bilinear_decompose(theta: Bilinear2) -> BilinearDecomposition:
    """Split into symmetric/antisymmetric crossed with J-parity, minus scalars."""
    cfg = theta.config
    m = cfg.m
    jmat = standard_complex_structure(cfg).entries
    arr = theta.entries

    sym = (arr + arr.T) / 2.0
    alt = (arr - arr.T) / 2.0

    def j_pull(mat: np.ndarray) -> np.ndarray:
        return jmat.T @ mat @ jmat

    sym_plus = (sym + j_pull(sym)) / 2.0
    sym_minus = (sym - j_pull(sym)) / 2.0
    alt_plus = (alt + j_pull(alt)) / 2.0
    alt_minus = (alt - j_pull(alt)) / 2.0

    metric_coeff = np.trace(sym_plus) / m
    omega = kahler_form(cfg).entries
    omega_coeff = float(np.sum(alt_plus * omega)) / m

    return BilinearDecomposition(
        s2_minus=Bilinear2(cfg, sym_minus),
        s2_zero_plus=Bilinear2(cfg, sym_plus - metric_coeff * np.eye(m)),
        scalar_metric_part=Bilinear2(cfg, metric_coeff * np.eye(m)),
        lambda2_minus=Bilinear2(cfg, alt_minus),
        lambda2_zero_plus=Bilinear2(cfg, alt_plus - omega_coeff * omega),
        scalar_omega_part=Bilinear2(cfg, omega_coeff * omega),
    )


def bilinear_subspaces(config: SpaceConfig) -> dict[str, Subspace]:
    """The six pieces of the bilinear space as concrete subspaces of R^(m^2)."""
    with _cache_lock:
        cached = _bilinear_cache.get(config.m_bar)
        if cached is not None:
            return cached
        m = config.m
        collected: dict[str, list[np.ndarray]] = {label: [] for label in BILINEAR_LABELS}
        for a in range(m):
            for b in range(m):
                elem = np.zeros((m, m))
                elem[a, b] = 1.0
                split = bilinear_decompose(Bilinear2(config, elem))
                for label, part in split.parts().items():
                    collected[label].append(part.entries.reshape(-1))
        out = {
            label: _orthonormal_rows(np.stack(rows), m * m)
            for label, rows in collected.items()
        }
        total = sum(space.dim for space in out.values())
        if total != m * m:
            raise InternalCheckFailure(f"bilinear pieces sum to {total}, expected {m * m}")
        _bilinear_cache[config.m_bar] = out
        return out


def computed_dimension_table(config: SpaceConfig) -> DimensionTable:
    """Dimensions measured on the constructed subspaces (independent of the formulas)."""
    _require_decomposable(config.m_bar)
    plus, minus = kahler_parity_subspaces(config)
    dims: dict[str, int] = {
        "K": kahler_space_basis(config).dim,
        "K+": plus.dim,
        "K-": minus.dim,
    }
    for label, space in w_subspaces(config).items():
        dims[label] = space.dim
    bil = bilinear_subspaces(config)
    for label in ("S2-", "S2_0+", "L2-", "L2_0+"):
        dims[label] = bil[label].dim
    return DimensionTable(m_bar=config.m_bar, dims=dims)
