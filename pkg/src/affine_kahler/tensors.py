"""Dense curvature tensors on R^m, m = 2*m_bar, with the standard complex structure.

The basis order is fixed package-wide as (e_1, ..., e_mbar, f_1, ..., f_mbar)
with f_i = J e_i, and this basis is orthonormal, so raising or lowering an
index is the identity on components.  J acts on basis indices as a signed
permutation: index a < m_bar maps to a + m_bar with sign +1, index
a >= m_bar maps to a - m_bar with sign -1.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainViolation

#: Default absolute tolerance for symmetry predicates on O(1)-scale entries.
DEFAULT_TOL = 1e-9

#: Names of the checked tensor identities, in report order.
IDENTITY_NAMES = (
    "antisym12",
    "bianchi1",
    "weyl_1d",
    "riemann_pair_1e",
    "antisym34",
    "gray_1g",
    "kahler_last2_1h",
    "kahler_operator_1i",
)

#: The three identities that together define membership in the constraint
#: space K of admissible Kahler curvature tensors.
K_IDENTITIES = ("antisym12", "bianchi1", "kahler_last2_1h")


@dataclass(frozen=True)
class SpaceConfig:
    """The model space R^m with m = 2*m_bar and the standard complex structure."""

    m_bar: int

    def __post_init__(self) -> None:
        if not isinstance(self.m_bar, int) or self.m_bar < 1:
            raise ValueError(f"m_bar must be a positive integer, got {self.m_bar!r}")

    @property
    def m(self) -> int:
        return 2 * self.m_bar

    def j_action(self) -> tuple[np.ndarray, np.ndarray]:
        """Index permutation and signs of J on the standard basis.

        Returns (perm, signs) such that J v_a = signs[a] * v_perm[a].
        """
        idx = np.arange(self.m)
        perm = np.where(idx < self.m_bar, idx + self.m_bar, idx - self.m_bar)
        signs = np.where(idx < self.m_bar, 1.0, -1.0)
        return perm, signs


def _frozen_array(values, shape: tuple[int, ...], what: str) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.shape != shape:
        raise ValueError(f"{what} must have shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{what} entries must all be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Tensor4:
    """Dense rank-4 tensor A(x, y, z, w); entry [a, b, c, d] = A(v_a, v_b, v_c, v_d)."""

    config: SpaceConfig
    entries: np.ndarray

    def __post_init__(self) -> None:
        m = self.config.m
        object.__setattr__(
            self, "entries", _frozen_array(self.entries, (m, m, m, m), "Tensor4")
        )

    @classmethod
    def zero(cls, config: SpaceConfig) -> "Tensor4":
        m = config.m
        return cls(config, np.zeros((m, m, m, m)))

    @classmethod
    def from_flat(cls, config: SpaceConfig, flat: np.ndarray) -> "Tensor4":
        m = config.m
        return cls(config, np.asarray(flat, dtype=float).reshape(m, m, m, m))

    def flatten(self) -> np.ndarray:
        """Row-major flattening, index formula ((a*m + b)*m + c)*m + d."""
        return self.entries.reshape(-1)

    def norm(self) -> float:
        return float(np.linalg.norm(self.entries))

    def inner(self, other: "Tensor4") -> float:
        """Frobenius inner product in the standard basis."""
        return float(np.tensordot(self.entries, other.entries, axes=4))

    def __add__(self, other: "Tensor4") -> "Tensor4":
        return Tensor4(self.config, self.entries + other.entries)

    def __sub__(self, other: "Tensor4") -> "Tensor4":
        return Tensor4(self.config, self.entries - other.entries)

    def __mul__(self, scalar: float) -> "Tensor4":
        return Tensor4(self.config, self.entries * float(scalar))

    __rmul__ = __mul__


@dataclass(frozen=True)
class Bilinear2:
    """Dense rank-2 tensor; entry [a, b] = theta(v_a, v_b)."""

    config: SpaceConfig
    entries: np.ndarray

    def __post_init__(self) -> None:
        m = self.config.m
        object.__setattr__(
            self, "entries", _frozen_array(self.entries, (m, m), "Bilinear2")
        )

    @classmethod
    def zero(cls, config: SpaceConfig) -> "Bilinear2":
        return cls(config, np.zeros((config.m, config.m)))

    def norm(self) -> float:
        return float(np.linalg.norm(self.entries))

    def __add__(self, other: "Bilinear2") -> "Bilinear2":
        return Bilinear2(self.config, self.entries + other.entries)

    def __sub__(self, other: "Bilinear2") -> "Bilinear2":
        return Bilinear2(self.config, self.entries - other.entries)


def standard_complex_structure(config: SpaceConfig) -> Bilinear2:
    """Matrix of J in the standard basis: column a holds the components of J v_a."""
    m = config.m
    perm, signs = config.j_action()
    mat = np.zeros((m, m))
    mat[perm, np.arange(m)] = signs
    return Bilinear2(config, mat)


def metric(config: SpaceConfig) -> Bilinear2:
    """The fixed inner product <.,.>: the identity matrix in the standard basis."""
    return Bilinear2(config, np.eye(config.m))


def kahler_form(config: SpaceConfig) -> Bilinear2:
    """Omega(x, y) = <x, J y>; coincides with the matrix of J in this basis."""
    return standard_complex_structure(config)


def apply_j_slots(entries: np.ndarray, config: SpaceConfig, slots: tuple[int, ...]) -> np.ndarray:
    """Substitute J v into the given argument slots of a dense tensor.

    For a slot s, the result T satisfies T(..., x_s, ...) = A(..., J x_s, ...).
    Exact in floating point since J is a signed index permutation.
    """
    perm, signs = config.j_action()
    out = entries
    for ax in slots:
        out = np.take(out, perm, axis=ax)
        shape = [1] * out.ndim
        shape[ax] = len(signs)
        out = out * signs.reshape(shape)
    return out


@dataclass(frozen=True)
class SymmetryReport:
    """Max-residual and pass flag per checked identity.

    ``in_K`` is the conjunction of the antisym12, bianchi1 and kahler_last2_1h
    flags; the remaining identities are reported but do not gate membership.
    """

    tol: float
    violations: dict[str, float]
    flags: dict[str, bool] = field(init=False)
    in_K: bool = field(init=False)

    def __post_init__(self) -> None:
        flags = {name: viol <= self.tol for name, viol in self.violations.items()}
        object.__setattr__(self, "flags", flags)
        object.__setattr__(self, "in_K", all(flags[name] for name in K_IDENTITIES))

    def first_violated_k_identity(self) -> str | None:
        for name in K_IDENTITIES:
            if not self.flags[name]:
                return name
        return None


@dataclass(frozen=True)
class TraceSet:
    """The two Ricci-type contractions plus the two scalar invariants."""

    rho13: Bilinear2
    rho14: Bilinear2
    tau: float
    tau_tilde_j: float


def ricci_traces(tensor: Tensor4) -> TraceSet:
    """Contractions rho13(x,y) = sum_a A(v_a, x, v_a, y), rho14(x,y) = sum_a A(v_a, x, y, v_a).

    tau is the metric trace of rho14 and tau_tilde_j its trace against the
    2-form Omega, i.e. sum_b rho14(J v_b, v_b).
    """
    a = tensor.entries
    rho13 = np.einsum("abad->bd", a)
    rho14 = np.einsum("abca->bc", a)
    tau = float(np.trace(rho14))
    jmat = standard_complex_structure(tensor.config).entries
    tau_tilde = float(np.sum(jmat * rho14))
    return TraceSet(
        rho13=Bilinear2(tensor.config, rho13),
        rho14=Bilinear2(tensor.config, rho14),
        tau=tau,
        tau_tilde_j=tau_tilde,
    )


def _max_abs(arr: np.ndarray) -> float:
    return float(np.max(np.abs(arr))) if arr.size else 0.0


def classify_symmetries(tensor: Tensor4, tol: float = DEFAULT_TOL) -> SymmetryReport:
    """Evaluate every supported curvature identity and report max residuals.

    The lowered two-slot identity (kahler_last2_1h) and the operator
    commutation identity (kahler_operator_1i) are computed independently even
    though they coincide in an orthonormal basis; agreement of the two is a
    self-consistency guard.
    """
    cfg = tensor.config
    a = tensor.entries
    m = cfg.m
    jmat = standard_complex_structure(cfg).entries

    violations: dict[str, float] = {}

    violations["antisym12"] = _max_abs(a + np.einsum("bacd->abcd", a))

    cyc1 = np.einsum("bcad->abcd", a)  # A(y, z, x, w)
    cyc2 = np.einsum("cabd->abcd", a)  # A(z, x, y, w)
    violations["bianchi1"] = _max_abs(a + cyc1 + cyc2)

    swap34 = np.einsum("abdc->abcd", a)
    rho14 = np.einsum("abca->bc", a)
    skew = rho14.T - rho14
    weyl = a + swap34 - (2.0 / m) * np.einsum("ab,cd->abcd", skew, np.eye(m))
    violations["weyl_1d"] = _max_abs(weyl)

    violations["riemann_pair_1e"] = _max_abs(a - np.einsum("cdab->abcd", a))
    violations["antisym34"] = _max_abs(a + swap34)

    def jj(slots: tuple[int, ...]) -> np.ndarray:
        return apply_j_slots(a, cfg, slots)

    gray = (
        a
        + jj((0, 1, 2, 3))
        - jj((0, 1))
        - jj((2, 3))
        - jj((0, 2))
        - jj((1, 3))
        - jj((0, 3))
        - jj((1, 2))
    )
    violations["gray_1g"] = _max_abs(gray)

    violations["kahler_last2_1h"] = _max_abs(a - jj((2, 3)))

    # Operator form: R(x, y) J - J R(x, y) applied to basis vectors.
    comm = np.einsum("absd,sc->abcd", a, jmat) - np.einsum(
        "ds,abcs->abcd", jmat, a
    )
    violations["kahler_operator_1i"] = _max_abs(comm)

    return SymmetryReport(tol=tol, violations=violations)


def require_in_k(tensor: Tensor4, tol: float = DEFAULT_TOL) -> SymmetryReport:
    """Raise DomainViolation naming the first violated defining identity."""
    report = classify_symmetries(tensor, tol=tol)
    if not report.in_K:
        name = report.first_violated_k_identity()
        raise DomainViolation(
            f"tensor is not an admissible Kahler curvature tensor: identity "
            f"{name} violated by {report.violations[name]:.3e} (tol {tol:.1e})"
        )
    return report


def j_conjugate(tensor: Tensor4) -> Tensor4:
    """T A with (T A)(x, y, z, w) = A(Jx, Jy, Jz, Jw); exact involution."""
    return Tensor4(tensor.config, apply_j_slots(tensor.entries, tensor.config, (0, 1, 2, 3)))


def j_parity_split(tensor: Tensor4, tol: float = DEFAULT_TOL) -> tuple[Tensor4, Tensor4]:
    """Split A in K into its J-parity eigenparts (A_plus, A_minus).

    Full four-slot J conjugation fixes A_plus and negates A_minus with no
    rounding error at all (the conjugation is a signed permutation and IEEE
    rounding is sign-symmetric).  A_plus + A_minus reproduces A exactly on
    dyadic data and to one ulp per entry otherwise.  Both parts again satisfy
    the defining identities.
    """
    require_in_k(tensor, tol=tol)
    conj = apply_j_slots(tensor.entries, tensor.config, (0, 1, 2, 3))
    plus = Tensor4(tensor.config, (tensor.entries + conj) / 2.0)
    minus = Tensor4(tensor.config, (tensor.entries - conj) / 2.0)
    return plus, minus


def j_parity_residuals(tensor: Tensor4) -> tuple[float, float]:
    """Distance of A from each parity eigenspace: (norm of odd part, norm of even part).

    The first number vanishes iff A is parity-even (in K+ when A is in K),
    the second iff A is parity-odd.
    """
    conj = apply_j_slots(tensor.entries, tensor.config, (0, 1, 2, 3))
    odd = float(np.linalg.norm((tensor.entries - conj) / 2.0))
    even = float(np.linalg.norm((tensor.entries + conj) / 2.0))
    return odd, even


def apply_as_operator(tensor: Tensor4, a: int, b: int, c: int) -> np.ndarray:
    """Components of the operator value A(v_a, v_b) v_c in the standard basis."""
    m = tensor.config.m
    for name, idx in (("a", a), ("b", b), ("c", c)):
        if not 0 <= idx < m:
            raise ValueError(f"index {name}={idx} out of range for m={m}")
    return tensor.entries[a, b, c, :].copy()
