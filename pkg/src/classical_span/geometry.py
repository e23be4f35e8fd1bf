"""Classical spaces, their subspaces, and orthogonal type labels.

A :class:`ClassicalSpace` is ``F^dim`` with a Gram matrix ``G`` for the
alternating, hermitian or polar bilinear form, and for quadratic spaces an
upper-triangular matrix ``quad`` with ``Q(v) = v quad v^T``.  The form is
``beta(u, v) = u G conj(v)^T`` (conjugation only in the hermitian case).

A :class:`Subspace` is stored by its reduced row-echelon basis, which makes
equality and hashing exact.

Types are encoded as integers: ``+1`` hyperbolic, ``-1`` elliptic and
``0`` parabolic.  The intrinsic type of a non-degenerate quadratic space is
obtained by counting its singular vectors, so it does not rely on any
discriminant rule.
"""

from __future__ import annotations

import enum
import functools
import json
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import linalg
from .field import GF, FieldElem, FieldSpec


class DegenerateSubspaceError(ValueError):
    pass


class FormKind(enum.Enum):
    ALTERNATING = "alternating"
    HERMITIAN = "hermitian"
    QUADRATIC = "quadratic"

    @classmethod
    def parse(cls, value) -> "FormKind":
        if isinstance(value, FormKind):
            return value
        aliases = {
            "alternating": cls.ALTERNATING,
            "symplectic": cls.ALTERNATING,
            "sp": cls.ALTERNATING,
            "hermitian": cls.HERMITIAN,
            "unitary": cls.HERMITIAN,
            "u": cls.HERMITIAN,
            "quadratic": cls.QUADRATIC,
            "orthogonal": cls.QUADRATIC,
            "o": cls.QUADRATIC,
        }
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise ValueError(f"unknown form kind {value!r}") from None

    @property
    def case_name(self) -> str:
        return {"alternating": "symplectic", "hermitian": "unitary", "quadratic": "orthogonal"}[
            self.value
        ]


PLUS, MINUS, CIRCLE = 1, -1, 0

_SIGN_NAMES = {1: "+", -1: "-", 0: "o"}


def parse_sign(value) -> Optional[int]:
    """Parse ``+``/``-``/``o`` (or ``1``/``-1``/``0``) into an integer label."""
    if value is None:
        return None
    if isinstance(value, (int, np.integer)) and int(value) in (-1, 0, 1):
        return int(value)
    s = str(value).strip().lower()
    table = {"+": 1, "+1": 1, "1": 1, "plus": 1, "-": -1, "-1": -1, "minus": -1,
             "o": 0, "0": 0, "circ": 0, "parabolic": 0, "hyperbolic": 1, "elliptic": -1}
    if s not in table:
        raise ValueError(f"cannot parse type label {value!r}")
    return table[s]


def sign_str(s: Optional[int]) -> str:
    return "" if s is None else _SIGN_NAMES[int(s)]


@dataclass(frozen=True)
class TypeLabel:
    """Orthogonal labels of a non-degenerate subspace.

    ``epsilon`` is the isometry type of the ambient space, ``tau`` the
    intrinsic type, ``sigma`` the subspace type, ``delta`` the discriminant
    sign (``None`` in even characteristic) and ``alpha`` the point-orbit
    label when the subspace is a point.
    """

    epsilon: int
    tau: int
    sigma: int
    delta: Optional[int]
    alpha: Optional[int] = None


@dataclass(frozen=True)
class SignParams:
    beta: Optional[int]
    gamma: Optional[int]
    eta: Optional[int]
    gamma_prime: Optional[int]
    eta_prime: Optional[int]
    m: int
    m_prime: int


class PointClass(NamedTuple):
    name: str  # "P1" or "N1"
    alpha: Optional[int] = None


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.uint8)
    a.setflags(write=False)
    return a


class ClassicalSpace:
    """``F^dim`` with a non-degenerate alternating, hermitian or quadratic form."""

    def __init__(self, dim: int, field, kind, gram, quad=None, *, check: bool = True):
        self.dim = int(dim)
        self.field: FieldSpec = GF(field)
        self.kind = FormKind.parse(kind)
        F = self.field
        self.gram = _freeze(linalg.as_index_array(gram, F))
        self.quad = None if quad is None else _freeze(linalg.as_index_array(quad, F))
        if self.gram.shape != (self.dim, self.dim):
            raise ValueError(f"gram must be {self.dim}x{self.dim}")
        if check:
            self._validate()

    def _validate(self):
        F, G = self.field, self.gram
        if self.kind is FormKind.ALTERNATING:
            if np.any(np.diag(G) != 0) or not np.array_equal(G.T, F.neg(G)):
                raise ValueError("alternating gram must be skew with zero diagonal")
        elif self.kind is FormKind.HERMITIAN:
            if F.k % 2:
                raise ValueError("hermitian forms need a field of even degree")
            if not np.array_equal(G, linalg.conj_transpose(G, F)):
                raise ValueError("hermitian gram must equal its conjugate transpose")
        else:
            if self.quad is None:
                raise ValueError("quadratic spaces need a quad matrix")
            if np.any(np.tril(self.quad, -1) != 0):
                raise ValueError("quad must be upper triangular")
            if not np.array_equal(G, F.add(self.quad, self.quad.T)):
                raise ValueError("gram must be the polar form quad + quad^T")
        if linalg.rank(G, F) != self.dim:
            raise DegenerateSubspaceError("the ambient form is degenerate (BRad(V) != 0)")

    def __repr__(self):
        return f"ClassicalSpace({self.kind.case_name}, dim={self.dim}, GF({self.field}))"

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, ClassicalSpace):
            return NotImplemented
        same_quad = (self.quad is None and other.quad is None) or (
            self.quad is not None and other.quad is not None and np.array_equal(self.quad, other.quad)
        )
        return (
            self.kind is other.kind
            and self.field == other.field
            and self.dim == other.dim
            and np.array_equal(self.gram, other.gram)
            and same_quad
        )

    def __hash__(self):
        return hash((self.kind, self.field, self.dim, self.gram.tobytes()))

    # form evaluation --------------------------------------------------------

    def _vec(self, v) -> np.ndarray:
        if isinstance(v, (list, tuple)) and v and isinstance(v[0], FieldElem):
            v = [int(x) for x in v]
        a = linalg.as_index_array(v, self.field)
        if a.shape[-1] != self.dim:
            raise ValueError(f"vector of length {a.shape[-1]} in a {self.dim}-dimensional space")
        return a

    def _conj(self, a):
        return self.field.conj(a) if self.kind is FormKind.HERMITIAN else a

    def bilinear_values(self, u, v) -> np.ndarray:
        """``beta(u, v)`` over broadcast stacks of row vectors."""
        F = self.field
        u, v = self._vec(u), self._vec(v)
        uG = F.matmul(u[..., None, :], self.gram)[..., 0, :]
        return F.total(F.mul(uG, self._conj(v)), axis=-1)

    def quadratic_values(self, v) -> np.ndarray:
        if self.kind is not FormKind.QUADRATIC:
            raise ValueError("only quadratic spaces carry Q")
        F = self.field
        v = self._vec(v)
        vQ = F.matmul(v[..., None, :], self.quad)[..., 0, :]
        return F.total(F.mul(vQ, v), axis=-1)

    def evaluate(self, u, v) -> FieldElem:
        return self.field(int(self.bilinear_values(u, v)))

    def evaluate_quadratic(self, v) -> FieldElem:
        return self.field(int(self.quadratic_values(v)))

    def restricted_gram(self, basis) -> np.ndarray:
        """``B G B^H`` for a (stack of) basis matrices ``B``."""
        F = self.field
        B = np.asarray(basis, dtype=np.uint8)
        return F.matmul(F.matmul(B, self.gram), np.swapaxes(self._conj(B), -1, -2))

    def restricted_quad(self, basis) -> np.ndarray:
        """Upper-triangular matrix of ``Q`` restricted to the row space of ``B``."""
        F = self.field
        B = np.asarray(basis, dtype=np.uint8)
        full = F.matmul(F.matmul(B, self.quad), np.swapaxes(B, -1, -2))
        return fold_upper(full, F)

    # whole-space invariants -------------------------------------------------

    @functools.cached_property
    def isometry_type(self) -> Optional[int]:
        """epsilon for quadratic spaces, ``None`` otherwise."""
        if self.kind is not FormKind.QUADRATIC:
            return None
        return intrinsic_type(self.quad, self.field)

    @functools.cached_property
    def discriminant(self) -> Optional[int]:
        if self.kind is not FormKind.QUADRATIC or self.field.p == 2:
            return None
        return discriminant_of_gram(self.gram, self.field)

    def whole(self) -> "Subspace":
        return Subspace(self, np.eye(self.dim, dtype=np.uint8))

    def zero(self) -> "Subspace":
        return Subspace(self, np.zeros((0, self.dim), dtype=np.uint8))

    def span(self, rows) -> "Subspace":
        return Subspace(self, rows)

    # serialization ----------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "dim": self.dim,
            "field": str(self.field),
            "gram": self.gram.tolist(),
            "quad": None if self.quad is None else self.quad.tolist(),
        }

    @classmethod
    def from_dict(cls, d) -> "ClassicalSpace":
        return cls(d["dim"], d["field"], d["kind"], d["gram"], d.get("quad"))


def fold_upper(full: np.ndarray, F: FieldSpec) -> np.ndarray:
    """Upper-triangular matrix representing the same quadratic form as ``full``."""
    up = np.triu(F.add(full, np.swapaxes(full, -1, -2)), 1)
    d = full.shape[-1]
    diag = np.zeros_like(full)
    i = np.arange(d)
    diag[..., i, i] = full[..., i, i]
    return np.maximum(up, diag).astype(np.uint8)


def singular_vector_count(quad: np.ndarray, F: FieldSpec) -> int:
    """Number of non-zero ``v`` with ``v quad v^T = 0``, by enumeration."""
    d = quad.shape[0]
    if d == 0:
        return 0
    vs = linalg.all_vectors(d, F)
    vals = F.total(F.mul(F.matmul(vs[:, None, :], quad)[:, 0, :], vs), axis=-1)
    return int(np.count_nonzero(vals == 0)) - 1


def singular_count_for_type(d: int, tau: int, q: int) -> int:
    """Singular non-zero vector count of a non-degenerate ``d``-space of type ``tau``."""
    if d % 2:
        return q ** (d - 1) - 1
    h = d // 2
    return q ** (d - 1) - tau * q ** (h - 1) + tau * q**h - 1


def intrinsic_type(quad: np.ndarray, F: FieldSpec) -> int:
    """Isometry type of a non-degenerate quadratic form from its singular-vector count."""
    d = quad.shape[0]
    if d == 0:
        return PLUS
    q = F.order
    counts = {t: singular_count_for_type(d, t, q) for t in ((0,) if d % 2 else (1, -1))}
    assert len(set(counts.values())) == len(counts)
    s = singular_vector_count(quad, F)
    for t, c in counts.items():
        if s == c:
            return t
    raise DegenerateSubspaceError(f"singular count {s} matches no non-degenerate {d}-space")


def discriminant_of_gram(gram: np.ndarray, F: FieldSpec) -> int:
    """+1 if the Gram determinant is a non-zero square, -1 if a non-square."""
    if F.p == 2:
        raise ValueError("discriminant sign needs odd characteristic")
    d = linalg.det(gram, F)
    if d == 0:
        raise DegenerateSubspaceError("degenerate form has no discriminant")
    return 1 if F.square_table[d] else -1


class Subspace:
    """A subspace of a ClassicalSpace, stored by its RREF basis."""

    __slots__ = ("ambient", "basis", "pivots", "__weakref__")

    def __init__(self, ambient: ClassicalSpace, rows, *, reduced: bool = False):
        self.ambient = ambient
        rows = linalg.as_index_array(rows, ambient.field).reshape(-1, ambient.dim)
        if reduced:
            basis = rows
            pivots = [int(np.flatnonzero(r)[0]) for r in rows]
        else:
            basis, pivots = linalg.rref(rows, ambient.field)
        self.basis = _freeze(basis)
        self.pivots = tuple(pivots)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def field(self) -> FieldSpec:
        return self.ambient.field

    def __repr__(self):
        return f"Subspace(dim={self.dim}, basis={self.basis.tolist()})"

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis.shape == other.basis.shape and bool(
            np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash((self.basis.shape, self.basis.tobytes()))

    def __le__(self, other: "Subspace") -> bool:
        return other.contains_all(self.basis)

    def contains(self, v) -> bool:
        return self.contains_all(np.asarray(v, dtype=np.uint8).reshape(1, -1))

    def contains_all(self, rows) -> bool:
        rows = np.asarray(rows, dtype=np.uint8).reshape(-1, self.ambient.dim)
        if len(rows) == 0:
            return True
        if self.dim == 0:
            return not rows.any()
        piv = np.array(self.pivots, dtype=np.intp)
        return bool(linalg.in_rowspace(rows, self.basis[None], piv[None], self.field).all())

    def join(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient, np.concatenate([self.basis, other.basis]))

    def meet(self, other: "Subspace") -> "Subspace":
        """Intersection, via the left kernel of the stacked bases."""
        F = self.field
        if self.dim == 0 or other.dim == 0:
            return self.ambient.zero()
        stack = np.concatenate([self.basis, other.basis])
        coeffs = linalg.left_nullspace(stack, F)
        rows = F.matmul(coeffs[:, : self.dim], self.basis) if len(coeffs) else coeffs[:, :0]
        return Subspace(self.ambient, rows.reshape(-1, self.ambient.dim))

    def vectors(self) -> np.ndarray:
        """All vectors of the subspace."""
        F = self.field
        coeffs = linalg.all_vectors(self.dim, F)
        if self.dim == 0:
            return np.zeros((1, self.ambient.dim), dtype=np.uint8)
        return F.matmul(coeffs, self.basis)

    # forms ------------------------------------------------------------------

    def gram(self) -> np.ndarray:
        return self.ambient.restricted_gram(self.basis)

    def quad(self) -> np.ndarray:
        return self.ambient.restricted_quad(self.basis)

    def perp(self) -> "Subspace":
        V = self.ambient
        if self.dim == 0:
            return V.whole()
        H = V.field.matmul(self.basis, V.gram)
        H = V._conj(H)
        return Subspace(V, linalg.nullspace(H, V.field), reduced=True)

    def radical(self, which: str = "BRad") -> "Subspace":
        """``BRad`` (kernel of the restricted form) or ``QRad`` (its singular part)."""
        V, F = self.ambient, self.field
        if self.dim == 0:
            return V.zero()
        coeffs = linalg.left_nullspace(self.gram(), F)
        brad = Subspace(V, F.matmul(coeffs, self.basis) if len(coeffs) else coeffs)
        if which.lower() == "brad":
            return brad
        if which.lower() != "qrad":
            raise ValueError("which must be 'BRad' or 'QRad'")
        if V.kind is not FormKind.QUADRATIC:
            return brad
        vs = brad.vectors()
        zeros = vs[V.quadratic_values(vs) == 0]
        return Subspace(V, zeros)

    def is_nondegenerate(self) -> bool:
        if self.dim == 0:
            return True
        return linalg.rank(self.gram(), self.field) == self.dim

    def is_totally_isotropic(self) -> bool:
        """Totally isotropic, or totally singular for quadratic spaces."""
        if self.dim == 0:
            return True
        if np.any(self.gram() != 0):
            return False
        if self.ambient.kind is FormKind.QUADRATIC:
            return not np.any(self.quad() != 0)
        return True

    def discriminant(self) -> int:
        return discriminant_of_gram(self.gram(), self.field)

    def intrinsic_type(self) -> int:
        return intrinsic_type(self.quad(), self.field)

    # serialization ----------------------------------------------------------

    def to_dict(self) -> dict:
        return {"field": str(self.field), "basis": self.basis.tolist()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, ambient: ClassicalSpace, d) -> "Subspace":
        if GF(d["field"]) != ambient.field:
            raise ValueError("field of serialized subspace does not match the ambient space")
        return cls(ambient, np.array(d["basis"], dtype=np.int64).reshape(-1, ambient.dim))


# --------------------------------------------------------------------------
# standard models


def anisotropic_plane_char2(F: FieldSpec) -> int:
    """Least ``mu`` with ``t^2 + t + mu`` irreducible over ``F`` (characteristic 2)."""
    t = np.arange(F.order)
    for mu in range(F.order):
        vals = F.add(F.add(F.mul(t, t), t), mu)
        if np.all(vals != 0):
            return mu
    raise AssertionError("no irreducible Artin-Schreier polynomial")  # pragma: no cover


def standard_space(kind, dim: int, epsilon=None, field=None) -> ClassicalSpace:
    """Standard non-degenerate model: hyperbolic pairs ``(e_i, f_i)`` plus a tail.

    Basis order is ``e_1, f_1, e_2, f_2, ...``.  For quadratic forms the tail
    is empty (``+``), an anisotropic plane (``-``) or ``<z>`` with ``Q(z) = z^2``
    (``o``).  Hermitian spaces of odd dimension end with ``<z>``, ``beta(z, z) = 1``.
    """
    kind = FormKind.parse(kind)
    F = GF(field)
    dim = int(dim)
    if dim < 1:
        raise ValueError("dimension must be positive")
    eps = parse_sign(epsilon)
    G = np.zeros((dim, dim), dtype=np.uint8)
    quad = None
    if kind is FormKind.ALTERNATING:
        if dim % 2:
            raise ValueError("symplectic dimension must be even")
        for i in range(0, dim, 2):
            G[i, i + 1] = 1
            G[i + 1, i] = F.neg_table[1]
    elif kind is FormKind.HERMITIAN:
        if F.k % 2:
            raise ValueError(f"hermitian forms need |F| = q^2; GF({F}) has odd degree")
        for i in range(0, dim - 1, 2):
            G[i, i + 1] = G[i + 1, i] = 1
        if dim % 2:
            G[-1, -1] = 1
    else:
        if eps is None:
            raise ValueError("orthogonal spaces need an isometry type epsilon")
        if eps == CIRCLE:
            if dim % 2 == 0:
                raise ValueError("parabolic (o) type needs odd dimension")
            if F.p == 2:
                raise ValueError("odd-dimensional orthogonal spaces need q odd")
        elif dim % 2:
            raise ValueError("types + and - need even dimension")
        quad = np.zeros((dim, dim), dtype=np.uint8)
        hyp = dim // 2 - (1 if eps == MINUS else 0)
        for i in range(hyp):
            quad[2 * i, 2 * i + 1] = 1
        if eps == MINUS:
            a, b = dim - 2, dim - 1
            if F.p == 2:
                quad[a, a], quad[a, b], quad[b, b] = 1, 1, anisotropic_plane_char2(F)
            else:
                quad[a, a] = 1
                quad[b, b] = F.neg_table[F.smallest_nonsquare()]
        elif eps == CIRCLE:
            quad[-1, -1] = 1
        G = F.add(quad, quad.T)
    V = ClassicalSpace(dim, F, kind, G, quad)
    if kind is FormKind.QUADRATIC and V.isometry_type != eps:
        raise AssertionError(f"standard model has type {V.isometry_type}, expected {eps}")
    return V


# --------------------------------------------------------------------------
# classification


def _require_quadratic(U: Subspace):
    if U.ambient.kind is not FormKind.QUADRATIC:
        raise ValueError("type labels are defined for quadratic spaces only")


def classify(U: Subspace) -> TypeLabel:
    """epsilon, tau, sigma and delta of a non-degenerate subspace of a quadratic space.

    sigma follows the three rows of the subspace-type table: the intrinsic
    type for even ``dim U``; the type of ``U^perp`` when ``dim U`` is odd and
    ``dim U^perp`` even (``+`` when ``U^perp = 0``); otherwise ``delta(U)``.
    """
    _require_quadratic(U)
    V, F = U.ambient, U.field
    if not U.is_nondegenerate():
        raise DegenerateSubspaceError("cannot classify a degenerate subspace")
    n = U.dim
    if F.p == 2 and n % 2:
        raise ValueError("odd-dimensional subspaces need q odd")
    tau = U.intrinsic_type()
    delta = U.discriminant() if F.p != 2 and n else (1 if F.p != 2 else None)
    nperp = V.dim - n
    if n % 2 == 0:
        sigma = tau
    elif nperp % 2 == 0:
        sigma = PLUS if nperp == 0 else U.perp().intrinsic_type()
    else:
        sigma = delta
    return TypeLabel(epsilon=V.isometry_type, tau=tau, sigma=sigma, delta=delta)


def subspace_type(U: Subspace) -> int:
    return classify(U).sigma


def point_class(W: Subspace, parent: Optional[Subspace] = None) -> PointClass:
    """``P1`` (isotropic / singular) or ``N1`` with its orbit label alpha."""
    if W.dim != 1:
        raise ValueError(f"point_class needs a 1-subspace, got dimension {W.dim}")
    V, F = W.ambient, W.field
    parent = parent if parent is not None else V.whole()
    if not W <= parent:
        raise ValueError("W is not contained in the parent subspace")
    w = W.basis[0]
    if V.kind is FormKind.ALTERNATING:
        return PointClass("P1")
    if V.kind is FormKind.HERMITIAN:
        return PointClass("P1") if int(V.bilinear_values(w, w)) == 0 else PointClass("N1")
    if int(V.quadratic_values(w)) == 0:
        return PointClass("P1")
    if F.p == 2 or parent.dim == 1:
        return PointClass("N1")
    if not parent.is_nondegenerate():
        raise DegenerateSubspaceError("parent subspace must be non-degenerate")
    if parent.dim % 2 == 0:
        return PointClass("N1", discriminant_of_gram(W.gram(), F))
    hyper = W.perp().meet(parent)
    return PointClass("N1", hyper.intrinsic_type())
