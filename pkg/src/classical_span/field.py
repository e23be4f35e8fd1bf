"""Exact arithmetic in small finite fields GF(p^k).

Elements are identified with integers in ``[0, p^k)``: the index of the
residue class ``c_0 + c_1 x + ... + c_{k-1} x^{k-1}`` is ``sum(c_i p^i)``.
Multiplication goes through log/antilog tables built from a fixed primitive
polynomial, so every field of order at most 256 is available.

Besides the scalar :class:`FieldElem` API, a :class:`FieldSpec` exposes
vectorized operations on numpy index arrays; the enumeration code uses
those exclusively.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass

import numpy as np

MAX_ORDER = 256

# Monic primitive polynomials (Conway polynomials), coefficients low -> high.
CONWAY_POLYNOMIALS = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
    (11, 2): (2, 7, 1),
    (13, 2): (2, 12, 1),
}


class FieldError(ValueError):
    """Raised for unsupported fields and mixed-field arithmetic."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def factor_prime_power(order: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``p**k == order``; raise if order is not a prime power."""
    if order < 2:
        raise FieldError(f"field order must be a prime power >= 2, got {order}")
    for p in range(2, order + 1):
        if order % p == 0:
            k, rest = 0, order
            while rest % p == 0:
                rest //= p
                k += 1
            if rest != 1:
                raise FieldError(f"{order} is not a prime power")
            return p, k
    raise FieldError(f"{order} is not a prime power")  # pragma: no cover


def is_prime_power(order: int) -> bool:
    try:
        factor_prime_power(order)
    except FieldError:
        return False
    return True


class FieldSpec:
    """The finite field of order ``p**k`` together with its lookup tables.

    Instances are immutable and cached: ``GF(9) is GF(9)``.
    """

    def __init__(self, p: int, k: int = 1):
        if not _is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be >= 1")
        order = p**k
        if order > MAX_ORDER:
            raise FieldError(f"fields of order > {MAX_ORDER} are not supported")
        self.p = p
        self.k = k
        self.order = order
        self._build_tables()

    # construction ---------------------------------------------------------

    def _build_tables(self):
        p, k, order = self.p, self.k, self.order
        digits = np.array(
            [[(i // p**j) % p for j in range(k)] for i in range(order)], dtype=np.int64
        )
        weights = p ** np.arange(k, dtype=np.int64)
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        neg = ((-digits) % p) @ weights

        exp = np.zeros(order - 1, dtype=np.int64)
        if k == 1:
            self.poly = None
            g = next(g for g in range(1, p) if self._is_primitive_root_mod(g))
            x = 1
            for i in range(order - 1):
                exp[i] = x
                x = x * g % p
        else:
            if (p, k) not in CONWAY_POLYNOMIALS:
                raise FieldError(f"no irreducible polynomial tabulated for {p}^{k}")
            self.poly = CONWAY_POLYNOMIALS[(p, k)]
            coeffs = [1] + [0] * (k - 1)
            for i in range(order - 1):
                exp[i] = sum(c * p**j for j, c in enumerate(coeffs))
                # multiply by x and reduce modulo the monic polynomial
                top = coeffs[-1]
                coeffs = [0] + coeffs[:-1]
                coeffs = [(c - top * self.poly[j]) % p for j, c in enumerate(coeffs)]
        if len(set(exp.tolist())) != order - 1:
            raise FieldError(f"tabulated polynomial for {p}^{k} is not primitive")
        log = np.zeros(order, dtype=np.int64)
        log[exp] = np.arange(order - 1)

        a = np.arange(order)
        mul = np.zeros((order, order), dtype=np.int64)
        nz = a[1:]
        mul[1:, 1:] = exp[(log[nz][:, None] + log[nz][None, :]) % (order - 1)]
        inv = np.zeros(order, dtype=np.int64)
        inv[1:] = exp[(-log[1:]) % (order - 1)]

        as_u8 = lambda t: np.ascontiguousarray(t, dtype=np.uint8)  # noqa: E731
        self.add_table = as_u8(add)
        self.neg_table = as_u8(neg)
        self.sub_table = as_u8(add[:, neg])
        self.mul_table = as_u8(mul)
        self.inv_table = as_u8(inv)
        self.exp_table = exp
        self.log_table = log
        for t in (self.add_table, self.neg_table, self.sub_table, self.mul_table, self.inv_table):
            t.setflags(write=False)
        self.exp_table.setflags(write=False)

        if k % 2 == 0:
            r = p ** (k // 2)
            conj = np.zeros(order, dtype=np.int64)
            conj[1:] = exp[(log[1:] * r) % (order - 1)]
            self.conj_table = as_u8(conj)
            self.conj_table.setflags(write=False)
        else:
            self.conj_table = None

        if p == 2:
            squares = np.ones(order, dtype=bool)
        else:
            squares = np.zeros(order, dtype=bool)
            squares[1:] = log[1:] % 2 == 0
        squares[0] = False
        self.square_table = squares
        self.square_table.setflags(write=False)

    def _is_primitive_root_mod(self, g: int) -> bool:
        p = self.p
        x, seen = 1, set()
        for _ in range(p - 1):
            x = x * g % p
            seen.add(x)
        return len(seen) == p - 1

    # identity -------------------------------------------------------------

    def __repr__(self):
        return f"GF({self})"

    def __str__(self):
        return f"{self.p}^{self.k}"

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    def __reduce__(self):
        return (GF, (self.order,))

    @property
    def is_prime(self) -> bool:
        return self.k == 1

    @property
    def subfield_order(self) -> int:
        """Order of the subfield fixed by conjugation (the ``q`` of ``GF(q^2)``)."""
        if self.k % 2:
            raise FieldError(f"GF({self}) has odd degree; no conjugation")
        return self.p ** (self.k // 2)

    # scalar API -----------------------------------------------------------

    def __call__(self, value: int) -> FieldElem:
        value = int(value)
        if not 0 <= value < self.order:
            raise FieldError(f"{value} is not an element index of GF({self})")
        return FieldElem(value, self)

    def __iter__(self):
        return (FieldElem(i, self) for i in range(self.order))

    def __len__(self):
        return self.order

    @property
    def zero(self) -> FieldElem:
        return FieldElem(0, self)

    @property
    def one(self) -> FieldElem:
        return FieldElem(1, self)

    @property
    def generator(self) -> FieldElem:
        """The fixed primitive element (``x`` for extensions, least primitive root otherwise)."""
        return FieldElem(int(self.exp_table[1]) if self.order > 2 else 1, self)

    def from_int(self, n: int) -> int:
        """Index of the image of the integer ``n`` in the prime subfield."""
        return n % self.p

    def smallest_nonsquare(self) -> int:
        if self.p == 2:
            raise FieldError("every element is a square in characteristic 2")
        return int(np.flatnonzero(~self.square_table[1:])[0]) + 1

    # vectorized API on index arrays -----------------------------------------

    def add(self, a, b):
        if self.k == 1:
            return ((np.asarray(a, dtype=np.int16) + b) % self.p).astype(np.uint8)
        if self.p == 2:
            return np.bitwise_xor(a, b).astype(np.uint8)
        return self.add_table[a, b]

    def sub(self, a, b):
        if self.k == 1:
            return ((np.asarray(a, dtype=np.int16) - b) % self.p).astype(np.uint8)
        if self.p == 2:
            return np.bitwise_xor(a, b).astype(np.uint8)
        return self.sub_table[a, b]

    def mul(self, a, b):
        return self.mul_table[a, b]

    def neg(self, a):
        return self.neg_table[a]

    def inv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in GF(%s)" % self)
        return self.inv_table[a]

    def conj(self, a):
        if self.conj_table is None:
            raise FieldError(f"GF({self}) has odd degree; no conjugation")
        return self.conj_table[a]

    def is_square_array(self, a):
        return self.square_table[a]

    def total(self, a, axis=-1):
        """Field sum of ``a`` along ``axis``."""
        a = np.asarray(a, dtype=np.uint8)
        if self.k == 1:
            return (a.astype(np.int64).sum(axis=axis) % self.p).astype(np.uint8)
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis).astype(np.uint8)
        a = np.moveaxis(a, axis, 0)
        acc = a[0].copy()
        for row in a[1:]:
            acc = self.add_table[acc, row]
        return acc

    def matmul(self, a, b):
        """Field matrix product of index arrays, broadcasting over leading axes."""
        a = np.asarray(a, dtype=np.uint8)
        b = np.asarray(b, dtype=np.uint8)
        if self.k == 1:
            out = np.matmul(a.astype(np.int64), b.astype(np.int64)) % self.p
            return out.astype(np.uint8)
        inner = a.shape[-1]
        if inner != b.shape[-2]:
            raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        acc = None
        for j in range(inner):
            term = self.mul_table[a[..., :, j, None], b[..., None, j, :]]
            acc = term if acc is None else self.add(acc, term)
        if acc is None:
            shape = np.broadcast_shapes(a.shape[:-2], b.shape[:-2]) + (a.shape[-2], b.shape[-1])
            return np.zeros(shape, dtype=np.uint8)
        return acc

    def elements_array(self):
        return np.arange(self.order, dtype=np.uint8)


@dataclass(frozen=True)
class FieldElem:
    """A field element as a canonical index plus its field."""

    value: int
    field: FieldSpec

    def _check(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldError(f"cannot combine GF({self.field}) with GF({other.field})")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def _wrap(self, v) -> FieldElem:
        return FieldElem(int(v), self.field)

    def __add__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.add_table[self.value, b])

    __radd__ = __add__

    def __sub__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.sub_table[self.value, b])

    def __rsub__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.sub_table[b, self.value])

    def __mul__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.mul_table[self.value, b])

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        if b == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.field})")
        return self._wrap(self.field.mul_table[self.value, self.field.inv_table[b]])

    def __rtruediv__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return FieldElem(b, self.field) / self

    def __neg__(self):
        return self._wrap(self.field.neg_table[self.value])

    def __pow__(self, e: int):
        if self.value == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return self._wrap(1 if e == 0 else 0)
        n = self.field.order - 1
        return self._wrap(self.field.exp_table[(self.field.log_table[self.value] * e) % n])

    def inverse(self) -> FieldElem:
        if self.value == 0:
            raise ZeroDivisionError(f"inverse of zero in GF({self.field})")
        return self._wrap(self.field.inv_table[self.value])

    def conjugate(self) -> FieldElem:
        """Image under ``x -> x**sqrt(order)``, the involution used by hermitian forms."""
        return self._wrap(self.field.conj(self.value))

    def is_square(self) -> bool:
        if self.value == 0:
            raise ValueError("is_square is undefined for zero")
        return bool(self.field.square_table[self.value])

    def multiplicative_order(self) -> int:
        if self.value == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.field.order - 1
        e = int(self.field.log_table[self.value])
        from math import gcd

        return n // gcd(n, e)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"GF({self.field})({self.value})"


@functools.lru_cache(maxsize=None)
def _gf(p: int, k: int) -> FieldSpec:
    return FieldSpec(p, k)


def GF(order) -> FieldSpec:
    """Return the cached field of the given order.

    Accepts an integer order, ``"p^k"`` or ``"GF(q)"`` strings, or a
    FieldSpec (returned unchanged).
    """
    if isinstance(order, FieldSpec):
        return order
    if isinstance(order, str):
        return parse_field(order)
    p, k = factor_prime_power(int(order))
    return _gf(p, k)


def parse_field(text: str) -> FieldSpec:
    """Parse ``"p^k"``, ``"q"`` or ``"GF(q)"``."""
    s = text.strip()
    m = re.fullmatch(r"(?:GF\()?\s*(\d+)\s*(?:\^\s*(\d+))?\s*\)?", s)
    if not m:
        raise FieldError(f"cannot parse field {text!r}")
    base = int(m.group(1))
    if m.group(2) is None:
        return GF(base)
    k = int(m.group(2))
    if not _is_prime(base):
        raise FieldError(f"{base} is not prime in {text!r}")
    return _gf(base, k)
