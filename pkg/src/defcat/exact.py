"""Exact scalars over Q and GF(p), and truncated series in k[eps]/eps^(N+1).

Two layers live here.  ``Field`` objects are the workhorses: they know how to
build and reduce numpy arrays of raw field elements (``Fraction`` for Q,
``int`` in ``[0, p)`` for GF(p)) and are what every other module passes
around.  ``Scalar`` and ``TruncatedSeries`` are immutable value types with
operator overloading for the public arithmetic surface.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import DivisionByZero, FieldMismatch, NotInvertible, OrderMismatch


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """Base class for the two supported fields."""

    dtype: Any = object
    characteristic: int = 0

    # -- raw element arithmetic ------------------------------------------
    def coerce(self, x) -> Any:  # pragma: no cover - abstract
        raise NotImplementedError

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def add(self, a, b):
        return self.coerce(a + b)

    def sub(self, a, b):
        return self.coerce(a - b)

    def mul(self, a, b):
        return self.coerce(a * b)

    def neg(self, a):
        return self.coerce(-a)

    def inv(self, a):  # pragma: no cover - abstract
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    # -- arrays ----------------------------------------------------------
    def array(self, rows) -> np.ndarray:
        arr = np.array(rows, dtype=object)
        if arr.ndim == 0:
            arr = arr.reshape(())
        out = np.empty(arr.shape, dtype=self.dtype)
        flat_in = arr.reshape(-1)
        flat_out = out.reshape(-1)
        for i, x in enumerate(flat_in):
            flat_out[i] = self.coerce(x)
        return out

    def zeros(self, shape) -> np.ndarray:
        if self.dtype is object:
            out = np.empty(shape, dtype=object)
            out.fill(Fraction(0) if self.characteristic == 0 else 0)
            return out
        return np.zeros(shape, dtype=self.dtype)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        return arr

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
            return self.zeros((a.shape[0], b.shape[1]))
        return self.reduce(a.dot(b))

    def kron(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.size == 0 or b.size == 0:
            return self.zeros((a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]))
        return self.reduce(np.kron(a, b))

    def scale(self, c, a: np.ndarray) -> np.ndarray:
        if a.size == 0:
            return a.copy()
        return self.reduce(a * c)

    def plus(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.size == 0:
            return a.copy()
        return self.reduce(a + b)

    def minus(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.size == 0:
            return a.copy()
        return self.reduce(a - b)

    def is_zero_array(self, a: np.ndarray) -> bool:
        return not np.any(a != 0) if a.size else True

    def random_element(self, rng, bound: int = 3):
        """Small random element; ``rng`` is a ``random.Random``."""
        raise NotImplementedError  # pragma: no cover

    def random_array(self, rng, shape, bound: int = 3) -> np.ndarray:
        out = self.zeros(shape)
        flat = out.reshape(-1)
        for i in range(flat.size):
            flat[i] = self.random_element(rng, bound)
        return out

    def inverse_matrix(self, a: np.ndarray) -> np.ndarray:
        """Inverse of a square matrix by Gauss-Jordan; raises NotInvertible."""
        n = a.shape[0]
        if a.shape != (n, n):
            raise ValueError("inverse of non-square matrix")
        aug = [[a[i, j] for j in range(n)] + [self.one if i == j else self.zero for j in range(n)]
               for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if not self.is_zero(aug[r][col])), None)
            if piv is None:
                raise NotInvertible("singular matrix")
            aug[col], aug[piv] = aug[piv], aug[col]
            f = self.inv(aug[col][col])
            aug[col] = [self.mul(f, x) for x in aug[col]]
            for r in range(n):
                if r != col and not self.is_zero(aug[r][col]):
                    g = aug[r][col]
                    aug[r] = [self.sub(x, self.mul(g, y)) for x, y in zip(aug[r], aug[col])]
        return self.array([row[n:] for row in aug]) if n else self.zeros((0, 0))

    # -- serialisation ---------------------------------------------------
    def parse(self, value):
        """Parse a JSON scalar (int or ``"a/b"`` string)."""
        if isinstance(value, str):
            value = Fraction(value)
        elif isinstance(value, float):
            raise TypeError("floating point scalars are not accepted")
        return self.coerce(value)

    def format(self, x):  # pragma: no cover - abstract
        raise NotImplementedError

    def to_json(self) -> dict:  # pragma: no cover - abstract
        raise NotImplementedError


@dataclass(frozen=True)
class Rationals(Field):
    characteristic = 0
    dtype = object

    def coerce(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (bool, np.bool_)):
            return Fraction(int(x))
        if isinstance(x, (int, np.integer)):
            return Fraction(int(x))
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero in Q")
        return 1 / Fraction(a)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        # clear denominators and multiply integer matrices; Fraction arithmetic
        # inside a dense product is orders of magnitude slower
        if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
            return self.zeros((a.shape[0], b.shape[1]))
        ai, da = _integral(a)
        bi, db = _integral(b)
        bound = _maxabs(ai) * _maxabs(bi) * a.shape[1]
        if bound < 2 ** 62:
            prod = ai.astype(np.int64).dot(bi.astype(np.int64)).astype(object)
        else:
            prod = ai.dot(bi)
        den = da * db
        out = np.empty(prod.shape, dtype=object)
        flat, src = out.reshape(-1), prod.reshape(-1)
        for i, x in enumerate(src):
            flat[i] = Fraction(int(x), den)
        return out

    def random_element(self, rng, bound: int = 3):
        return Fraction(rng.randint(-bound, bound))

    def format(self, x) -> str:
        x = Fraction(x)
        return f"{x.numerator}/{x.denominator}"

    def to_json(self) -> dict:
        return {"type": "Q"}

    def __repr__(self) -> str:
        return "Q"


@dataclass(frozen=True)
class PrimeField(Field):
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"modulus {self.p!r} is not prime")

    @property
    def characteristic(self) -> int:  # type: ignore[override]
        return self.p

    @property
    def dtype(self):  # type: ignore[override]
        # int64 dot products stay exact while n * p^2 < 2^63
        return np.int64 if self.p < 2 ** 16 else object

    def coerce(self, x) -> int:
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DivisionByZero(f"denominator divisible by {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, str):
            return self.coerce(Fraction(x))
        if isinstance(x, (int, np.integer, bool, np.bool_)):
            return int(x) % self.p
        raise TypeError(f"cannot coerce {x!r} into GF({self.p})")

    def inv(self, a):
        a = int(a) % self.p
        if a == 0:
            raise DivisionByZero(f"inverse of zero in GF({self.p})")
        return pow(a, -1, self.p)

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        return arr % self.p

    def random_element(self, rng, bound: int = 3):
        return rng.randrange(self.p)

    def array(self, rows) -> np.ndarray:
        arr = np.array(rows, dtype=object)
        flat = [self.coerce(x) for x in arr.reshape(-1)]
        return np.array(flat, dtype=self.dtype).reshape(arr.shape)

    def format(self, x) -> int:
        return int(x)

    def to_json(self) -> dict:
        return {"type": "Fp", "p": self.p}

    def sqrt(self, a) -> int | None:
        a %= self.p
        for r in range(self.p):
            if r * r % self.p == a:
                return r
        return None

    def __repr__(self) -> str:
        return f"GF({self.p})"


Q = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_json(doc: dict) -> Field:
    kind = doc.get("type")
    if kind == "Q":
        return Q
    if kind == "Fp":
        return PrimeField(doc["p"])
    raise ValueError(f"unknown field type {kind!r}")


def _integral(a: np.ndarray):
    """Integer matrix ``n`` (object dtype) and ``d`` with ``a == n / d``."""
    den = 1
    for x in a.reshape(-1):
        q = x.denominator
        if q != 1 and den % q:
            den = den * q // math.gcd(den, q)
    out = np.empty(a.shape, dtype=object)
    flat = out.reshape(-1)
    for i, x in enumerate(a.reshape(-1)):
        flat[i] = x.numerator * (den // x.denominator)
    return out, den


def _maxabs(a: np.ndarray) -> int:
    return max((abs(int(x)) for x in a.reshape(-1)), default=0)


def _check_same(a: Field, b: Field) -> None:
    if a != b:
        raise FieldMismatch(f"{a!r} vs {b!r}")


@dataclass(frozen=True)
class Scalar:
    """An element of Q or GF(p)."""

    field: Field
    value: Any

    def __post_init__(self):
        object.__setattr__(self, "value", self.field.coerce(self.value))

    @property
    def kind(self) -> str:
        return "rational" if isinstance(self.field, Rationals) else "residue"

    def _other(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            _check_same(self.field, other.field)
            return other
        return Scalar(self.field, other)

    def __add__(self, other):
        o = self._other(other)
        return Scalar(self.field, self.field.add(self.value, o.value))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return Scalar(self.field, self.field.sub(self.value, o.value))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        o = self._other(other)
        return Scalar(self.field, self.field.mul(self.value, o.value))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def __truediv__(self, other):
        return self * self._other(other).inverse()

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.coerce(other)
        except (TypeError, ValueError, ArithmeticError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def to_json(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"Scalar({self.field!r}, {self.field.format(self.value)})"


def scalar_arith(a: Scalar, b: Scalar | None, op: str) -> Scalar:
    """Dispatch form of the scalar operations: ``op`` in add|mul|inv|neg."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "neg":
        return -a
    raise ValueError(f"unknown scalar op {op!r}")


@dataclass(frozen=True)
class TruncatedSeries:
    """c_0 + c_1 eps + ... + c_N eps^N in k[eps]/eps^(N+1)."""

    field: Field
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise ValueError("a truncated series needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(self.field.coerce(c) for c in self.coeffs))

    @classmethod
    def of(cls, field: Field, coeffs: Iterable, order: int | None = None) -> "TruncatedSeries":
        cs = list(coeffs)
        if order is not None:
            cs = (cs + [0] * (order + 1))[: order + 1]
        return cls(field, tuple(cs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def _check(self, other: "TruncatedSeries") -> None:
        _check_same(self.field, other.field)
        if self.order != other.order:
            raise OrderMismatch(f"orders {self.order} and {other.order}")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        f = self.field
        return TruncatedSeries(f, tuple(f.add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.field, tuple(self.field.neg(a) for a in self.coeffs))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        f = self.field
        n = self.order
        out = []
        for k in range(n + 1):
            acc = f.zero
            for i in range(k + 1):
                acc = f.add(acc, f.mul(self.coeffs[i], other.coeffs[k - i]))
            out.append(acc)
        return TruncatedSeries(f, tuple(out))

    def invert(self) -> "TruncatedSeries":
        f = self.field
        c0 = self.coeffs[0]
        if f.is_zero(c0):
            raise NotInvertible("constant term is zero")
        inv0 = f.inv(c0)
        b = [inv0]
        for k in range(1, self.order + 1):
            acc = f.zero
            for i in range(1, k + 1):
                acc = f.add(acc, f.mul(self.coeffs[i], b[k - i]))
            b.append(f.neg(f.mul(inv0, acc)))
        return TruncatedSeries(f, tuple(b))

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise OrderMismatch("cannot raise the truncation order")
        return TruncatedSeries(self.field, self.coeffs[: order + 1])

    def is_zero(self) -> bool:
        return all(self.field.is_zero(c) for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def to_json(self) -> list:
        return [self.field.format(c) for c in self.coeffs]

    def __repr__(self):
        terms = ", ".join(str(self.field.format(c)) for c in self.coeffs)
        return f"TruncatedSeries({self.field!r}, [{terms}])"


def series_arith(a: TruncatedSeries, b: TruncatedSeries, op: str) -> TruncatedSeries:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown series op {op!r}")


def series_invert(a: TruncatedSeries) -> TruncatedSeries:
    return a.invert()


# -- series of matrices ------------------------------------------------------
# A matrix with entries in k[eps]/eps^(N+1) is stored as its list of
# coefficient matrices [M_0, ..., M_N]; products are Cauchy products.

def mseries_mul(field: Field, a: Sequence[np.ndarray], b: Sequence[np.ndarray]) -> list:
    n = min(len(a), len(b))
    out = []
    for k in range(n):
        acc = field.zeros((a[0].shape[0], b[0].shape[1]))
        for i in range(k + 1):
            acc = field.plus(acc, field.matmul(a[i], b[k - i]))
        out.append(acc)
    return out


def mseries_inv(field: Field, a: Sequence[np.ndarray]) -> list:
    """Inverse of a square matrix series; constant term must be invertible."""
    inv0 = field.inverse_matrix(a[0])
    b = [inv0]
    for k in range(1, len(a)):
        acc = field.zeros(inv0.shape)
        for i in range(1, k + 1):
            acc = field.plus(acc, field.matmul(a[i], b[k - i]))
        b.append(field.scale(field.neg(field.one), field.matmul(inv0, acc)))
    return b
