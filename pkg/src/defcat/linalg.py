"""Exact linear algebra over a :class:`~defcat.exact.Field`.

Matrices are plain numpy arrays whose entries are raw field elements (see
``Field.array``).  Reduced row echelon form is unique, so everything derived
from it (kernels, image bases, solutions, cohomology representatives) is
canonical and independent of how the elimination was scheduled.

Over GF(p) with small p elimination is vectorised on int64 arrays.  Over Q
rows are kept as sparse dicts of ``Fraction`` since the coboundary matrices
we feed in are very sparse.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exact import Field, Scalar


@dataclass(frozen=True)
class MatrixK:
    """A matrix over a field, carried together with its field descriptor."""

    field: Field
    data: np.ndarray

    @classmethod
    def of(cls, field: Field, rows) -> "MatrixK":
        return cls(field, field.array(rows))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def entry(self, i: int, j: int) -> Scalar:
        return Scalar(self.field, self.data[i, j])

    def __matmul__(self, other: "MatrixK") -> "MatrixK":
        return MatrixK(self.field, self.field.matmul(self.data, other.data))

    def __eq__(self, other):
        if not isinstance(other, MatrixK):
            return NotImplemented
        return (self.field == other.field and self.data.shape == other.data.shape
                and not np.any(self.data != other.data))

    def __hash__(self):
        return hash((self.field, self.data.shape, tuple(self.data.reshape(-1).tolist())))

    def to_json(self) -> list:
        return matrix_to_json(self.field, self.data)


def matrix_to_json(field: Field, m: np.ndarray) -> list:
    return [[field.format(x) for x in row] for row in m]


# -- row reduction -----------------------------------------------------------

def _rref_dense(field, m: np.ndarray):
    p = field.p
    a = np.array(m, dtype=np.int64) % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            a[nzr] = (a[nzr] - np.outer(col[nzr], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _rref_sparse(field, m: np.ndarray):
    """Incremental Gauss-Jordan on sparse dict rows; result is the RREF."""
    ncols = m.shape[1] if m.ndim == 2 else 0
    basis: dict[int, dict] = {}
    for row in m:
        nz = np.nonzero(row != 0)[0] if row.size else []
        v = {int(j): row[j] for j in nz}
        # basis rows are kept fully reduced, so one pass clears every pivot
        for c in [c for c in v if c in basis]:
            f = v.get(c)
            if f is None or f == 0:
                continue
            for j, x in basis[c].items():
                y = field.sub(v.get(j, 0), field.mul(f, x))
                if y == 0:
                    v.pop(j, None)
                else:
                    v[j] = y
        v = {j: x for j, x in v.items() if x != 0}
        if not v:
            continue
        lead = min(v)
        inv = field.inv(v[lead])
        v = {j: field.mul(x, inv) for j, x in v.items()}
        for c, brow in basis.items():
            f = brow.get(lead)
            if f is not None and f != 0:
                for j, x in v.items():
                    y = field.sub(brow.get(j, 0), field.mul(f, x))
                    if y == 0:
                        brow.pop(j, None)
                    else:
                        brow[j] = y
        basis[lead] = v
    pivots = sorted(basis)
    out = field.zeros((len(pivots), ncols))
    for i, c in enumerate(pivots):
        for j, x in basis[c].items():
            out[i, j] = x
    return out, pivots


def rref(field: Field, m: np.ndarray):
    """Return ``(R, pivots)``: the nonzero rows of the RREF and pivot columns."""
    m = np.asarray(m)
    if m.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    if m.shape[0] == 0 or m.shape[1] == 0:
        return field.zeros((0, m.shape[1])), []
    if field.dtype is np.int64:
        return _rref_dense(field, m)
    if field.characteristic == 0:
        return _rref_sparse(field, m)
    # large prime: sparse path with modular coercion
    return _rref_sparse(field, m)


def rank(field: Field, m: np.ndarray) -> int:
    return len(rref(field, m)[1])


def kernel(field: Field, m: np.ndarray) -> np.ndarray:
    """Basis of the right kernel, one vector per row, from the free columns."""
    ncols = m.shape[1]
    r, pivots = rref(field, m)
    free = [c for c in range(ncols) if c not in set(pivots)]
    out = field.zeros((len(free), ncols))
    for k, f in enumerate(free):
        out[k, f] = field.one
        for i, c in enumerate(pivots):
            out[k, c] = field.neg(r[i, f])
    return out


def image_basis(field: Field, m: np.ndarray) -> np.ndarray:
    """Columns of ``m`` at pivot positions, returned as rows."""
    _, pivots = rref(field, m)
    return m[:, pivots].T.copy() if pivots else field.zeros((0, m.shape[0]))


def rank_kernel_image(m: MatrixK):
    f = m.field
    ker = kernel(f, m.data)
    img = image_basis(f, m.data)
    rk = img.shape[0]
    if ker.shape[0]:
        assert f.is_zero_array(f.matmul(m.data, ker.T)), "kernel vector failed verification"
    assert rk + ker.shape[0] == m.cols
    return rk, MatrixK(f, ker), MatrixK(f, img)


def span_rank(field: Field, vectors: list[np.ndarray] | np.ndarray, width: int) -> int:
    """Rank of the span of the given row vectors."""
    if isinstance(vectors, np.ndarray):
        mat = vectors
    else:
        mat = np.vstack(vectors) if len(vectors) else field.zeros((0, width))
    if mat.shape[0] == 0:
        return 0
    return rank(field, mat)


@dataclass(frozen=True)
class NoSolution:
    """Returned by :func:`solve_linear` when ``m x = b`` is inconsistent.

    ``certificate`` is a vector ``y`` with ``y m = 0`` and ``y . b != 0``.
    """

    certificate: np.ndarray


def solve_linear(m, b):
    """Solve ``m x = b``; free variables are set to zero.

    Accepts either a :class:`MatrixK` (with ``b`` a list or array) or a
    ``(field, array)`` pair via :func:`solve`.
    """
    if isinstance(m, MatrixK):
        return solve(m.field, m.data, m.field.array(list(b)) if not isinstance(b, np.ndarray) else b)
    raise TypeError("solve_linear expects a MatrixK")


def solve(field: Field, m: np.ndarray, b: np.ndarray):
    rows, cols = m.shape
    if b.shape[0] != rows:
        raise ValueError("right-hand side has the wrong length")
    aug = field.zeros((rows, cols + 1))
    if rows:
        aug[:, :cols] = m
        aug[:, cols] = b
    r, pivots = rref(field, aug)
    if cols in pivots:
        return NoSolution(_certificate(field, m, b))
    x = field.zeros(cols)
    for i, c in enumerate(pivots):
        x[c] = r[i, cols]
    return x


def _certificate(field: Field, m: np.ndarray, b: np.ndarray) -> np.ndarray:
    left = kernel(field, m.T.copy()) if m.shape[1] else field.eye(m.shape[0])
    for y in left:
        if not field.is_zero(field.matmul(y.reshape(1, -1), b.reshape(-1, 1))[0, 0]):
            return y
    raise AssertionError("inconsistent system without a certificate")


def reduce_against(field: Field, v: np.ndarray, r: np.ndarray, pivots: list[int]) -> np.ndarray:
    """Reduce ``v`` modulo the row space of an RREF ``r``."""
    v = v.copy()
    for i, c in enumerate(pivots):
        f = v[c]
        if not field.is_zero(f):
            v = field.minus(v, field.scale(f, r[i]))
    return v


def in_span(field: Field, v: np.ndarray, r: np.ndarray, pivots: list[int]) -> bool:
    return field.is_zero_array(reduce_against(field, v, r, pivots))
