"""Independent reference computations.

Nothing here imports defcat: ranks are computed by a small pure-Python
elimination over Fraction or integers mod p, and the group cochain complex
is written down directly from the bar resolution.
"""
from __future__ import annotations

import itertools
from fractions import Fraction


def _reduce(x, p):
    return Fraction(x) if p == 0 else int(x) % p


def _inv(x, p):
    return 1 / x if p == 0 else pow(int(x), p - 2, p)


def rank(rows, p: int = 0) -> int:
    """Rank of a list-of-lists matrix over Q (p = 0) or GF(p).

    Rows are inserted one at a time into a sparse echelon basis keyed by
    pivot column; the cochain matrices here are very sparse.
    """
    basis = {}
    for row in rows:
        v = {j: _reduce(x, p) for j, x in enumerate(row) if _reduce(x, p) != 0}
        while v:
            c = min(v)
            piv = basis.get(c)
            if piv is None:
                inv = _inv(v[c], p)
                basis[c] = {j: _reduce(x * inv, p) for j, x in v.items()}
                break
            k = v[c]
            for j, x in piv.items():
                y = _reduce(v.get(j, 0) - k * x, p)
                if y:
                    v[j] = y
                else:
                    v.pop(j, None)
    return len(basis)


def abelian_group(factors):
    elems = list(itertools.product(*[range(n) for n in factors]))

    def mul(g, h):
        return tuple((x + y) % n for x, y, n in zip(g, h, factors))

    return elems, mul


def group_differential(factors, n: int, p: int = 0):
    """Matrix of d: C^n(G; k) -> C^(n+1)(G; k), trivial coefficients.

    Coordinates are the values on n-tuples of group elements in
    lexicographic order (mixed radix inside each element).
    """
    elems, mul = abelian_group(factors)
    idx = {t: i for i, t in enumerate(itertools.product(elems, repeat=n))}
    rows = []
    for g in itertools.product(elems, repeat=n + 1):
        row = [0] * len(idx)
        row[idx[g[1:]]] += 1
        for i in range(n):
            merged = g[:i] + (mul(g[i], g[i + 1]),) + g[i + 2:]
            row[idx[merged]] += (-1) ** (i + 1)
        row[idx[g[:-1]]] += (-1) ** (n + 1)
        rows.append([_reduce(x, p) for x in row])
    return rows


def group_cohomology_dims(factors, degrees, p: int = 0) -> list:
    """dim H^n(G; k) with trivial coefficients, by brute-force ranks."""
    size = 1
    for n in factors:
        size *= n
    out = []
    for n in degrees:
        dim = size ** n
        r_out = rank(group_differential(factors, n, p), p)
        r_in = rank(group_differential(factors, n - 1, p), p) if n > 0 else 0
        out.append(dim - r_out - r_in)
    return out


def hochschild_differential(mult, n: int, p: int = 0):
    """Bar-complex differential C^n(A, A) -> C^(n+1)(A, A) of an algebra.

    ``mult[i][j][k]`` is the coefficient of e_k in e_i e_j.  Coordinates
    are (a_1, ..., a_n, output) in row-major order; the matrix is assembled
    from the defining formula entry by entry.
    """
    d = len(mult)

    def prod(i, j):
        return [_reduce(mult[i][j][k], p) for k in range(d)]

    src = list(itertools.product(range(d), repeat=n))
    dst = list(itertools.product(range(d), repeat=n + 1))
    col = {(t, k): i for i, (t, k) in enumerate(itertools.product(src, range(d)))}
    rows = []
    for t in dst:
        for out in range(d):
            row = [0] * len(col)
            # a_0 phi(a_1..a_n): coefficient of e_out in e_t0 e_k
            for k in range(d):
                c = prod(t[0], k)[out]
                if c:
                    row[col[(t[1:], k)]] += c
            for i in range(n):
                m = prod(t[i], t[i + 1])
                for s in range(d):
                    if m[s]:
                        key = (t[:i] + (s,) + t[i + 2:], out)
                        row[col[key]] += (-1) ** (i + 1) * m[s]
            for k in range(d):
                c = prod(k, t[-1])[out]
                if c:
                    row[col[(t[:-1], k)]] += (-1) ** (n + 1) * c
            rows.append([_reduce(x, p) for x in row])
    return rows


def hochschild_dims(mult, p: int, degrees) -> list:
    """dim HH^n(A, A) by brute-force ranks of the bar complex."""
    d = len(mult)
    out = []
    for n in degrees:
        r_out = rank(hochschild_differential(mult, n, p), p)
        r_in = rank(hochschild_differential(mult, n - 1, p), p) if n > 0 else 0
        out.append(d ** (n + 1) - r_out - r_in)
    return out
