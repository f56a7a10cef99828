"""Exact linear algebra over the rationals and over integer polynomials.

Two independent kernel routes are kept deliberately separate:

* ``nullspace_bareiss`` is the production route.  It clears denominators
  and runs fraction-free (Bareiss) forward elimination over the integers,
  so intermediate entries are minors of the scaled input and stay of
  controlled size, then back-substitutes over Fractions.
* ``nullspace_gauss`` is a plain Gauss-Jordan elimination on Fractions,
  used as a cross-check of the Bareiss route.

Both return the same canonical basis: the reduced row echelon form of the
kernel, under the ambient coordinate order, with pivot entries 1.

``pencil_eliminate`` runs the same fraction-free scheme over ZZ[d] for a
one-parameter matrix family, recording every pivot polynomial.  Pivots are
chosen by lowest degree first (ties by column, then row), which keeps the
degrees of recorded pivots small.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .exact_arith import Poly

Vec = list[Fraction]
Mat = list[list[Fraction]]


def zeros(rows: int, cols: int) -> Mat:
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int) -> Mat:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def mat_mul(a: Mat, b: Mat) -> Mat:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = zeros(rows, cols)
    for i in range(rows):
        ai = a[i]
        for k in range(inner):
            s = ai[k]
            if s:
                bk = b[k]
                oi = out[i]
                for j in range(cols):
                    if bk[j]:
                        oi[j] += s * bk[j]
    return out


def mat_vec(a: Mat, v: Vec) -> Vec:
    return [sum((row[j] * v[j] for j in range(len(v)) if v[j]), Fraction(0)) for row in a]


def mat_sub(a: Mat, b: Mat) -> Mat:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def commutator(a: Mat, b: Mat) -> Mat:
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def kron(a: Mat, b: Mat) -> Mat:
    """Kronecker product with row-major index pairing (i_a, i_b)."""
    ra, ca = len(a), len(a[0]) if a else 0
    rb, cb = len(b), len(b[0]) if b else 0
    out = zeros(ra * rb, ca * cb)
    for i1 in range(ra):
        for j1 in range(ca):
            s = a[i1][j1]
            if s:
                for i2 in range(rb):
                    for j2 in range(cb):
                        out[i1 * rb + i2][j1 * cb + j2] = s * b[i2][j2]
    return out


def rref(rows: list[Vec]) -> tuple[list[Vec], list[int]]:
    """Reduced row echelon form over Fractions; returns (rows, pivot columns)."""
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: list[Vec]) -> int:
    return len(rref(rows)[1])


def canonical_basis(vectors: list[Vec]) -> tuple[tuple[Fraction, ...], ...]:
    """Unique canonical basis of the span: RREF rows, zero rows dropped."""
    reduced, pivots = rref(vectors)
    return tuple(tuple(reduced[i]) for i in range(len(pivots)))


def spans_equal(a: list[Vec], b: list[Vec]) -> bool:
    return canonical_basis(a) == canonical_basis(b)


def nullspace_gauss(rows: list[Vec], ncols: int) -> tuple[tuple[Fraction, ...], ...]:
    """Kernel basis via plain Gauss-Jordan on Fractions (reference route)."""
    reduced, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis: list[Vec] = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r][f]
        basis.append(v)
    return canonical_basis(basis)


def _clear_row_denominators(row: Vec) -> list[int]:
    den = lcm(*(x.denominator for x in row)) if row else 1
    return [int(x * den) for x in row]


def nullspace_bareiss(rows: list[Vec], ncols: int) -> tuple[tuple[Fraction, ...], ...]:
    """Kernel basis via integer fraction-free elimination (production route).

    Rows are scaled to integers (kernel unchanged), forward-eliminated with
    the Bareiss one-step division rule, and the kernel is recovered by back
    substitution over Fractions.
    """
    m = [_clear_row_denominators(r) for r in rows]
    m = [r for r in m if any(r)]
    pivots: list[int] = []  # pivot column per echelon row
    t = 0
    prev = 1
    for c in range(ncols):
        pr = next((i for i in range(t, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[t], m[pr] = m[pr], m[t]
        piv = m[t][c]
        for i in range(t + 1, len(m)):
            mult = m[i][c]
            row = m[i]
            top = m[t]
            for j in range(c + 1, ncols):
                row[j] = (piv * row[j] - mult * top[j]) // prev
            row[c] = 0
        m = m[: t + 1] + [r for r in m[t + 1 :] if any(r)]
        pivots.append(c)
        prev = piv
        t += 1
        if t == len(m):
            break
    echelon = m[:t]
    free = [c for c in range(ncols) if c not in pivots]
    basis: list[Vec] = []
    for f in free:
        v: Vec = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r in range(t - 1, -1, -1):
            pc = pivots[r]
            s = sum(
                (Fraction(echelon[r][j]) * v[j] for j in range(pc + 1, ncols) if v[j]),
                Fraction(0),
            )
            v[pc] = -s / echelon[r][pc]
        basis.append(v)
    return canonical_basis(basis)


# ---------------------------------------------------------------------------
# Integer polynomials (coefficient tuples, lowest degree first, () == 0),
# used only by the pencil eliminator.  Kept separate from exact_arith.Poly
# so the elimination inner loop works on raw ints.
# ---------------------------------------------------------------------------

IPoly = tuple[int, ...]


def _ptrim(cs: list[int]) -> IPoly:
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _pmul(a: IPoly, b: IPoly) -> IPoly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ptrim(out)


def _psub(a: IPoly, b: IPoly) -> IPoly:
    if not b:
        return a
    out = list(a) + [0] * (len(b) - len(a))
    for j, y in enumerate(b):
        out[j] -= y
    return _ptrim(out)


def _pdivexact(a: IPoly, b: IPoly) -> IPoly:
    """Exact division in ZZ[d]; raises if the division leaves a remainder."""
    if not a:
        return ()
    assert b, "division by zero polynomial"
    rem = list(a)
    out = [0] * (len(a) - len(b) + 1)
    blead = b[-1]
    for k in range(len(out) - 1, -1, -1):
        q, r = divmod(rem[k + len(b) - 1], blead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        if q:
            out[k] = q
            for j, y in enumerate(b):
                rem[k + j] -= q * y
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return _ptrim(out)


def ipoly_from_poly(p: Poly) -> IPoly:
    """Scale a rational polynomial to integer coefficients (content kept)."""
    if p.is_zero():
        return ()
    den = lcm(*(c.denominator for c in p.coeffs))
    return tuple(int(c * den) for c in p.coeffs)


def ipoly_to_poly(t: IPoly) -> Poly:
    return Poly(t)


def pencil_eliminate(rows: list[list[IPoly]], ncols: int) -> tuple[list[Poly], int]:
    """Fraction-free elimination over ZZ[d] on a polynomial matrix.

    Returns the recorded pivot polynomials (as exact_arith.Poly, in pivot
    order, unnormalized) and the rank over the rational function field.
    Pivot selection: minimal degree, ties broken by column then row index,
    which favors constant pivots and keeps recorded-pivot degrees low.
    """
    m = [list(r) for r in rows if any(r)]
    colperm = list(range(ncols))
    pivot_polys: list[Poly] = []
    t = 0
    prev: IPoly = (1,)
    while t < len(m) and t < ncols:
        best = None
        for r in range(t, len(m)):
            row = m[r]
            for c in range(t, ncols):
                e = row[c]
                if e:
                    key = (len(e) - 1, c, r)
                    if best is None or key < best:
                        best = key
        if best is None:
            break
        _, c, r = best
        m[t], m[r] = m[r], m[t]
        if c != t:
            colperm[t], colperm[c] = colperm[c], colperm[t]
            for row in m:
                row[t], row[c] = row[c], row[t]
        piv = m[t][t]
        pivot_polys.append(ipoly_to_poly(piv))
        for i in range(t + 1, len(m)):
            row = m[i]
            mult = row[t]
            top = m[t]
            for j in range(t + 1, ncols):
                num = _psub(_pmul(piv, row[j]), _pmul(mult, top[j]))
                row[j] = _pdivexact(num, prev) if prev != (1,) else num
            row[t] = ()
        m = m[: t + 1] + [r for r in m[t + 1 :] if any(r)]
        prev = piv
        t += 1
    return pivot_polys, t
