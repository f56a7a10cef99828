"""Exact solution spaces of the twisted derivation equation.

A linear map D from an algebra L to a module V is a d-twisted derivation
(here d is a scalar) when

    D([x, y]) = -d * y . D(x) + d * x . D(y)        for all x, y in L,

equivalently D([x, y]) + d * y . D(x) - d * x . D(y) = 0.  Collecting the
unknowns D(e_a) coordinate-wise gives a linear system whose matrix is a
pencil A + d*B: one block of dim_v equations per basis pair i < j in
lexicographic order, and the unknown column index encoding

    column(a, m) = a * dim_v + m

for the m-th coordinate of D(e_a).  Both the pair ordering and the column
encoding are fixed; all golden outputs depend on them.

Kernels at fixed rational d are computed by fraction-free elimination and
returned in reduced echelon form (pivot entries 1), so equal subspaces have
byte-equal bases.  Every returned basis element is re-verified against the
defining equation by code independent of the elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .exact_arith import Poly, poly_normalize, poly_rational_roots
from .lie_core import (
    AlgebraMismatch,
    LieAlgebra,
    Representation,
    weight_decomposition,
)
from .linalg import (
    Vec,
    canonical_basis,
    nullspace_bareiss,
    pencil_eliminate,
    rref,
)


class ShapeMismatch(Exception):
    pass


class VerificationFailure(Exception):
    """An internal consistency check failed; indicates an elimination bug."""


DerivationMap = tuple[tuple[Fraction, ...], ...]  # dim rows of dim_v coordinates


@dataclass(frozen=True)
class DerivationSystem:
    """The pencil A + d*B of the twisted-derivation equations."""

    algebra: LieAlgebra
    module: Representation
    rows: int
    cols: int
    pairs: tuple[tuple[int, int], ...]
    a_part: tuple  # rows x cols, constant coefficients
    b_part: tuple  # rows x cols, coefficients of d

    def entry(self, r: int, c: int) -> Poly:
        return Poly([self.a_part[r][c], self.b_part[r][c]])

    def specialize(self, delta: Fraction) -> list[Vec]:
        d = Fraction(delta)
        return [
            [a + d * b for a, b in zip(arow, brow)]
            for arow, brow in zip(self.a_part, self.b_part)
        ]


@dataclass(frozen=True)
class DerivationSpace:
    """Exact basis of the space of d-twisted derivations at a fixed d.

    ``basis[t][a][m]`` is the m-th coordinate of the image of e_a under the
    t-th basis map.  The flattened basis is in reduced echelon form under
    the fixed column order.  ``weights`` carries one grading eigenvalue per
    basis element when the space was computed blockwise.
    """

    delta: Fraction
    basis: tuple[DerivationMap, ...]
    weights: tuple[Fraction, ...] | None = None

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class ScanReport:
    """All rational d with nontrivial twisted-derivation space.

    ``findings`` maps each verified rational d to its kernel dimension, in
    ascending d order.  ``nonrational_factors`` lists normalized pivot
    factors of degree >= 2 without rational roots; their irrational roots
    are the only values the scan does not certify.  ``generic_rank`` is the
    rank of the pencil over the rational function field.
    """

    findings: dict[Fraction, int]
    nonrational_factors: tuple[Poly, ...]
    generic_rank: int


def map_to_vector(D: DerivationMap) -> Vec:
    return [x for row in D for x in row]


def vector_to_map(v, dim: int, dim_v: int) -> DerivationMap:
    return tuple(tuple(v[a * dim_v + m] for m in range(dim_v)) for a in range(dim))


def assemble_system(L: LieAlgebra, V: Representation) -> DerivationSystem:
    """Build the equation pencil for (L, V).

    For each pair i < j the block of dim_v rows expresses
    sum_k c_ij^k D(e_k) + d * rho(e_j) D(e_i) - d * rho(e_i) D(e_j) = 0.
    """
    if V.algebra != L:
        raise AlgebraMismatch("module is not a representation of this algebra")
    dim, dim_v = L.dim, V.dim_v
    pairs = tuple((i, j) for i in range(dim) for j in range(i + 1, dim))
    rows = len(pairs) * dim_v
    cols = dim * dim_v
    a_part = [[Fraction(0)] * cols for _ in range(rows)]
    b_part = [[Fraction(0)] * cols for _ in range(rows)]
    for p, (i, j) in enumerate(pairs):
        base = p * dim_v
        for k, c in L.structure.get((i, j), ()):
            for r in range(dim_v):
                a_part[base + r][k * dim_v + r] += c
        rho_i = V.action[i]
        rho_j = V.action[j]
        for r in range(dim_v):
            for m in range(dim_v):
                if rho_j[r][m]:
                    b_part[base + r][i * dim_v + m] += rho_j[r][m]
                if rho_i[r][m]:
                    b_part[base + r][j * dim_v + m] -= rho_i[r][m]
    return DerivationSystem(
        algebra=L,
        module=V,
        rows=rows,
        cols=cols,
        pairs=pairs,
        a_part=tuple(tuple(r) for r in a_part),
        b_part=tuple(tuple(r) for r in b_part),
    )


def is_delta_derivation(D, L: LieAlgebra, V: Representation, delta) -> tuple[bool, tuple | None]:
    """Check the defining equation on all basis pairs, by direct evaluation.

    Returns (True, None), or (False, (i, j, residual)) for the first pair
    where the equation fails.  Independent of the elimination code.
    """
    delta = Fraction(delta)
    dim, dim_v = L.dim, V.dim_v
    if len(D) != dim or any(len(row) != dim_v for row in D):
        raise ShapeMismatch(f"map must be {dim} x {dim_v}")
    for i in range(dim):
        for j in range(i + 1, dim):
            bracket = L.bracket_basis(i, j)
            residual = [Fraction(0)] * dim_v
            for k, c in enumerate(bracket):
                if c:
                    for r in range(dim_v):
                        residual[r] += c * D[k][r]
            i_on_dj = V.act(i, list(D[j]))
            j_on_di = V.act(j, list(D[i]))
            for r in range(dim_v):
                residual[r] += delta * (j_on_di[r] - i_on_dj[r])
            if any(residual):
                return False, (i, j, tuple(residual))
    return True, None


def _space_from_vectors(
    system: DerivationSystem, delta: Fraction, vectors, weights=None
) -> DerivationSpace:
    dim, dim_v = system.algebra.dim, system.module.dim_v
    maps = tuple(vector_to_map(v, dim, dim_v) for v in vectors)
    for D in maps:
        ok, witness = is_delta_derivation(D, system.algebra, system.module, delta)
        if not ok:
            raise VerificationFailure(
                f"kernel element fails the defining equation at pair {witness[:2]}"
            )
    return DerivationSpace(delta=Fraction(delta), basis=maps, weights=weights)


def kernel_at(system: DerivationSystem, delta) -> DerivationSpace:
    """Exact kernel of the pencil specialized at one rational value."""
    delta = Fraction(delta)
    vectors = nullspace_bareiss(system.specialize(delta), system.cols)
    return _space_from_vectors(system, delta, vectors)


def solve(
    L: LieAlgebra,
    V: Representation,
    delta,
    use_grading: int | None = None,
) -> DerivationSpace:
    """Compute the twisted-derivation space at one rational value.

    With ``use_grading`` set to the index of a basis element whose adjoint
    and module actions are diagonal, the system splits into independent
    blocks: a map sends each eigenvalue-b slice of L into the (b - a) slice
    of V for its own weight a, so columns group by
    eigenvalue(a) - eigenvalue(m) and every equation touches exactly one
    group.  The blockwise kernel equals the ungraded kernel; basis elements
    are tagged with their block weight.

    Degenerate inputs behave as the equations dictate: a one-dimensional
    algebra has no basis pairs, hence no equations, and every map
    qualifies (dimension dim V); a zero-dimensional module always gives
    the zero space.
    """
    system = assemble_system(L, V)
    if use_grading is None:
        return kernel_at(system, delta)
    delta = Fraction(delta)
    decomposition = weight_decomposition(L, V, use_grading)
    lam: dict[int, Fraction] = {}
    mu: dict[int, Fraction] = {}
    for w, alg_idx, mod_idx in decomposition:
        for a in alg_idx:
            lam[a] = w
        for m in mod_idx:
            mu[m] = w
    dim_v = V.dim_v
    col_weight = [lam[c // dim_v] - mu[c % dim_v] for c in range(system.cols)]
    groups: dict[Fraction, list[int]] = {}
    for c, w in enumerate(col_weight):
        groups.setdefault(w, []).append(c)
    matrix = system.specialize(delta)
    row_groups: dict[Fraction, list[int]] = {w: [] for w in groups}
    for r, row in enumerate(matrix):
        touched = {col_weight[c] for c, x in enumerate(row) if x}
        if not touched:
            continue
        if len(touched) > 1:
            raise VerificationFailure("equation couples distinct grading blocks")
        row_groups[touched.pop()].append(r)
    vectors: list[Vec] = []
    for w in sorted(groups):
        cols = groups[w]
        sub = [[matrix[r][c] for c in cols] for r in row_groups[w]]
        for kernel_vec in nullspace_bareiss(sub, len(cols)):
            full = [Fraction(0)] * system.cols
            for c, x in zip(cols, kernel_vec):
                full[c] = x
            vectors.append(full)
    reduced, pivots = rref(vectors)
    final = [tuple(reduced[t]) for t in range(len(pivots))]
    weights = tuple(col_weight[pc] for pc in pivots)
    return _space_from_vectors(system, delta, final, weights=weights)


def inner_derivations(L: LieAlgebra, V: Representation) -> DerivationSpace:
    """The maps x -> x . v, which solve the equation at d = 1.

    The inner map of v vanishes exactly when v is invariant, so the
    dimension is dim V minus the dimension of the invariants.
    """
    if V.algebra != L:
        raise AlgebraMismatch("module is not a representation of this algebra")
    dim, dim_v = L.dim, V.dim_v
    generators: list[Vec] = []
    for m in range(dim_v):
        generators.append([V.action[a][r][m] for a in range(dim) for r in range(dim_v)])
    system = assemble_system(L, V)
    return _space_from_vectors(system, Fraction(1), canonical_basis(generators))


def _strip_rational_roots(p: Poly, roots) -> Poly:
    for r in roots:
        while p.degree >= 1 and p(r) == 0:
            p = p.deflate(r)
    return p


def scan(L: LieAlgebra, V: Representation, include_zero: bool = False) -> ScanReport:
    """Find every rational d whose twisted-derivation space is nontrivial.

    Method: run fraction-free elimination on the pencil over ZZ[d],
    recording every pivot polynomial.  If all pivots are nonzero at some
    d0, the specialized elimination is valid there and the rank does not
    drop, so any rank-dropping d0 is a root of some pivot; the union of the
    pivots' rational roots is therefore a superset of all rational
    exceptional values.  Each candidate is then verified by an independent
    fixed-d kernel computation, making the report exact over the rationals.

    Irrational rank drops are bounded through the last pivot alone: it is
    a maximal nonzero minor of the pencil, and a rank drop makes every
    maximal minor vanish.  Whatever survives of the last pivot after its
    rational roots are divided out (necessarily of degree >= 2) is
    reported unresolved in ``nonrational_factors``.  Earlier pivots are
    smaller minors whose extra factors need not witness any rank drop, so
    they contribute candidates but never unresolved factors.

    d = 0 is excluded by default: the equation at 0 just says D kills the
    commutant, so the dimension is (dim L - dim [L,L]) * dim V, which is 0
    for perfect algebras and trivially nonzero otherwise.  With
    ``include_zero`` the value is verified and reported like any other.
    """
    system = assemble_system(L, V)
    poly_rows = []
    for arow, brow in zip(system.a_part, system.b_part):
        dens = [x.denominator for x in arow] + [x.denominator for x in brow]
        den = lcm(*dens)
        row = []
        for a, b in zip(arow, brow):
            ai, bi = int(a * den), int(b * den)
            row.append((ai, bi) if bi else ((ai,) if ai else ()))
        poly_rows.append(row)
    pivots, generic_rank = pencil_eliminate(poly_rows, system.cols)

    candidates: set[Fraction] = set()
    nonrational: set[Poly] = set()
    for which, pivot in enumerate(pivots):
        p = poly_normalize(pivot)
        if p.degree < 1:
            continue
        roots = poly_rational_roots(p)
        candidates.update(roots)
        if which == len(pivots) - 1:
            residual = _strip_rational_roots(p, roots)
            if residual.degree >= 2:
                nonrational.add(poly_normalize(residual))

    zero = Fraction(0)
    candidates.discard(zero)
    findings: dict[Fraction, int] = {}
    if include_zero:
        closed_form = (L.dim - L.commutant_dimension()) * V.dim_v
        dim_at_zero = kernel_at(system, zero).dimension
        if dim_at_zero != closed_form:
            raise VerificationFailure("closed form at d=0 disagrees with the kernel")
        if dim_at_zero >= 1:
            findings[zero] = dim_at_zero
    for delta in sorted(candidates):
        dim = kernel_at(system, delta).dimension
        if dim >= 1:
            findings[delta] = dim
    findings = dict(sorted(findings.items()))
    factors = tuple(sorted(nonrational, key=lambda q: (q.degree, q.coeffs)))
    return ScanReport(findings=findings, nonrational_factors=factors, generic_rank=generic_rank)
