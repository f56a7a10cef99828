"""Lie algebras over the rationals, given by structure constants, and their
finite-dimensional representations.

Conventions fixed here and relied on by all golden outputs:

* Structure constants are stored sparsely for i < j only; antisymmetry is
  structural, the bracket of arbitrary vectors is computed by bilinear
  expansion.
* The 3-dimensional rank-1 simple algebra ``sl2()`` uses the basis order
  (e-, h, e+) with [h, e-] = -2 e-, [h, e+] = 2 e+, [e+, e-] = h, and
  carries the bookkeeping weights (1, 0, -1).  Note these differ from the
  ad(h) eigenvalues (-2, 0, 2) by a factor of -2; ``weight_decomposition``
  always reports raw eigenvalues.
* The irreducible (n+1)-dimensional module ``sl2_module(n)`` has basis
  v_0..v_n with e- . v_i = (i+1) v_{i+1}, h . v_i = (n-2i) v_i,
  e+ . v_i = (n-i+1) v_{i-1} (terms out of range are zero); v_i carries
  the bookkeeping weight i, which is (n - eigenvalue)/2.
* Tensor product bases are row-major in (first factor, second factor).

Every constructor validates its result exhaustively (the Jacobi identity
over all basis triples, the homomorphism identity over all basis pairs)
unless validation is explicitly skipped; the test suite never skips.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import (
    Mat,
    Vec,
    canonical_basis,
    commutator,
    identity,
    kron,
    nullspace_bareiss,
    zeros,
)


class JacobiViolation(Exception):
    """Raised when the Jacobi identity fails on a basis triple."""

    def __init__(self, i: int, j: int, k: int, residual: tuple[Fraction, ...]):
        self.triple = (i, j, k)
        self.residual = residual
        super().__init__(f"Jacobi identity fails on triple {self.triple}: residual {residual}")


class HomomorphismViolation(Exception):
    """Raised when action matrices fail the bracket relation on a basis pair."""

    def __init__(self, i: int, j: int):
        self.pair = (i, j)
        super().__init__(f"action matrices violate the bracket relation on pair {self.pair}")


class IndexOutOfRange(Exception):
    pass


class AlgebraMismatch(Exception):
    pass


class NotDiagonal(Exception):
    pass


# (i, j) with i < j  ->  ((k, c), ...) meaning [e_i, e_j] = sum c * e_k
StructureMap = dict[tuple[int, int], tuple[tuple[int, Fraction], ...]]


@dataclass(eq=False, frozen=True)
class LieAlgebra:
    dim: int
    structure: StructureMap
    basis_labels: tuple[str, ...]
    summand_boundaries: tuple[tuple[int, int], ...]
    basis_weights: tuple[int, ...] | None = None

    def __eq__(self, other) -> bool:
        """Structural equality; labels and weights are cosmetic."""
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.structure == other.structure
            and self.summand_boundaries == other.summand_boundaries
        )

    def bracket_basis(self, i: int, j: int) -> Vec:
        """[e_i, e_j] as a dense coordinate vector."""
        out = [Fraction(0)] * self.dim
        if i == j:
            return out
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        for k, c in self.structure.get((i, j), ()):
            out[k] += sign * c
        return out

    def bracket(self, x: Vec, y: Vec) -> Vec:
        """[x, y] by bilinear expansion of the structure constants."""
        out = [Fraction(0)] * self.dim
        for (i, j), terms in self.structure.items():
            coef = x[i] * y[j] - x[j] * y[i]
            if coef:
                for k, c in terms:
                    out[k] += coef * c
        return out

    def ad_matrix(self, i: int) -> Mat:
        """Matrix of ad(e_i), columns indexed by the acted-on basis element."""
        m = zeros(self.dim, self.dim)
        for j in range(self.dim):
            col = self.bracket_basis(i, j)
            for k in range(self.dim):
                m[k][j] = col[k]
        return m

    def commutant_dimension(self) -> int:
        """Dimension of [L, L], the span of all basis brackets."""
        vectors = [self.bracket_basis(i, j) for i in range(self.dim) for j in range(i + 1, self.dim)]
        return len(canonical_basis(vectors))


def _check_jacobi(alg: LieAlgebra) -> None:
    n = alg.dim
    units = identity(n)
    for i in range(n):
        for j in range(i + 1, n):
            bij = alg.bracket_basis(i, j)
            for k in range(j + 1, n):
                res = alg.bracket(bij, units[k])
                for term in (
                    alg.bracket(alg.bracket_basis(j, k), units[i]),
                    alg.bracket(alg.bracket_basis(k, i), units[j]),
                ):
                    for c in range(n):
                        res[c] += term[c]
                if any(res):
                    raise JacobiViolation(i, j, k, tuple(res))


def algebra_from_structure_constants(
    dim: int,
    entries,
    labels=None,
    summand_boundaries=None,
    weights=None,
    validate: bool = True,
) -> LieAlgebra:
    """Build and validate a Lie algebra from sparse structure constants.

    ``entries`` is an iterable of (i, j, k, c) with i < j, meaning the
    coefficient of e_k in [e_i, e_j] is c.  Coefficients for a repeated
    (i, j, k) accumulate.  The Jacobi identity is checked on every basis
    triple unless ``validate`` is False.
    """
    if dim < 0:
        raise ValueError("dimension must be nonnegative")
    acc: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i, j, k, c in entries:
        if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
            raise IndexOutOfRange(f"index out of range in entry {(i, j, k)}")
        if i >= j:
            raise ValueError(f"structure constants must be given for i < j, got {(i, j)}")
        acc.setdefault((i, j), {})
        acc[(i, j)][k] = acc[(i, j)].get(k, Fraction(0)) + Fraction(c)
    structure: StructureMap = {}
    for key in sorted(acc):
        terms = tuple((k, c) for k, c in sorted(acc[key].items()) if c != 0)
        if terms:
            structure[key] = terms
    if labels is None:
        labels = tuple(f"x{i}" for i in range(dim))
    if summand_boundaries is None:
        summand_boundaries = ((0, dim),) if dim else ()
    alg = LieAlgebra(
        dim=dim,
        structure=structure,
        basis_labels=tuple(labels),
        summand_boundaries=tuple(tuple(b) for b in summand_boundaries),
        basis_weights=tuple(weights) if weights is not None else None,
    )
    if validate:
        _check_jacobi(alg)
    return alg


def sl2() -> LieAlgebra:
    """The rank-1 simple algebra in the basis (e-, h, e+).

    [h, e-] = -2 e-, [h, e+] = 2 e+, [e+, e-] = h.  Basis weights (1, 0, -1).
    """
    return algebra_from_structure_constants(
        3,
        [
            (0, 1, 0, 2),   # [e-, h] = 2 e-
            (0, 2, 1, -1),  # [e-, e+] = -h
            (1, 2, 2, 2),   # [h, e+] = 2 e+
        ],
        labels=("e-", "h", "e+"),
        weights=(1, 0, -1),
    )


@dataclass(eq=False, frozen=True)
class Representation:
    algebra: LieAlgebra
    dim_v: int
    action: tuple  # one dim_v x dim_v matrix (tuple of row tuples) per basis element
    weight_labels: tuple[int, ...] | None = None

    def action_matrix(self, i: int) -> Mat:
        return [list(row) for row in self.action[i]]

    def act(self, i: int, v: Vec) -> Vec:
        """e_i . v as a coordinate vector."""
        return [
            sum((row[m] * v[m] for m in range(self.dim_v) if v[m]), Fraction(0))
            for row in self.action[i]
        ]


def _freeze_matrix(m: Mat) -> tuple:
    return tuple(tuple(Fraction(x) for x in row) for row in m)


def _check_homomorphism(rep: Representation) -> None:
    alg = rep.algebra
    mats = [rep.action_matrix(i) for i in range(alg.dim)]
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            lhs = commutator(mats[i], mats[j])
            rhs = zeros(rep.dim_v, rep.dim_v)
            for k, c in alg.structure.get((i, j), ()):
                for r in range(rep.dim_v):
                    for s in range(rep.dim_v):
                        rhs[r][s] += c * mats[k][r][s]
            if lhs != rhs:
                raise HomomorphismViolation(i, j)


def representation_from_action(
    algebra: LieAlgebra, matrices, weights=None, validate: bool = True
) -> Representation:
    """Wrap one action matrix per basis element into a validated module."""
    mats = tuple(_freeze_matrix(m) for m in matrices)
    if len(mats) != algebra.dim:
        raise ValueError(f"need {algebra.dim} action matrices, got {len(mats)}")
    dim_v = len(mats[0]) if mats else 0
    for m in mats:
        if len(m) != dim_v or any(len(row) != dim_v for row in m):
            raise ValueError("action matrices must be square and equally sized")
    rep = Representation(
        algebra=algebra,
        dim_v=dim_v,
        action=mats,
        weight_labels=tuple(weights) if weights is not None else None,
    )
    if validate:
        _check_homomorphism(rep)
    return rep


def sl2_module(n: int) -> Representation:
    """The irreducible (n+1)-dimensional module of sl2() with basis v_0..v_n.

    e- . v_i = (i+1) v_{i+1},  h . v_i = (n-2i) v_i,  e+ . v_i = (n-i+1) v_{i-1}.
    """
    if n < 0:
        raise ValueError("highest weight must be nonnegative")
    d = n + 1
    lower = zeros(d, d)
    diag = zeros(d, d)
    upper = zeros(d, d)
    for i in range(d):
        if i + 1 < d:
            lower[i + 1][i] = Fraction(i + 1)
        diag[i][i] = Fraction(n - 2 * i)
        if i - 1 >= 0:
            upper[i - 1][i] = Fraction(n - i + 1)
    return representation_from_action(sl2(), [lower, diag, upper], weights=range(d))


def adjoint_module(L: LieAlgebra) -> Representation:
    """The algebra acting on itself through ad(x) y = [x, y]."""
    return representation_from_action(L, [L.ad_matrix(i) for i in range(L.dim)])


def trivial_module(L: LieAlgebra, d: int) -> Representation:
    if d < 0:
        raise ValueError("dimension must be nonnegative")
    return representation_from_action(L, [zeros(d, d) for _ in range(L.dim)])


def sl_n(n: int) -> tuple[LieAlgebra, Representation]:
    """The traceless n x n matrices with their natural n-dimensional module.

    Basis order: matrix units E_ij for i > j (lexicographic), then the
    diagonals H_k = E_kk - E_(k+1)(k+1), then E_ij for i < j.  For n = 2 this
    is (E21, H1, E12), whose bracket table equals that of sl2() under the
    identification (e-, h, e+) = (E21, H1, E12).
    """
    if n < 2:
        raise ValueError("n must be at least 2")

    def unit(i: int, j: int) -> Mat:
        m = zeros(n, n)
        m[i][j] = Fraction(1)
        return m

    basis_mats: list[Mat] = []
    labels: list[str] = []
    positions: dict[tuple[int, int], int] = {}  # off-diagonal unit -> basis index
    for i in range(n):
        for j in range(n):
            if i > j:
                positions[(i, j)] = len(basis_mats)
                basis_mats.append(unit(i, j))
                labels.append(f"E{i + 1}{j + 1}")
    h_start = len(basis_mats)
    for k in range(n - 1):
        m = unit(k, k)
        m[k + 1][k + 1] = Fraction(-1)
        basis_mats.append(m)
        labels.append(f"H{k + 1}")
    for i in range(n):
        for j in range(n):
            if i < j:
                positions[(i, j)] = len(basis_mats)
                basis_mats.append(unit(i, j))
                labels.append(f"E{i + 1}{j + 1}")

    def coordinates(m: Mat) -> Vec:
        out = [Fraction(0)] * len(basis_mats)
        for (i, j), idx in positions.items():
            out[idx] = m[i][j]
        partial = Fraction(0)
        for k in range(n - 1):
            partial += m[k][k]
            out[h_start + k] = partial
        return out

    dim = len(basis_mats)
    entries = []
    for a in range(dim):
        for b in range(a + 1, dim):
            coords = coordinates(commutator(basis_mats[a], basis_mats[b]))
            for k, c in enumerate(coords):
                if c:
                    entries.append((a, b, k, c))
    alg = algebra_from_structure_constants(dim, entries, labels=labels)
    natural = representation_from_action(alg, basis_mats)
    return alg, natural


def direct_sum_algebras(parts: list[LieAlgebra]) -> LieAlgebra:
    """Block-concatenate algebras; cross-summand brackets vanish.

    Summand boundaries of the parts are flattened, so iterated sums in any
    association give structurally equal results.
    """
    if not parts:
        raise ValueError("need at least one summand")
    entries = []
    labels: list[str] = []
    boundaries: list[tuple[int, int]] = []
    weights: list[int] = []
    have_weights = all(p.basis_weights is not None for p in parts)
    offset = 0
    for p in parts:
        for (i, j), terms in p.structure.items():
            for k, c in terms:
                entries.append((i + offset, j + offset, k + offset, c))
        labels.extend(p.basis_labels)
        boundaries.extend((a + offset, b + offset) for a, b in p.summand_boundaries)
        if have_weights:
            weights.extend(p.basis_weights)
        offset += p.dim
    return algebra_from_structure_constants(
        offset,
        entries,
        labels=labels,
        summand_boundaries=boundaries,
        weights=weights if have_weights else None,
    )


def direct_sum_modules(parts: list[Representation]) -> Representation:
    """Block-diagonal sum of modules over one common algebra."""
    if not parts:
        raise ValueError("need at least one summand")
    alg = parts[0].algebra
    for p in parts[1:]:
        if p.algebra != alg:
            raise AlgebraMismatch("module summands live over different algebras")
    total = sum(p.dim_v for p in parts)
    mats = []
    for i in range(alg.dim):
        m = zeros(total, total)
        off = 0
        for p in parts:
            block = p.action[i]
            for r in range(p.dim_v):
                for s in range(p.dim_v):
                    m[off + r][off + s] = block[r][s]
            off += p.dim_v
        mats.append(m)
    weights = None
    if all(p.weight_labels is not None for p in parts):
        weights = [w for p in parts for w in p.weight_labels]
    return representation_from_action(alg, mats, weights=weights)


def tensor_module(v1: Representation, v2: Representation) -> Representation:
    """Tensor product over the direct sum of the two underlying algebras.

    The first algebra acts on the first factor (rho1(x) (x) I), the second
    on the second (I (x) rho2(x)); basis order is row-major in
    (first factor index, second factor index).
    """
    alg = direct_sum_algebras([v1.algebra, v2.algebra])
    i1 = identity(v1.dim_v)
    i2 = identity(v2.dim_v)
    mats = [kron(v1.action_matrix(i), i2) for i in range(v1.algebra.dim)]
    mats += [kron(i1, v2.action_matrix(i)) for i in range(v2.algebra.dim)]
    return representation_from_action(alg, mats)


def invariants(V: Representation) -> tuple[tuple[Fraction, ...], ...]:
    """Basis of the joint kernel of all action matrices (the invariants)."""
    rows: list[Vec] = []
    for i in range(V.algebra.dim):
        rows.extend(list(row) for row in V.action[i])
    return nullspace_bareiss(rows, V.dim_v)


def weight_decomposition(
    L: LieAlgebra, V: Representation, h_index: int
) -> list[tuple[Fraction, tuple[int, ...], tuple[int, ...]]]:
    """Group basis indices by eigenvalues of a designated diagonal element.

    Requires ad(e_h) and rho(e_h) to already be diagonal in the given bases
    (checked, never diagonalized).  Returns (eigenvalue, algebra indices,
    module indices) triples sorted by eigenvalue; these define the grading
    used to block the derivation solver.  Eigenvalues are reported raw.
    """
    if not 0 <= h_index < L.dim:
        raise IndexOutOfRange(f"no basis element {h_index}")
    adh = L.ad_matrix(h_index)
    for i in range(L.dim):
        for j in range(L.dim):
            if i != j and adh[i][j] != 0:
                raise NotDiagonal(f"ad(e_{h_index}) has off-diagonal entry at {(i, j)}")
    rhoh = V.action[h_index]
    for i in range(V.dim_v):
        for j in range(V.dim_v):
            if i != j and rhoh[i][j] != 0:
                raise NotDiagonal(f"action of e_{h_index} has off-diagonal entry at {(i, j)}")
    groups: dict[Fraction, tuple[list[int], list[int]]] = {}
    for a in range(L.dim):
        groups.setdefault(adh[a][a], ([], []))[0].append(a)
    for m in range(V.dim_v):
        groups.setdefault(rhoh[m][m], ([], []))[1].append(m)
    return [(w, tuple(groups[w][0]), tuple(groups[w][1])) for w in sorted(groups)]
