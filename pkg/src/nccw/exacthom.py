"""Exact linear algebra over the integers and rationals.

Everything here is computed with arbitrary-precision Python integers held
in numpy object arrays; no floating point is used anywhere.  The module
provides Smith normal form with unimodular transforms, finitely generated
abelian groups in invariant-factor normal form, integer cochain complexes,
and their (co)homology with or without coefficients.

Conventions
-----------
* A matrix is a 2-d numpy array with ``dtype=object`` and Python ``int``
  entries, frozen (``writeable = False``) after construction.
* ``FGAbelianGroup(free_rank, torsion)`` is the canonical form
  ``Z^free_rank (+) Z/d_1 (+) ... (+) Z/d_t`` with ``d_1 | d_2 | ...`` and
  every ``d_i >= 2``.  Equality of groups is structural equality of the
  canonical form.
* A ``CochainComplex`` stores ranks ``c_0 .. c_k`` and one matrix per
  adjacent pair of degrees.  With the ``cohomological`` orientation the
  matrix at index ``p`` maps degree ``p`` to degree ``p + 1`` and has shape
  ``(c_{p+1}, c_p)``; with the ``homological`` orientation it maps degree
  ``p + 1`` to degree ``p`` and has shape ``(c_p, c_{p+1})``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ComplexViolation, OutOfRange, ShapeMismatch

RING_Z = "Z"
RING_Q = "Q"

ORIENT_COHOMOLOGICAL = "cohomological"
ORIENT_HOMOLOGICAL = "homological"


# ---------------------------------------------------------------------------
# matrix helpers


def intmat(data, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Build a frozen exact integer matrix from a nested sequence.

    ``shape`` disambiguates matrices with zero rows or zero columns, where
    the nested-list form cannot carry the missing dimension.
    """
    if isinstance(data, np.ndarray):
        if data.ndim != 2:
            raise ShapeMismatch(f"expected a 2-d matrix, got {data.ndim}-d")
        rows = data.tolist()
        inferred: tuple[int, int] | None = data.shape
    else:
        rows = [list(r) for r in data]
        inferred = None
    nrows = len(rows)
    if inferred is not None:
        ncols = inferred[1]
    else:
        ncols = len(rows[0]) if nrows else (shape[1] if shape else 0)
    if shape is not None:
        if nrows != shape[0] or (nrows > 0 and ncols != shape[1]):
            raise ShapeMismatch(f"expected shape {shape}, got {nrows}x{ncols}")
        ncols = shape[1]
    out = np.empty((nrows, ncols), dtype=object)
    for i, row in enumerate(rows):
        if len(row) != ncols:
            raise ShapeMismatch(f"row {i} has length {len(row)}, expected {ncols}")
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
                raise ShapeMismatch(f"entry ({i},{j}) is not an integer: {x!r}")
            out[i, j] = int(x)
    out.flags.writeable = False
    return out


def zeros(nrows: int, ncols: int) -> np.ndarray:
    out = np.zeros((nrows, ncols), dtype=object)
    out.flags.writeable = False
    return out


def identity(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    out.flags.writeable = False
    return out


def freeze(arr: np.ndarray) -> np.ndarray:
    if arr.dtype != object:
        arr = arr.astype(object)
    arr = np.ascontiguousarray(arr)
    arr.flags.writeable = False
    return arr


def mat_eq(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and bool(np.array_equal(a, b))


def is_zero_mat(a: np.ndarray) -> bool:
    return a.size == 0 or not np.any(a != 0)


def hstack_mats(mats: list[np.ndarray], nrows: int) -> np.ndarray:
    mats = [m for m in mats if m.shape[1] > 0]
    if not mats:
        return zeros(nrows, 0)
    for m in mats:
        if m.shape[0] != nrows:
            raise ShapeMismatch("hstack row counts disagree")
    return freeze(np.concatenate(mats, axis=1))


def block_diag(blocks: list[tuple[np.ndarray, tuple[int, int]]]) -> np.ndarray:
    """Block-diagonal matrix; each block comes with its (rows, cols) shape so
    zero-size blocks still occupy their slot."""
    nrows = sum(s[0] for _, s in blocks)
    ncols = sum(s[1] for _, s in blocks)
    out = np.zeros((nrows, ncols), dtype=object)
    i = j = 0
    for mat, (r, c) in blocks:
        if mat.shape != (r, c):
            raise ShapeMismatch("block shape disagrees with declared shape")
        if r and c:
            out[i : i + r, j : j + c] = mat
        i += r
        j += c
    return freeze(out)


def determinant(mat: np.ndarray) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = mat.shape[0]
    if mat.shape != (n, n):
        raise ShapeMismatch("determinant needs a square matrix")
    if n == 0:
        return 1
    a = [[int(x) for x in row] for row in mat]
    sign = 1
    prev = 1
    for t in range(n - 1):
        if a[t][t] == 0:
            for r in range(t + 1, n):
                if a[r][t] != 0:
                    a[t], a[r] = a[r], a[t]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(t + 1, n):
            for c in range(t + 1, n):
                a[r][c] = (a[r][c] * a[t][t] - a[r][t] * a[t][c]) // prev
            a[r][t] = 0
        prev = a[t][t]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form


def _min_abs_pivot(a, m, n, t):
    best = None
    for i in range(t, m):
        row = a[i]
        for j in range(t, n):
            v = row[j]
            if v != 0 and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
                if best[0] == 1:
                    return best[1], best[2]
    return (best[1], best[2]) if best else None


def _smith_core(mat: np.ndarray, want_uinv: bool):
    """Diagonalize by unimodular row/column operations.

    Pivots are chosen with minimal absolute value to limit coefficient
    growth.  Row operations accumulate in ``U`` (and inversely in ``Uinv``
    when requested), column operations in ``V``.
    """
    m, n = mat.shape
    a = [[int(x) for x in row] for row in mat]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    Ui = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if want_uinv else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]
        if Ui is not None:
            for r in range(m):
                Ui[r][i], Ui[r][j] = Ui[r][j], Ui[r][i]

    def row_add(i, j, k):
        # row_i += k * row_j
        ai, aj = a[i], a[j]
        for c in range(n):
            ai[c] += k * aj[c]
        ui, uj = U[i], U[j]
        for c in range(m):
            ui[c] += k * uj[c]
        if Ui is not None:
            for r in range(m):
                Ui[r][j] -= k * Ui[r][i]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        U[i] = [-x for x in U[i]]
        if Ui is not None:
            for r in range(m):
                Ui[r][i] = -Ui[r][i]

    def swap_cols(i, j):
        for r in range(m):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(n):
            V[r][i], V[r][j] = V[r][j], V[r][i]

    def col_add(j, i, k):
        # col_j += k * col_i
        for r in range(m):
            a[r][j] += k * a[r][i]
        for r in range(n):
            V[r][j] += k * V[r][i]

    t = 0
    while t < min(m, n):
        loc = _min_abs_pivot(a, m, n, t)
        if loc is None:
            break
        swap_rows(t, loc[0])
        swap_cols(t, loc[1])
        while True:
            dirty = False
            for i in range(t + 1, m):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    if q:
                        row_add(i, t, -q)
                    if a[i][t] != 0:
                        # remainder is strictly smaller; promote it to pivot
                        swap_rows(t, i)
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(t + 1, n):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    if q:
                        col_add(j, t, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
                        break
            if not dirty:
                break
        # pivot must divide every remaining entry before we advance
        d = a[t][t]
        stuck = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % d != 0:
                    stuck = i
                    break
            if stuck is not None:
                break
        if stuck is not None:
            row_add(t, stuck, 1)
            continue
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    D = intmat(a, shape=(m, n))
    Um = intmat(U, shape=(m, m))
    Vm = intmat(V, shape=(n, n))
    Uim = intmat(Ui, shape=(m, m)) if Ui is not None else None
    _check_snf(mat, Um, D, Vm, Uim)
    return Um, D, Vm, Uim


def _check_snf(M, U, D, V, Ui):
    """Postconditions checked on every factorization: U M V = D, the
    diagonal divisibility chain, and unimodularity of the transforms."""
    if not mat_eq(U @ M @ V, D):
        raise RuntimeError("SNF postcondition failed: U M V != D")
    m, n = D.shape
    diag = [int(D[i, i]) for i in range(min(m, n))]
    for i in range(m):
        for j in range(n):
            if i != j and D[i, j] != 0:
                raise RuntimeError("SNF postcondition failed: D not diagonal")
    for i in range(len(diag) - 1):
        if diag[i] == 0 and diag[i + 1] != 0:
            raise RuntimeError("SNF postcondition failed: zero before nonzero")
        if diag[i] != 0 and diag[i + 1] % diag[i] != 0:
            raise RuntimeError("SNF postcondition failed: divisibility chain")
    if abs(determinant(U)) != 1 or abs(determinant(V)) != 1:
        raise RuntimeError("SNF postcondition failed: transform not unimodular")
    if Ui is not None and not mat_eq(U @ Ui, identity(m)):
        raise RuntimeError("SNF postcondition failed: U inverse wrong")


def smith_normal_form(mat: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return ``(U, D, V)`` with ``U @ mat @ V == D``.

    ``U`` and ``V`` are unimodular and ``D`` is diagonal with nonnegative
    entries ``d_1 | d_2 | ...`` (zeros trailing).  Postconditions are
    re-verified exactly on every call.
    """
    U, D, V, _ = _smith_core(intmat(mat), want_uinv=False)
    return U, D, V


def snf_diagonal(mat: np.ndarray) -> list[int]:
    _, D, _ = smith_normal_form(mat)
    return [int(D[i, i]) for i in range(min(D.shape)) if D[i, i] != 0]


def matrix_rank(mat: np.ndarray) -> int:
    """Rank over the rationals (equivalently the number of nonzero
    invariant factors)."""
    return len(snf_diagonal(mat))


def kernel_basis(mat: np.ndarray) -> np.ndarray:
    """Columns form a basis of the integer kernel ``{x : mat @ x = 0}``."""
    _, D, V = smith_normal_form(mat)
    r = len([i for i in range(min(D.shape)) if D[i, i] != 0])
    return freeze(V[:, r:])


def cokernel_invariants(mat: np.ndarray) -> tuple[int, list[int]]:
    """Structure of ``Z^rows / column span``: (free rank, invariant factors >= 2)."""
    diag = snf_diagonal(mat)
    free = mat.shape[0] - len(diag)
    return free, [d for d in diag if d >= 2]


# ---------------------------------------------------------------------------
# finitely generated abelian groups


@dataclass(frozen=True)
class FGAbelianGroup:
    """A finitely generated abelian group in invariant-factor normal form.

    ``Z^free_rank (+) Z/torsion[0] (+) ...`` with the divisibility chain
    ``torsion[0] | torsion[1] | ...`` and every factor at least 2.  The
    form is unique, so ``==`` decides isomorphism.
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        prev = 1
        for d in self.torsion:
            if d < 2:
                raise ValueError("invariant factors must be >= 2")
            if d % prev != 0:
                raise ValueError("invariant factors must form a divisibility chain")
            prev = d

    @classmethod
    def trivial(cls) -> "FGAbelianGroup":
        return cls(0, ())

    @classmethod
    def free(cls, rank: int) -> "FGAbelianGroup":
        return cls(rank, ())

    @classmethod
    def cyclic(cls, order: int) -> "FGAbelianGroup":
        return cls(0, (order,))

    @classmethod
    def from_cyclic_orders(cls, orders) -> "FGAbelianGroup":
        """Canonicalize an arbitrary direct sum of cyclic groups.

        ``0`` denotes an infinite cyclic summand.  The torsion part is
        renormalized into a divisibility chain by diagonalizing the
        diagonal matrix of orders.
        """
        free = sum(1 for d in orders if d == 0)
        finite = [abs(int(d)) for d in orders if d != 0]
        finite = [d for d in finite if d > 1]
        if not finite:
            return cls(free, ())
        diag = np.zeros((len(finite), len(finite)), dtype=object)
        for i, d in enumerate(finite):
            diag[i, i] = d
        return cls(free, tuple(d for d in snf_diagonal(freeze(diag)) if d >= 2))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def ngens(self) -> int:
        """Minimal number of generators of the canonical presentation."""
        return self.free_rank + len(self.torsion)

    def torsion_order(self) -> int:
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def direct_sum(self, *others: "FGAbelianGroup") -> "FGAbelianGroup":
        free = self.free_rank + sum(g.free_rank for g in others)
        orders = list(self.torsion)
        for g in others:
            orders.extend(g.torsion)
        return FGAbelianGroup.from_cyclic_orders([0] * free + orders)

    def render(self, symbol: str = "Z") -> str:
        """Canonical string: ``0 | Z^r | Z/d | term (+) term ...``."""
        terms = []
        if self.free_rank == 1:
            terms.append(symbol)
        elif self.free_rank > 1:
            terms.append(f"{symbol}^{self.free_rank}")
        terms.extend(f"Z/{d}" for d in self.torsion)
        return " (+) ".join(terms) if terms else "0"

    def __str__(self) -> str:
        return self.render()


def cokernel_group(mat: np.ndarray) -> FGAbelianGroup:
    free, tors = cokernel_invariants(mat)
    return FGAbelianGroup(free, tuple(tors))


# ---------------------------------------------------------------------------
# lattice subquotients (used by the spectral-sequence engine)


def relation_matrix(orders: list[int]) -> np.ndarray:
    """Columns ``d_i * e_i`` for the finite orders in a canonical
    presentation (order 0 marks a free generator and contributes nothing)."""
    m = len(orders)
    cols = [i for i, d in enumerate(orders) if d != 0]
    out = np.zeros((m, len(cols)), dtype=object)
    for j, i in enumerate(cols):
        out[i, j] = int(orders[i])
    return freeze(out)


def presented_subquotient(
    orders: list[int],
    out_map: np.ndarray | None,
    out_orders: list[int],
    in_map: np.ndarray | None,
) -> FGAbelianGroup:
    """Kernel-mod-image inside a presented group.

    The ambient group is ``Z^m / R`` where ``m = len(orders)`` and ``R``
    is the relation lattice of ``orders``.  ``out_map`` (on generators)
    must be well defined modulo the target relations described by
    ``out_orders``; ``in_map`` lands in the ambient group.  Both may be
    None for the zero map.  Returns ker(out)/im(in) in canonical form.
    """
    m = len(orders)
    rel = relation_matrix(orders)
    if out_map is None or is_zero_mat(out_map):
        kgen = identity(m)
    else:
        if out_map.shape[1] != m:
            raise ShapeMismatch("outgoing map has wrong number of columns")
        out_rel = relation_matrix(out_orders)
        stacked = hstack_mats([freeze(np.negative(out_rel)), out_map], out_map.shape[0])
        # kernel columns are (y, x) pairs with out_map @ x = out_rel @ y;
        # the x block spans the preimage of the target relation lattice
        kgen = freeze(kernel_basis(stacked)[out_rel.shape[1] :, :])
    jcols = [rel]
    if in_map is not None and not is_zero_mat(in_map):
        if in_map.shape[0] != m:
            raise ShapeMismatch("incoming map has wrong number of rows")
        jcols.append(in_map)
    jmat = hstack_mats(jcols, m)

    U, D, _, _ = _smith_core(kgen, want_uinv=False)
    diag = [int(D[i, i]) for i in range(min(D.shape)) if D[i, i] != 0]
    r = len(diag)
    coords = U @ jmat
    x = np.zeros((r, jmat.shape[1]), dtype=object)
    for i in range(coords.shape[0]):
        for j in range(coords.shape[1]):
            v = int(coords[i, j])
            if i >= r:
                if v != 0:
                    raise ShapeMismatch("image does not lie inside the kernel")
            else:
                if v % diag[i] != 0:
                    raise ShapeMismatch("image does not lie inside the kernel lattice")
                x[i, j] = v // diag[i]
    return cokernel_group(freeze(x))


def rational_subquotient(dim: int, out_map, in_map) -> int:
    """dim ker - dim im for a vector-space subquotient, via integer ranks."""
    r_out = matrix_rank(out_map) if out_map is not None else 0
    r_in = matrix_rank(in_map) if in_map is not None else 0
    return dim - r_out - r_in


# ---------------------------------------------------------------------------
# cochain complexes


class CochainComplex:
    """A bounded complex of free modules over Z or Q with exact matrices.

    ``ranks`` are the module ranks in degrees ``0 .. k``; adjacent
    composites are checked to vanish on construction.
    """

    def __init__(self, ring: str, ranks, differentials, orientation: str = ORIENT_COHOMOLOGICAL):
        if ring not in (RING_Z, RING_Q):
            raise ValueError(f"unknown ring {ring!r}")
        if orientation not in (ORIENT_COHOMOLOGICAL, ORIENT_HOMOLOGICAL):
            raise ValueError(f"unknown orientation {orientation!r}")
        ranks = tuple(int(c) for c in ranks)
        if not ranks or any(c < 0 for c in ranks):
            raise ValueError("ranks must be a nonempty list of nonnegative integers")
        diffs = [intmat(d) for d in differentials]
        if len(diffs) != len(ranks) - 1:
            raise ShapeMismatch("need exactly one differential per adjacent degree pair")
        for p, d in enumerate(diffs):
            expect = self._expected_shape(orientation, ranks, p)
            if d.shape != expect:
                raise ShapeMismatch(f"differential {p} has shape {d.shape}, expected {expect}")
        for p in range(len(diffs) - 1):
            if orientation == ORIENT_COHOMOLOGICAL:
                prod = diffs[p + 1] @ diffs[p]
            else:
                prod = diffs[p] @ diffs[p + 1]
            if not is_zero_mat(prod):
                raise ComplexViolation(p)
        self.ring = ring
        self.ranks = ranks
        self.differentials = tuple(diffs)
        self.orientation = orientation

    @staticmethod
    def _expected_shape(orientation, ranks, p):
        if orientation == ORIENT_COHOMOLOGICAL:
            return (ranks[p + 1], ranks[p])
        return (ranks[p], ranks[p + 1])

    @property
    def top_degree(self) -> int:
        return len(self.ranks) - 1

    def rank(self, p: int) -> int:
        if 0 <= p <= self.top_degree:
            return self.ranks[p]
        return 0

    def differential(self, p: int) -> np.ndarray:
        """The stored matrix at index ``p``, or an appropriately shaped zero
        matrix outside the stored range."""
        if 0 <= p < len(self.differentials):
            return self.differentials[p]
        if self.orientation == ORIENT_COHOMOLOGICAL:
            return zeros(self.rank(p + 1), self.rank(p))
        return zeros(self.rank(p), self.rank(p + 1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CochainComplex):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.ranks == other.ranks
            and self.orientation == other.orientation
            and all(mat_eq(a, b) for a, b in zip(self.differentials, other.differentials))
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"CochainComplex(ring={self.ring}, ranks={list(self.ranks)}, {self.orientation})"


def dual_transpose(c: CochainComplex) -> CochainComplex:
    """Transpose every differential and flip the orientation tag."""
    flipped = (
        ORIENT_HOMOLOGICAL if c.orientation == ORIENT_COHOMOLOGICAL else ORIENT_COHOMOLOGICAL
    )
    return CochainComplex(c.ring, c.ranks, [freeze(d.T) for d in c.differentials], flipped)


def _boundary_maps_at(c: CochainComplex, p: int):
    """(outgoing, incoming) matrices whose kernel/image compute the
    (co)homology at degree ``p`` in the complex's own orientation."""
    if c.orientation == ORIENT_COHOMOLOGICAL:
        return c.differential(p), c.differential(p - 1)
    return c.differential(p - 1), c.differential(p)


def cohomology_at(c: CochainComplex, p: int) -> FGAbelianGroup:
    """ker/im at degree ``p`` in canonical form.

    Over Z the free rank is ``c_p - rank(out) - rank(in)`` and the torsion
    is exactly the invariant factors (>= 2) of the incoming matrix; every
    torsion class of the ambient cokernel already lies in the kernel of
    the outgoing map because the composite vanishes.  Over Q the torsion
    is dropped.
    """
    if not 0 <= p <= c.top_degree:
        raise OutOfRange(f"degree {p} outside 0..{c.top_degree}")
    out_map, in_map = _boundary_maps_at(c, p)
    free = c.rank(p) - matrix_rank(out_map) - matrix_rank(in_map)
    if c.ring == RING_Q:
        return FGAbelianGroup.free(free)
    torsion = [d for d in snf_diagonal(in_map) if d >= 2]
    return FGAbelianGroup(free, tuple(torsion))


def all_cohomology(c: CochainComplex) -> list[FGAbelianGroup]:
    return [cohomology_at(c, p) for p in range(c.top_degree + 1)]


def _coefficient_expansion(c: CochainComplex, group: FGAbelianGroup) -> CochainComplex:
    """Free integer complex whose cohomology in degrees 1..k+1 equals the
    cohomology of ``c`` tensored with ``group`` in degrees 0..k.

    Each free generator of the coefficient group contributes a plain copy
    of the complex.  Each cyclic factor Z/d contributes a copy together
    with relation generators one degree lower, glued by multiplication by
    d: at (shifted) degree p the block holds the (p+1)-generators and the
    p-generators, with differential  (x, y) |-> (-d_{p+1} x, d x + d_p y).
    The whole expansion is block diagonal across coefficient summands.
    """
    if c.orientation != ORIENT_COHOMOLOGICAL:
        raise ValueError("coefficient expansion needs a cohomological complex")
    k = c.top_degree

    def cyc_rank(p: int, d: int | None) -> int:
        if d is None:
            return c.rank(p)
        return c.rank(p + 1) + c.rank(p)

    def cyc_diff(p: int, d: int | None) -> np.ndarray:
        if d is None:
            return c.differential(p)
        top = hstack_mats(
            [freeze(np.negative(c.differential(p + 1))), zeros(c.rank(p + 2), c.rank(p))],
            c.rank(p + 2),
        )
        dident = np.zeros((c.rank(p + 1), c.rank(p + 1)), dtype=object)
        for i in range(c.rank(p + 1)):
            dident[i, i] = d
        bottom = hstack_mats([freeze(dident), c.differential(p)], c.rank(p + 1))
        if top.shape[0] == 0:
            return bottom
        if bottom.shape[0] == 0:
            return top
        return freeze(np.concatenate([top, bottom], axis=0))

    summands: list[int | None] = [None] * group.free_rank + list(group.torsion)
    ranks = []
    diffs = []
    for p in range(-1, k + 1):
        ranks.append(sum(cyc_rank(p, d) for d in summands))
    for p in range(-1, k):
        blocks = [
            (cyc_diff(p, d), (cyc_rank(p + 1, d), cyc_rank(p, d))) for d in summands
        ]
        diffs.append(block_diag(blocks))
    return CochainComplex(RING_Z, ranks, diffs, ORIENT_COHOMOLOGICAL)


def cohomology_with_coefficients(
    c: CochainComplex, group: FGAbelianGroup
) -> list[FGAbelianGroup]:
    """Cohomology of ``c`` with coefficients in ``group``, degree by degree.

    The complex must be over Z.  The computation expands the coefficient
    group generator by generator into an honest free complex (see
    ``_coefficient_expansion``) and reduces by Smith normal form; no
    universal-coefficient bookkeeping is involved.
    """
    if c.ring != RING_Z:
        raise ValueError("coefficient cohomology needs an integer complex")
    if group.is_trivial:
        return [FGAbelianGroup.trivial() for _ in range(c.top_degree + 1)]
    expanded = _coefficient_expansion(c, group)
    return [cohomology_at(expanded, p + 1) for p in range(c.top_degree + 1)]
