"""Shared model builders, random generators, and independent oracles.

The oracles here deliberately avoid the code paths they check: cellular
homology is recomputed from Smith normal form data alone, six-term
kernel/cokernel groups come straight from one matrix, and coefficient
cohomology has a Tor/tensor formula oracle.
"""

import math
import random

import numpy as np
import pytest

from nccw import cellmodel, exacthom
from nccw.exacthom import (
    CochainComplex,
    FGAbelianGroup,
    cokernel_group,
    intmat,
    kernel_basis,
    matrix_rank,
    snf_diagonal,
    zeros,
)
from nccw.findim import FinDimAlgebra, MultMorphism


# ---------------------------------------------------------------------------
# shipped models


def point_model():
    return cellmodel.build([cellmodel.NCCWStage(0, FinDimAlgebra([1]))])


def circle_model():
    a0 = FinDimAlgebra([1])
    f1 = FinDimAlgebra([1])
    ep = cellmodel.EndpointPair(
        MultMorphism(a0, f1, [[1]]), MultMorphism(a0, f1, [[1]])
    )
    return cellmodel.build(
        [cellmodel.NCCWStage(0, a0), cellmodel.NCCWStage(1, f1, ep)]
    )


def dimension_drop_model(p: int):
    a0 = FinDimAlgebra([1, 1])
    f1 = FinDimAlgebra([p])
    ep = cellmodel.EndpointPair(
        MultMorphism(a0, f1, [[p, 0]]), MultMorphism(a0, f1, [[0, p]])
    )
    return cellmodel.build(
        [cellmodel.NCCWStage(0, a0), cellmodel.NCCWStage(1, f1, ep)]
    )


def interval_cw():
    return cellmodel.from_classical_cw([2, 1], [intmat([[-1], [1]])])


def circle_cw():
    return cellmodel.from_classical_cw([1, 1], [intmat([[0]])])


def sphere_cw():
    return cellmodel.from_classical_cw([1, 0, 1], [zeros(1, 0), zeros(0, 1)])


def torus_cw():
    return cellmodel.from_classical_cw([1, 2, 1], [intmat([[0, 0]]), intmat([[0], [0]])])


def projective_plane_cw():
    return cellmodel.from_classical_cw([1, 1, 1], [intmat([[0]]), intmat([[2]])])


@pytest.fixture
def rp2():
    return projective_plane_cw()


# ---------------------------------------------------------------------------
# random generators (seeded by the tests that use them)


def random_int_matrix(rng: random.Random, rows, cols, max_entry=3):
    return intmat(
        [[rng.randint(-max_entry, max_entry) for _ in range(cols)] for _ in range(rows)],
        shape=(rows, cols),
    )


def random_cochain_complex(rng: random.Random, max_k=3, max_rank=4, max_entry=3, ring="Z"):
    """A valid random complex: each differential is built row by row from
    the left kernel of the previous one, so d after d = 0 by construction."""
    k = rng.randint(0, max_k)
    ranks = [rng.randint(0, max_rank) for _ in range(k + 1)]
    diffs = []
    prev = None
    for p in range(k):
        rows, cols = ranks[p + 1], ranks[p]
        if prev is None or prev.shape[1] == 0:
            mat = random_int_matrix(rng, rows, cols, max_entry)
        else:
            kb = kernel_basis(prev.T)
            s = kb.shape[1]
            built = []
            for _ in range(rows):
                vec = [0] * cols
                if s:
                    for _attempt in range(20):
                        coeffs = np.array(
                            [[rng.randint(-2, 2)] for _ in range(s)], dtype=object
                        )
                        cand = (kb @ coeffs).reshape(cols)
                        if all(abs(int(x)) <= max_entry for x in cand):
                            vec = [int(x) for x in cand]
                            break
                built.append(vec)
            mat = intmat(built, shape=(rows, cols))
        diffs.append(mat)
        prev = mat
    return CochainComplex(ring, ranks, diffs)


def random_stage1_complex(rng: random.Random, max_blocks=3, max_mult=3):
    """Random one-dimensional tower with endpoint attaching data; target
    block sizes are grown to accommodate both endpoint morphisms."""
    s = rng.randint(1, max_blocks)
    t = rng.randint(1, max_blocks)
    src_sizes = [rng.randint(1, 3) for _ in range(s)]
    m0 = [[rng.randint(0, max_mult) for _ in range(s)] for _ in range(t)]
    m1 = [[rng.randint(0, max_mult) for _ in range(s)] for _ in range(t)]
    dst_sizes = []
    for j in range(t):
        need = max(
            sum(m0[j][i] * src_sizes[i] for i in range(s)),
            sum(m1[j][i] * src_sizes[i] for i in range(s)),
            1,
        )
        dst_sizes.append(need + rng.randint(0, 2))
    a0 = FinDimAlgebra(src_sizes)
    f1 = FinDimAlgebra(dst_sizes)
    ep = cellmodel.EndpointPair(
        MultMorphism(a0, f1, m0), MultMorphism(a0, f1, m1)
    )
    return cellmodel.build(
        [cellmodel.NCCWStage(0, a0), cellmodel.NCCWStage(1, f1, ep)]
    )


def random_valid_morphism(rng: random.Random, max_blocks=3, max_mult=3):
    s = rng.randint(1, max_blocks)
    t = rng.randint(1, max_blocks)
    src_sizes = [rng.randint(1, 3) for _ in range(s)]
    m = [[rng.randint(0, max_mult) for _ in range(s)] for _ in range(t)]
    dst_sizes = [
        max(sum(m[j][i] * src_sizes[i] for i in range(s)), 1) + rng.randint(0, 2)
        for j in range(t)
    ]
    return MultMorphism(FinDimAlgebra(src_sizes), FinDimAlgebra(dst_sizes), m)


# ---------------------------------------------------------------------------
# independent oracles


def six_term_oracle(delta0: np.ndarray):
    """(kernel, cokernel) of one coboundary, straight from SNF data."""
    ker = FGAbelianGroup.free(delta0.shape[1] - matrix_rank(delta0))
    coker = cokernel_group(delta0)
    return ker, coker


def snf_homology_oracle(counts, boundaries):
    """Cellular homology H_p = ker del_p / im del_(p+1) from raw SNF facts;
    never touches CochainComplex or the engine."""
    k = len(counts) - 1

    def boundary(p):
        # del_p maps p-cells to (p-1)-cells
        if 1 <= p <= k:
            return boundaries[p - 1]
        rows = counts[p - 1] if 0 <= p - 1 <= k else 0
        cols = counts[p] if 0 <= p <= k else 0
        return zeros(rows, cols)

    out = []
    for p in range(k + 1):
        free = counts[p] - matrix_rank(boundary(p)) - matrix_rank(boundary(p + 1))
        torsion = [d for d in snf_diagonal(boundary(p + 1)) if d >= 2]
        out.append(FGAbelianGroup(free, tuple(torsion)))
    return out


def tensor_with_cyclic(g: FGAbelianGroup, d: int) -> FGAbelianGroup:
    orders = [d] * g.free_rank + [math.gcd(e, d) for e in g.torsion]
    return FGAbelianGroup.from_cyclic_orders(orders)


def tor_with_cyclic(g: FGAbelianGroup, d: int) -> FGAbelianGroup:
    return FGAbelianGroup.from_cyclic_orders([math.gcd(e, d) for e in g.torsion])


def coefficient_cohomology_oracle(c: CochainComplex, g: FGAbelianGroup):
    """Tor/tensor formula for cohomology with coefficients, built only on
    the plain integer cohomology groups."""
    plain = exacthom.all_cohomology(c)
    k = c.top_degree
    out = []
    for p in range(k + 1):
        nxt = plain[p + 1] if p + 1 <= k else FGAbelianGroup.trivial()
        parts = [FGAbelianGroup.free(plain[p].free_rank * g.free_rank)]
        parts.append(
            FGAbelianGroup.from_cyclic_orders(list(plain[p].torsion) * g.free_rank)
        )
        for d in g.torsion:
            parts.append(tensor_with_cyclic(plain[p], d))
            parts.append(tor_with_cyclic(nxt, d))
        out.append(FGAbelianGroup.trivial().direct_sum(*parts))
    return out


def parity_sums(c: CochainComplex):
    """Direct cellular computation: (even, odd) parity direct sums of the
    degreewise cohomology, bypassing the page engine entirely."""
    groups = exacthom.all_cohomology(c)
    even = FGAbelianGroup.trivial().direct_sum(*[g for p, g in enumerate(groups) if p % 2 == 0])
    odd = FGAbelianGroup.trivial().direct_sum(*[g for p, g in enumerate(groups) if p % 2 == 1])
    return even, odd


def direct_sum_complexes(a: CochainComplex, b: CochainComplex) -> CochainComplex:
    if a.ring != b.ring or a.orientation != b.orientation:
        raise ValueError("can only sum complexes over the same ring and orientation")
    k = max(a.top_degree, b.top_degree)
    ranks = [a.rank(p) + b.rank(p) for p in range(k + 1)]
    diffs = []
    for p in range(k):
        da, db = a.differential(p), b.differential(p)
        out = np.zeros((ranks[p + 1], ranks[p]), dtype=object)
        if da.size:
            out[: da.shape[0], : da.shape[1]] = da
        if db.size:
            out[da.shape[0] :, da.shape[1] :] = db
        diffs.append(exacthom.freeze(out))
    return CochainComplex(a.ring, ranks, diffs, a.orientation)
