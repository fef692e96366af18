"""Finite direct sums of matrix algebras and their multiplicity morphisms.

An algebra is recorded purely combinatorially as its list of block sizes;
a *-homomorphism between two such algebras is recorded as the matrix of
multiplicities with which each source block embeds into each target block.
That is all the even/odd theory functors can see.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ShapeMismatch, SizeOverflow
from .exacthom import FGAbelianGroup, freeze, identity, intmat

THEORY_K = "K"
THEORY_HP = "HP"


@dataclass(frozen=True)
class FinDimAlgebra:
    """A direct sum of full matrix algebras, one summand per entry of
    ``sizes``.  The empty tuple is the zero algebra."""

    sizes: tuple[int, ...]

    def __init__(self, sizes):
        sizes = tuple(int(n) for n in sizes)
        if any(n < 1 for n in sizes):
            raise ValueError("block sizes must be positive")
        object.__setattr__(self, "sizes", sizes)

    @property
    def block_count(self) -> int:
        return len(self.sizes)

    @property
    def linear_dimension(self) -> int:
        return sum(n * n for n in self.sizes)

    @property
    def is_zero(self) -> bool:
        return not self.sizes


@dataclass(frozen=True, eq=False)
class MultMorphism:
    """A morphism recorded by its multiplicity matrix.

    ``mult`` has one row per target block and one column per source block;
    row ``j`` must fit inside target block ``j``:
    ``sum_i mult[j][i] * src.sizes[i] <= dst.sizes[j]``.  Construction
    validates, so an invalid morphism cannot exist.
    """

    src: FinDimAlgebra
    dst: FinDimAlgebra
    mult: np.ndarray = field(repr=False)

    def __init__(self, src: FinDimAlgebra, dst: FinDimAlgebra, mult):
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "dst", dst)
        object.__setattr__(
            self, "mult", intmat(mult, shape=(dst.block_count, src.block_count))
        )
        validate_morphism(self)

    @property
    def unital(self) -> bool:
        return all(
            sum(int(self.mult[j, i]) * n for i, n in enumerate(self.src.sizes))
            == self.dst.sizes[j]
            for j in range(self.dst.block_count)
        )

    @classmethod
    def identity_on(cls, algebra: FinDimAlgebra) -> "MultMorphism":
        return cls(algebra, algebra, identity(algebra.block_count))

    @classmethod
    def zero(cls, src: FinDimAlgebra, dst: FinDimAlgebra) -> "MultMorphism":
        return cls(src, dst, np.zeros((dst.block_count, src.block_count), dtype=object))


def validate_morphism(f: MultMorphism) -> bool:
    """Check the block-size inequality row by row; returns unitality.

    Raises ``SizeOverflow`` naming the first offending target block, or
    ``ShapeMismatch`` when the matrix does not match the block counts.
    Entries must be nonnegative (a multiplicity counts embeddings).
    """
    t, s = f.dst.block_count, f.src.block_count
    if f.mult.shape != (t, s):
        raise ShapeMismatch(f"multiplicity matrix is {f.mult.shape}, expected {(t, s)}")
    if any(f.mult[j, i] < 0 for j in range(t) for i in range(s)):
        raise ShapeMismatch("multiplicities must be nonnegative")
    for j in range(t):
        needed = sum(int(f.mult[j, i]) * n for i, n in enumerate(f.src.sizes))
        if needed > f.dst.sizes[j]:
            raise SizeOverflow(j, needed, f.dst.sizes[j])
    return f.unital


def compose(g: MultMorphism, f: MultMorphism) -> MultMorphism:
    """g after f; the multiplicity matrix of the composite is the product."""
    if f.dst != g.src:
        raise ShapeMismatch("codomain of f must equal domain of g")
    return MultMorphism(f.src, g.dst, g.mult @ f.mult)


def theory_groups(a: FinDimAlgebra, theory: str) -> tuple[FGAbelianGroup, FGAbelianGroup]:
    """(even, odd) theory of a finite-dimensional algebra.

    Both functors assign one free generator per block in even degree and
    nothing in odd degree; for HP the free part is read over the
    rationals downstream.
    """
    if theory not in (THEORY_K, THEORY_HP):
        raise ValueError(f"unknown theory {theory!r}")
    return FGAbelianGroup.free(a.block_count), FGAbelianGroup.trivial()


def k0_map(f: MultMorphism) -> np.ndarray:
    """Matrix of the induced map on even theory groups (a copy of the
    multiplicity matrix, which is exactly what K0 sees)."""
    return freeze(np.array(f.mult, dtype=object))
