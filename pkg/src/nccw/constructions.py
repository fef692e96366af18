"""Cone, suspension, mapping cylinder and mapping cone at the cell level.

The operations act on cellular cochain models and report what the theory
functors see.  Two of them are deliberately not literal cell structures:

* The cone of anything is contractible, so no cell model is built at all;
  a sentinel with trivial theories is returned.
* The cylinder of ``f`` is homotopy equivalent to the codomain, so the
  codomain model plus the record of the embedded domain captures
  everything downstream consumers need.

The mapping cone is an honest complex computing the relative theories.
Its natural degree range starts one below zero (the shifted copy of the
domain), which the fixed degree-0-based complex type cannot hold, so the
stored complex is shifted up by two degrees.  A shift by two is invisible
to every 2-periodic observable (assemblies, relative groups, Euler
characteristics), which is all this complex is consumed for.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidMorphism, ShapeMismatch
from .exacthom import (
    ORIENT_COHOMOLOGICAL,
    CochainComplex,
    FGAbelianGroup,
    freeze,
    identity,
    intmat,
    mat_eq,
    zeros,
)
from .findim import THEORY_HP, THEORY_K
from .ssengine import Assembly, compute_theories


@dataclass(frozen=True, eq=False)
class CellularMorphism:
    """Degree-wise matrices between two cochain models.

    ``maps[p]`` has shape (rank of dst at p, rank of src at p); missing
    degrees are zero.  Construction checks every commuting square
    ``maps[p+1] @ d_src[p] == d_dst[p] @ maps[p]`` exactly.
    """

    src: CochainComplex
    dst: CochainComplex
    maps: tuple[np.ndarray, ...] = field(repr=False)

    def __init__(self, src: CochainComplex, dst: CochainComplex, maps):
        if src.orientation != ORIENT_COHOMOLOGICAL or dst.orientation != ORIENT_COHOMOLOGICAL:
            raise InvalidMorphism("cellular morphisms need cohomological complexes")
        if src.ring != dst.ring:
            raise InvalidMorphism("cellular morphisms need a common coefficient ring")
        top = max(src.top_degree, dst.top_degree)
        given = [intmat(m) for m in maps]
        if len(given) > top + 1:
            raise ShapeMismatch("more degree maps than degrees")
        full = []
        for p in range(top + 1):
            expect = (dst.rank(p), src.rank(p))
            if p < len(given):
                if given[p].shape != expect:
                    raise ShapeMismatch(
                        f"degree-{p} map has shape {given[p].shape}, expected {expect}"
                    )
                full.append(given[p])
            else:
                full.append(zeros(*expect))
        for p in range(top):
            left = full[p + 1] @ src.differential(p)
            right = dst.differential(p) @ full[p]
            if not mat_eq(left, right):
                raise InvalidMorphism(f"commuting square fails between degrees {p} and {p + 1}")
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "dst", dst)
        object.__setattr__(self, "maps", tuple(full))

    def map_at(self, p: int) -> np.ndarray:
        if 0 <= p < len(self.maps):
            return self.maps[p]
        return zeros(self.dst.rank(p), self.src.rank(p))

    @classmethod
    def identity_on(cls, c: CochainComplex) -> "CellularMorphism":
        return cls(c, c, [identity(c.rank(p)) for p in range(c.top_degree + 1)])

    @classmethod
    def zero_map(cls, src: CochainComplex, dst: CochainComplex) -> "CellularMorphism":
        return cls(src, dst, [])


@dataclass(frozen=True)
class ConeResult:
    """Sentinel for the contractible cone: every theory group is trivial."""

    contractible: bool = True

    def theories(self, theory: str) -> tuple[FGAbelianGroup, FGAbelianGroup]:
        if theory not in (THEORY_K, THEORY_HP):
            raise ValueError(f"unknown theory {theory!r}")
        return FGAbelianGroup.trivial(), FGAbelianGroup.trivial()


def suspend(c: CochainComplex) -> CochainComplex:
    """Shift every rank up one degree; differentials ride along unchanged.

    Assembled theories swap parity, which is the suspension identity for
    both functors.
    """
    ranks = (0,) + c.ranks
    diffs = (zeros(c.rank(0), 0),) + c.differentials
    return CochainComplex(c.ring, ranks, diffs, c.orientation)


def cone(_anything=None) -> ConeResult:
    """The cone of any input is contractible; all theory groups vanish."""
    return ConeResult()


def mapping_cylinder(f: CellularMorphism) -> tuple[CochainComplex, CellularMorphism]:
    """(model, embedded domain record) of the cylinder of ``f``.

    The model is the codomain complex (the cylinder deformation retracts
    onto it); the second component records how the domain sits inside,
    which is what fibration replacement consumes.
    """
    model = f.dst
    embedded = CellularMorphism(f.src, model, f.maps)
    return model, embedded


def mapping_cone_complex(f: CellularMorphism) -> CochainComplex:
    """Cone complex of ``f``; its assembly gives the relative theories.

    Degree ``p`` of the cone holds the codomain cells of degree ``p``
    together with the domain cells of degree ``p + 1``, with differential
    ``(b, a) |-> (d_dst b + f(a), -d_src a)``.  See the module docstring
    for the +2 degree shift applied to the stored complex.
    """
    src, dst = f.src, f.dst
    lo = -1
    hi = max(dst.top_degree, src.top_degree - 1)

    def cone_rank(p: int) -> int:
        return dst.rank(p) + src.rank(p + 1)

    def cone_diff(p: int) -> np.ndarray:
        rows_b, rows_a = dst.rank(p + 1), src.rank(p + 2)
        cols_b, cols_a = dst.rank(p), src.rank(p + 1)
        out = np.zeros((rows_b + rows_a, cols_b + cols_a), dtype=object)
        if rows_b and cols_b:
            out[:rows_b, :cols_b] = dst.differential(p)
        if rows_b and cols_a:
            out[:rows_b, cols_b:] = f.map_at(p + 1)
        if rows_a and cols_a:
            out[rows_b:, cols_b:] = np.negative(src.differential(p + 1))
        return freeze(out)

    ranks = [0] + [cone_rank(p) for p in range(lo, hi + 1)]
    diffs = [zeros(cone_rank(lo), 0)] + [cone_diff(p) for p in range(lo, hi)]
    return CochainComplex(f.src.ring, ranks, diffs, ORIENT_COHOMOLOGICAL)


def relative_assemblies(f: CellularMorphism, theory: str) -> tuple[Assembly, Assembly]:
    """Assembled (even, odd) theories of the mapping cone of ``f``."""
    return compute_theories(mapping_cone_complex(f), theory)
