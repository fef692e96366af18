"""Towers of noncommutative CW stages and their cellular cochain data.

A complex is a list of stages with dimensions 0, 1, ..., k.  Stage 0 is a
finite-dimensional algebra; every later stage glues a cell algebra along
attaching data.  Only two kinds of attaching data admit a finite
description here:

* ``EndpointPair`` (stage 1 only): the two endpoint evaluations of the
  gluing morphism into ``F ⊕ F``, recorded as multiplicity morphisms.
  The induced coboundary is the difference of their even-theory maps,
  which is the connecting map of the six-term sequence of the stage-1
  extension.
* ``ProvidedCoboundary`` (any stage >= 1): the coboundary matrix given
  directly.  No finite procedure recovers it from gluing data above
  dimension 1, so the caller must supply it.

The tower is quotient-oriented: each stage projects onto the previous
one, so the derived cochain complex raises degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ComplexViolation,
    EndpointPairAtHigherStage,
    OutOfRange,
    ShapeMismatch,
)
from .exacthom import (
    ORIENT_HOMOLOGICAL,
    RING_Q,
    RING_Z,
    CochainComplex,
    dual_transpose,
    freeze,
    intmat,
    is_zero_mat,
)
from .findim import THEORY_HP, THEORY_K, FinDimAlgebra, MultMorphism, k0_map


@dataclass(frozen=True, eq=False)
class EndpointPair:
    """Attaching data for a 1-stage: the two endpoint evaluations."""

    phi0: MultMorphism
    phi1: MultMorphism

    def __post_init__(self):
        if self.phi0.src != self.phi1.src or self.phi0.dst != self.phi1.dst:
            raise ShapeMismatch("endpoint morphisms must share domain and codomain")


@dataclass(frozen=True, eq=False)
class ProvidedCoboundary:
    """Attaching data reduced to an explicit coboundary matrix."""

    delta: np.ndarray = field(repr=False)

    def __init__(self, delta, shape: tuple[int, int] | None = None):
        object.__setattr__(self, "delta", intmat(delta, shape=shape))


AttachingData = EndpointPair | ProvidedCoboundary


@dataclass(frozen=True, eq=False)
class NCCWStage:
    dim: int
    cell_algebra: FinDimAlgebra
    attaching: AttachingData | None = None

    def __post_init__(self):
        if self.dim < 0:
            raise OutOfRange("stage dimension must be nonnegative")
        if self.dim == 0 and self.attaching is not None:
            raise ShapeMismatch("stage 0 carries no attaching data")
        if self.dim > 0 and self.attaching is None:
            raise ShapeMismatch(f"stage {self.dim} needs attaching data")


class NCCWComplex:
    """A validated tower with derived cell counts and coboundaries.

    Instances are built through :func:`build`; they are immutable and all
    derived data is computed once.
    """

    def __init__(self, stages: tuple[NCCWStage, ...], coboundaries: tuple[np.ndarray, ...]):
        self.stages = stages
        self.coboundaries = coboundaries
        self.cell_counts = tuple(s.cell_algebra.block_count for s in stages)

    @property
    def top_dimension(self) -> int:
        return len(self.stages) - 1

    @property
    def stage_zero_algebra(self) -> FinDimAlgebra:
        return self.stages[0].cell_algebra

    def __repr__(self) -> str:
        return f"NCCWComplex(cell_counts={list(self.cell_counts)})"


def boundary_from_endpoints(phi0: MultMorphism, phi1: MultMorphism) -> np.ndarray:
    """Coboundary induced by a stage-1 endpoint pair.

    The stage-1 extension has the suspension of the cell algebra as its
    ideal, and its connecting homomorphism on even theory is the
    difference of the two endpoint maps; that difference is the cellular
    coboundary.  Shape: (cells of F, blocks of the stage-0 algebra).
    """
    if phi0.src != phi1.src or phi0.dst != phi1.dst:
        raise ShapeMismatch("endpoint morphisms must share domain and codomain")
    return freeze(k0_map(phi0) - k0_map(phi1))


def build(stages) -> NCCWComplex:
    """Assemble and validate a tower; derives all coboundaries.

    Raises ``ComplexViolation(p)`` if two consecutive coboundaries fail to
    compose to zero, ``EndpointPairAtHigherStage`` if endpoint data shows
    up above dimension 1, and ``ShapeMismatch`` for inconsistent shapes.
    """
    stages = tuple(stages)
    if not stages:
        raise ShapeMismatch("a complex needs at least the stage-0 algebra")
    for i, st in enumerate(stages):
        if st.dim != i:
            raise ShapeMismatch(
                f"stage dimensions must be 0,1,...,k in order; found {st.dim} at index {i}"
            )
    counts = [s.cell_algebra.block_count for s in stages]
    cobs: list[np.ndarray] = []
    for k in range(1, len(stages)):
        att = stages[k].attaching
        if isinstance(att, EndpointPair):
            if k != 1:
                raise EndpointPairAtHigherStage(
                    f"endpoint attaching data at stage {k}; only stage 1 admits it"
                )
            if att.phi0.src != stages[0].cell_algebra:
                raise ShapeMismatch("endpoint morphisms must start at the stage-0 algebra")
            if att.phi0.dst != stages[1].cell_algebra:
                raise ShapeMismatch("endpoint morphisms must land in the stage-1 cell algebra")
            delta = boundary_from_endpoints(att.phi0, att.phi1)
        else:
            delta = att.delta
        if delta.shape != (counts[k], counts[k - 1]):
            raise ShapeMismatch(
                f"coboundary {k - 1} has shape {delta.shape}, expected"
                f" {(counts[k], counts[k - 1])}"
            )
        cobs.append(delta)
    for p in range(len(cobs) - 1):
        if not is_zero_mat(cobs[p + 1] @ cobs[p]):
            raise ComplexViolation(
                p,
                f"attaching data of stages {p + 1} and {p + 2} are incompatible:"
                f" delta_{p + 1} delta_{p} != 0",
            )
    return NCCWComplex(stages, tuple(cobs))


def from_classical_cw(cell_counts, chain_boundaries) -> NCCWComplex:
    """Model a classical finite CW complex, one scalar block per cell.

    ``chain_boundaries[p]`` is the boundary matrix from (p+1)-cells to
    p-cells, shape (counts[p], counts[p+1]).  The tower stores the
    transposed matrices, i.e. the cellular cochain complex.
    """
    counts = [int(c) for c in cell_counts]
    if not counts or any(c < 0 for c in counts):
        raise ShapeMismatch("cell counts must be a nonempty list of nonnegative integers")
    boundaries = [
        intmat(b, shape=(counts[p], counts[p + 1])) for p, b in enumerate(chain_boundaries)
    ]
    if len(boundaries) != len(counts) - 1:
        raise ShapeMismatch("need one boundary matrix per adjacent dimension pair")
    # validating through the homological complex reports failures in the
    # caller's own orientation
    chain = CochainComplex(RING_Z, counts, boundaries, ORIENT_HOMOLOGICAL)
    cochain = dual_transpose(chain)
    stages = [NCCWStage(0, FinDimAlgebra([1] * counts[0]))]
    for k in range(1, len(counts)):
        stages.append(
            NCCWStage(
                k,
                FinDimAlgebra([1] * counts[k]),
                ProvidedCoboundary(cochain.differentials[k - 1]),
            )
        )
    return build(stages)


def cochain_complex(x: NCCWComplex, theory: str) -> CochainComplex:
    """The cellular cochain complex the engine consumes.

    Integer coefficients for K, rational for HP; the matrices are the
    same integer coboundaries either way.
    """
    if theory not in (THEORY_K, THEORY_HP):
        raise ValueError(f"unknown theory {theory!r}")
    ring = RING_Z if theory == THEORY_K else RING_Q
    return CochainComplex(ring, x.cell_counts, x.coboundaries)


def skeleton(x: NCCWComplex, p: int) -> NCCWComplex:
    """Truncate the tower to stages of dimension at most ``p``."""
    if not 0 <= p <= x.top_dimension:
        raise OutOfRange(f"skeleton degree {p} outside 0..{x.top_dimension}")
    return build(x.stages[: p + 1])


def euler_characteristic(x: NCCWComplex) -> int:
    return sum((-1) ** p * c for p, c in enumerate(x.cell_counts))
