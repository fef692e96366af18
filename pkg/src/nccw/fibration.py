"""Fibration replacement and the coefficient spectral sequence.

Any cellular morphism is replaced by its mapping-cylinder picture (total
model plus embedded domain); the relative theories of the morphism, read
off the mapping cone by excision, become the coefficient groups.  With a
simple system of local coefficients the second page is ordinary
coefficient cohomology of the base, 2-periodic in the fiber direction,
and the engine takes it from there.

Simplicity is an input assumption, not a checked property: deciding it
would quantify over homotopy equivalences, which the finite data here
cannot express.  Non-simple systems are refused outright.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotSimple, UnresolvedExtension
from .exacthom import (
    RING_Q,
    RING_Z,
    CochainComplex,
    FGAbelianGroup,
    cohomology_with_coefficients,
    matrix_rank,
)
from .findim import THEORY_HP, THEORY_K
from .constructions import CellularMorphism, mapping_cylinder, relative_assemblies
from .ssengine import (
    ASSEMBLY_UP_TO_EXTENSION,
    PARITY_EVEN,
    PARITY_ODD,
    Assembly,
    Page,
    assemble,
    from_e2_page,
)


@dataclass(frozen=True)
class SerreFibrationData:
    """Base model, relative coefficient groups, and the simplicity flag."""

    base: CochainComplex
    g_even: FGAbelianGroup
    g_odd: FGAbelianGroup
    theory: str
    simple: bool = True

    def __post_init__(self):
        if self.theory not in (THEORY_K, THEORY_HP):
            raise ValueError(f"unknown theory {self.theory!r}")
        expected_ring = RING_Z if self.theory == THEORY_K else RING_Q
        if self.base.ring != expected_ring:
            raise ValueError(f"theory {self.theory} needs a base over {expected_ring}")
        if self.theory == THEORY_HP and (self.g_even.torsion or self.g_odd.torsion):
            raise ValueError("HP coefficients must be torsion-free")


def fibration_replace(f: CellularMorphism) -> tuple[CochainComplex, CellularMorphism]:
    """Serre-fibration replacement of ``f``: the cylinder total model and
    the inclusion of the domain into it."""
    return mapping_cylinder(f)


def relative_coefficients(
    f: CellularMorphism, theory: str
) -> tuple[FGAbelianGroup, FGAbelianGroup]:
    """(even, odd) relative groups of ``f``, taken from its mapping cone.

    These must be actual groups to serve as coefficients, so an assembly
    that is only known up to extension raises ``UnresolvedExtension``
    instead of silently picking the split candidate.
    """
    even, odd = relative_assemblies(f, theory)
    for a in (even, odd):
        if a.note == ASSEMBLY_UP_TO_EXTENSION:
            raise UnresolvedExtension(
                f"relative {a.parity} group is only known up to extension"
            )
    return even.group, odd.group


def leray_serre_e2(fib: SerreFibrationData) -> Page:
    """Second page: coefficient cohomology of the base, one row per fiber
    parity, 2-periodic in the fiber direction."""
    if not fib.simple:
        raise NotSimple("local coefficient system declared non-simple")
    k = fib.base.top_degree
    entries = {}
    for parity, group in ((PARITY_EVEN, fib.g_even), (PARITY_ODD, fib.g_odd)):
        if group.is_trivial:
            continue
        if fib.theory == THEORY_K:
            column = cohomology_with_coefficients(fib.base, group)
        else:
            # rational base: multiply rational ranks by the coefficient rank
            column = [
                FGAbelianGroup.free(
                    group.free_rank
                    * (fib.base.rank(p)
                       - matrix_rank(fib.base.differential(p))
                       - matrix_rank(fib.base.differential(p - 1)))
                )
                for p in range(k + 1)
            ]
        for p, g in enumerate(column):
            if not g.is_trivial:
                entries[(p, parity)] = g
    return Page(2, k, fib.theory, entries, {})


def compute_total(fib: SerreFibrationData) -> tuple[Assembly, Assembly]:
    """Feed the coefficient page into the engine and assemble both total
    parities (higher differentials default to zero)."""
    ss = from_e2_page(leray_serre_e2(fib))
    return assemble(ss, "even"), assemble(ss, "odd")
