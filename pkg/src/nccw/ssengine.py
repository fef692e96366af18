"""Spectral-sequence engine: pages, differentials, E-infinity, assembly.

Bigraded pages are stored sparsely and 2-periodically: an entry lives at
``(p, q mod 2)``; whatever is absent is the zero group.  The internal
orientation raises filtration degree, so the page-``r`` differential maps
``(p, q)`` to ``(p + r, q - r + 1)``.  The homological indexing used in
the literature is recovered by relabeling ``p`` to ``k - p``, which the
command line does on request for display only.

Entries are finitely generated abelian groups in canonical form.  Maps
between entries are integer matrices on the canonical generators, which
are ordered free part first, then torsion factors in invariant-factor
order.  For cellular input only even rows are ever populated (cells have
no odd theory), so storage and page turning cost as much as a single row.

Every complex of top dimension ``k`` stabilizes at page ``k + 1``: beyond
that every differential leaves the support ``0 <= p <= k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType

import numpy as np

from .errors import NotACocycleMap, OutOfRange, ShapeMismatch
from .exacthom import (
    ORIENT_COHOMOLOGICAL,
    RING_Q,
    RING_Z,
    CochainComplex,
    FGAbelianGroup,
    intmat,
    is_zero_mat,
    presented_subquotient,
    rational_subquotient,
)
from .findim import THEORY_HP, THEORY_K

PARITY_EVEN = 0
PARITY_ODD = 1

ASSEMBLY_EXACT = "exact"
ASSEMBLY_UP_TO_EXTENSION = "up_to_extension"


def generator_orders(group: FGAbelianGroup) -> list[int]:
    """Orders of the canonical generators; 0 marks a free generator."""
    return [0] * group.free_rank + list(group.torsion)


@dataclass(frozen=True, eq=False)
class Page:
    """One page of the sequence: entries and differentials out of them."""

    r: int
    k: int
    theory: str
    entries: MappingProxyType
    differentials: MappingProxyType

    def __init__(self, r, k, theory, entries, differentials):
        object.__setattr__(self, "r", int(r))
        object.__setattr__(self, "k", int(k))
        object.__setattr__(self, "theory", theory)
        object.__setattr__(
            self,
            "entries",
            MappingProxyType({key: g for key, g in entries.items() if not g.is_trivial}),
        )
        object.__setattr__(
            self,
            "differentials",
            MappingProxyType({key: m for key, m in differentials.items() if not is_zero_mat(m)}),
        )

    def entry_at(self, p: int, parity: int) -> FGAbelianGroup:
        return self.entries.get((p, parity % 2), FGAbelianGroup.trivial())

    def entry(self, p: int, q: int) -> FGAbelianGroup:
        return self.entry_at(p, q % 2)

    def differential_out(self, p: int, parity: int) -> np.ndarray | None:
        return self.differentials.get((p, parity % 2))

    def differential(self, p: int, q: int) -> np.ndarray:
        """Matrix of d at (p, q); a zero matrix of the right shape when
        nothing nonzero is recorded."""
        stored = self.differential_out(p, q % 2)
        if stored is not None:
            return stored
        src = self.entry(p, q)
        dst = self.entry(p + self.r, q - self.r + 1)
        out = np.zeros((dst.ngens, src.ngens), dtype=object)
        out.flags.writeable = False
        return out

    def support(self) -> list[tuple[int, int]]:
        return sorted(self.entries.keys())

    def same_entries(self, other: "Page") -> bool:
        return dict(self.entries) == dict(other.entries)


@dataclass(frozen=True, eq=False)
class SpectralSequence:
    theory: str
    k: int
    pages: tuple[Page, ...]

    @property
    def current_r(self) -> int:
        return self.pages[-1].r

    @property
    def stabilized_at(self) -> int:
        """Page index from which all further pages coincide."""
        return max(self.pages[0].r, self.k + 1)

    def page(self, r: int) -> Page:
        idx = r - self.pages[0].r
        if idx < 0 or idx >= len(self.pages):
            raise OutOfRange(f"page {r} not computed (have {self.pages[0].r}..{self.current_r})")
        return self.pages[idx]


@dataclass(frozen=True)
class Assembly:
    """Filtration pieces of one total parity, with honest extension flags.

    ``resolved`` is the actual group when the pieces force it (at most one
    nonzero piece, or every piece torsion-free); otherwise it is None and
    ``candidate`` holds the flagged direct-sum guess.
    """

    parity: str
    pieces: tuple[FGAbelianGroup, ...]
    resolved: FGAbelianGroup | None
    note: str
    candidate: FGAbelianGroup

    @property
    def group(self) -> FGAbelianGroup:
        """The resolved group, or the flagged candidate when unresolved."""
        return self.resolved if self.resolved is not None else self.candidate


def from_cellular(complex_: CochainComplex, theory: str) -> SpectralSequence:
    """First page of the filtration sequence of a cellular cochain complex.

    Even rows carry one free generator per cell with the coboundary as
    differential; odd rows vanish because cells have no odd theory.
    """
    if theory not in (THEORY_K, THEORY_HP):
        raise ValueError(f"unknown theory {theory!r}")
    if complex_.orientation != ORIENT_COHOMOLOGICAL:
        raise ValueError("the engine consumes cohomologically oriented complexes")
    expected_ring = RING_Z if theory == THEORY_K else RING_Q
    if complex_.ring != expected_ring:
        raise ValueError(f"theory {theory} needs a complex over {expected_ring}")
    k = complex_.top_degree
    entries = {}
    diffs = {}
    for p in range(k + 1):
        if complex_.rank(p) > 0:
            entries[(p, PARITY_EVEN)] = FGAbelianGroup.free(complex_.rank(p))
    for p in range(k):
        d = complex_.differential(p)
        if not is_zero_mat(d):
            diffs[(p, PARITY_EVEN)] = d
    return SpectralSequence(theory, k, (Page(1, k, theory, entries, diffs),))


def from_e2_page(page: Page) -> SpectralSequence:
    """Wrap an externally built second page (e.g. a coefficient page)."""
    if page.r != 2:
        raise OutOfRange("expected a page with r = 2")
    return SpectralSequence(page.theory, page.k, (page,))


def _turned_entry(ss: SpectralSequence, page: Page, p: int, parity: int) -> FGAbelianGroup:
    grp = page.entry_at(p, parity)
    r = page.r
    out_mat = page.differential_out(p, parity)
    target_parity = (parity - r + 1) % 2
    in_parity = (parity + r - 1) % 2
    in_mat = page.differential_out(p - r, in_parity)
    if ss.theory == THEORY_HP:
        rank = rational_subquotient(grp.free_rank, out_mat, in_mat)
        return FGAbelianGroup.free(rank)
    return presented_subquotient(
        generator_orders(grp),
        out_mat,
        generator_orders(page.entry_at(p + r, target_parity)),
        in_mat,
    )


def turn_page(ss: SpectralSequence) -> SpectralSequence:
    """Append the next page: every entry is replaced by the kernel of its
    outgoing differential modulo the image of the incoming one, in
    canonical form.  Differentials on the new page default to zero."""
    page = ss.pages[-1]
    new_entries = {
        key: _turned_entry(ss, page, key[0], key[1]) for key in page.support()
    }
    new_page = Page(page.r + 1, ss.k, ss.theory, new_entries, {})
    return SpectralSequence(ss.theory, ss.k, ss.pages + (new_page,))


def _check_well_defined(mat, src_orders, dst_orders):
    for j, dj in enumerate(src_orders):
        if dj == 0:
            continue
        for i, oi in enumerate(dst_orders):
            v = dj * int(mat[i, j])
            if (oi == 0 and v != 0) or (oi != 0 and v % oi != 0):
                raise NotACocycleMap(
                    f"column {j} (order {dj}) does not respect the target relations"
                )


def _check_composite_zero(second, first, dst_orders, what):
    prod = second @ first
    for i, oi in enumerate(dst_orders):
        for j in range(prod.shape[1]):
            v = int(prod[i, j])
            if (oi == 0 and v != 0) or (oi != 0 and v % oi != 0):
                raise NotACocycleMap(f"composite with the {what} differential is nonzero")


def set_higher_differential(
    ss: SpectralSequence, r: int, p: int, q: int, mat
) -> SpectralSequence:
    """Record d^r out of (p, q) on the already computed page ``r``.

    The matrix acts on canonical generators (free part first, then
    torsion factors).  It must respect the torsion relations on both
    sides and compose to zero with any adjacent recorded differential;
    otherwise ``NotACocycleMap``.  Pages beyond ``r`` are discarded since
    they would be stale; a zero matrix restores the default.
    """
    if r < 2:
        raise OutOfRange("only differentials on pages r >= 2 may be overridden")
    page = ss.page(r)
    parity = q % 2
    src = page.entry_at(p, parity)
    dst = page.entry(p + r, q - r + 1)
    mat = intmat(mat)
    if mat.shape != (dst.ngens, src.ngens):
        raise ShapeMismatch(
            f"differential at ({p},{q}) must be {(dst.ngens, src.ngens)}, got {mat.shape}"
        )
    diffs = dict(page.differentials)
    key = (p, parity)
    if is_zero_mat(mat):
        diffs.pop(key, None)
    else:
        src_orders = generator_orders(src)
        dst_orders = generator_orders(dst)
        _check_well_defined(mat, src_orders, dst_orders)
        nxt = page.differential_out(p + r, (parity - r + 1) % 2)
        if nxt is not None:
            after = page.entry(p + 2 * r, q - 2 * r + 2)
            _check_composite_zero(nxt, mat, generator_orders(after), "next")
        prev = page.differential_out(p - r, (parity + r - 1) % 2)
        if prev is not None:
            _check_composite_zero(mat, prev, dst_orders, "previous")
        diffs[key] = mat
    idx = r - ss.pages[0].r
    new_page = Page(r, ss.k, ss.theory, dict(page.entries), diffs)
    return SpectralSequence(ss.theory, ss.k, ss.pages[:idx] + (new_page,))


def e_infinity(ss: SpectralSequence) -> Page:
    """Turn pages until the guaranteed stabilization index and return the
    stable page."""
    while ss.current_r < ss.stabilized_at:
        ss = turn_page(ss)
    return ss.pages[-1]


def assemble(ss: SpectralSequence, parity: str) -> Assembly:
    """Collect the stable entries of one total parity along the filtration.

    At filtration degree ``p`` the row of total parity ``t`` is
    ``q = t - p (mod 2)``; pieces are listed by increasing ``p``.  The
    result is resolved exactly when the associated graded forces the
    group; otherwise the direct-sum candidate is attached but flagged.
    """
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    t = PARITY_EVEN if parity == "even" else PARITY_ODD
    stable = e_infinity(ss)
    pieces = []
    for p in range(ss.k + 1):
        g = stable.entry_at(p, (t - p) % 2)
        if not g.is_trivial:
            pieces.append(g)
    candidate = FGAbelianGroup.trivial().direct_sum(*pieces)
    forced = len(pieces) <= 1 or all(not g.torsion for g in pieces)
    if forced:
        return Assembly(parity, tuple(pieces), candidate, ASSEMBLY_EXACT, candidate)
    return Assembly(parity, tuple(pieces), None, ASSEMBLY_UP_TO_EXTENSION, candidate)


def compute_theories(complex_: CochainComplex, theory: str) -> tuple[Assembly, Assembly]:
    """End-to-end: cellular complex in, (even, odd) assemblies out."""
    ss = from_cellular(complex_, theory)
    return assemble(ss, "even"), assemble(ss, "odd")
