import random

import pytest

from nccw.cellmodel import cochain_complex
from nccw.constructions import CellularMorphism
from nccw.errors import NotSimple, UnresolvedExtension
from nccw.exacthom import CochainComplex, FGAbelianGroup, intmat
from nccw.fibration import (
    SerreFibrationData,
    compute_total,
    fibration_replace,
    leray_serre_e2,
    relative_coefficients,
)
from nccw.ssengine import PARITY_EVEN, PARITY_ODD, compute_theories

from conftest import (
    circle_model,
    dimension_drop_model,
    parity_sums,
    projective_plane_cw,
    random_cochain_complex,
    torus_cw,
)

Z = FGAbelianGroup.free(1)
ZERO = CochainComplex("Z", [0], [])
POINT = CochainComplex("Z", [1], [])


def circle_cochain():
    return cochain_complex(circle_model(), "K")


class TestFibrationReplace:
    def test_identity(self):
        circ = circle_cochain()
        total, inclusion = fibration_replace(CellularMorphism.identity_on(circ))
        assert total == circ
        assert inclusion.src == circ and inclusion.dst == circ

    def test_point_into_circle(self):
        f = CellularMorphism(POINT, circle_cochain(), [intmat([[1]])])
        total, inclusion = fibration_replace(f)
        even, odd = compute_theories(total, "K")
        assert even.group == Z and odd.group == Z
        assert inclusion.src == POINT

    def test_idempotent_on_theories(self):
        f = CellularMorphism(POINT, circle_cochain(), [intmat([[1]])])
        total1, incl1 = fibration_replace(f)
        total2, _ = fibration_replace(incl1)
        assert compute_theories(total1, "K")[0].group == compute_theories(total2, "K")[0].group


class TestRelativeCoefficients:
    def test_identity_morphism(self):
        circ = circle_cochain()
        assert relative_coefficients(CellularMorphism.identity_on(circ), "K") == (
            FGAbelianGroup.trivial(),
            FGAbelianGroup.trivial(),
        )

    def test_identity_trivial_on_random_complexes(self):
        rng = random.Random(109)
        for _ in range(12):
            c = random_cochain_complex(rng, max_k=3, max_rank=3)
            ident = CellularMorphism.identity_on(c)
            assert relative_coefficients(ident, "K") == (
                FGAbelianGroup.trivial(),
                FGAbelianGroup.trivial(),
            )

    def test_point_into_circle(self):
        f = CellularMorphism(POINT, circle_cochain(), [intmat([[1]])])
        assert relative_coefficients(f, "K") == (FGAbelianGroup.trivial(), Z)

    def test_map_to_zero_suspends(self):
        rng = random.Random(97)
        for _ in range(10):
            c = random_cochain_complex(rng, max_k=2, max_rank=3)
            base_even, base_odd = parity_sums(c)
            if base_even.torsion and base_odd.torsion:
                continue
            f = CellularMorphism.zero_map(c, ZERO)
            try:
                got = relative_coefficients(f, "K")
            except UnresolvedExtension:
                continue
            assert got == (base_odd, base_even)

    def test_unresolved_extension_refused(self):
        rp2 = cochain_complex(projective_plane_cw(), "K")
        f = CellularMorphism.zero_map(ZERO, rp2)
        with pytest.raises(UnresolvedExtension):
            relative_coefficients(f, "K")


class TestSerreFibrationData:
    def test_hp_torsion_rejected(self):
        base = cochain_complex(circle_model(), "HP")
        with pytest.raises(ValueError):
            SerreFibrationData(base, FGAbelianGroup.cyclic(2), Z, "HP")

    def test_ring_checked(self):
        with pytest.raises(ValueError):
            SerreFibrationData(circle_cochain(), Z, Z, "HP")


class TestLeraySerreE2:
    def test_circle_with_free_coefficients(self):
        data = SerreFibrationData(circle_cochain(), Z, Z, "K")
        page = leray_serre_e2(data)
        assert page.r == 2
        expected = {(p, parity) for p in (0, 1) for parity in (PARITY_EVEN, PARITY_ODD)}
        assert set(page.entries.keys()) == expected
        assert all(g == Z for g in page.entries.values())

    def test_point_base_reproduces_coefficients(self):
        g_even = FGAbelianGroup(2, (3,))
        g_odd = FGAbelianGroup.cyclic(4)
        page = leray_serre_e2(SerreFibrationData(POINT, g_even, g_odd, "K"))
        assert page.entry_at(0, PARITY_EVEN) == g_even
        assert page.entry_at(0, PARITY_ODD) == g_odd

    def test_zero_coefficients_zero_page(self):
        t = FGAbelianGroup.trivial()
        page = leray_serre_e2(SerreFibrationData(circle_cochain(), t, t, "K"))
        assert not page.entries

    def test_not_simple_refused(self):
        data = SerreFibrationData(circle_cochain(), Z, Z, "K", simple=False)
        with pytest.raises(NotSimple):
            leray_serre_e2(data)

    def test_point_coefficients_match_cellular_e2(self):
        # coefficients of a point reduce to the plain second page of the base
        from nccw.ssengine import from_cellular, turn_page

        rng = random.Random(101)
        for _ in range(10):
            base = random_cochain_complex(rng, max_k=3, max_rank=3)
            page = leray_serre_e2(
                SerreFibrationData(base, Z, FGAbelianGroup.trivial(), "K")
            )
            cellular = turn_page(from_cellular(base, "K")).pages[-1]
            assert dict(page.entries) == dict(cellular.entries)

    def test_hp_counts_ranks(self):
        base = cochain_complex(circle_model(), "HP")
        page = leray_serre_e2(
            SerreFibrationData(base, FGAbelianGroup.free(2), FGAbelianGroup.trivial(), "HP")
        )
        assert page.entry_at(0, PARITY_EVEN) == FGAbelianGroup.free(2)
        assert page.entry_at(1, PARITY_EVEN) == FGAbelianGroup.free(2)


class TestComputeTotal:
    def test_torus_cross_check(self):
        data = SerreFibrationData(circle_cochain(), Z, Z, "K")
        even, odd = compute_total(data)
        direct_even, direct_odd = compute_theories(cochain_complex(torus_cw(), "K"), "K")
        assert even.resolved == direct_even.resolved == FGAbelianGroup.free(2)
        assert odd.resolved == direct_odd.resolved == FGAbelianGroup.free(2)

    def test_point_base(self):
        data = SerreFibrationData(POINT, FGAbelianGroup.free(2), FGAbelianGroup.trivial(), "K")
        even, odd = compute_total(data)
        assert even.group == FGAbelianGroup.free(2) and odd.group.is_trivial

    def test_dimension_drop_base(self):
        base = cochain_complex(dimension_drop_model(2), "K")
        data = SerreFibrationData(base, Z, FGAbelianGroup.trivial(), "K")
        even, odd = compute_total(data)
        assert even.group == Z
        assert odd.group == FGAbelianGroup.cyclic(2)

    def test_kunneth_parity_convolution(self):
        # trivial product of two collapsed complexes: totals must equal the
        # parity convolution of the factors
        rng = random.Random(103)
        for _ in range(10):
            base = random_cochain_complex(rng, max_k=2, max_rank=3)
            fiber_even = FGAbelianGroup.free(rng.randint(0, 2))
            fiber_odd = FGAbelianGroup.free(rng.randint(0, 2))
            data = SerreFibrationData(base, fiber_even, fiber_odd, "K")
            even, odd = compute_total(data)
            be, bo = parity_sums(base)
            want_even_rank = (
                be.free_rank * fiber_even.free_rank + bo.free_rank * fiber_odd.free_rank
            )
            want_odd_rank = (
                be.free_rank * fiber_odd.free_rank + bo.free_rank * fiber_even.free_rank
            )
            assert even.candidate.free_rank == want_even_rank
            assert odd.candidate.free_rank == want_odd_rank
