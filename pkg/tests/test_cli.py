import json
import os
import random

import pytest

from nccw.cli import (
    FileFormatError,
    complex_payload,
    main,
    parse_complex,
    parse_group,
    parse_result,
)
from nccw.exacthom import FGAbelianGroup, mat_eq

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def fix(name):
    return os.path.join(FIXTURES, name)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestExitCodes:
    def test_valid_file(self, capsys):
        code, out, _ = run(capsys, "validate", fix("rp2.json"))
        assert code == 0
        assert "valid" in out

    def test_dd_violation_names_stage(self, capsys):
        code, _, err = run(capsys, "validate", fix("ddviolation.json"))
        assert code == 1
        assert "stages 1 and 2" in err

    def test_malformed_file(self, capsys):
        code, _, err = run(capsys, "validate", fix("malformed.json"))
        assert code == 2

    def test_missing_file(self, capsys):
        code, _, _ = run(capsys, "validate", fix("no_such_file.json"))
        assert code == 2

    def test_size_overflow_is_domain_error(self, capsys, tmp_path):
        bad = tmp_path / "overflow.json"
        bad.write_text(
            json.dumps(
                {
                    "stages": [
                        {"dim": 0, "algebra": [1, 1]},
                        {"dim": 1, "F": [2], "phi0": [[3, 0]], "phi1": [[0, 2]]},
                    ]
                }
            )
        )
        code, _, err = run(capsys, "validate", str(bad))
        assert code == 1
        assert "block 0" in err


class TestCompute:
    def test_rp2_k(self, capsys):
        code, out, _ = run(capsys, "compute", fix("rp2.json"), "--theory", "k")
        assert code == 0
        assert "even: Z (+) Z/2 (up to extension)" in out
        assert "odd: 0" in out

    def test_i2_k(self, capsys):
        code, out, _ = run(capsys, "compute", fix("i2.json"))
        assert code == 0
        assert "even: Z\n" in out
        assert "odd: Z/2" in out

    def test_rp2_hp(self, capsys):
        code, out, _ = run(capsys, "compute", fix("rp2.json"), "--theory", "hp")
        assert code == 0
        assert "even: Q\n" in out
        assert "odd: 0" in out

    def test_torus(self, capsys):
        code, out, _ = run(capsys, "compute", fix("torus.json"), "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["even"]["group"] == "Z^2"
        assert payload["odd"]["group"] == "Z^2"
        assert payload["even"]["up_to_extension"] is False

    def test_json_round_trip(self, capsys):
        code, out, _ = run(capsys, "compute", fix("rp2.json"), "--json")
        parsed = parse_result(out)
        assert parsed["even"]["group"] == FGAbelianGroup(1, (2,))
        assert parsed["even"]["pieces"] == [FGAbelianGroup.free(1), FGAbelianGroup.cyclic(2)]
        assert parsed["odd"]["group"].is_trivial

    def test_pages_dump(self, capsys):
        code, out, _ = run(capsys, "compute", fix("i2.json"), "--pages", "--json")
        payload = json.loads(out)
        rs = [pg["r"] for pg in payload["pages"]]
        assert rs == [1, 2]
        e1 = payload["pages"][0]
        assert e1["differentials"][0]["matrix"] == [[2, -2]]
        assert e1["entries"][0]["paper_p"] == 1 - e1["entries"][0]["p"]

    def test_paper_indexing_display(self, capsys):
        _, internal, _ = run(capsys, "compute", fix("i2.json"), "--pages")
        _, papered, _ = run(capsys, "compute", fix("i2.json"), "--pages", "--paper-indexing")
        assert "d^1: p -> p+1" in internal
        assert "d^1: p -> p-1" in papered


class TestByteStability:
    @pytest.mark.parametrize("name", ["rp2.json", "i2.json", "torus.json"])
    def test_identical_across_runs(self, capsys, name):
        _, first, _ = run(capsys, "compute", fix(name), "--json", "--pages")
        _, second, _ = run(capsys, "compute", fix(name), "--json", "--pages")
        assert first == second

    def test_stage_field_reordering(self, capsys, tmp_path):
        original = json.loads(open(fix("i2.json")).read())
        reordered = {
            "stages": [
                {k: v for k, v in sorted(st.items(), reverse=True)}
                for st in original["stages"]
            ],
            "name": original["name"],
        }
        alt = tmp_path / "i2_reordered.json"
        alt.write_text(json.dumps(reordered))
        _, a, _ = run(capsys, "compute", fix("i2.json"), "--json")
        _, b, _ = run(capsys, "compute", str(alt), "--json")
        assert a == b


class TestTransform:
    def test_suspend_emits_complex_file(self, capsys, tmp_path):
        code, out, _ = run(capsys, "transform", fix("point.json"), "--op", "suspend")
        assert code == 0
        payload = json.loads(out)
        assert [st["dim"] for st in payload["stages"]] == [0, 1]
        assert payload["stages"][0]["algebra"] == []
        susp = tmp_path / "suspended.json"
        susp.write_text(out)
        code, out2, _ = run(capsys, "compute", str(susp))
        assert code == 0
        assert "even: 0" in out2 and "odd: Z" in out2

    def test_cone_all_zero(self, capsys):
        code, out, _ = run(capsys, "transform", fix("rp2.json"), "--op", "cone")
        assert code == 0
        assert "even: 0" in out and "odd: 0" in out

    def test_mapcone_identity_acyclic(self, capsys, tmp_path):
        morphism = {
            "dst": json.loads(open(fix("circle.json")).read()),
            "maps": [[[1]], [[1]]],
        }
        mpath = tmp_path / "ident.json"
        mpath.write_text(json.dumps(morphism))
        code, out, _ = run(
            capsys, "transform", fix("circle.json"), "--op", "mapcone", "--map", str(mpath)
        )
        assert code == 0
        assert "even: 0" in out and "odd: 0" in out

    def test_mapcone_point_into_circle(self, capsys):
        code, out, _ = run(
            capsys,
            "transform",
            fix("point.json"),
            "--op",
            "mapcone",
            "--map",
            fix("point_to_circle.json"),
        )
        assert code == 0
        assert "even: 0" in out and "odd: Z" in out

    def test_cylinder_takes_codomain_theories(self, capsys):
        code, out, _ = run(
            capsys,
            "transform",
            fix("point.json"),
            "--op",
            "cylinder",
            "--map",
            fix("point_to_circle.json"),
        )
        assert code == 0
        assert "even: Z" in out and "odd: Z" in out

    def test_invalid_morphism_is_domain_error(self, capsys, tmp_path):
        morphism = {
            "dst": json.loads(open(fix("circle.json")).read()),
            "maps": [[[1]], [[1]]],
        }
        mpath = tmp_path / "bad.json"
        mpath.write_text(json.dumps(morphism))
        code, _, err = run(
            capsys, "transform", fix("i2.json"), "--op", "mapcone", "--map", str(mpath)
        )
        assert code in (1, 2)

    def test_map_required(self, capsys):
        code, _, err = run(capsys, "transform", fix("circle.json"), "--op", "mapcone")
        assert code == 2
        assert "--map" in err


class TestFibration:
    def test_circle_times_circle(self, capsys):
        code, out, _ = run(
            capsys,
            "fibration",
            "--base",
            fix("circle.json"),
            "--coeff-even",
            "Z",
            "--coeff-odd",
            "Z",
        )
        assert code == 0
        assert "even: Z^2" in out and "odd: Z^2" in out
        assert "page E^2" in out

    def test_coefficients_from_morphism(self, capsys):
        code, out, _ = run(
            capsys,
            "fibration",
            "--base",
            fix("point.json"),
            "--map",
            fix("point_to_circle.json"),
            "--total",
            fix("circle.json"),
        )
        assert code == 0
        # relative groups of point -> circle are (0, Z): coefficients odd only,
        # so over a point base the totals are the coefficients themselves
        assert "even: 0" in out and "odd: Z" in out

    def test_not_simple_refused(self, capsys):
        code, _, err = run(
            capsys,
            "fibration",
            "--base",
            fix("circle.json"),
            "--coeff-even",
            "Z",
            "--coeff-odd",
            "0",
            "--not-simple",
        )
        assert code == 1
        assert "non-simple" in err

    def test_unresolved_extension_refused(self, capsys, tmp_path):
        zero_complex = {"name": "zero", "stages": [{"dim": 0, "algebra": []}]}
        zpath = tmp_path / "zero.json"
        zpath.write_text(json.dumps(zero_complex))
        morphism = {"maps": []}
        mpath = tmp_path / "into_rp2.json"
        mpath.write_text(json.dumps(morphism))
        code, _, err = run(
            capsys,
            "fibration",
            "--base",
            str(zpath),
            "--map",
            str(mpath),
            "--total",
            fix("rp2.json"),
        )
        assert code == 1
        assert "extension" in err

    def test_bad_coefficient_spec(self, capsys):
        code, _, err = run(
            capsys,
            "fibration",
            "--base",
            fix("point.json"),
            "--coeff-even",
            "Z/1",
            "--coeff-odd",
            "0",
        )
        assert code == 2

    def test_hp_torsion_coefficients_domain_error(self, capsys):
        code, _, err = run(
            capsys,
            "fibration",
            "--base",
            fix("circle.json"),
            "--theory",
            "hp",
            "--coeff-even",
            "Z/2",
            "--coeff-odd",
            "0",
        )
        assert code == 1
        assert "torsion" in err


class TestMaxDim:
    def test_cap_honored(self, capsys, monkeypatch):
        monkeypatch.setenv("NCCW_MAX_DIM", "1")
        code, _, err = run(capsys, "compute", fix("rp2.json"))
        assert code == 1
        assert "NCCW_MAX_DIM" in err

    def test_default_allows_surfaces(self, capsys, monkeypatch):
        monkeypatch.delenv("NCCW_MAX_DIM", raising=False)
        code, _, _ = run(capsys, "compute", fix("rp2.json"))
        assert code == 0


class TestComplexSerialization:
    @pytest.mark.parametrize("name", ["rp2.json", "i2.json", "torus.json", "circle.json"])
    def test_payload_round_trip(self, name):
        # serializing in provided-coboundary form and re-parsing preserves
        # cell counts and every coboundary matrix
        with open(fix(name)) as fh:
            original_name, original = parse_complex(json.load(fh), "x")
        payload = complex_payload(original_name, original)
        reparsed_name, reparsed = parse_complex(payload, "y")
        assert reparsed_name == original_name
        assert reparsed.cell_counts == original.cell_counts
        assert all(
            mat_eq(a, b) for a, b in zip(reparsed.coboundaries, original.coboundaries)
        )


class TestGroupGrammar:
    def test_parse_examples(self):
        assert parse_group("0").is_trivial
        assert parse_group("Z^2") == FGAbelianGroup.free(2)
        assert parse_group("Z/3+Z") == FGAbelianGroup(1, (3,))
        assert parse_group("Z (+) Z/2 (+) Z/6") == FGAbelianGroup(1, (2, 6))
        assert parse_group("Q^3") == FGAbelianGroup.free(3)

    def test_render_parse_round_trip(self):
        rng = random.Random(107)
        for _ in range(50):
            g = FGAbelianGroup.from_cyclic_orders(
                [rng.choice([0, 0, 2, 3, 4, 9, 12]) for _ in range(rng.randint(0, 4))]
            )
            assert parse_group(g.render()) == g

    def test_rejects_garbage(self):
        for bad in ["Z/x", "W", "Z^0", "Z/-2", "Z/1", ""]:
            with pytest.raises(FileFormatError):
                parse_group(bad)
