"""Command-line front end.

Subcommands
-----------
``validate PATH``
    Parse and validate a complex file; exit 0 when it builds.
``compute PATH [--theory k|hp] [--pages] [--paper-indexing] [--json]``
    Assemble the even/odd theory groups, optionally dumping every page.
``transform PATH --op suspend|cone|cylinder|mapcone [--map PATH] [--theory] [--json]``
    Apply a construction.  ``suspend`` emits a new complex file; the
    other operations emit a result file.
``fibration --base PATH (--coeff-even S --coeff-odd S | --map PATH --total PATH) [--theory] [--json]``
    Coefficient spectral sequence over a base: dumps the second page and
    the assembled totals.

Exit codes: 0 success, 1 domain or validation error, 2 parse error.

File formats (JSON, integers only, no floats anywhere):

* complex file::

    {"name": "i2",
     "stages": [{"dim": 0, "algebra": [1, 1]},
                {"dim": 1, "F": [2], "phi0": [[2, 0]], "phi1": [[0, 2]]},
                {"dim": 2, "F": [1], "delta": [[...]]}]}

  or, for a classical CW complex (boundaries map (p+1)-cells to p-cells)::

    {"name": "rp2", "classical_cw": {"counts": [1, 1, 1],
                                     "boundaries": [[[0]], [[2]]]}}

* morphism file (``maps[p]`` has one row per codomain p-cell)::

    {"name": "incl", "dst": {...complex...}, "maps": [[[1]]]}

  In fibration mode the codomain comes from ``--total`` instead and the
  ``dst`` field may be omitted.

Group strings use the grammar ``0 | Z^r | Z/d | term (+) term ...`` (a
bare ``+`` is accepted as separator on input, and ``Q`` in place of ``Z``
for rational groups).

The environment variable ``NCCW_MAX_DIM`` (default 8) caps the accepted
tower height.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import cellmodel, constructions, fibration, ssengine
from .errors import NCCWError, OutOfRange
from .exacthom import FGAbelianGroup, intmat
from .findim import THEORY_HP, THEORY_K, FinDimAlgebra, MultMorphism
from .ssengine import ASSEMBLY_UP_TO_EXTENSION, PARITY_EVEN, Assembly, Page

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_PARSE = 2

DEFAULT_MAX_DIM = 8


class FileFormatError(Exception):
    """Anything in the input text that is not a well-formed definition."""


# ---------------------------------------------------------------------------
# parsing


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: not valid JSON: {exc}") from exc


def _expect_object(obj, where: str) -> dict:
    if not isinstance(obj, dict):
        raise FileFormatError(f"{where}: expected an object")
    return obj


def _parse_sizes(obj, where: str) -> list[int]:
    if not isinstance(obj, list) or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in obj
    ):
        raise FileFormatError(f"{where}: expected a list of integers")
    return list(obj)


def _parse_matrix(obj, shape: tuple[int, int], where: str) -> np.ndarray:
    if not isinstance(obj, list):
        raise FileFormatError(f"{where}: expected a matrix (list of rows)")
    rows, cols = shape
    if rows == 0:
        if obj:
            raise FileFormatError(f"{where}: expected an empty matrix for shape {shape}")
        return intmat([], shape=shape)
    if cols == 0 and obj == []:
        return intmat([[] for _ in range(rows)], shape=shape)
    if len(obj) != rows:
        raise FileFormatError(f"{where}: expected {rows} rows, found {len(obj)}")
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != cols:
            raise FileFormatError(f"{where}: row {i} must be a list of {cols} integers")
        for x in row:
            if not isinstance(x, int) or isinstance(x, bool):
                raise FileFormatError(f"{where}: row {i} holds a non-integer entry {x!r}")
    return intmat(obj, shape=shape)


def _dim_cap() -> int:
    raw = os.environ.get("NCCW_MAX_DIM", str(DEFAULT_MAX_DIM))
    try:
        return int(raw)
    except ValueError:
        raise NCCWError(f"NCCW_MAX_DIM={raw!r} is not an integer") from None


def parse_complex(obj, default_name: str) -> tuple[str, cellmodel.NCCWComplex]:
    """Schema errors raise ``FileFormatError``; the assembled stages are
    then validated by :func:`cellmodel.build`, whose failures are domain
    errors.  The ``NCCW_MAX_DIM`` height cap applies to every complex
    parsed, inline or not."""
    obj = _expect_object(obj, "complex file")
    name = obj.get("name", default_name)
    if not isinstance(name, str):
        raise FileFormatError("'name' must be a string")
    if "classical_cw" in obj:
        cw = _expect_object(obj["classical_cw"], "classical_cw")
        counts = _parse_sizes(cw.get("counts"), "classical_cw.counts")
        raw = cw.get("boundaries")
        if not isinstance(raw, list) or len(raw) != max(len(counts) - 1, 0):
            raise FileFormatError(
                "classical_cw.boundaries must hold one matrix per adjacent dimension pair"
            )
        boundaries = [
            _parse_matrix(b, (counts[p], counts[p + 1]), f"boundary {p + 1}")
            for p, b in enumerate(raw)
        ]
        return name, _capped(cellmodel.from_classical_cw(counts, boundaries))
    if "stages" not in obj:
        raise FileFormatError("complex file needs 'stages' or 'classical_cw'")
    raw_stages = obj["stages"]
    if not isinstance(raw_stages, list) or not raw_stages:
        raise FileFormatError("'stages' must be a nonempty list")
    stages = []
    prev_count = None
    for idx, rec in enumerate(raw_stages):
        rec = _expect_object(rec, f"stage {idx}")
        dim = rec.get("dim")
        if not isinstance(dim, int) or isinstance(dim, bool):
            raise FileFormatError(f"stage {idx}: 'dim' must be an integer")
        if dim == 0:
            sizes = _parse_sizes(rec.get("algebra"), f"stage {idx}.algebra")
            stages.append(cellmodel.NCCWStage(0, FinDimAlgebra(sizes)))
        else:
            sizes = _parse_sizes(rec.get("F"), f"stage {idx}.F")
            alg = FinDimAlgebra(sizes)
            if "phi0" in rec or "phi1" in rec:
                if prev_count is None:
                    raise FileFormatError(f"stage {idx}: endpoint data before stage 0")
                shape = (alg.block_count, stages[0].cell_algebra.block_count)
                phi0 = _parse_matrix(rec.get("phi0"), shape, f"stage {idx}.phi0")
                phi1 = _parse_matrix(rec.get("phi1"), shape, f"stage {idx}.phi1")
                attaching = cellmodel.EndpointPair(
                    MultMorphism(stages[0].cell_algebra, alg, phi0),
                    MultMorphism(stages[0].cell_algebra, alg, phi1),
                )
            elif "delta" in rec:
                if prev_count is None:
                    raise FileFormatError(f"stage {idx}: coboundary before stage 0")
                shape = (alg.block_count, prev_count)
                attaching = cellmodel.ProvidedCoboundary(
                    _parse_matrix(rec["delta"], shape, f"stage {idx}.delta")
                )
            else:
                raise FileFormatError(f"stage {idx}: needs 'phi0'/'phi1' or 'delta'")
            stages.append(cellmodel.NCCWStage(dim, alg, attaching))
        prev_count = stages[-1].cell_algebra.block_count
    return name, _capped(cellmodel.build(stages))


def _capped(built: cellmodel.NCCWComplex) -> cellmodel.NCCWComplex:
    cap = _dim_cap()
    if built.top_dimension > cap:
        raise OutOfRange(
            f"tower height {built.top_dimension} exceeds NCCW_MAX_DIM={cap}"
        )
    return built


def load_complex(path: str) -> tuple[str, cellmodel.NCCWComplex]:
    default_name = os.path.splitext(os.path.basename(path))[0]
    return parse_complex(_load_json(path), default_name)


def parse_morphism_maps(obj, src, dst) -> constructions.CellularMorphism:
    """Degree maps from a morphism file against already-built cochain
    models; missing trailing degrees are zero."""
    obj = _expect_object(obj, "morphism file")
    raw = obj.get("maps")
    if not isinstance(raw, list):
        raise FileFormatError("'maps' must be a list of matrices")
    top = max(src.top_degree, dst.top_degree)
    if len(raw) > top + 1:
        raise FileFormatError(f"'maps' lists {len(raw)} degrees, expected at most {top + 1}")
    mats = [
        _parse_matrix(m, (dst.rank(p), src.rank(p)), f"maps[{p}]")
        for p, m in enumerate(raw)
    ]
    return constructions.CellularMorphism(src, dst, mats)


def parse_group(text: str) -> FGAbelianGroup:
    """Inverse of :meth:`FGAbelianGroup.render`; also accepts a bare ``+``
    separator and the ``Q`` symbol."""
    s = text.strip()
    if s == "0":
        return FGAbelianGroup.trivial()
    orders: list[int] = []
    for token in s.replace("(+)", "+").split("+"):
        token = token.strip()
        if token in ("Z", "Q"):
            orders.append(0)
        elif token.startswith(("Z^", "Q^")):
            try:
                r = int(token[2:])
            except ValueError:
                raise FileFormatError(f"bad group term {token!r}") from None
            if r < 1:
                raise FileFormatError(f"bad free rank in {token!r}")
            orders.extend([0] * r)
        elif token.startswith("Z/"):
            try:
                d = int(token[2:])
            except ValueError:
                raise FileFormatError(f"bad group term {token!r}") from None
            if d < 2:
                raise FileFormatError(f"bad torsion order in {token!r}")
            orders.append(d)
        else:
            raise FileFormatError(f"bad group term {token!r}")
    return FGAbelianGroup.from_cyclic_orders(orders)


# ---------------------------------------------------------------------------
# payloads and rendering


def _symbol(theory: str) -> str:
    return "Q" if theory == THEORY_HP else "Z"


def assembly_payload(a: Assembly, symbol: str) -> dict:
    return {
        "group": a.group.render(symbol),
        "pieces": [g.render(symbol) for g in a.pieces],
        "up_to_extension": a.note == ASSEMBLY_UP_TO_EXTENSION,
    }


def page_payload(page: Page, symbol: str) -> dict:
    k = page.k
    entries = []
    for (p, parity) in page.support():
        entries.append(
            {
                "p": p,
                "paper_p": k - p,
                "parity": "even" if parity == PARITY_EVEN else "odd",
                "group": page.entry_at(p, parity).render(symbol),
            }
        )
    diffs = []
    for (p, parity) in sorted(page.differentials.keys()):
        diffs.append(
            {
                "p": p,
                "paper_p": k - p,
                "parity": "even" if parity == PARITY_EVEN else "odd",
                "target_p": p + page.r,
                "target_paper_p": k - p - page.r,
                "matrix": page.differentials[(p, parity)].tolist(),
            }
        )
    return {"r": page.r, "entries": entries, "differentials": diffs}


def all_pages(ss: ssengine.SpectralSequence) -> list[Page]:
    while ss.current_r < ss.stabilized_at:
        ss = ssengine.turn_page(ss)
    return list(ss.pages)


def result_payload(name, theory, even, odd, pages=None) -> dict:
    sym = _symbol(theory)
    out = {
        "name": name,
        "theory": theory,
        "even": assembly_payload(even, sym),
        "odd": assembly_payload(odd, sym),
    }
    if pages is not None:
        out["pages"] = [page_payload(pg, sym) for pg in pages]
    return out


def parse_result(text: str) -> dict:
    """Re-parse an emitted JSON result; group strings become groups again."""
    obj = json.loads(text)
    parsed = dict(obj)
    for key in ("even", "odd"):
        block = dict(obj[key])
        block["group"] = parse_group(block["group"])
        block["pieces"] = [parse_group(s) for s in block["pieces"]]
        parsed[key] = block
    return parsed


def emit(payload: dict, as_json: bool, paper_indexing: bool = False) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True, indent=2))
        return
    print(f"name: {payload['name']}")
    print(f"theory: {payload['theory']}")
    for key in ("even", "odd"):
        block = payload[key]
        suffix = " (up to extension)" if block["up_to_extension"] else ""
        print(f"{key}: {block['group']}{suffix}")
        if len(block["pieces"]) > 1:
            print(f"  pieces: {', '.join(block['pieces'])}")
    for pg in payload.get("pages", []):
        r = pg["r"]
        if paper_indexing:
            print(f"page E^{r} (paper indexing, d^{r}: p -> p-{r}):")
        else:
            print(f"page E^{r} (d^{r}: p -> p+{r}):")
        for e in pg["entries"]:
            p = e["paper_p"] if paper_indexing else e["p"]
            print(f"  (p={p}, q={e['parity']}): {e['group']}")
        for d in pg["differentials"]:
            p = d["paper_p"] if paper_indexing else d["p"]
            tp = d["target_paper_p"] if paper_indexing else d["target_p"]
            print(f"  d at (p={p}, q={d['parity']}) -> p={tp}: {d['matrix']}")


def complex_payload(name: str, x: cellmodel.NCCWComplex) -> dict:
    """Serialize a tower in provided-coboundary form."""
    stages: list[dict] = [{"dim": 0, "algebra": list(x.stages[0].cell_algebra.sizes)}]
    for k in range(1, x.top_dimension + 1):
        stages.append(
            {
                "dim": k,
                "F": list(x.stages[k].cell_algebra.sizes),
                "delta": x.coboundaries[k - 1].tolist(),
            }
        )
    return {"name": name, "stages": stages}


def suspended_payload(name: str, x: cellmodel.NCCWComplex) -> dict:
    """Complex file of the suspension: every stage moves up one dimension
    above a zero stage-0 algebra; coboundaries ride along."""
    stages: list[dict] = [{"dim": 0, "algebra": []}]
    stages.append(
        {
            "dim": 1,
            "F": list(x.stages[0].cell_algebra.sizes),
            "delta": [[] for _ in range(x.cell_counts[0])],
        }
    )
    for k in range(1, x.top_dimension + 1):
        stages.append(
            {
                "dim": k + 1,
                "F": list(x.stages[k].cell_algebra.sizes),
                "delta": x.coboundaries[k - 1].tolist(),
            }
        )
    return {"name": f"{name}_suspended", "stages": stages}


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args) -> int:
    name, built = load_complex(args.path)
    print(f"{name}: valid, cell counts {list(built.cell_counts)}")
    return EXIT_OK


def _theory(args) -> str:
    return THEORY_HP if args.theory == "hp" else THEORY_K


def cmd_compute(args) -> int:
    name, built = load_complex(args.path)
    theory = _theory(args)
    cochain = cellmodel.cochain_complex(built, theory)
    ss = ssengine.from_cellular(cochain, theory)
    even = ssengine.assemble(ss, "even")
    odd = ssengine.assemble(ss, "odd")
    pages = all_pages(ss) if args.pages else None
    emit(result_payload(name, theory, even, odd, pages), args.json, args.paper_indexing)
    return EXIT_OK


def _load_morphism(args, src_model, theory):
    obj = _load_json(args.map)
    src_cochain = cellmodel.cochain_complex(src_model, theory)
    if getattr(args, "total", None):
        _, dst_model = load_complex(args.total)
    else:
        obj = _expect_object(obj, "morphism file")
        if "dst" not in obj:
            raise FileFormatError("morphism file needs a 'dst' complex")
        _, dst_model = parse_complex(obj["dst"], "dst")
    dst_cochain = cellmodel.cochain_complex(dst_model, theory)
    return parse_morphism_maps(obj, src_cochain, dst_cochain)


def cmd_transform(args) -> int:
    name, built = load_complex(args.path)
    theory = _theory(args)
    if args.op == "suspend":
        print(json.dumps(suspended_payload(name, built), sort_keys=True, indent=2))
        return EXIT_OK
    if args.op == "cone":
        trivial = FGAbelianGroup.trivial()
        a = Assembly("even", (), trivial, "exact", trivial)
        b = Assembly("odd", (), trivial, "exact", trivial)
        emit(result_payload(f"cone({name})", theory, a, b), args.json)
        return EXIT_OK
    if not args.map:
        raise FileFormatError(f"--op {args.op} needs --map")
    morphism = _load_morphism(args, built, theory)
    if args.op == "cylinder":
        model, _embedded = constructions.mapping_cylinder(morphism)
        even, odd = ssengine.compute_theories(model, theory)
        emit(result_payload(f"cylinder({name})", theory, even, odd), args.json)
        return EXIT_OK
    if args.op == "mapcone":
        even, odd = constructions.relative_assemblies(morphism, theory)
        emit(result_payload(f"mapcone({name})", theory, even, odd), args.json)
        return EXIT_OK
    raise FileFormatError(f"unknown --op {args.op}")


def cmd_fibration(args) -> int:
    base_name, base_model = load_complex(args.base)
    theory = _theory(args)
    base = cellmodel.cochain_complex(base_model, theory)
    if args.map:
        if not args.total:
            raise FileFormatError("--map needs --total in fibration mode")
        morphism = _load_morphism(args, base_model, theory)
        g_even, g_odd = fibration.relative_coefficients(morphism, theory)
    else:
        if args.coeff_even is None or args.coeff_odd is None:
            raise FileFormatError("need --coeff-even and --coeff-odd, or --map with --total")
        g_even = parse_group(args.coeff_even)
        g_odd = parse_group(args.coeff_odd)
    try:
        data = fibration.SerreFibrationData(
            base, g_even, g_odd, theory, simple=not args.not_simple
        )
    except ValueError as exc:
        raise NCCWError(str(exc)) from exc
    page2 = fibration.leray_serre_e2(data)
    even, odd = fibration.compute_total(data)
    payload = result_payload(f"fibration({base_name})", theory, even, odd, pages=[page2])
    emit(payload, args.json, args.paper_indexing)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nccw",
        description="Exact K-theory and periodic cyclic homology of NCCW complexes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate a complex file")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("compute", help="assemble theory groups of a complex")
    p.add_argument("path")
    p.add_argument("--theory", choices=["k", "hp"], default="k")
    p.add_argument("--pages", action="store_true", help="dump every page up to E^(k+1)")
    p.add_argument("--paper-indexing", action="store_true", dest="paper_indexing")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("transform", help="suspend, cone, cylinder or mapping cone")
    p.add_argument("path")
    p.add_argument("--op", choices=["suspend", "cone", "cylinder", "mapcone"], required=True)
    p.add_argument("--map", help="morphism file (cylinder and mapcone)")
    p.add_argument("--theory", choices=["k", "hp"], default="k")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_transform, total=None)

    p = sub.add_parser("fibration", help="coefficient spectral sequence over a base")
    p.add_argument("--base", required=True)
    p.add_argument("--coeff-even", dest="coeff_even")
    p.add_argument("--coeff-odd", dest="coeff_odd")
    p.add_argument("--map", help="morphism file from the base into the total model")
    p.add_argument("--total", help="total complex file (with --map)")
    p.add_argument("--theory", choices=["k", "hp"], default="k")
    p.add_argument("--not-simple", action="store_true", dest="not_simple")
    p.add_argument("--paper-indexing", action="store_true", dest="paper_indexing")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fibration)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NCCWError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
