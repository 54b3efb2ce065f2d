# -*- coding: utf-8 -*-
# Copyright (c) 2025, EPW Lab contributors
# For license information, please see license.txt

from __future__ import annotations

import argparse
import importlib
import json
import logging
import sys
from dataclasses import replace

from epwlab import __version__, hooks
from epwlab.config.settings import configure, get_settings
from epwlab.exceptions import EpwLabError, EpwLabInputError, MathematicalFailure
from epwlab.modules import epw, exterior, hodge, lagrangian, lattices, quadrics
from epwlab.modules.bbw import SheafTerm, bott_pushforward, check_serre_duality
from epwlab.modules.epw_surface import (
    quadric_section_vanishing,
    sextic_hilbert_polynomial,
    y2_cohomology_table,
    y2_hilbert_polynomial,
)
from epwlab.modules.linalg import to_scalar
from epwlab.modules.polynomials import coefficients
from epwlab.modules.pushforwards import verify_prop_a1, verify_prop_a2
from epwlab.utils.audit import RunAuditLog
from epwlab.utils.rng import make_rng, spawn
from epwlab.utils.serialization import (
    dumps,
    grid_to_json,
    lagrangian_from_json,
    lagrangian_to_json,
    loads,
    rational_to_str,
    to_jsonable,
)

_logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MATHEMATICAL_FAILURE = 1
EXIT_USAGE = 2

WHICH = {"y": "Y", "ydual": "Ydual", "z": "Z"}
A1_RANGE = (3, 4, 5, 6)
A2_RANGE = (4, 5, 6, 7)
PENCIL_PARAMETERS = (0, 1, -1, 2, None)


# Input helpers
# -------------

def parse_vector(text, length=exterior.DIM):
    try:
        values = [to_scalar(part) for part in text.split(",")]
    except Exception as e:
        raise EpwLabInputError(f"Cannot parse vector {text!r}: {str(e)}")
    if len(values) != length:
        raise EpwLabInputError(f"Expected {length} comma-separated entries, got {len(values)}")
    return values


def parse_u3(text):
    """Three vectors separated by ';'."""
    parts = [p for p in text.split(";") if p.strip()]
    if len(parts) != 3:
        raise EpwLabInputError("U3 needs three vectors separated by ';'")
    return [parse_vector(p) for p in parts]


def parse_ints(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise EpwLabInputError(f"Expected comma-separated integers, got {text!r}")


def read_input(path, audit):
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as e:
        raise EpwLabInputError(f"Cannot read {path}: {str(e)}")
    audit.log_input(path, text)
    return text


def load_data(path, audit):
    return lagrangian_from_json(loads(read_input(path, audit)))


def _require(value, flag):
    if value is None:
        raise EpwLabInputError(f"{flag} is required")
    return value


def _witness(report):
    return {"kind": report.kind, "ell": report.ell, "witness": grid_to_json(report.witness.rows),
            "flagged": report.flagged}


# Command handlers
# ----------------

def cmd_gen(args, audit):
    """
    Generate LagrangianData from the graph generator or a planted construction

    Returns:
        tuple: (report payload, LagrangianData)
    """
    rng = make_rng(args.seed, "gen")
    if args.plant != "none":
        if args.ell != 0:
            raise EpwLabInputError("--ell must be 0 when --plant is given")
        kind, _, coords = args.plant.partition(":")
        if kind == "y2":
            data = lagrangian.plant_y2(parse_vector(coords), rng, seed=args.seed)
        elif kind == "z1":
            data = lagrangian.plant_z1(parse_u3(coords), rng, seed=args.seed)
        else:
            raise EpwLabInputError(f"Unknown plant {kind!r}; expected y2:v or z1:u3")
    else:
        data = lagrangian.random_graph_lagrangian(rng, args.ell, seed=args.seed)

    search = lagrangian.find_decomposable(data.A, rng=spawn(rng, "decomposable"))
    metadata = dict(data.metadata)
    metadata["decomposable_search"] = {
        "found": search.found,
        "pencils_tried": search.pencils_tried,
        "budget": search.budget,
        "message": search.message,
    }
    if search.found:
        metadata["decomposable_search"]["vector"] = [rational_to_str(c) for c in search.vector.coords]
    data = replace(data, metadata=metadata)
    payload = {
        "generator": data.generator,
        "ell": data.ell,
        "gm_dimensions": lagrangian.gm_dimensions(data),
        "decomposable_search": metadata["decomposable_search"],
    }
    return payload, data


def cmd_stratum(args, audit):
    data = load_data(_require(args.data, "--data"), audit)
    point = _require(args.point, "--point")
    if args.kind == "y":
        return _witness(epw.y_stratum(data, parse_vector(point)))
    if args.kind == "ydual":
        return _witness(epw.y_dual_stratum(data, parse_vector(point)))
    u3 = parse_u3(point)
    report = _witness(epw.z_stratum(data, u3))
    report["ell_by_contraction"] = epw.z_stratum_by_contraction(data, u3).ell
    return report


def cmd_degree(args, audit):
    data = load_data(_require(args.data, "--data"), audit)
    result = epw.degree_probe(data, WHICH[args.which], make_rng(args.seed, f"degree:{args.which}"))
    if result.degree != result.expected:
        raise MathematicalFailure(f"{result.which} restricts to degree {result.degree}, expected {result.expected}")
    return {
        "which": result.which,
        "degree": result.degree,
        "poly": [rational_to_str(c) for c in coefficients(result.poly)],
        "minors_used": result.minors_used,
        "retries": result.retries,
        "squarefree": result.squarefree,
        "modular_degrees": {str(p): d for p, d in result.modular_degrees.items()},
        "modular_agreement": result.modular_agreement,
    }


def cmd_sigma(args, audit):
    data = load_data(_require(args.data, "--data"), audit)
    if data.v5 is None:
        raise EpwLabInputError("Lagrangian data carries no hyperplane V5")
    rng = make_rng(args.seed, "sigma")
    locus = epw.kernel_locus(data, data.v5, spawn(rng, "kernel"), args.samples)
    payload = {
        "ell": locus.ell,
        "points": [[rational_to_str(c) for c in p.v0.coords] for p in locus.points],
        "y_strata": [p.y_ell for p in locus.points],
        "span_rank": locus.span_rank,
        "on_conic": locus.on_conic,
        "avoids_hyperplanes": locus.avoids_hyperplanes,
    }
    if args.fibers and locus.ell == 1:
        fibers = epw.prz2_fiber_samples(data, data.v5, args.fibers, spawn(rng, "fibers"))
        payload["fibers"] = {
            "tangent_dimension": fibers.tangent_dimension,
            "memberships": list(fibers.memberships),
        }
    return payload


def cmd_pencil(args, audit):
    rng = make_rng(args.seed, "pencil")
    v = parse_vector(args.point) if args.point else None
    if args.planted:
        v = parse_vector(args.planted)
        pair = lagrangian.plant_joint_pair(v, spawn(rng, "plant"))
        first, second = pair.first, pair.second
    else:
        first = load_data(_require(args.data, "--data"), audit)
        second = load_data(_require(args.other, "--other"), audit)
    pencil = lagrangian.lagrangian_pencil(first, second)
    members = {t: pencil.member(t) for t in PENCIL_PARAMETERS}
    lagrangian_ok = all(lagrangian.is_lagrangian(m).ok for m in members.values())
    values = list(members.values())
    base_ok = all(values[i].intersect(values[j]) == pencil.B
                  for i in range(len(values)) for j in range(i + 1, len(values)))
    if not (lagrangian_ok and base_ok):
        raise MathematicalFailure("Pencil members fail the Lagrangian or common-base check")
    payload = {"base_dim": pencil.B.dim, "members_lagrangian": lagrangian_ok, "common_base": base_ok,
               "parameters": ["inf" if t is None else t for t in PENCIL_PARAMETERS]}
    if v is not None:
        witness = epw.joint_stratum_witness(pencil, v, spawn(rng, "witness"))
        payload["joint"] = {
            "t": "inf" if witness.t is None else rational_to_str(witness.t),
            "ell_at_t": witness.ell_at_t,
            "others": {rational_to_str(s): ell for s, ell in witness.others.items()},
        }
    return payload


def cmd_quadric(args, audit):
    form = quadrics.QuadraticForm.from_json(loads(read_input(_require(args.form, "--form"), audit)),
                                            degree=2 if args.extension else 1)
    corank = form.corank()
    descriptor = quadrics.classify_linear_families(form.m, corank, args.k)
    payload = {
        "k": args.k,
        "m": form.m,
        "corank": corank,
        "structure": descriptor.structure.name,
        "dim_estimate": descriptor.dim,
        "count": None,
        "families": descriptor.components,
    }
    if form.p is not None:
        enumeration = quadrics.enumerate_linear_spaces_ff(form, args.k)
        payload.update({"count": enumeration.count, "families": enumeration.families,
                        "field_order": enumeration.order})
    if args.growth:
        payload["growth_dimension"] = quadrics.growth_dimension(form.gram, args.k)
    return payload


def cmd_lattice(args, audit):
    if args.report == "catalog":
        return lattices.catalog()
    report = lattices.gm_embedding_report(4 if args.report == "gm4" else 6)
    payload = {
        "n": report.n,
        "e1": list(report.e1),
        "e2": list(report.e2),
        "gram_e": [list(row) for row in report.gram_e],
        "characteristic": report.characteristic,
        "characteristic_square": report.characteristic_square,
        "complement": report.complement.as_dict(),
        "target": report.target.as_dict(),
        "matches": report.matches,
        "isometry": report.isometry,
        "inclusion_factors": list(report.inclusion_factors),
        "note": report.note,
        "passed": report.passed,
    }
    if not report.passed:
        raise MathematicalFailure(f"Gamma{report.n} embedding checks failed: {payload}")
    return payload


def cmd_bbw(args, audit):
    if args.verify in ("a1", "a2"):
        verify, default_range = (verify_prop_a1, A1_RANGE) if args.verify == "a1" else (verify_prop_a2, A2_RANGE)
        ranks = [args.m] if args.m is not None else default_range
        reports = [verify(m).as_dict() for m in ranks]
        return {"verify": args.verify, "reports": reports, "matches": all(r["matches"] for r in reports)}
    if args.verify == "b-table":
        table = y2_cohomology_table()
        hilbert = y2_hilbert_polynomial()
        return {"verify": "b-table", "table": table.as_dict(), "hilbert_polynomial": hilbert.as_dict(),
                "sextic": sextic_hilbert_polynomial().as_dict(), "matches": table.matches and hilbert.matches}
    if args.verify == "b-vanishing":
        report = quadric_section_vanishing()
        return {"verify": "b-vanishing", **report.as_dict()}
    grass = parse_ints(_require(args.grass, "--grass"))
    if len(grass) != 2:
        raise EpwLabInputError("--grass needs k,m")
    k, m = grass
    sub = [x - args.twist for x in parse_ints(_require(args.u_weight, "--u-weight"))]
    quotient = parse_ints(args.q_weight) if args.q_weight else None
    term = SheafTerm(k, m, tuple(sub), tuple(quotient) if quotient is not None else None)
    return {"term": {"k": k, "m": m, "sub": list(term.sub), "quotient": list(term.quotient)},
            "result": bott_pushforward(term).as_dict(), "serre_duality": check_serre_duality(term)}


def cmd_hodge(args, audit):
    return hodge.hodge_numerology(args.n).as_dict()


# Parser and dispatch
# -------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="epwlab", description=hooks.app_description)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--seed", type=int, default=0, help="run seed; every sub-task derives from it")
    parser.add_argument("--threads", type=int, default=None, help="worker threads, 0 = one per CPU")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    parser.add_argument("--json", action="store_true", help="JSON output (always on)")
    parser.add_argument("-o", "--out", default=None, help="write the result here instead of stdout")
    # Accepted after the subcommand too; SUPPRESS keeps a root-level -o from being reset.
    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("-o", "--out", default=argparse.SUPPRESS, help="write the result here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", parents=[output], help="generate Lagrangian data")
    gen.add_argument("--ell", type=int, choices=range(0, 4), default=0)
    gen.add_argument("--plant", default="none", help="none, y2:v or z1:u1;u2;u3")

    stratum = sub.add_parser("stratum", parents=[output], help="pointwise stratum query")
    stratum.add_argument("--data")
    stratum.add_argument("--kind", choices=sorted(WHICH), default="y")
    stratum.add_argument("--point", help="vector, covector, or three vectors separated by ';'")

    degree = sub.add_parser("degree", parents=[output], help="degree of a stratum along a random line")
    degree.add_argument("--data")
    degree.add_argument("--which", choices=sorted(WHICH), default="y")

    sigma = sub.add_parser("sigma", parents=[output], help="kernel locus of A ∩ ⋀³V₅")
    sigma.add_argument("--data")
    sigma.add_argument("--samples", type=int, default=None)
    sigma.add_argument("--fibers", type=int, default=0)

    pencil = sub.add_parser("pencil", parents=[output], help="pencil through two Lagrangians meeting in dimension 8")
    pencil.add_argument("--data")
    pencil.add_argument("--other")
    pencil.add_argument("--point", help="v for the joint stratum witness")
    pencil.add_argument("--planted", help="v: construct the pair around v")

    quadric = sub.add_parser("quadric-count", parents=[output], help="linear spaces on a quadric")
    quadric.add_argument("--form", help='JSON file {"p": prime or "Q", "gram": grid}')
    quadric.add_argument("--k", type=int, default=1)
    quadric.add_argument("--extension", action="store_true", help="count over F_{p^2}")
    quadric.add_argument("--growth", action="store_true", help="estimate the dimension from F_3 and F_5 counts")

    lattice = sub.add_parser("lattice", parents=[output], help="lattice reports")
    lattice.add_argument("--report", choices=["gm4", "gm6", "catalog"], default="catalog")

    bbw = sub.add_parser("bbw", parents=[output], help="Bott pushforwards and stored tables")
    bbw.add_argument("--verify", choices=["a1", "a2", "b-table", "b-vanishing"])
    bbw.add_argument("--m", type=int, default=None)
    bbw.add_argument("--grass", help="k,m")
    bbw.add_argument("--u-weight")
    bbw.add_argument("--q-weight")
    bbw.add_argument("--twist", type=int, default=0, help="power of det(U^∨)")

    hodge_ = sub.add_parser("hodge", parents=[output], help="Hodge diamond of a GM variety")
    hodge_.add_argument("--n", type=int, required=True)
    return parser


def resolve_handler(command):
    """Look up a handler through the hooks registry."""
    for entry in hooks.cli_commands:
        if entry["command"] == command:
            module_name, _, attribute = entry["method"].rpartition(".")
            return getattr(importlib.import_module(module_name), attribute), entry
    raise EpwLabInputError(f"Unknown command: {command}")


def configure_logging(level):
    logging.basicConfig(
        level=getattr(logging, str(level).upper(), logging.WARNING),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def _write(path, text):
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as e:
        raise EpwLabInputError(f"Cannot write {path}: {str(e)}")


def _fail(message, code):
    sys.stderr.write(json.dumps({"error": True, "message": message}, sort_keys=True) + "\n")
    return code


def main(argv=None):
    """
    Entry point of the epwlab command

    Returns:
        int: 0 on success, 1 on a mathematical failure, 2 on a usage error
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        settings = configure(threads=args.threads, log_level=args.log_level)
    except EpwLabError as e:
        return _fail(str(e), EXIT_USAGE)
    configure_logging(settings.log_level)

    try:
        handler, entry = resolve_handler(args.command)
        audit = RunAuditLog(args.command, args.seed, get_settings())
        result = handler(args, audit)
        if entry.get("output") == "data":
            payload, data = result
            if args.out:
                _write(args.out, dumps(lagrangian_to_json(data)))
                payload["file"] = args.out
            else:
                payload["data"] = lagrangian_to_json(data)
            _write(None, audit.render(payload))
        else:
            _write(args.out, audit.render(to_jsonable(result)))
        return EXIT_OK
    except MathematicalFailure as e:
        _logger.error(f"{args.command} failed: {str(e)}", exc_info=True)
        return _fail(str(e), EXIT_MATHEMATICAL_FAILURE)
    except EpwLabInputError as e:
        _logger.error(f"{args.command} rejected its input: {str(e)}", exc_info=True)
        return _fail(str(e), EXIT_USAGE)
    except EpwLabError as e:
        _logger.error(f"{args.command} failed: {str(e)}", exc_info=True)
        return _fail(str(e), EXIT_MATHEMATICAL_FAILURE)


if __name__ == "__main__":
    sys.exit(main())
