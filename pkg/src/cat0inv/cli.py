"""Command-line surface: file in, JSON/CSV report out.

Exit codes: 0 success (including "criterion not met" verdicts, which are
results), 1 parse/configuration errors, 2 infeasible or uncertified
computations.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import _report
from .barycenter import SupportedMeasure, UncertifiedBarycenterError, barycenter
from .invariant import (SolverError, delta_multistart, delta_sdp, distance_profile)
from .randomgroups import (FixedPointThresholds, cycle_words, fixed_point_report,
                           girth, sample_labels)
from .regularity import (PropertyPTriple, check_property_p, covering_number,
                         doubling_constant, property_p_witness_from_net)
from .spaces import FiniteMetricSpace, load_space, verify_cat0_sample
from .spectral import (LabeledGraph, embedding_obstruction, laplacian_lambda1,
                       sandwich_check, wang_lambda1)

PARSE_ERROR = 1
INFEASIBLE = 2


def _load_finite(path) -> FiniteMetricSpace:
    space = load_space(path)
    if not isinstance(space, FiniteMetricSpace):
        raise ValueError("this command needs a finite metric space (kind 'finite')")
    return space


def _emit(args, report) -> int:
    text = _report.emit(report, out_path=args.out, fmt=args.format)
    if not args.out:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------- subcommands
def _cmd_delta(args):
    measure = SupportedMeasure.load(args.measure)
    try:
        bar = barycenter(measure)
        profile = distance_profile(measure, bar=bar)
        result = delta_sdp(profile, measure.weights, tol=args.tol,
                           max_iter=args.max_iter)
        cross = delta_multistart(profile, measure.weights,
                                 num_starts=args.starts, seed=args.seed)
    except (UncertifiedBarycenterError, SolverError) as exc:
        sys.stderr.write(f"infeasible: {exc}\n")
        return INFEASIBLE
    agreement = abs(result.value - cross)
    report = _report.make_report(
        "delta", "Izeki-Nayatani invariant delta(mu), infimum over Hilbert realizations",
        {"measure": args.measure, "tol": args.tol, "seed": args.seed,
         "starts": args.starts},
        {"value": result.value,
         "value_tolerance": max(result.diagnostics.get("duality_gap", 0.0), 0.0),
         "cross_check": cross, "cross_check_agreement": agreement,
         "diagnostics": result.diagnostics},
    )
    return _emit(args, report)


def _cmd_barycenter(args):
    measure = SupportedMeasure.load(args.measure)
    try:
        bar = barycenter(measure)
    except UncertifiedBarycenterError as exc:
        sys.stderr.write(f"uncertified barycenter: {exc}\n")
        return INFEASIBLE
    report = _report.make_report(
        "barycenter", "squared-distance barycenter (Frechet mean)",
        {"measure": args.measure, "tol": args.tol},
        {"point": measure.space.point_to_json(bar),
         "dispersion": measure.squared_dispersion(bar)},
    )
    return _emit(args, report)


def _cmd_lambda1(args):
    graph = LabeledGraph.load(args.graph)
    lam, _ = laplacian_lambda1(graph)
    report = _report.make_report(
        "lambda1", "first positive eigenvalue of the degree-normalized graph Laplacian",
        {"graph": args.graph, "tol": args.tol},
        {"lambda1": lam, "num_vertices": graph.num_vertices,
         "num_edges": graph.num_edges, "value_tolerance": 1e-9},
    )
    return _emit(args, report)


def _cmd_wang(args):
    graph = LabeledGraph.load(args.graph)
    space = load_space(args.space)
    try:
        res = wang_lambda1(graph, space, restarts=args.restarts, tol=args.tol,
                           seed=args.seed)
    except UncertifiedBarycenterError as exc:
        sys.stderr.write(f"barycenter certification failed in the target: {exc}\n")
        return INFEASIBLE
    report = _report.make_report(
        "wang", "Wang nonlinear spectral constant lambda_1(G, Y), upper estimate",
        {"graph": args.graph, "space": args.space, "restarts": args.restarts,
         "seed": args.seed, "tol": args.tol},
        {"upper_estimate": res.value, "lambda1": res.lambda1,
         "bracket": [0.0, res.value],
         "note": "upper estimate of an infimum; the certified lower bound "
                 "requires an invariant bound for the target (see sandwich)",
         "restart_values": res.restart_values, "sweeps": res.sweeps},
    )
    return _emit(args, report)


def _cmd_sandwich(args):
    graph = LabeledGraph.load(args.graph)
    space = load_space(args.space)
    try:
        rep = sandwich_check(graph, space, args.delta_upper,
                             restarts=args.restarts, tol=args.tol, seed=args.seed)
    except UncertifiedBarycenterError as exc:
        sys.stderr.write(f"barycenter certification failed in the target: {exc}\n")
        return INFEASIBLE
    report = _report.make_report(
        "sandwich",
        "spectral sandwich (1 - delta) lambda_1(G) <= lambda_1(G, Y) <= lambda_1(G)",
        {"graph": args.graph, "space": args.space, "delta_upper": args.delta_upper,
         "restarts": args.restarts, "seed": args.seed, "tol": args.tol},
        rep.to_json(),
    )
    return _emit(args, report)


def _cmd_property_p(args):
    space = _load_finite(args.space)
    if args.witness:
        with open(args.witness) as fh:
            wdata = json.load(fh)
        triple = PropertyPTriple(wdata["theta"], wdata["alpha"], wdata["eps"])
        rep = check_property_p(space, wdata["witness"], triple)
        witness = wdata["witness"]
    elif args.theta is not None:
        triple = PropertyPTriple(args.theta, args.alpha, args.eps)
        witness = list(range(space.size))
        rep = check_property_p(space, witness, triple)
    else:
        witness, triple, rep = property_p_witness_from_net(space)
    report = _report.make_report(
        "property-p", "separation property P(theta, alpha, eps)",
        {"space": args.space, "witness_file": args.witness},
        {"triple": triple.to_json(), "witness": list(witness),
         "verdict": "pass" if rep.passed else "fail", "report": rep.to_json()},
    )
    return _emit(args, report)


def _cmd_covering(args):
    space = _load_finite(args.space)
    res = covering_number(space, args.radius)
    report = _report.make_report(
        "covering", "covering number by open r-balls centered in the space",
        {"space": args.space, "radius": args.radius},
        res.to_json(),
    )
    return _emit(args, report)


def _cmd_doubling(args):
    space = _load_finite(args.space)
    res = doubling_constant(space)
    report = _report.make_report(
        "doubling", "metric doubling constant (closed half-radius ball covers)",
        {"space": args.space},
        res.to_json(),
    )
    return _emit(args, report)


def _cmd_random_group(args):
    graph = LabeledGraph.load(args.graph)
    labeled = sample_labels(graph, args.generators, seed=args.seed)
    g = girth(labeled)
    words = cycle_words(labeled, args.max_cycle_length)
    result = {
        "generators": args.generators,
        "girth": (None if math.isinf(g) else g),
        "labels": labeled.labels,
        "orientation": [[t, h] for t, h in labeled.orientation],
        "relators": words.to_json(),
    }
    if args.thresholds:
        thresholds = FixedPointThresholds.load(args.thresholds)
        rep = fixed_point_report(labeled, args.delta_upper, thresholds)
        result["criterion"] = rep.to_json()
        result["criterion"]["thresholds"] = thresholds.to_json()
    report = _report.make_report(
        "random-group",
        "graph-model random group: relator words and fixed-point criterion checklist",
        {"graph": args.graph, "generators": args.generators, "seed": args.seed,
         "max_cycle_length": args.max_cycle_length,
         "delta_upper": args.delta_upper, "thresholds": args.thresholds},
        result,
    )
    return _emit(args, report)


def _cmd_obstruction(args):
    rows = []
    rho1 = (lambda s: args.rho1_slope * s) if args.rho1_slope else None
    for path in args.graphs:
        graph = LabeledGraph.load(path)
        rep = embedding_obstruction(graph, args.lam, args.lipschitz, rho1=rho1)
        row = rep.to_json()
        row["graph"] = path
        rows.append(row)
    report = _report.make_report(
        "obstruction",
        "coarse-embedding obstruction: displacement bound L/sqrt(2 lambda)",
        {"graphs": args.graphs, "lambda": args.lam, "lipschitz": args.lipschitz,
         "rho1_slope": args.rho1_slope},
        {"rows": rows},
    )
    return _emit(args, report)


def _cmd_validate_cat0(args):
    space = load_space(args.space)
    rep = verify_cat0_sample(space, num_quadruples=args.samples, seed=args.seed,
                             tol=args.tol)
    report = _report.make_report(
        "validate-cat0", "sampled thin-triangle comparison against flat triangles",
        {"space": args.space, "samples": args.samples, "seed": args.seed,
         "tol": args.tol},
        rep.to_json(),
    )
    return _emit(args, report)


# ---------------------------------------------------------------- parser
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cat0inv",
        description="Geometric invariants on CAT(0) model spaces")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=1e-7)
        p.add_argument("--out", default=None, help="write the report to this path")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("delta", help="invariant of a measure file")
    p.add_argument("measure")
    p.add_argument("--starts", type=int, default=8)
    p.add_argument("--max-iter", type=int, default=100000, dest="max_iter")
    common(p)
    p.set_defaults(func=_cmd_delta)

    p = sub.add_parser("barycenter", help="barycenter of a measure file")
    p.add_argument("measure")
    common(p)
    p.set_defaults(func=_cmd_barycenter)

    p = sub.add_parser("lambda1", help="normalized Laplacian spectral gap")
    p.add_argument("graph")
    common(p)
    p.set_defaults(func=_cmd_lambda1)

    p = sub.add_parser("wang", help="nonlinear spectral constant into a space")
    p.add_argument("graph")
    p.add_argument("space")
    p.add_argument("--restarts", type=int, default=3)
    common(p)
    p.set_defaults(func=_cmd_wang)

    p = sub.add_parser("sandwich", help="two-sided spectral bound check")
    p.add_argument("graph")
    p.add_argument("space")
    p.add_argument("--delta-upper", type=float, required=True, dest="delta_upper")
    p.add_argument("--restarts", type=int, default=3)
    common(p)
    p.set_defaults(func=_cmd_sandwich)

    p = sub.add_parser("property-p", help="separation property check / witness")
    p.add_argument("space")
    p.add_argument("--witness", default=None,
                   help="JSON file with theta/alpha/eps and a witness index list")
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--eps", type=float, default=0.1)
    common(p)
    p.set_defaults(func=_cmd_property_p)

    p = sub.add_parser("covering", help="covering number by open r-balls")
    p.add_argument("space")
    p.add_argument("--radius", type=float, required=True)
    common(p)
    p.set_defaults(func=_cmd_covering)

    p = sub.add_parser("doubling", help="metric doubling constant")
    p.add_argument("space")
    common(p)
    p.set_defaults(func=_cmd_doubling)

    p = sub.add_parser("random-group", help="labels, girth, relators, criterion")
    p.add_argument("graph")
    p.add_argument("--generators", type=int, required=True)
    p.add_argument("--max-cycle-length", type=int, default=8, dest="max_cycle_length")
    p.add_argument("--delta-upper", type=float, default=1.0, dest="delta_upper")
    p.add_argument("--thresholds", default=None,
                   help="JSON file with lambda_min/girth_min/deg bounds/delta_max")
    common(p)
    p.set_defaults(func=_cmd_random_group)

    p = sub.add_parser("obstruction", help="displacement bounds for graph families")
    p.add_argument("graphs", nargs="+")
    p.add_argument("--lambda", type=float, required=True, dest="lam")
    p.add_argument("--lipschitz", type=float, default=1.0)
    p.add_argument("--rho1-slope", type=float, default=None, dest="rho1_slope")
    common(p)
    p.set_defaults(func=_cmd_obstruction)

    p = sub.add_parser("validate-cat0", help="sampled thin-triangle validation")
    p.add_argument("space")
    p.add_argument("--samples", type=int, default=500)
    common(p)
    p.set_defaults(func=_cmd_validate_cat0)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return PARSE_ERROR


if __name__ == "__main__":
    sys.exit(main())
