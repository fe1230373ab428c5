"""Command-line surface.

Subcommands: evert, exotic, delta-probe, config-analyze, cs-check,
collision-probe, report.  All outputs are deterministic given identical
flags and seed (JSON keys sorted, fixed float formatting).

Exit codes: 0 pass, 2 property failure, 3 configuration error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .configspace import (
    PointCloud,
    build_config_complex,
    cn_graph,
    components,
    has_n_cycle,
    hypothesis_report,
    perfectness_check,
    sn_action_on_components,
)
from .divdiff import boundedness_probe, conj, limit_probe, regularity_verdict
from .domains import SpectralDomain
from .errors import CsLabError
from .frames import evert
from .harness import (
    EXIT_CONFIG_ERROR,
    EXIT_OK,
    EXIT_PROPERTY_FAILURE,
    ExperimentConfig,
    collision_path_probe,
    cs_preserver_check,
    run_scenario,
)
from .linalg import frame_from_json, frame_to_json, matrix_from_json, matrix_to_json
from .operators import exotic_polar
from .scenarios import SCENARIOS, scenario_cloud, scenario_domain


def _read_json(path: str | None):
    if path is None or path == "-":
        return json.load(sys.stdin)
    return json.loads(Path(path).read_text())


def _emit(obj, args) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_csv(rows, header, args) -> None:
    lines = [",".join(header)]
    lines += [",".join(repr(x) for x in row) for row in rows]
    text = "\n".join(lines) + "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _add_shared(p: argparse.ArgumentParser) -> None:
    p.add_argument("--scenario", default="circle", choices=SCENARIOS + ("custom",))
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--format", dest="fmt", default="json", choices=("json", "csv"))
    p.add_argument("--tol", type=float, default=1e-8)


def _cmd_evert(args) -> int:
    F = frame_from_json(_read_json(args.infile))
    _emit(frame_to_json(evert(F)), args)
    return EXIT_OK


def _cmd_exotic(args) -> int:
    M = matrix_from_json(_read_json(args.infile))
    _emit(matrix_to_json(exotic_polar(M)), args)
    return EXIT_OK


def _cmd_delta_probe(args) -> int:
    if args.scenario == "custom":
        cloud = PointCloud.from_json(_read_json(args.cloud))
        X = cloud.domain()
    else:
        X = scenario_domain(args.scenario)
    z = X.default_center() if args.center is None else complex(*args.center)
    k = args.k if args.k is not None else args.n - 1
    radii = tuple(args.radii) if args.radii else (1e-1, 1e-2, 1e-3, 1e-4)
    rb = boundedness_probe(conj, X, z, k, radii=radii, seed=args.seed)
    rl = limit_probe(conj, X, z, k, radii=radii, seed=args.seed + 1)
    verdict = regularity_verdict(X, k + 1, seed=args.seed)
    if args.fmt == "csv":
        rows = list(zip(rb.radii, rb.sup_values, rl.oscillation_values))
        _emit_csv(rows, ["radius", "sup", "oscillation"], args)
    else:
        _emit(
            {
                "note": "HEURISTIC probe evidence, not a proof of class membership",
                "boundedness": rb.to_json(),
                "limit": rl.to_json(),
                "verdict": verdict.to_json(),
            },
            args,
        )
    return EXIT_OK


def _cmd_config_analyze(args) -> int:
    cloud = (
        PointCloud.from_json(_read_json(args.cloud))
        if args.scenario == "custom"
        else scenario_cloud(args.scenario)
    )
    perf = perfectness_check(cloud)
    cc = build_config_complex(cloud, args.n)
    decomp = components(cc)
    action = sn_action_on_components(decomp)
    graphs = [cn_graph(decomp, comp, cloud) for comp in range(decomp.component_count)]
    _emit(
        {
            "scenario": args.scenario,
            "n": args.n,
            "m": cloud.m,
            "perfect": perf.perfect,
            "offenders": list(perf.offenders),
            "node_count": cc.node_count,
            "component_count": decomp.component_count,
            "representatives": [list(r) for r in decomp.representatives],
            "transitive": action.transitive,
            "free": action.free,
            "isotropy_orders": list(action.isotropy_orders),
            "gamma_graphs": [g.to_json() for g in graphs],
            "gamma_n_cycles": [has_n_cycle(g) for g in graphs],
        },
        args,
    )
    return EXIT_OK


def _cmd_cs_check(args) -> int:
    config = ExperimentConfig(
        scenario=args.scenario,
        n=args.n,
        trials=args.trials,
        seed=args.seed,
        spectrum_tol=args.tol,
        commutator_tol=args.tol,
    )
    rep = cs_preserver_check(args.map, config)
    _emit(rep.to_json(), args)
    return EXIT_OK if rep.passed else EXIT_PROPERTY_FAILURE


def _cmd_collision_probe(args) -> int:
    rays = tuple(args.rays) if args.rays else (0.0,)
    rep = collision_path_probe(args.family, map_name=args.map, rays=rays, seed=args.seed)
    if args.fmt == "csv":
        rows = [
            (r, th, nrm)
            for r, row in zip(rep.t_values, rep.norms)
            for th, nrm in zip(rep.rays, row)
        ]
        _emit_csv(rows, ["t", "ray", "norm"], args)
    else:
        _emit(rep.to_json(), args)
    return EXIT_OK


def _cmd_report(args) -> int:
    config = ExperimentConfig(
        scenario=args.scenario,
        n=args.n,
        trials=args.trials,
        seed=args.seed,
        spectrum_tol=args.tol,
        commutator_tol=args.tol,
        out=args.out,
    )
    cloud = PointCloud.from_json(_read_json(args.cloud)) if args.scenario == "custom" else None
    try:
        code, summary = run_scenario(config, cloud=cloud)
    except CsLabError as exc:
        # a report that cannot even be assembled (e.g. a 1-point cloud)
        sys.stderr.write(f"report failed: {exc}\n")
        return EXIT_PROPERTY_FAILURE
    if not args.out:
        _emit(summary, args)
    return code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cslab",
        description=(
            "Numerical laboratory for commutativity-and-spectrum preservers. "
            "Verdicts and probes are heuristic evidence, never proofs."
        ),
    )
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("evert", help="evert a frame (JSON in, JSON out)")
    q.add_argument("--in", dest="infile", default=None, help="frame JSON file or - for stdin")
    _add_shared(q)
    q.set_defaults(func=_cmd_evert)

    q = sub.add_parser("exotic", help="apply the exotic preserver to a matrix")
    q.add_argument("--in", dest="infile", default=None, help="matrix JSON file or - for stdin")
    _add_shared(q)
    q.set_defaults(func=_cmd_exotic)

    q = sub.add_parser("delta-probe", help="divided-difference regularity probes")
    q.add_argument("--k", type=int, default=None, help="iterate order (default n-1)")
    q.add_argument("--center", type=float, nargs=2, default=None, metavar=("RE", "IM"))
    q.add_argument("--radii", type=float, nargs="+", default=None)
    q.add_argument("--cloud", default=None, help="cloud JSON for --scenario custom")
    _add_shared(q)
    q.set_defaults(func=_cmd_delta_probe)

    q = sub.add_parser("config-analyze", help="configuration-space analysis")
    q.add_argument("--cloud", default=None, help="cloud JSON for --scenario custom")
    _add_shared(q)
    q.set_defaults(func=_cmd_config_analyze)

    q = sub.add_parser("cs-check", help="spectrum/commutativity property check")
    q.add_argument("--map", default="exotic")
    _add_shared(q)
    q.set_defaults(func=_cmd_cs_check)

    q = sub.add_parser("collision-probe", help="eigenvalue-collision continuity probe")
    q.add_argument("--family", default="jordan2")
    q.add_argument("--map", default="exotic")
    q.add_argument("--rays", type=float, nargs="+", default=None)
    _add_shared(q)
    q.set_defaults(func=_cmd_collision_probe)

    q = sub.add_parser("report", help="full regime report for a scenario")
    q.add_argument("--cloud", default=None, help="cloud JSON for --scenario custom")
    _add_shared(q)
    q.set_defaults(func=_cmd_report)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG_ERROR if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except CsLabError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PROPERTY_FAILURE
    except (OSError, json.JSONDecodeError, TypeError, KeyError) as exc:
        sys.stderr.write(f"configuration error: {exc}\n")
        return EXIT_CONFIG_ERROR


if __name__ == "__main__":
    sys.exit(main())
