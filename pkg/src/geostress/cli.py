"""Command-line interface.

Subcommands: gen-ring, embed, sweep, compare, rigidity-demo. Exit codes:
0 success, 2 input/validation error, 3 solver precondition failed
(disconnected partial-distance graph), 4 non-convergence under --strict.

Defaults for any flag may be supplied as a flat JSON object via
--config PATH (keys are the long option names, dashes or underscores);
explicit flags win. GEOSTRESS_JOBS sets the default worker count.
"""

import argparse
import json
import os
import sys

from .model import (
    ValidationError,
    build_weight_matrix,
    graph_from_weights,
    is_connected,
    parse_weight_family,
)
from .optimize import OptimConfig, solve_nlm
from .isomap import DisconnectedGraphError
from .compare import congruence_distance, hausdorff_points
from .experiments import continuity_sweep, gen_ring, rigidity_demo
from . import io


def _floats(text):
    return [float(s) for s in text.split(",") if s.strip()]


def _parse_init(text):
    if text == "mds" or text == "random":
        return text
    if text.startswith("isomap:"):
        return ("isomap", float(text.split(":", 1)[1]))
    raise ValidationError(f"unknown init {text!r} (expected isomap:T, mds or random)")


def _build_parser():
    parser = argparse.ArgumentParser(prog="geostress")
    parser.add_argument("--config", help="JSON file with default flag values")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-ring", help="generate the seeded annulus dataset")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--r-in", type=float, default=0.8)
    p.add_argument("--r-out", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--uniform-radius", action="store_true",
                   help="uniform radius instead of uniform area density")
    p.add_argument("--out", required=True,
                   help="cloud CSV; the distance matrix goes to OUT.dist")

    p = sub.add_parser("embed", help="embed a distance matrix")
    p.add_argument("--dist", required=True)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--weights", default="constant",
                   help="constant | sammon | exp:B | power:Z | heaviside:T | tanh:A,T")
    p.add_argument("--kernel", choices=("squared", "raw"), default="squared")
    p.add_argument("--init", default="mds", help="isomap:T | mds | random")
    p.add_argument("--method", choices=("bfgs", "bh"), default="bfgs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iters", type=int, default=2000)
    p.add_argument("--bh-hops", type=int, default=100)
    p.add_argument("--strict", action="store_true",
                   help="exit 4 if the optimizer does not converge")
    p.add_argument("--out", required=True)
    p.add_argument("--plot", help="optional SVG scatter of the embedding")

    p = sub.add_parser("sweep", help="stiffness/threshold grid study")
    p.add_argument("--dist", required=True)
    p.add_argument("--thetas", required=True, help="comma-separated list")
    p.add_argument("--stiffness", required=True, help="comma-separated list")
    p.add_argument("--methods", default="bfgs,bh")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iters", type=int, default=2000)
    p.add_argument("--bh-hops", type=int, default=100)
    p.add_argument("--jobs", type=int,
                   default=int(os.environ.get("GEOSTRESS_JOBS", "1")))
    p.add_argument("--out", required=True)

    p = sub.add_parser("compare", help="distances between two clouds")
    p.add_argument("--cloud-a", required=True)
    p.add_argument("--cloud-b", required=True)
    p.add_argument("--congruence", action="store_true")

    p = sub.add_parser("rigidity-demo",
                       help="rigid-to-flexible jump on the 3-point instance")
    p.add_argument("--etas", default="1,0.5,0.1,0")
    p.add_argument("--starts", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _apply_config(parser, argv):
    """Pre-scan for --config and install its values as subparser defaults."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    with open(argv[idx + 1]) as fh:
        values = json.load(fh)
    if not isinstance(values, dict):
        raise ValidationError("--config must contain a JSON object")
    defaults = {key.replace("-", "_"): val for key, val in values.items()}
    for action in parser._subparsers._group_actions[0].choices.values():
        action.set_defaults(**{k: v for k, v in defaults.items()
                               if any(a.dest == k for a in action._actions)})
    return argv[:idx] + argv[idx + 2:]


def _cmd_gen_ring(args):
    cloud = gen_ring(args.n, args.r_in, args.r_out, args.seed,
                     uniform_area=not args.uniform_radius)
    io.write_point_cloud(args.out, cloud)
    io.write_distance_matrix(args.out + ".dist", cloud.distances())
    print(f"wrote {args.out} ({cloud.n} points) and {args.out}.dist")
    return 0


def _cmd_embed(args):
    D = io.read_distance_matrix(args.dist)
    family = parse_weight_family(args.weights)
    W = build_weight_matrix(D, family)
    cfg = OptimConfig(max_iters=args.max_iters, bh_hops=args.bh_hops, seed=args.seed)
    init = _parse_init(args.init)
    if not is_connected(graph_from_weights(W, D)):
        print("warning: weight graph is disconnected; solution set is unbounded",
              file=sys.stderr)
    result = solve_nlm(D, W, args.dim, kernel=args.kernel, init=init,
                       method=args.method, cfg=cfg)
    io.write_point_cloud(args.out, result.X)
    if args.plot:
        io.write_svg_scatter(args.plot, result.X)
    print(f"final cost: {result.cost!r}")
    print(f"iterations: {result.n_iters}")
    print(f"converged: {result.converged}")
    if args.strict and not result.converged:
        return 4
    return 0


def _cmd_sweep(args):
    D = io.read_distance_matrix(args.dist)
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    cfg = OptimConfig(max_iters=args.max_iters, bh_hops=args.bh_hops, seed=args.seed)
    report = continuity_sweep(D, _floats(args.thetas), _floats(args.stiffness),
                              methods=methods, k=args.dim, cfg=cfg,
                              dataset_seed=args.seed, n_jobs=args.jobs)
    io.write_sweep_csv(args.out, report)
    print(io.sweep_table(report))
    return 0


def _cmd_compare(args):
    A = io.read_point_cloud(args.cloud_a)
    B = io.read_point_cloud(args.cloud_b)
    dab, dba, dh = hausdorff_points(A, B)
    print(f"delta(A,B): {dab!r}")
    print(f"delta(B,A): {dba!r}")
    print(f"hausdorff: {dh!r}")
    if args.congruence:
        print(f"congruence: {congruence_distance(A, B)!r}")
    return 0


def _cmd_rigidity_demo(args):
    cfg = OptimConfig(seed=args.seed)
    rows = rigidity_demo(_floats(args.etas), n_starts=args.starts, cfg=cfg)
    print(f"{'eta':>6} {'sample':>7} {'max_pairwise':>14} {'dist_to_eta0':>14} {'best_cost':>12}")
    for row in rows:
        print(f"{row['eta']:>6g} {row['sample_size']:>7d} "
              f"{row['max_pairwise_congruence']:>14.6g} "
              f"{row['distance_to_flexible_sample']:>14.6g} "
              f"{row['best_cost']:>12.4g}")
    return 0


_COMMANDS = {
    "gen-ring": _cmd_gen_ring,
    "embed": _cmd_embed,
    "sweep": _cmd_sweep,
    "compare": _cmd_compare,
    "rigidity-demo": _cmd_rigidity_demo,
}


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        argv = _apply_config(parser, argv)
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except DisconnectedGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValidationError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
