"""Command-line entry point: ``hardcut {generate,certify,mincut,scaling,formulas}``."""

import argparse
import sys

from . import geometry
from .cutsearch import METHODS, find_cut
from .errors import HardCutError
from .graph import EXACT, dumps, exact_expansion, generate_regular, read_graph, spectral_expansion_bound
from .handlebody import DEFAULT_EPSILON, build_model, default_scale, model_lower_bound, normalize
from .harness import records_to_csv, run_scaling, scaling_slope
from .validation import check_epsilon, check_scale


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _emit(text, out=None):
    if out:
        with open(out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_generate(args):
    _emit(dumps(generate_regular(args.m, args.d, args.seed)), args.out)
    return 0


def _certificate_text(cert):
    if cert.method == EXACT:
        witness = " ".join(map(str, cert.witness))
    else:
        witness = repr(cert.witness)
    lines = [f"method={cert.method}", f"c={cert.constant!r}", f"witness={witness}"]
    if cert.boundary is not None:
        lines.append(f"boundary={cert.boundary}")
    if cert.residual is not None:
        lines.append(f"residual={cert.residual!r}")
    return "\n".join(lines) + "\n"


def cmd_certify(args):
    graph = read_graph(args.graph)
    cert = exact_expansion(graph) if args.mode == "exact" else spectral_expansion_bound(graph)
    _emit(_certificate_text(cert), args.out)
    return 0


def cmd_mincut(args):
    graph = read_graph(args.graph)
    n = args.n or default_scale(graph.vertex_count)
    model = build_model(graph, n)
    eps = check_epsilon(args.eps)
    if args.sphere:
        eps /= 2.0
        model = normalize(model, 1.0, reference="sphere")
    result = find_cut(model, eps, args.method, args.restarts, args.seed)
    bound = model_lower_bound(model, eps)
    text = result.to_text() + (
        f"n={n}\n"
        f"epsilon={eps!r}\n"
        f"c={model.c!r}\n"
        f"c_method={model.expansion.method}\n"
        f"theorem_bound={bound!r}\n"
        f"ratio={result.area / bound!r}\n"
    )
    _emit(text, args.out)
    return 0


def cmd_scaling(args):
    records = run_scaling(args.n, args.eps, args.seeds, args.restarts, args.sphere)
    failed = sum(1 for r in records if r.error)
    summary = f"slope={scaling_slope(records)!r} rows={len(records)} errors={failed}\n"
    csv_text = records_to_csv(records)
    if args.out:
        _emit(csv_text, args.out)
        sys.stdout.write(summary)
    else:
        sys.stdout.write(csv_text)
        sys.stderr.write(summary)
    return 1 if failed else 0


def cmd_formulas(args):
    n, eps = check_scale(args.n), check_epsilon(args.eps)
    vertex_volume = geometry.ball_volume(1.0 / n)
    piece = geometry.ball_piece_area_lower(eps * vertex_volume)
    chain = geometry.verify_constant_chain(n, eps)
    lines = [
        f"pants_residual_area={geometry.pants_residual_area(n)!r}",
        f"hole_wet_area_lower={geometry.hole_wet_area_lower(n)!r}",
        f"hole_wet_exceeds_unit={str(geometry.hole_wet_area_lower(n) > 1.0 / n**2).lower()}",
        f"ball_piece_area_lower={piece!r}",
        f"ball_piece_exceeds_eps_unit={str(piece >= eps / n**2).lower()}",
    ]
    _emit("\n".join(lines) + "\n" + chain.to_text(), args.out)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="hardcut", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="sample a simple connected regular graph")
    p.add_argument("--m", type=int, required=True, help="vertex count")
    p.add_argument("--d", type=int, default=3, help="degree (default: 3)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output graph file (default: stdout)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("certify", help="certify edge expansion of a graph file")
    p.add_argument("graph")
    p.add_argument("--mode", choices=("exact", "spectral"), default="exact")
    p.add_argument("--out")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("mincut", help="search a balanced minimum cut of the thickened graph")
    p.add_argument("graph")
    p.add_argument("--n", type=int, help="scale (default: rounded cube root of m)")
    p.add_argument("--eps", type=float, default=DEFAULT_EPSILON)
    p.add_argument("--method", choices=METHODS, default="random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=_positive_int, default=50)
    p.add_argument("--sphere", action="store_true", help="doubled sphere: halve eps, unit volume")
    p.add_argument("--out")
    p.set_defaults(func=cmd_mincut)

    p = sub.add_parser("scaling", help="best cut area versus n, as CSV")
    p.add_argument("--n", type=int, nargs="+", default=[2, 4, 6, 8])
    p.add_argument("--eps", type=float, default=DEFAULT_EPSILON)
    p.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2, 3, 4])
    p.add_argument("--restarts", type=_positive_int, default=50)
    p.add_argument("--sphere", action="store_true")
    p.add_argument("--out", help="CSV path (default: stdout, summary on stderr)")
    p.set_defaults(func=cmd_scaling)

    p = sub.add_parser("formulas", help="closed-form constants and the constant-chain check")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--eps", type=float, default=DEFAULT_EPSILON)
    p.add_argument("--out")
    p.set_defaults(func=cmd_formulas)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except HardCutError as exc:
        print(f"hardcut {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"hardcut {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
