"""Command line interface.

Exit codes: 0 success, 1 verification or analysis failure (including
unreadable input), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from logdiam import analysis, formats
from logdiam.construction import DEFAULT_K_CAP, GkGraph, GkParams, build_gk
from logdiam.embedded import EmbeddedGraph

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

GENERATE_FORMATS = ("graph6", "dot", "edges", "rotdoc", "svg")


class CliFailure(Exception):
    """Analysis or input failure; maps to exit code 1."""


def _k_arg(value: str) -> int:
    try:
        k = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"k must be an integer, got {value!r}") from None
    if k < 2:
        raise argparse.ArgumentTypeError(f"k must be at least 2, got {k}")
    return k


def _add_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--k", type=_k_arg, help="build G_k")
    src.add_argument("--input", type=Path, help="rotation document (JSON) or graph6 file")


def _add_method(p: argparse.ArgumentParser, default: str) -> None:
    p.add_argument("--method", choices=analysis.METHODS, default=default)


def _add_threads(p: argparse.ArgumentParser) -> None:
    p.add_argument("--threads", type=int, default=None, help="analysis threads (default: all cores)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logdiam",
        description="Build and check cubic planar graphs with faces of length at most 7 and logarithmic diameter.",
    )
    parser.add_argument("--k-cap", type=int, default=DEFAULT_K_CAP, help="largest k accepted (default %(default)s)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write G_k to a file")
    p.add_argument("--k", type=_k_arg, required=True)
    p.add_argument("--format", choices=GENERATE_FORMATS, required=True)
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("verify", help="check every claim about G_k")
    _add_source(p)
    _add_method(p, analysis.IFUB)
    p.add_argument("--report", choices=("tsv", "json"), default="tsv")
    p.add_argument("--out", type=Path)
    _add_threads(p)

    p = sub.add_parser("census", help="face length histogram")
    _add_source(p)
    p.add_argument("--figure", type=Path, help="also save a bar chart (format from extension)")

    p = sub.add_parser("diameter", help="exact diameter or double-sweep lower bound")
    _add_source(p)
    _add_method(p, analysis.IFUB)
    _add_threads(p)

    p = sub.add_parser("refute", help="compare diameters with the fullerene lower bound")
    p.add_argument("--k-min", type=_k_arg, default=2)
    p.add_argument("--k-max", type=_k_arg, default=10)
    _add_method(p, analysis.IFUB)
    p.add_argument("--report", choices=("tsv", "json"), default="tsv")
    p.add_argument("--out", type=Path, help="write the report here instead of stdout")
    p.add_argument("--figure", type=Path, help="also save a plot (format from extension)")
    _add_threads(p)

    p = sub.add_parser("render", help="draw G_k as SVG")
    p.add_argument("--k", type=_k_arg, required=True)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--no-shade", action="store_true", help="do not shade the 7-faces")
    return parser


# -- helpers ----------------------------------------------------------------


def _set_threads(threads: int | None) -> None:
    if threads is None:
        return
    import numba

    numba.set_num_threads(max(1, min(threads, numba.config.NUMBA_NUM_THREADS)))


def _load_input(path: Path) -> tuple[EmbeddedGraph, GkGraph | None, bool]:
    """Return (graph, labelled G_k if available, whether an embedding was given)."""
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise CliFailure(f"cannot read {path}: {exc}") from None
    try:
        if text.lstrip().startswith("{"):
            doc = formats.decode_rotation_doc(text)
            if doc.labels is not None:
                gk = formats.gk_from_rotation_doc(doc)
                return gk.graph, gk, True
            return doc.to_graph(), None, True
        return formats.graph_from_graph6(text), None, False
    except (formats.FormatError, ValueError, IndexError) as exc:
        raise CliFailure(f"cannot decode {path}: {exc}") from None


def _source(args) -> tuple[EmbeddedGraph, GkGraph | None, bool]:
    if args.k is not None:
        gk = build_gk(_params(args))
        return gk.graph, gk, True
    return _load_input(args.input)


def _params(args) -> GkParams:
    return GkParams(args.k, args.k_cap)


def _write(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliFailure(f"cannot write {out}: {exc}") from None


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.6f}"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def claims_tsv(report: analysis.ClaimReport) -> str:
    lines = ["id\tmeasured\tbound\tverdict"]
    lines += [f"{e.id}\t{_fmt(e.measured)}\t{_fmt(e.bound)}\t{e.verdict}" for e in report.entries]
    return "\n".join(lines) + "\n"


def claims_json(report: analysis.ClaimReport) -> str:
    rows = [{"id": e.id, "measured": e.measured, "bound": e.bound, "verdict": e.verdict} for e in report.entries]
    return json.dumps(rows, indent=1) + "\n"


def refutation_tsv(rows: list[analysis.RefutationRow]) -> str:
    lines = ["\t".join(analysis.RefutationRow.COLUMNS)]
    lines += ["\t".join(_fmt(v) for v in r.values()) for r in rows]
    return "\n".join(lines) + "\n"


def refutation_json(rows: list[analysis.RefutationRow]) -> str:
    data = [dict(zip(analysis.RefutationRow.COLUMNS, r.values())) for r in rows]
    return json.dumps(data, indent=1) + "\n"


# -- commands -----------------------------------------------------------------


def cmd_generate(args) -> int:
    gk = build_gk(_params(args))
    g = gk.graph
    if args.format == "graph6":
        text = formats.graph_to_graph6(g) + "\n"
    elif args.format == "dot":
        text = formats.to_dot(g, gk.labels)
    elif args.format == "edges":
        text = formats.to_edge_list(g)
    elif args.format == "rotdoc":
        text = formats.gk_to_rotation_doc(gk)
    else:
        text = formats.to_svg(gk)
    _write(text, args.out)
    print(f"V={g.vertex_count} E={g.edge_count} F={g.face_count()}")
    return EXIT_OK


def cmd_verify(args) -> int:
    _, gk, _ = _source(args)
    if gk is None:
        raise CliFailure("verify needs G_k: pass --k or a labelled rotation document")
    report = analysis.verify_claims(gk, args.method, args.threads)
    text = claims_json(report) if args.report == "json" else claims_tsv(report)
    _write(text, args.out)
    flagged = [e.id for e in report.entries if e.verdict == analysis.DISCREPANCY]
    if flagged:
        print(f"FLAG: DISCREPANCY in {', '.join(flagged)}", file=sys.stderr)
    print(f"overall: {report.overall}", file=sys.stderr)
    return EXIT_FAIL if report.failed else EXIT_OK


def cmd_census(args) -> int:
    g, gk, embedded = _source(args)
    if not embedded:
        raise CliFailure("graph6 input has no embedding; faces are undefined")
    census = analysis.face_census(g)
    print(census)
    if args.figure is not None:
        from logdiam.plotting import plot_census

        plot_census(census, gk.k if gk else None, args.figure)
    if args.k is not None and census != analysis.expected_census(args.k):
        print(f"census differs from expected {analysis.expected_census(args.k)}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_diameter(args) -> int:
    g, gk, _ = _source(args)
    if not g.is_connected():
        raise CliFailure("graph is not connected")
    result = analysis.diameter(g, args.method, args.threads)
    if not analysis.validate_witness(g, result):
        raise CliFailure(f"witness {result.witness} does not realise {result.value}")
    u, v = result.witness
    names = (gk.name(u), gk.name(v)) if gk else (str(u), str(v))
    tag = "exact" if result.exact else "lower-bound"
    print(f"{result.value} ({names[0]}, {names[1]}) {tag}")
    return EXIT_OK


def cmd_refute(args) -> int:
    if args.k_min > args.k_max:
        raise argparse.ArgumentTypeError("--k-min must not exceed --k-max")
    if args.k_max > args.k_cap:
        raise argparse.ArgumentTypeError(f"--k-max exceeds the cap {args.k_cap}")
    if args.method == analysis.DOUBLE_SWEEP:
        raise argparse.ArgumentTypeError("refute needs an exact method")
    rows = analysis.refutation_table(args.k_min, args.k_max, args.method, args.threads)
    text = refutation_json(rows) if args.report == "json" else refutation_tsv(rows)
    _write(text, args.out)
    if args.figure is not None:
        from logdiam.plotting import plot_refutation

        plot_refutation(rows, args.figure)
    star = analysis.smallest_refuting_k(rows)
    if star is None:
        print(f"no k in [{args.k_min}, {args.k_max}] beats the fullerene bound", file=sys.stderr)
    else:
        print(f"smallest refuting k: {star}", file=sys.stderr)
    return EXIT_OK


def cmd_render(args) -> int:
    gk = build_gk(_params(args))
    spec = formats.RenderSpec(shade_heptagons=not args.no_shade)
    _write(formats.to_svg(gk, spec), args.out)
    print(f"wrote {args.out}: {gk.graph.vertex_count} vertices")
    return EXIT_OK


COMMANDS = {
    "generate": cmd_generate,
    "verify": cmd_verify,
    "census": cmd_census,
    "diameter": cmd_diameter,
    "refute": cmd_refute,
    "render": cmd_render,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "k", None) is not None and args.k > args.k_cap:
        parser.print_usage(sys.stderr)
        print(f"logdiam: error: k={args.k} exceeds the cap {args.k_cap}", file=sys.stderr)
        return EXIT_USAGE
    _set_threads(getattr(args, "threads", None))
    try:
        return COMMANDS[args.command](args)
    except argparse.ArgumentTypeError as exc:
        parser.print_usage(sys.stderr)
        print(f"logdiam: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CliFailure, analysis.DisconnectedGraphError) as exc:
        print(f"logdiam: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
