"""Command-line front end: ``inertia-lab {inertia,search,catalog,verify,census}``.

Human-readable output goes to stdout; ``--json`` prints the JSON run report
instead and ``--report PATH`` writes it to a file. Exit codes: 0 success,
1 failed verification or flagged census, 2 parse error, 3 non-Hermitian
input, 4 dimension mismatch, 5 unknown lemma, 6 invalid target, 7 I/O error.
"""
import argparse
import csv
import datetime
import hashlib
import io
import json
import sys
import time

from . import __version__, _core
from .errors import (
    DimensionMismatch,
    InertiaLabError,
    InvalidTarget,
    NotHermitian,
    ParseError,
    UnknownLemma,
)
from .matrixfile import read_matrix, write_matrix
from .ptrans import DEFAULT_ZERO_TOL, BipartiteDims, Inertia, inertia, partial_transpose
from .search import (
    SearchConfig,
    inertia_census,
    known_catalog,
    lemma_names,
    target_inertia_search,
    verify_lemma,
)
from .search.sampling import default_ranks

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_HERMITIAN, EXIT_DIMS, EXIT_LEMMA, EXIT_TARGET, EXIT_IO = range(8)


def _dims(text):
    try:
        return BipartiteDims.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _inertia(text):
    try:
        return Inertia.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _positive_int(text):
    val = int(text)
    if val < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return val


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON run report instead of text")
    common.add_argument("--report", metavar="PATH", help="also write the JSON run report to PATH")

    parser = argparse.ArgumentParser(prog="inertia-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("inertia", parents=[common], help="inertia of a state and its partial transpose")
    p.add_argument("input", help="matrix file (JSON)")
    p.add_argument("--dims", type=_dims, help="expected MxN; must match the file")
    p.add_argument("--zero-tol", type=float, default=DEFAULT_ZERO_TOL)

    p = sub.add_parser("search", parents=[common], help="search for a state with a target inertia")
    p.add_argument("--dims", type=_dims, required=True)
    p.add_argument("--target", type=_inertia, required=True, help="a,b,c")
    p.add_argument("--restarts", type=_positive_int)
    p.add_argument("--max-iters", type=_positive_int, default=1500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--zero-tol", type=float, default=DEFAULT_ZERO_TOL)
    p.add_argument("--margin", type=float, default=1e-4)
    p.add_argument("--separation-ratio", type=float, default=1e4)
    p.add_argument("--search-margin", type=float, default=1e-2)
    p.add_argument("--out", help="write the certified witness here")

    p = sub.add_parser("catalog", parents=[common], help="known members and exclusions")
    p.add_argument("--dims", type=_dims, required=True)

    p = sub.add_parser("verify", parents=[common], help="randomized lemma suites")
    p.add_argument("lemma", help=f"'all' or one of: {', '.join(lemma_names())}")
    p.add_argument("--trials", type=_positive_int, default=1000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("census", parents=[common], help="inertia histogram of random states")
    p.add_argument("--dims", type=_dims, required=True)
    p.add_argument("--samples", type=_positive_int, default=10000)
    p.add_argument("--ranks", default="mixed", help="'mixed' (d, d-1, d-2), 'full', or a comma list")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--zero-tol", type=float, default=DEFAULT_ZERO_TOL)
    p.add_argument("--out", help="CSV output path (default: print the table)")
    return parser


def _sha256(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def cmd_inertia(args):
    mf = read_matrix(args.input)
    if args.dims is not None and args.dims != mf.dims:
        raise DimensionMismatch(f"file holds a {mf.dims} matrix, --dims says {args.dims}")
    m = mf.matrix
    in_m = inertia(m, args.zero_tol)
    in_g = inertia(partial_transpose(m, mf.dims), args.zero_tol)
    config = {"input": args.input, "input_sha256": _sha256(args.input), "dims": str(mf.dims),
              "zero_tol": args.zero_tol}
    results = {"inertia": str(in_m), "inertia_partial_transpose": str(in_g)}
    lines = [f"In(M)   = {in_m}", f"In(M^G) = {in_g}"]
    return EXIT_OK, config, results, lines


def cmd_search(args):
    cfg = SearchConfig(args.dims, args.target, args.restarts, args.max_iters, args.seed, args.zero_tol,
                       args.margin, args.separation_ratio, args.search_margin)
    res = target_inertia_search(cfg)
    status = known_catalog(args.dims).status(args.target)
    config = {
        "dims": str(cfg.dims), "target": str(cfg.target), "restarts": cfg.n_restarts,
        "max_iters": cfg.max_iters, "seed": cfg.seed, "zero_tol": cfg.zero_tol, "margin": cfg.margin,
        "separation_ratio": cfg.separation_ratio, "search_margin": cfg.search_margin,
        "rank_schedule": list(cfg.rank_schedule),
    }
    results = {
        "status": res.status,
        "achieved": str(res.achieved),
        "residual": res.residual,
        "residual_at_margin": res.residual_at_margin,
        "certification_threshold": cfg.certification_threshold,
        "restarts_used": res.restarts_used,
        "best_restart": res.best_restart,
        "best_rank": res.best_rank,
        "catalog_status": status,
        "certification": res.certification.as_dict() if res.certification else None,
        "witness_path": None,
        "notes": list(res.notes),
    }
    lines = []
    if res.found:
        if args.out:
            write_matrix(args.out, cfg.dims, res.witness)
            results["witness_path"] = args.out
        c = res.certification
        lines.append(f"FOUND {cfg.target} at restart {res.best_restart} (factor rank {res.best_rank})")
        lines.append(f"  certified: min eig(M) = {c.min_state_eig:.3e}, max |zero class| = {c.max_zero:.3e}, "
                     f"min |nonzero class| = {c.min_nonzero:.3e} (relative to ||M^G||_F)")
        if args.out:
            lines.append(f"  witness written to {args.out}")
    else:
        verdict = "NOT FOUND"
        if status in ("excluded", "impossible"):
            verdict += " (consistent with exclusion)"
            results["notes"].append("target is excluded by the known catalog")
        lines.append(f"{verdict} {cfg.target} after {res.restarts_used} restarts")
        lines.append(f"  best residual {res.residual:.3e} (at certification margin {res.residual_at_margin:.3e}); "
                     f"certification threshold {cfg.certification_threshold:.3e}")
        lines.append(f"  note: {res.notes[0] if res.notes else ''}")
    return EXIT_OK, config, results, lines


def cmd_catalog(args):
    entry = known_catalog(args.dims)
    fmt = lambda s: [str(x) for x in sorted(s)]  # noqa: E731
    results = {
        "members": fmt(entry.known_members),
        "excluded": fmt(entry.known_excluded),
        "complete": entry.complete,
        "family": [str(x) for x in entry.family],
    }
    lines = [
        f"dims {args.dims}: {len(entry.known_members)} members, {len(entry.known_excluded)} exclusions, "
        + ("complete" if entry.complete else "incomplete"),
        "members:  " + " ".join(results["members"]),
        "excluded: " + (" ".join(results["excluded"]) or "-"),
    ]
    if args.dims.m == 3:
        lines.append(f"family ({len(entry.family)} arrays): " + " ".join(results["family"]))
    return EXIT_OK, {"dims": str(args.dims)}, results, lines


def cmd_verify(args):
    names = lemma_names() if args.lemma == "all" else [args.lemma]
    if args.lemma != "all" and args.lemma not in lemma_names():
        raise UnknownLemma(f"unknown lemma {args.lemma!r}; known: {', '.join(lemma_names())}")
    reports = [verify_lemma(name, args.trials, args.seed) for name in names]
    lines = []
    for r in reports:
        tol = "-" if r.tolerance is None else f"{r.tolerance:.0e}"
        lines.append(f"{'PASS' if r.ok else 'FAIL'} {r.name:16s} passed {r.passed}/{r.trials} "
                     f"skipped {r.skipped} worst defect {r.worst_defect:.2e} tol {tol}")
    code = EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL
    config = {"lemma": args.lemma, "trials": args.trials, "seed": args.seed}
    return code, config, {"lemmas": [r.as_dict() for r in reports], "all_passed": code == EXIT_OK}, lines


def _parse_ranks(text, dims):
    if text == "mixed":
        return default_ranks(dims)
    if text == "full":
        return (dims.order,)
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ParseError(f"cannot parse rank schedule {text!r}") from None


def cmd_census(args):
    ranks = _parse_ranks(args.ranks, args.dims)
    census = inertia_census(args.dims, args.samples, ranks, args.seed, args.zero_tol)
    entry = known_catalog(args.dims)
    flagged, new = [], []
    for inn in census.counts:
        st = entry.status(inn)
        if st in ("excluded", "impossible"):
            flagged.append(str(inn))
        elif st == "new":
            new.append(str(inn))
    ew_ok = census.min_npt_pos is None or census.min_npt_pos >= 3
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["neg", "zero", "pos", "count"])
    writer.writerows(census.rows())
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    lines = [] if args.out else buf.getvalue().rstrip("\n").splitlines()
    lines.append(f"{census.samples} samples, {census.npt} NPT; min i_+ over NPT samples: {census.min_npt_pos}")
    for s in flagged:
        lines.append(f"FLAGGED {s}: contradicts the known catalog")
    for s in new:
        lines.append(f"new {s}: outside known catalog")
    if not ew_ok:
        lines.append("FLAGGED: an NPT sample has fewer than three positive eigenvalues")
    config = {"dims": str(args.dims), "samples": args.samples, "ranks": list(ranks), "seed": args.seed,
              "zero_tol": args.zero_tol}
    results = {
        "counts": [{"inertia": f"{a},{b},{c}", "count": n} for a, b, c, n in census.rows()],
        "npt_samples": census.npt,
        "min_npt_pos": census.min_npt_pos,
        "flagged": flagged,
        "outside_known_catalog": new,
        "csv_path": args.out,
    }
    return (EXIT_FAIL if flagged or not ew_ok else EXIT_OK), config, results, lines


COMMANDS = {
    "inertia": cmd_inertia,
    "search": cmd_search,
    "catalog": cmd_catalog,
    "verify": cmd_verify,
    "census": cmd_census,
}


def render_report(report) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = datetime.datetime.now(datetime.timezone.utc).isoformat()
    t0 = time.perf_counter()
    try:
        code, config, results, lines = COMMANDS[args.command](args)
    except ParseError as exc:
        return _fail(EXIT_PARSE, exc)
    except NotHermitian as exc:
        return _fail(EXIT_HERMITIAN, exc)
    except DimensionMismatch as exc:
        return _fail(EXIT_DIMS, exc)
    except UnknownLemma as exc:
        return _fail(EXIT_LEMMA, exc)
    except InvalidTarget as exc:
        return _fail(EXIT_TARGET, exc)
    except OSError as exc:
        return _fail(EXIT_IO, exc)
    except (InertiaLabError, ValueError) as exc:
        return _fail(EXIT_FAIL, exc)
    report = {
        "command": args.command,
        "tool_version": __version__,
        "backend": _core.BACKEND,
        "config": config,
        "results": results,
        "exit_code": code,
        "started_at": started,
        "duration_s": round(time.perf_counter() - t0, 6),
    }
    text = render_report(report)
    if args.report:
        try:
            with open(args.report, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            return _fail(EXIT_IO, exc)
    print(text if args.json else "\n".join(lines))
    return code


def _fail(code, exc):
    print(f"inertia-lab: error: {exc}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
