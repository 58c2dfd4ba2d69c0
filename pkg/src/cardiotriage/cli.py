"""``cardiotriage`` command line.

The subcommands follow the pipeline stages: ``cluster`` builds the model,
``dissim`` and ``autocorr`` describe the data, ``classify``/``triage``
answer queries against a saved model and ``verify`` checks the model
against the exhaustive oracle.

Exit codes: 0 success, 2 usage or input error, 3 clustering hit the pass cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import autocorr as ac
from . import kmeans, oracle, serialize, triage
from .dataset import Dataset, DatasetError, builtin_table1, load_dataset
from .metrics import METRICS, dissimilarity_matrix

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_CONVERGED = 3

PASSES_ENV = "TRIAGE_MAX_PASSES"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    input_path: Optional[str]
    builtin: bool
    k: Optional[int] = None
    lag: int = 1
    thresholds: ac.RiskThresholds = ac.RiskThresholds()
    max_passes: Optional[int] = None
    out: Optional[str] = None
    fmt: str = "csv"

    def __post_init__(self):
        if self.builtin == (self.input_path is not None):
            raise UsageError("give exactly one of --builtin-table1 or --input")

    def dataset(self) -> Dataset:
        if self.builtin:
            return builtin_table1()
        return load_dataset(self.input_path)


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _parse_query(text: str) -> tuple[int, ...]:
    cells = [c.strip() for c in text.split(",")]
    if any(c not in ("0", "1") for c in cells):
        raise UsageError(f"query must be comma-separated 0/1 values, got {text!r}")
    return tuple(int(c) for c in cells)


def _max_passes(arg: Optional[int]) -> Optional[int]:
    if arg is not None:
        return arg
    env = os.environ.get(PASSES_ENV)
    if env is None or env == "":
        return None
    try:
        value = int(env)
    except ValueError:
        raise UsageError(f"{PASSES_ENV} must be an integer, got {env!r}") from None
    return value


def _thresholds(args) -> ac.RiskThresholds:
    try:
        return ac.RiskThresholds(cardiac=args.theta_cardiac, pro=args.theta_pro)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _config(args, **extra) -> RunConfig:
    return RunConfig(
        input_path=getattr(args, "input", None),
        builtin=getattr(args, "builtin_table1", False),
        out=args.out,
        **extra,
    )


def cmd_cluster(args) -> int:
    cfg = _config(args, k=args.k, max_passes=_max_passes(args.max_passes))
    d = cfg.dataset()
    model = kmeans.run(d, cfg.k, kmeans.KMeansConfig(max_passes=cfg.max_passes))
    _emit(serialize.dumps_model(model, d), cfg.out)
    if not model.converged:
        print(f"warning: no zero-move pass within {model.passes} passes", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def cmd_dissim(args) -> int:
    cfg = _config(args, fmt=args.format)
    dm = dissimilarity_matrix(cfg.dataset(), args.metric)
    if cfg.fmt == "json":
        text = _dumps({"metric": dm.metric, "ids": list(dm.ids), "entries": dm.entries.tolist()})
    else:
        text = dm.to_csv()
    _emit(text, cfg.out)
    return EXIT_OK


def _scores_csv(scores) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["id", "lag", "r", "defined", "category"])
    for s in scores:
        lag = "" if s.lag is None else s.lag
        w.writerow([s.id, lag, repr(s.r), str(s.defined).lower(), s.category.label])
    return out.getvalue()


def cmd_autocorr(args) -> int:
    thresholds = _thresholds(args)
    if args.reported:
        if args.input or args.builtin_table1:
            raise UsageError("--reported takes no dataset input")
        scores = ac.categorize_risk(ac.reported_scores(), thresholds)
        fmt, out = args.format, args.out
    else:
        cfg = _config(args, lag=args.lag, thresholds=thresholds, fmt=args.format)
        scores = ac.categorize_risk(ac.risk_scores(cfg.dataset(), cfg.lag), thresholds)
        fmt, out = cfg.fmt, cfg.out
    if fmt == "json":
        text = _dumps([
            {"id": s.id, "lag": s.lag, "r": s.r, "defined": s.defined, "category": s.category.label}
            for s in scores
        ])
    else:
        text = _scores_csv(scores)
    _emit(text, out)
    return EXIT_OK


def cmd_classify(args) -> int:
    model = serialize.load_model(args.model)
    q = _parse_query(args.query)
    cluster, dist = triage.classify(model, q)
    try:
        category = triage.map_categories(model)[cluster].label
    except triage.MappingUnavailable:
        category = None
    report = {
        "query": list(q),
        "cluster": cluster,
        "distance": dist,
        "distances": [d ** 0.5 for d in triage.cluster_distances(model, q)],
        "category": category,
        "precedents": model.member_ids(cluster),
    }
    _emit(_dumps(report), args.out)
    return EXIT_OK


def cmd_triage(args) -> int:
    model = serialize.load_model(args.model)
    d = None
    if args.data or args.builtin_table1:
        d = RunConfig(input_path=args.data, builtin=args.builtin_table1).dataset()
    q = _parse_query(args.query)
    report = triage.triage(model, d, q, lag=args.lag, thresholds=_thresholds(args))
    _emit(_dumps(report.to_dict()), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _config(args, k=args.k, max_passes=_max_passes(args.max_passes))
    d = cfg.dataset()
    if d.n > args.cap:
        raise UsageError(f"N={d.n} exceeds the oracle cap {args.cap}")
    model = kmeans.run(d, cfg.k, kmeans.KMeansConfig(max_passes=cfg.max_passes))
    cert = oracle.global_optimum(d, cfg.k, cap=args.cap)
    heuristic = oracle.heuristic_exact_wcss(model, d)
    gap = heuristic - cert.wcss
    result = {
        "k": cfg.k,
        "partitions_examined": cert.examined,
        "stirling": oracle.stirling2(d.n, cfg.k),
        "optimal_wcss": float(cert.wcss),
        "optimal_wcss_exact": str(cert.wcss),
        "optimal_partition": [list(b) for b in cert.ids],
        "heuristic_wcss": float(heuristic),
        "heuristic_wcss_exact": str(heuristic),
        "heuristic_partition": [model.member_ids(j) for j in range(model.k)],
        "gap": float(gap),
        "gap_exact": str(gap),
        "converged": model.converged,
        "locally_optimal": oracle.certify_local_optimum(model, d),
    }
    if cfg.k == 3 and list(d.ids) == [f"P{i}" for i in range(1, 11)]:
        result["rand_index_vs_reported"] = oracle.paper_agreement(model)
    _emit(_dumps(result), cfg.out)
    return EXIT_OK


def _add_source(p: argparse.ArgumentParser, required: bool = True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--builtin-table1", action="store_true", help="use the builtin 10x10 table")
    g.add_argument("--input", metavar="FILE", help="CSV with header id,<feature>,...")


def _add_thresholds(p: argparse.ArgumentParser):
    p.add_argument("--theta-cardiac", type=float, default=ac.RiskThresholds.cardiac)
    p.add_argument("--theta-pro", type=float, default=ac.RiskThresholds.pro)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cardiotriage", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cluster", help="run sequential k-means and write the model JSON")
    _add_source(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-passes", type=int, default=None,
                   help=f"refinement pass cap (default 100*N, or ${PASSES_ENV})")
    p.add_argument("--out")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("dissim", help="pairwise dissimilarity matrix")
    _add_source(p)
    p.add_argument("--metric", choices=METRICS, default="hamming")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_dissim)

    p = sub.add_parser("autocorr", help="per-patient lag-k autocorrelation risk scores")
    _add_source(p, required=False)
    p.add_argument("--reported", action="store_true",
                   help="categorise the reported R1..R10 values instead of computing scores")
    p.add_argument("--lag", type=int, default=1)
    _add_thresholds(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_autocorr)

    p = sub.add_parser("classify", help="nearest-centroid cluster for a query")
    p.add_argument("--model", required=True)
    p.add_argument("--query", required=True, help='comma-separated bits, e.g. "0,1,0,..."')
    p.add_argument("--out")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("triage", help="full triage report for a query")
    p.add_argument("--model", required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--data", metavar="FILE")
    g.add_argument("--builtin-table1", action="store_true")
    p.add_argument("--query", required=True)
    p.add_argument("--lag", type=int, default=1)
    _add_thresholds(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_triage)

    p = sub.add_parser("verify", help="compare k-means against the exhaustive optimum")
    _add_source(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP)
    p.add_argument("--max-passes", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    try:
        return args.func(args)
    except (UsageError, DatasetError, serialize.ModelFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
