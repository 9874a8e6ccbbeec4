"""``satprobe`` command line: gen, pair, reduce, solve, eval, score, report.

Every stage writes into its own ``--out`` directory together with a
``manifest.json`` recording the effective configuration, inputs, outputs and
timestamps; downstream stages read that manifest with ``--from``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 backend error.
"""

from __future__ import annotations

import argparse
import json
import logging
import shutil
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Optional, Sequence

from . import __version__
from .cnf import DimacsError, model_to_dimacs, parse_dimacs, read_dimacs, write_dimacs
from .generator import (
    LOW_ALPHA_2SAT,
    LOW_ALPHA_3SAT,
    PHASE_COLUMNS,
    GenerationError,
    PhaseReport,
    PhaseRow,
    generate_unsat_low_alpha,
    sweep_phase,
)
from .harness import (
    BackendConfig,
    EvalItem,
    Representation,
    completion_rate,
    cross_representation_agreement,
    load_records,
    rows_to_csv,
    run_evaluation,
    score_records,
    scripted_backend,
    write_records,
)
from .harness.records import reduce_formula
from .harness.scoring import SCORE_COLUMNS
from .labels import Decision
from .pairing import PairingError, build_pair_set
from .reductions import PackingInstance, VertexCoverInstance
from .solver import SolveBudget, Status, solve

log = logging.getLogger("satprobe")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_BACKEND = 0, 1, 2, 3
MANIFEST = "manifest.json"


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class BackendFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------- config

DEFAULTS: dict[str, dict[str, Any]] = {
    "gen": {
        "k": 3, "n": None, "alpha": None, "alphas": None, "unsat_low_alpha": False, "alpha_choices": None,
        "count": 1, "seed": 0, "max_conflicts": None,
    },
    "pair": {"k": 3, "n": None, "count": 70, "seed": 0, "alpha_choices": None},
    "reduce": {"target": None},
    "solve": {"max_conflicts": None, "max_decisions": None, "time_limit": None},
    "eval": {
        "representation": None, "backend": "scripted:oracle", "endpoint": None, "model": None,
        "credential_env": None, "timeout": 120.0, "max_retries": 2, "concurrency": 4, "parameters": {},
        "response_field": "text", "retry_backoff": 1.0, "resume": False,
    },
    "score": {"alpha_width": None, "pooled": False},
    "report": {"figure": None, "alpha_width": None},
}


def _float_list(text: str) -> list[float]:
    try:
        values = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _param(text: str) -> tuple[str, Any]:
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected KEY=VALUE, got {text!r}")
    key, value = text.split("=", 1)
    try:
        return key, json.loads(value)
    except json.JSONDecodeError:
        return key, value


def effective_config(command: str, args: argparse.Namespace) -> dict[str, Any]:
    """Flags override the JSON config file, which overrides built-in defaults."""
    config = dict(DEFAULTS[command])
    if getattr(args, "config", None):
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}")
        if not isinstance(data, dict):
            raise UsageError("config file must hold a JSON object")
        if isinstance(data.get(command), dict):
            data = data[command]
        unknown = set(data) - set(config)
        if unknown:
            raise UsageError(f"unknown {command} config keys: {', '.join(sorted(unknown))}")
        config.update(data)
    for key in config:
        value = getattr(args, key, None)
        if value is not None:
            config[key] = dict(value) if key == "parameters" else value
    return config


# ---------------------------------------------------------------- manifests

def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def prepare_out_dir(out: Path, force: bool, keep: bool = False) -> None:
    """Refuse to touch an existing non-empty directory unless forced (or resuming with ``keep``)."""
    if out.exists() and not out.is_dir():
        raise DataError(f"{out} exists and is not a directory")
    if out.exists() and any(out.iterdir()) and not keep:
        if not force:
            raise DataError(f"output directory {out} is not empty; pass --force to overwrite")
        for name in (MANIFEST, "instances", "pairs", "records.jsonl"):
            p = out / name
            if p.is_dir():
                shutil.rmtree(p)
            elif p.exists():
                p.unlink()
        for p in out.glob("*.csv"):
            p.unlink()
    out.mkdir(parents=True, exist_ok=True)


def write_manifest(
    out: Path, stage: str, argv: Sequence[str], config: dict, inputs: list[str], outputs: list[str],
    started: str, data: Optional[dict] = None,
) -> None:
    manifest = {
        "stage": stage,
        "command": ["satprobe", *argv],
        "config": config,
        "seed": config.get("seed"),
        "tool_version": __version__,
        "inputs": inputs,
        "outputs": outputs,
        "started_at": started,
        "finished_at": _now(),
        "data": data or {},
    }
    (out / MANIFEST).write_text(json.dumps(manifest, indent=2, sort_keys=True, default=str) + "\n")


def read_manifest(src: Path, stages: Sequence[str]) -> dict:
    path = src / MANIFEST
    wanted = " or ".join(f"`{s}`" for s in stages)
    if not path.exists():
        raise DataError(f"no {MANIFEST} in {src}; expected the output directory of the {wanted} stage")
    try:
        manifest = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise DataError(f"{path} is not valid JSON: {exc}")
    if manifest.get("stage") not in stages:
        raise DataError(f"{src} holds output of the `{manifest.get('stage')}` stage; expected the {wanted} stage")
    return manifest


def _item_entry(iid: str, file: str, label: str, pair_id=None, n=None, alpha=None, k=None, **extra) -> dict:
    entry = {"id": iid, "file": file, "label": label, "pair_id": pair_id, "n": n, "alpha": alpha, "k": k}
    entry.update(extra)
    return entry


def load_items(src: Path, representation: Optional[str]) -> tuple[list[EvalItem], dict]:
    """Eval items from a gen, pair or reduce directory."""
    manifest = read_manifest(src, ("gen", "pair", "reduce"))
    data = manifest["data"]
    if manifest["stage"] == "reduce":
        target = data["target"]
        if representation and representation != target:
            raise UsageError(f"{src} holds {target} instances, not {representation}")
        rep = Representation(target)
        cls = VertexCoverInstance if rep is Representation.VERTEX_COVER else PackingInstance
    else:
        rep = Representation(representation or "cnf")
    items, skipped = [], 0
    for e in data["items"]:
        if e["label"] not in ("SAT", "UNSAT"):
            skipped += 1
            continue
        if manifest["stage"] == "reduce":
            formula = read_dimacs(e["formula_file"])
            instance = cls.from_dict(json.loads((src / e["file"]).read_text()))
        else:
            formula = read_dimacs(src / e["file"])
            instance = reduce_formula(formula, rep)
        items.append(
            EvalItem(e["id"], rep, instance, Decision(e["label"]), formula, e.get("pair_id"), e.get("n"), e.get("alpha"), e.get("k"))
        )
    if skipped:
        log.warning("skipped %d unlabeled instances from %s", skipped, src)
    if not items:
        raise DataError(f"{src} holds no labeled instances")
    return items, manifest


# ---------------------------------------------------------------- commands

def cmd_gen(args, argv) -> int:
    cfg = effective_config("gen", args)
    started = _now()
    if cfg["n"] is None:
        raise UsageError("gen needs --n")
    modes = [cfg["alpha"] is not None, cfg["alphas"] is not None, bool(cfg["unsat_low_alpha"])]
    if sum(modes) != 1:
        raise UsageError("gen needs exactly one of --alpha, --alphas, --unsat-low-alpha")
    out = Path(args.out)
    prepare_out_dir(out, args.force)
    (out / "instances").mkdir()
    budget = SolveBudget(max_conflicts=cfg["max_conflicts"]) if cfg["max_conflicts"] else SolveBudget()
    items, outputs = [], []
    data: dict[str, Any] = {"k": cfg["k"], "n": cfg["n"]}
    if cfg["unsat_low_alpha"]:
        choices = cfg["alpha_choices"] or (LOW_ALPHA_2SAT if cfg["k"] == 2 else LOW_ALPHA_3SAT)
        stress = generate_unsat_low_alpha(cfg["n"], choices, cfg["count"], cfg["seed"], cfg["k"], budget)
        generated = [(f"u{i:04d}", g) for i, g in enumerate(stress.instances)]
        data["stress"] = stress.stats()
    else:
        alphas = [cfg["alpha"]] if cfg["alpha"] is not None else cfg["alphas"]
        report = sweep_phase(cfg["k"], cfg["n"], alphas, cfg["count"], cfg["seed"], budget, keep_instances=True)
        generated = [
            (f"a{alpha:.2f}-{i:04d}", g) for alpha in sorted(report.instances) for i, g in enumerate(report.instances[alpha])
        ]
        data["phase"] = [vars(r) for r in report.rows]
    for iid, g in generated:
        rel = f"instances/{iid}.cnf"
        write_dimacs(g.formula, out / rel, comments=[f"alpha={g.alpha} seed={g.seed}"])
        r = g.result
        items.append(_item_entry(iid, rel, r.status.value, None, cfg["n"], g.alpha, cfg["k"],
                                 seed=g.seed, decisions=r.decisions, conflicts=r.conflicts))
        outputs.append(rel)
    data["items"] = items
    write_manifest(out, "gen", argv, cfg, [], outputs, started, data)
    print(f"wrote {len(items)} instances to {out}")
    return EXIT_OK


def cmd_pair(args, argv) -> int:
    cfg = effective_config("pair", args)
    started = _now()
    if cfg["n"] is None:
        raise UsageError("pair needs --n")
    out = Path(args.out)
    prepare_out_dir(out, args.force)
    ps = build_pair_set(cfg["n"], cfg["count"], cfg["alpha_choices"], cfg["seed"], cfg["k"])
    (out / "pairs").mkdir()
    width = max(3, len(str(len(ps) - 1)))
    items, pairs, outputs = [], [], []
    for i, (pair, alpha) in enumerate(zip(ps.pairs, ps.alphas)):
        pid = f"p{i:0{width}d}"
        files = {}
        for label, formula, result in (
            ("sat", pair.sat_formula, pair.sat_result),
            ("unsat", pair.unsat_formula, pair.unsat_result),
        ):
            rel = f"pairs/{pid}-{label}.cnf"
            write_dimacs(formula, out / rel, comments=[f"pair={pid} alpha={alpha}"])
            files[label] = rel
            outputs.append(rel)
            items.append(_item_entry(f"{pid}-{label}", rel, result.status.value, pid, pair.n, alpha, cfg["k"],
                                     decisions=result.decisions, conflicts=result.conflicts))
        pairs.append({
            "id": pid,
            "alpha": alpha,
            "seed": pair.seed,
            "alpha_unsat": str(pair.alpha_unsat),
            "alpha_sat": str(pair.alpha_sat),
            "edits": [e.to_dict() for e in pair.edits],
            "files": files,
        })
    data = {"k": cfg["k"], "n": cfg["n"], "items": items, "pairs": pairs, "stats": ps.stats}
    write_manifest(out, "pair", argv, cfg, [], outputs, started, data)
    print(f"wrote {len(pairs)} pairs to {out}")
    return EXIT_OK


def cmd_reduce(args, argv) -> int:
    cfg = effective_config("reduce", args)
    started = _now()
    if cfg["target"] not in ("vc", "packing"):
        raise UsageError("reduce needs --target vc or --target packing")
    src = Path(args.source)
    manifest = read_manifest(src, ("gen", "pair"))
    out = Path(args.out)
    prepare_out_dir(out, args.force)
    (out / "instances").mkdir()
    items, outputs = [], []
    for e in manifest["data"]["items"]:
        formula_file = (src / e["file"]).resolve()
        instance = reduce_formula(read_dimacs(formula_file), cfg["target"])
        rel = f"instances/{e['id']}.json"
        (out / rel).write_text(json.dumps(instance.to_dict(), sort_keys=True) + "\n")
        outputs.append(rel)
        entry = dict(e, file=rel, formula_file=str(formula_file))
        items.append(entry)
    data = {"target": cfg["target"], "source": str(src.resolve()), "items": items}
    write_manifest(out, "reduce", argv, cfg, [str(src / MANIFEST)], outputs, started, data)
    print(f"wrote {len(items)} {cfg['target']} instances to {out}")
    return EXIT_OK


def cmd_solve(args, argv) -> int:
    cfg = effective_config("solve", args)
    try:
        if args.file == "-":
            formula = parse_dimacs(sys.stdin)
        else:
            formula = read_dimacs(args.file)
    except OSError as exc:
        raise DataError(str(exc))
    budget = SolveBudget(cfg["max_conflicts"], cfg["max_decisions"], cfg["time_limit"])
    result = solve(formula, budget)
    status = {Status.SAT: "SATISFIABLE", Status.UNSAT: "UNSATISFIABLE", Status.UNKNOWN: "UNKNOWN"}[result.status]
    print(f"s {status}")
    print(f"c decisions {result.decisions}")
    print(f"c conflicts {result.conflicts}")
    if result.model is not None:
        print(model_to_dimacs(result.model))
    return EXIT_OK


def _backend_from(cfg: dict):
    spec = cfg["backend"]
    if spec.startswith("scripted:"):
        try:
            return scripted_backend(spec)
        except ValueError as exc:
            raise UsageError(str(exc))
    if spec != "http":
        raise UsageError(f"unknown backend {spec!r}; use scripted:<name> or http")
    if not cfg["endpoint"] or not cfg["model"]:
        raise UsageError("the http backend needs --endpoint and --model")
    try:
        return BackendConfig(
            endpoint=cfg["endpoint"], model=cfg["model"], timeout=cfg["timeout"], max_retries=cfg["max_retries"],
            concurrency=cfg["concurrency"], credential_env=cfg["credential_env"], parameters=cfg["parameters"],
            response_field=cfg["response_field"], retry_backoff=cfg["retry_backoff"],
        )
    except ValueError as exc:
        raise UsageError(str(exc))


def cmd_eval(args, argv) -> int:
    cfg = effective_config("eval", args)
    started = _now()
    src = Path(args.source)
    items, _ = load_items(src, cfg["representation"])
    backend = _backend_from(cfg)
    out = Path(args.out)
    prepare_out_dir(out, args.force, keep=bool(cfg["resume"]))
    records_path = out / "records.jsonl"
    if not cfg["resume"] and records_path.exists():
        records_path.unlink()
    records = run_evaluation(
        items, backend,
        concurrency=cfg["concurrency"], max_retries=cfg["max_retries"],
        retry_backoff=0.0 if cfg["backend"].startswith("scripted:") else cfg["retry_backoff"],
        records_path=records_path, resume=bool(cfg["resume"]),
    )
    write_records(records, records_path)  # canonical order by instance id
    rate = completion_rate(records)
    failures = sum(1 for r in records if r.prediction.error and not r.prediction.raw_text)
    data = {
        "representation": items[0].representation.value,
        "model": records[0].model,
        "records": len(records),
        "completion_rate": rate,
        "backend_failures": failures,
    }
    safe_cfg = dict(cfg)  # holds only the credential variable name, never its value
    write_manifest(out, "eval", argv, safe_cfg, [str(src / MANIFEST)], ["records.jsonl"], started, data)
    print(f"wrote {len(records)} records to {records_path} (completion rate {rate:.3f})")
    if failures == len(records):
        raise BackendFailure(f"every request failed at the backend; first error: {records[0].prediction.error}")
    return EXIT_OK


def _load_eval_records(sources: Sequence[str]):
    records, inputs = [], []
    for s in sources:
        src = Path(s)
        read_manifest(src, ("eval",))
        path = src / "records.jsonl"
        if not path.exists():
            raise DataError(f"{src} has an eval manifest but no records.jsonl")
        records.append(load_records(path))
        inputs.append(str(path))
    return records, inputs


def _write_csv(out: Path, name: str, text: str) -> str:
    (out / name).write_text(text)
    return name


def cmd_score(args, argv) -> int:
    cfg = effective_config("score", args)
    started = _now()
    groups, inputs = _load_eval_records(args.source)
    records = [r for g in groups for r in g]
    rows = score_records(records, cfg["alpha_width"], bool(cfg["pooled"]))
    out = Path(args.out)
    prepare_out_dir(out, args.force)
    name = _write_csv(out, "scores.csv", rows_to_csv(rows, SCORE_COLUMNS))
    write_manifest(out, "score", argv, cfg, inputs, [name], started, {"rows": len(rows)})
    print(f"wrote {len(rows)} rows to {out / name}")
    return EXIT_OK


METRIC_COLUMNS = (
    "model", "n", "alpha_bin", "representation", "instances", "completion_rate", "accuracy",
    "precision_sat", "recall_sat", "f1_sat", "precision_unsat", "recall_unsat", "f1_unsat", "mcc", "undefined",
)
PAIRED_COLUMNS = (
    "model", "n", "representation", "pairs", "completion_rate", "r_sat", "r_unsat", "paired_accuracy", "adr",
    "adr_lower", "adr_upper", "adr_covariance", "mcc_pairs", "witness_valid_rate", "undefined",
)
TWOSAT_COLUMNS = METRIC_COLUMNS[:-1] + ("pairs", "adr", "mcc_pairs", "undefined")
AGREEMENT_COLUMNS = (
    "model", "representation_a", "representation_b", "instances", "agreement", "disagreements",
    "split_a", "split_b", "neither_correct", "adr_a", "adr_b",
)


def _report_rows(figure: str, sources: Sequence[str], cfg: dict) -> tuple[list[dict], Sequence[str], list[str]]:
    if figure == "phase":
        rows, inputs = [], []
        for s in sources:
            manifest = read_manifest(Path(s), ("gen",))
            if "phase" not in manifest["data"]:
                raise DataError(f"{s} was not generated as a density sweep (use gen --alpha/--alphas)")
            rows.extend(manifest["data"]["phase"])
            inputs.append(str(Path(s) / MANIFEST))
        report = PhaseReport(k=0, n=0, seed=0, rows=[PhaseRow(**r) for r in rows])
        return report, PHASE_COLUMNS, inputs
    groups, inputs = _load_eval_records(sources)
    records = [r for g in groups for r in g]
    if figure == "metrics":
        return score_records(records, cfg["alpha_width"]), METRIC_COLUMNS, inputs
    if figure == "paired":
        return score_records(records, pooled_alpha=True), PAIRED_COLUMNS, inputs
    if figure == "twosat":
        records = [r for r in records if r.k == 2]
        if not records:
            raise DataError("no 2-SAT records among the inputs")
        return score_records(records, cfg["alpha_width"]), TWOSAT_COLUMNS, inputs
    # agreement: every pair of representations evaluated by the same model
    by_key: dict[tuple[str, str], list] = {}
    for g in groups:
        for r in g:
            by_key.setdefault((r.model, r.representation.value), []).append(r)
    order = [rep.value for rep in Representation]
    rows = []
    for model in sorted({m for m, _ in by_key}):
        reps = sorted((rep for m, rep in by_key if m == model), key=order.index)
        for i, a in enumerate(reps):
            for b in reps[i + 1:]:
                rep = cross_representation_agreement(by_key[(model, a)], by_key[(model, b)]).to_dict()
                rows.append(dict(rep, model=model, representation_a=a, representation_b=b))
    if not rows:
        raise DataError("agreement needs records of at least two representations from the same model")
    return rows, AGREEMENT_COLUMNS, inputs


def cmd_report(args, argv) -> int:
    cfg = effective_config("report", args)
    started = _now()
    figure = cfg["figure"]
    if figure not in ("phase", "metrics", "paired", "twosat", "agreement"):
        raise UsageError("report needs --figure phase|metrics|paired|twosat|agreement")
    rows, columns, inputs = _report_rows(figure, args.source, cfg)
    text = rows.to_csv() if isinstance(rows, PhaseReport) else rows_to_csv(rows, columns)
    out = Path(args.out)
    prepare_out_dir(out, args.force)
    name = _write_csv(out, f"{figure}.csv", text)
    write_manifest(out, "report", argv, cfg, inputs, [name], started, {"figure": figure})
    print(f"wrote {out / name}")
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="satprobe", description="Random k-SAT benchmarks, paired instances, reductions and scoring.")
    p.add_argument("--version", action="version", version=f"satprobe {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", parser_class=_Parser, required=True)

    def stage(name: str, help: str, source: Optional[str] = None, out: bool = True):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--config", help="JSON file of option values (flags take precedence)")
        if source == "one":
            sp.add_argument("--from", dest="source", required=True, help="upstream stage directory")
        elif source == "many":
            sp.add_argument("--from", dest="source", required=True, nargs="+", help="upstream stage directories")
        if out:
            sp.add_argument("--out", required=True, help="output directory")
            sp.add_argument("--force", action="store_true", help="overwrite a non-empty output directory")
        return sp

    g = stage("gen", "generate random k-CNF instances with solver labels")
    g.add_argument("--k", type=int, choices=(2, 3))
    g.add_argument("--n", type=int)
    g.add_argument("--alpha", type=float, help="single clause density")
    g.add_argument("--alphas", type=_float_list, help="comma-separated densities for a sweep")
    g.add_argument("--unsat-low-alpha", action="store_true", default=None, help="verified-UNSAT set at low density")
    g.add_argument("--alpha-choices", type=_float_list, help="densities for --unsat-low-alpha")
    g.add_argument("--count", type=int, help="instances per density (or total for --unsat-low-alpha)")
    g.add_argument("--seed", type=int)
    g.add_argument("--max-conflicts", type=int, help="per-instance solver budget")

    pr = stage("pair", "build solver-verified UNSAT/SAT pairs")
    pr.add_argument("--k", type=int, choices=(2, 3))
    pr.add_argument("--n", type=int)
    pr.add_argument("--count", type=int)
    pr.add_argument("--seed", type=int)
    pr.add_argument("--alpha-choices", type=_float_list)

    r = stage("reduce", "reduce CNF instances to vertex cover or packing", source="one")
    r.add_argument("--target", choices=("vc", "packing"))

    s = sub.add_parser("solve", help="solve one DIMACS file")
    s.add_argument("--config")
    s.add_argument("file", help="DIMACS file, or - for stdin")
    s.add_argument("--max-conflicts", type=int)
    s.add_argument("--max-decisions", type=int)
    s.add_argument("--time-limit", type=float, help="seconds")

    e = stage("eval", "query a backend on every instance", source="one")
    e.add_argument("--representation", choices=[rep.value for rep in Representation])
    e.add_argument("--backend", help="scripted:oracle, scripted:always-sat, scripted:always-unsat, scripted:timeout-<pct>, or http")
    e.add_argument("--endpoint")
    e.add_argument("--model")
    e.add_argument("--credential-env", help="environment variable holding the bearer token")
    e.add_argument("--timeout", type=float)
    e.add_argument("--max-retries", type=int)
    e.add_argument("--concurrency", type=int)
    e.add_argument("--param", dest="parameters", type=_param, action="append", help="KEY=VALUE passed through to the backend")
    e.add_argument("--response-field")
    e.add_argument("--retry-backoff", type=float)
    e.add_argument("--resume", action="store_true", default=None, help="keep existing records and query only the rest")

    sc = stage("score", "metric table from eval records", source="many")
    sc.add_argument("--alpha-width", type=float, help="bin width for densities (default: exact value)")
    sc.add_argument("--pooled", action="store_true", default=None, help="one row per model, N and representation")

    rp = stage("report", "per-figure CSV data", source="many")
    rp.add_argument("--figure", choices=("phase", "metrics", "paired", "twosat", "agreement"))
    rp.add_argument("--alpha-width", type=float)
    return p


COMMANDS = {
    "gen": cmd_gen,
    "pair": cmd_pair,
    "reduce": cmd_reduce,
    "solve": cmd_solve,
    "eval": cmd_eval,
    "score": cmd_score,
    "report": cmd_report,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args, argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BackendFailure as exc:
        print(f"backend error: {exc}", file=sys.stderr)
        return EXIT_BACKEND
    except (DataError, DimacsError, GenerationError, PairingError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
