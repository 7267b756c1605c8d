"""Command-line surface.

Thin wrappers over the library: each subcommand does one pipeline step,
reads/writes line-oriented files (or stdin/stdout with "-"), and stamps
file outputs with a manifest. Exit codes: 0 success, 1 domain error,
2 usage error. A JSON config file can preload any flag's default;
explicit flags always win.
"""

from __future__ import annotations

import argparse
import base64
import json
import shlex
import sys
from pathlib import Path

from molforge import __version__
from molforge.errors import MolforgeError, ParseError
from molforge.evalengine import (
    GenerationRecord,
    TaskReport,
    evaluate_records,
    read_generations,
    write_report,
)
from molforge.fingerprint import morgan, pairwise_similar, tanimoto
from molforge.manifest import build_manifest, config_hash
from molforge.molgraph import canonical_smiles, parse, validate
from molforge.oracle import Oracle, SubprocessScorer, TableBackend, load_table
from molforge.pairmine import (
    filter_pairs,
    mine_pairs,
    orient_pairs,
    read_pairs_jsonl,
    read_pairs_tsv,
    write_pairs_jsonl,
)
from molforge.prompts import (
    default_names,
    default_templates,
    emit_training_corpus,
    render_eval_prompt,
    write_records_jsonl,
)
from molforge.properties import AUX_SAS, PropertyRegistry, task_from_letters
from molforge.taskforge import (
    SplitConfig,
    build_testset,
    enumerate_tasks,
    split_train_val,
    task_stats,
    training_floors,
    training_medians,
    training_molecules,
)


# --- plumbing ---------------------------------------------------------------


class ConfigKeyError(Exception):
    """Config file names a key no subcommand accepts."""


def _open_in(path: str):
    if path == "-":
        return sys.stdin
    return open(path, encoding="utf-8")


def _open_out(path: str):
    if path == "-":
        return sys.stdout
    return open(path, "w", encoding="utf-8")


def _close(fh) -> None:
    if fh not in (sys.stdin, sys.stdout):
        fh.close()


def _read_smiles(fh):
    """First whitespace token per line; blanks and # comments skipped."""
    for line in fh:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        yield line.split()[0]


def _registry(args) -> PropertyRegistry:
    if getattr(args, "registry", None):
        return PropertyRegistry.from_json(args.registry)
    return PropertyRegistry.default()


def _make_oracle(args) -> Oracle:
    table_path = getattr(args, "scores", None)
    cmd = getattr(args, "oracle_cmd", None)
    if table_path and cmd:
        raise ValueError("--scores and --oracle-cmd are mutually exclusive")
    if table_path:
        return Oracle(TableBackend(load_table(table_path)))
    if cmd:
        return Oracle(
            SubprocessScorer(
                shlex.split(cmd), timeout=args.oracle_timeout
            )
        )
    raise ValueError("this command needs --scores or --oracle-cmd")


def _score_pool(oracle: Oracle, smiles: list[str], letters, *, skip: bool):
    """Score a molecule list; errors either skip the row or abort."""
    results = oracle.score_batch(smiles, letters)
    pool = []
    skipped = 0
    for text, res in zip(smiles, results):
        if isinstance(res, dict):
            pool.append((text, res))
        elif skip:
            skipped += 1
        else:
            raise res
    if skipped:
        print(f"skipped {skipped} unscoreable molecules", file=sys.stderr)
    return pool


def _args_manifest(args, keys: list[str], *, seed=None) -> dict:
    config = {k: getattr(args, k) for k in keys}
    return build_manifest(seed=seed, config=config)


# --- commands ---------------------------------------------------------------


def cmd_canon(args) -> int:
    fin, fout = _open_in(args.input), _open_out(args.output)
    try:
        for text in _read_smiles(fin):
            try:
                fout.write(canonical_smiles(parse(text)) + "\n")
            except ParseError as exc:
                if not args.keep_going:
                    raise type(exc)(f"{text!r}: {exc}") from exc
                print(f"skip {text!r}: {exc}", file=sys.stderr)
    finally:
        _close(fin)
        _close(fout)
    return 0


def cmd_validate(args) -> int:
    fin, fout = _open_in(args.input), _open_out(args.output)
    try:
        for text in _read_smiles(fin):
            try:
                verdict = validate(parse(text))
            except MolforgeError as exc:
                fout.write(f"{text}\tunparseable\t{exc}\n")
                continue
            if verdict.valid:
                fout.write(f"{text}\tvalid\t\n")
            else:
                fout.write(
                    f"{text}\tinvalid\t{'; '.join(verdict.violations)}\n"
                )
    finally:
        _close(fin)
        _close(fout)
    return 0


def cmd_fp(args) -> int:
    fin, fout = _open_in(args.input), _open_out(args.output)
    try:
        for text in _read_smiles(fin):
            try:
                mol = parse(text)
            except ParseError as exc:
                raise type(exc)(f"{text!r}: {exc}") from exc
            fp = morgan(mol, radius=args.radius, width=args.width)
            blob = base64.b64encode(fp.to_bytes()).decode("ascii")
            fout.write(f"{canonical_smiles(mol)}\t{blob}\n")
    finally:
        _close(fin)
        _close(fout)
    return 0


def cmd_sim(args) -> int:
    fa = morgan(parse(args.smiles_a), radius=args.radius, width=args.width)
    fb = morgan(parse(args.smiles_b), radius=args.radius, width=args.width)
    print(f"{tanimoto(fa, fb):.6f}")
    return 0


def cmd_mine_pairs(args) -> int:
    oracle = _make_oracle(args)
    try:
        letters = tuple(args.letters) if args.letters else tuple(
            p for p in oracle.properties if p != AUX_SAS
        )
        fin = _open_in(args.input)
        try:
            smiles = list(_read_smiles(fin))
        finally:
            _close(fin)
        pool = _score_pool(oracle, smiles, letters, skip=args.skip_unscored)
        pairs = mine_pairs(
            pool,
            threshold=args.threshold,
            radius=args.radius,
            width=args.width,
            backend=args.backend,
        )
        manifest = _args_manifest(
            args, ["threshold", "radius", "width", "backend"]
        )
        manifest["letters"] = "".join(letters)
        fout = _open_out(args.output)
        try:
            n = write_pairs_jsonl(fout, pairs, manifest=manifest)
        finally:
            _close(fout)
        print(f"{n} candidate pairs", file=sys.stderr)
        return 0
    finally:
        oracle.close()


def cmd_filter_pairs(args) -> int:
    registry = _registry(args)
    task = task_from_letters(args.task, registry=registry)
    fin = _open_in(args.input)
    try:
        if args.input.endswith(".tsv"):
            pairs = read_pairs_tsv(args.input)
        else:
            pairs = list(read_pairs_jsonl(fin))
    finally:
        _close(fin)
    op = orient_pairs if args.orient else filter_pairs
    kept = op(pairs, task, args.mode, registry=registry)
    manifest = _args_manifest(args, ["task", "mode", "orient"])
    fout = _open_out(args.output)
    try:
        n = write_pairs_jsonl(fout, kept, manifest=manifest)
    finally:
        _close(fout)
    print(f"{n} of {len(pairs)} pairs kept", file=sys.stderr)
    return 0


def cmd_build_tasks(args) -> int:
    registry = _registry(args)
    letters = args.properties or registry.letters
    tasks = enumerate_tasks(letters, args.min_props, registry=registry)
    manifest = _args_manifest(args, ["properties", "min_props"])
    if args.output == "-":
        for task in tasks:
            obj = _task_manifest(task, registry, manifest)
            print(json.dumps(obj, sort_keys=True))
    else:
        outdir = Path(args.output)
        outdir.mkdir(parents=True, exist_ok=True)
        for task in tasks:
            obj = _task_manifest(task, registry, manifest)
            path = outdir / f"{task.name}.json"
            path.write_text(
                json.dumps(obj, sort_keys=True, indent=2) + "\n",
                encoding="utf-8",
            )
        print(f"{len(tasks)} task manifests in {outdir}", file=sys.stderr)
    return 0


def _task_manifest(task, registry, manifest) -> dict:
    return {
        "name": task.name,
        "letters": list(task.letters),
        "deltas": {p: registry.get(p).delta for p in task.letters},
        "directions": {
            p: (1 if registry.get(p).higher_is_better else -1)
            for p in task.letters
        },
        "category": task.category,
        "split": task.split,
        "manifest": manifest,
    }


def cmd_stats(args) -> int:
    registry = _registry(args)
    task = task_from_letters(args.task, registry=registry)
    with _open_in(args.pairs) as fh:
        train = list(read_pairs_jsonl(fh))
    val = []
    if args.val:
        with _open_in(args.val) as fh:
            val = list(read_pairs_jsonl(fh))
    test: list[str] = []
    test_scores: dict = {}
    if args.test:
        with _open_in(args.test) as fh:
            test = list(_read_smiles(fh))
        oracle = _make_oracle(args)
        try:
            scored = _score_pool(oracle, test, task.letters, skip=False)
        finally:
            oracle.close()
        test_scores = {m: v for m, v in scored}
    stats = task_stats(task, train, val, test, test_scores)
    out = {
        "task": stats.task.name,
        "n_train": stats.n_train,
        "n_val": stats.n_val,
        "n_test": stats.n_test,
        "n_unique_mols": stats.n_unique_mols,
        "mps_train": stats.mps_train,
        "aps_test": stats.aps_test,
    }
    print(json.dumps(out, sort_keys=True, indent=2))
    return 0


def cmd_build_testset(args) -> int:
    registry = _registry(args)
    task = task_from_letters(args.task, registry=registry)
    cfg = SplitConfig(
        val_fraction=args.val_fraction,
        test_cap=args.cap,
        seed=args.seed,
        percentile_floor=args.floor,
    )
    with _open_in(args.pairs) as fh:
        pairs = list(read_pairs_jsonl(fh))
    train, val = split_train_val(pairs, cfg)
    mps = training_medians(task, train)
    floors = training_floors(task, train, cfg, registry=registry)
    train_mols = training_molecules(train) | training_molecules(val)

    with _open_in(args.pool) as fh:
        pool_smiles = list(_read_smiles(fh))
    oracle = _make_oracle(args)
    try:
        pool = _score_pool(
            oracle, pool_smiles, task.letters, skip=args.skip_unscored
        )
    finally:
        oracle.close()
    test = build_testset(
        task, pool, train_mols, mps, cfg, registry=registry, floors=floors
    )

    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    cfg_dict = {
        "task": task.name,
        "val_fraction": cfg.val_fraction,
        "test_cap": cfg.test_cap,
        "seed": cfg.seed,
        "percentile_floor": cfg.percentile_floor,
    }
    manifest = build_manifest(seed=cfg.seed, config=cfg_dict)
    paths = {
        "train": outdir / f"{task.name}.train.jsonl",
        "val": outdir / f"{task.name}.val.jsonl",
        "test": outdir / f"{task.name}.test.smi",
        "task": outdir / f"{task.name}.task.json",
    }
    with paths["train"].open("w", encoding="utf-8") as fh:
        write_pairs_jsonl(fh, train, manifest=manifest)
    with paths["val"].open("w", encoding="utf-8") as fh:
        write_pairs_jsonl(fh, val, manifest=manifest)
    with paths["test"].open("w", encoding="utf-8") as fh:
        fh.write("# manifest: " + json.dumps(manifest, sort_keys=True) + "\n")
        for m in test:
            fh.write(m + "\n")
    pool_scores = {canonical_smiles(parse(m)): v for m, v in pool}
    stats = task_stats(
        task, train, val, test, {m: pool_scores[m] for m in test}
    )
    obj = _task_manifest(task, registry, manifest)
    obj.update(
        {
            "n_train": stats.n_train,
            "n_val": stats.n_val,
            "n_test": stats.n_test,
            "n_unique_mols": stats.n_unique_mols,
            "mps_train": stats.mps_train,
            "floors": floors,
            "aps_test": stats.aps_test,
            "files": {k: v.name for k, v in paths.items()},
        }
    )
    paths["task"].write_text(
        json.dumps(obj, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )
    print(
        f"{task.name}: {len(train)} train / {len(val)} val / "
        f"{len(test)} test",
        file=sys.stderr,
    )
    return 0


def cmd_emit_prompts(args) -> int:
    registry = _registry(args)
    task = task_from_letters(args.task, registry=registry)
    names = default_names(args.names)
    templates = default_templates()
    manifest = _args_manifest(args, ["task", "style", "names", "template"])
    manifest["fewshot_format"] = "Task:/Answer: lines"
    fout = _open_out(args.output)
    try:
        if args.style == "training":
            with _open_in(args.pairs) as fh:
                pairs = list(read_pairs_jsonl(fh))
            records = emit_training_corpus(
                pairs,
                task,
                templates,
                names,
                registry=registry,
                strict=not args.allow_held_out,
            )
            n = write_records_jsonl(fout, records, manifest=manifest)
        else:
            template = templates[args.template - 1]
            fewshot = []
            if args.fewshot:
                if not args.pairs:
                    raise ValueError("--fewshot needs --pairs for examples")
                with _open_in(args.pairs) as fh:
                    for pair in read_pairs_jsonl(fh):
                        fewshot.append(pair)
                        if len(fewshot) >= args.fewshot:
                            break
            with _open_in(args.input) as fh:
                inputs = list(_read_smiles(fh))
            fout.write(
                json.dumps({"_manifest": manifest}, sort_keys=True) + "\n"
            )
            n = 0
            for text in inputs:
                prompt = render_eval_prompt(
                    text,
                    task,
                    template,
                    names,
                    style=args.style,
                    fewshot=fewshot,
                    registry=registry,
                )
                fout.write(
                    json.dumps(
                        {
                            "task": task.name,
                            "input": text,
                            "prompt": prompt,
                            "template": template.index,
                            "names": names.variant,
                        },
                        sort_keys=True,
                    )
                    + "\n"
                )
                n += 1
    finally:
        _close(fout)
    print(f"{n} records", file=sys.stderr)
    return 0


def cmd_evaluate(args) -> int:
    registry = _registry(args)
    with _open_in(args.generations) as fh:
        records = list(read_generations(fh))
    train_mols = None
    if args.train_mols:
        with _open_in(args.train_mols) as fh:
            train_mols = {
                canonical_smiles(parse(m)) for m in _read_smiles(fh)
            }
    oracle = _make_oracle(args)
    try:
        reports, cases = evaluate_records(
            records,
            oracle,
            train_mols=train_mols,
            mode=args.mode,
            registry=registry,
        )
    finally:
        oracle.close()
    manifest = _args_manifest(args, ["mode"], seed=args.seed)
    fout = _open_out(args.report)
    try:
        write_report(reports, args.format, fout, manifest=manifest)
    finally:
        _close(fout)
    if args.cases:
        with _open_out(args.cases) as fh:
            fh.write(
                json.dumps({"_manifest": manifest}, sort_keys=True) + "\n"
            )
            for name, case_list in cases.items():
                for c in case_list:
                    fh.write(
                        json.dumps(
                            {
                                "task": name,
                                "input": c.input,
                                "any_valid": c.any_valid,
                                "success": c.success,
                                "selected": c.selected,
                                "sim": c.sim,
                                "ri": c.ri,
                                "scores": c.selected_scores,
                                "novel": c.novel,
                                "sas": c.sas,
                            },
                            sort_keys=True,
                        )
                        + "\n"
                    )
    return 0


def cmd_report(args) -> int:
    with _open_in(args.input) as fh:
        data = json.load(fh)
    reports = []
    for row in data["rows"]:
        reports.append(
            TaskReport(
                task=row["task"],
                n_cases=row["n"],
                sr=row["SR"],
                val=row["Val"],
                sim=row["Sim"],
                nov=row["Nov"],
                sas=row["SAS"],
                ri=row["RI"],
                aps={
                    k: v for k, v in row["APS"].items() if v is not None
                },
            )
        )
    fout = _open_out(args.output)
    try:
        write_report(
            reports, args.format, fout, manifest=data.get("manifest")
        )
    finally:
        _close(fout)
    return 0


def cmd_score(args) -> int:
    oracle = _make_oracle(args)
    try:
        letters = tuple(args.letters) if args.letters else tuple(
            oracle.properties
        )
        with _open_in(args.input) as fh:
            smiles = list(_read_smiles(fh))
        pool = _score_pool(oracle, smiles, letters, skip=args.skip_unscored)
    finally:
        oracle.close()
    manifest = _args_manifest(args, [])
    manifest["letters"] = "".join(letters)
    fout = _open_out(args.output)
    try:
        fout.write("# manifest: " + json.dumps(manifest, sort_keys=True) + "\n")
        fout.write("smiles\t" + "\t".join(letters) + "\n")
        for text, vector in pool:
            key = canonical_smiles(parse(text))
            row = "\t".join(repr(vector[p]) for p in letters)
            fout.write(f"{key}\t{row}\n")
    finally:
        _close(fout)
    return 0


# --- parser -----------------------------------------------------------------


def _build_parser(config: dict):
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file preloading flag defaults")
    common.add_argument(
        "--json-errors",
        action="store_true",
        help="emit domain errors as JSON on stderr",
    )
    common.add_argument(
        "--registry", help="property registry JSON (default: built-in six)"
    )
    common.add_argument(
        "--threads",
        type=int,
        default=0,
        help="worker cap; output is identical at any setting",
    )

    oracle_opts = argparse.ArgumentParser(add_help=False)
    oracle_opts.add_argument("--scores", help="score table TSV")
    oracle_opts.add_argument(
        "--oracle-cmd", help="scorer subprocess command line"
    )
    oracle_opts.add_argument(
        "--oracle-timeout", type=float, default=30.0, help="per-item seconds"
    )
    oracle_opts.add_argument(
        "--skip-unscored",
        action="store_true",
        help="drop molecules the oracle cannot score instead of failing",
    )

    fp_opts = argparse.ArgumentParser(add_help=False)
    fp_opts.add_argument("--radius", type=int, default=2)
    fp_opts.add_argument("--width", type=int, default=2048)

    parser = argparse.ArgumentParser(
        prog="molforge",
        description="molecule optimization data pipeline",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    all_subs = []

    def add(name, func, parents, help_text):
        p = sub.add_parser(name, parents=[common] + parents, help=help_text)
        p.set_defaults(func=func)
        all_subs.append(p)
        return p

    p = add("canon", cmd_canon, [], "canonicalize SMILES, one per line")
    p.add_argument("-i", "--input", default="-")
    p.add_argument("-o", "--output", default="-")
    p.add_argument(
        "--keep-going",
        action="store_true",
        help="skip unparseable lines instead of failing",
    )

    p = add("validate", cmd_validate, [], "valence-check SMILES")
    p.add_argument("-i", "--input", default="-")
    p.add_argument("-o", "--output", default="-")

    p = add("fp", cmd_fp, [fp_opts], "fingerprints as base64, one per line")
    p.add_argument("-i", "--input", default="-")
    p.add_argument("-o", "--output", default="-")

    p = add("sim", cmd_sim, [fp_opts], "Tanimoto similarity of two SMILES")
    p.add_argument("smiles_a")
    p.add_argument("smiles_b")

    p = add(
        "mine-pairs",
        cmd_mine_pairs,
        [oracle_opts, fp_opts],
        "similarity-mine candidate pairs from a pool",
    )
    p.add_argument("-i", "--input", default="-", help="pool .smi")
    p.add_argument("-o", "--output", default="-", help="pairs JSONL")
    p.add_argument("--threshold", type=float, default=0.6)
    p.add_argument("--letters", help="properties to attach (default: all)")
    p.add_argument(
        "--backend", choices=["auto", "compiled", "pure"], default="auto"
    )

    p = add(
        "filter-pairs",
        cmd_filter_pairs,
        [],
        "apply a task's property constraints to pairs",
    )
    p.add_argument("-i", "--input", default="-", help="pairs JSONL or TSV")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--task", required=True)
    p.add_argument("--mode", choices=["strict", "loose"], default="strict")
    p.add_argument(
        "--orient",
        action="store_true",
        help="treat input pairs as unordered and pick directions",
    )

    p = add("build-tasks", cmd_build_tasks, [], "enumerate task manifests")
    p.add_argument("-o", "--output", default="-", help="directory or -")
    p.add_argument("--properties", help="letters (default: registry order)")
    p.add_argument("--min-props", type=int, default=1)

    p = add("stats", cmd_stats, [oracle_opts], "task split statistics")
    p.add_argument("--task", required=True)
    p.add_argument("--pairs", required=True, help="training pairs JSONL")
    p.add_argument("--val", help="validation pairs JSONL")
    p.add_argument("--test", help="test .smi (scored via oracle)")

    p = add(
        "build-testset",
        cmd_build_testset,
        [oracle_opts],
        "split pairs and assemble a task's test set",
    )
    p.add_argument("--task", required=True)
    p.add_argument("--pairs", required=True, help="oriented pairs JSONL")
    p.add_argument("--pool", required=True, help="candidate .smi")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--cap", type=int, default=500)
    p.add_argument("--val-fraction", type=float, default=0.10)
    p.add_argument("--floor", type=float, default=0.10)

    p = add(
        "emit-prompts",
        cmd_emit_prompts,
        [],
        "render training or evaluation prompts",
    )
    p.add_argument("--task", required=True)
    p.add_argument(
        "--style",
        choices=["training", "chat", "simple"],
        default="training",
    )
    p.add_argument("--pairs", help="pairs JSONL (training or few-shot)")
    p.add_argument("-i", "--input", default="-", help="eval inputs .smi")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--names", choices=["seen", "unseen"], default="seen")
    p.add_argument("--template", type=int, default=1, help="1..6, eval only")
    p.add_argument("--fewshot", type=int, default=0)
    p.add_argument("--allow-held-out", action="store_true")

    p = add(
        "evaluate",
        cmd_evaluate,
        [oracle_opts],
        "score generation results and build a report",
    )
    p.add_argument("--generations", required=True, help="JSONL")
    p.add_argument("--train-mols", help=".smi for novelty")
    p.add_argument("--mode", choices=["strict", "loose"], default="loose")
    p.add_argument("--report", default="-")
    p.add_argument(
        "--format", choices=["tsv", "json", "markdown"], default="tsv"
    )
    p.add_argument("--cases", help="per-case JSONL dump")
    p.add_argument("--seed", type=int, default=None)

    p = add("report", cmd_report, [], "re-render a JSON report")
    p.add_argument("-i", "--input", default="-", help="report JSON")
    p.add_argument("-o", "--output", default="-")
    p.add_argument(
        "--format", choices=["tsv", "json", "markdown"], default="markdown"
    )

    p = add("score", cmd_score, [oracle_opts], "write a score table TSV")
    p.add_argument("-i", "--input", default="-", help=".smi")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--letters", help="default: all oracle properties")

    if config:
        underscored = {
            k.replace("-", "_"): v for k, v in config.items()
        }
        known = {
            action.dest for s in all_subs for action in s._actions
        }
        bad = sorted(set(underscored) - known)
        if bad:
            raise ConfigKeyError(
                "unknown config key(s): " + ", ".join(bad)
            )
        for s in all_subs:
            s.set_defaults(**underscored)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    config = {}
    if known.config:
        with open(known.config, encoding="utf-8") as fh:
            config = json.load(fh)
        if not isinstance(config, dict):
            print("error: config must be a JSON object", file=sys.stderr)
            return 2
    try:
        parser = _build_parser(config)
    except ConfigKeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MolforgeError, ValueError, OSError, json.JSONDecodeError) as exc:
        if getattr(args, "json_errors", False):
            print(
                json.dumps(
                    {"error": type(exc).__name__, "message": str(exc)}
                ),
                file=sys.stderr,
            )
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
