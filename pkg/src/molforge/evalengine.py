"""Generation scoring and report tables.

Input is one record per optimization attempt: the starting molecule and
up to K candidate outputs. Each case resolves to pass/fail plus the
selected candidate's similarity, novelty, relative improvement, and
property scores; cases aggregate into one row per task.

Metric conventions: Val counts cases with at least one parseable,
valence-sane candidate. Everything else (Sim, Nov, SAS, RI, APS)
averages over successful cases only, and renders as "n/a" when a task
has no successes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from molforge.errors import (
    EmptyCaseList,
    InputUnscoreable,
    MissingScore,
    OracleError,
    ParseError,
)
from molforge.fingerprint import morgan, tanimoto
from molforge.molgraph import canonical_smiles, parse, validate
from molforge.properties import (
    AUX_SAS,
    PropertyRegistry,
    PropertyVector,
    TaskSpec,
    satisfies_pair,
    task_from_letters,
)

RI_EPSILON = 1e-8


@dataclass(slots=True)
class GenerationRecord:
    task_name: str
    input_smiles: str
    candidates: list[str]

    def to_json(self) -> dict:
        return {
            "task": self.task_name,
            "input": self.input_smiles,
            "candidates": list(self.candidates),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GenerationRecord":
        return cls(
            task_name=obj["task"],
            input_smiles=obj["input"],
            candidates=[str(c) for c in obj["candidates"]],
        )


@dataclass(slots=True)
class CaseResult:
    input: str
    any_valid: bool
    success: bool
    selected: str | None = None
    sim: float | None = None
    ri: float | None = None
    selected_scores: PropertyVector | None = None
    novel: bool | None = None
    sas: float | None = None


@dataclass(slots=True)
class TaskReport:
    task: str
    n_cases: int
    sr: float
    val: float
    sim: float | None
    nov: float | None
    sas: float | None
    ri: float | None
    aps: PropertyVector = field(default_factory=dict)


def compute_ri(
    task: TaskSpec,
    registry: PropertyRegistry,
    vx: PropertyVector,
    vy: PropertyVector,
) -> float:
    """Mean per-property relative improvement, sign-oriented.

    Divides by max(|x|, eps) rather than x itself: a negative starting
    score must not flip the sign of an improvement.
    """
    total = 0.0
    for letter in task.letters:
        spec = registry.get(letter)
        try:
            x = vx[letter]
            y = vy[letter]
        except KeyError:
            raise MissingScore(letter) from None
        total += spec.direction * (y - x) / max(abs(x), RI_EPSILON)
    return total / len(task.letters)


def evaluate_case(
    rec: GenerationRecord,
    task: TaskSpec,
    oracle,
    train_mols: set[str] | None = None,
    mode: str = "loose",
    *,
    registry: PropertyRegistry | None = None,
    radius: int = 2,
    width: int = 2048,
) -> CaseResult:
    registry = registry or PropertyRegistry.default()
    try:
        input_mol = parse(rec.input_smiles)
    except ParseError as exc:
        raise InputUnscoreable(f"input {rec.input_smiles!r}: {exc}") from exc
    input_key = canonical_smiles(input_mol)
    scored = oracle.score_batch([rec.input_smiles], task.letters)[0]
    if isinstance(scored, OracleError):
        raise InputUnscoreable(
            f"input {rec.input_smiles!r}: {scored}"
        ) from scored
    v_input = scored

    valid: list[tuple[int, str]] = []  # (candidate index, text)
    mols: dict[int, object] = {}
    for idx, text in enumerate(rec.candidates):
        try:
            mol = parse(text)
        except ParseError:
            continue
        if not validate(mol):
            continue
        valid.append((idx, text))
        mols[idx] = mol
    if not valid:
        return CaseResult(input=input_key, any_valid=False, success=False)

    vectors = oracle.score_batch([t for _, t in valid], task.letters)
    best_idx: int | None = None
    best_ri = float("-inf")
    best_vec: PropertyVector | None = None
    for (idx, _), vec in zip(valid, vectors):
        if isinstance(vec, OracleError):
            continue  # unscoreable candidate: valid, but never selectable
        if not satisfies_pair(task, registry, v_input, vec, mode=mode):
            continue
        ri = compute_ri(task, registry, v_input, vec)
        if ri > best_ri:
            best_ri = ri
            best_idx = idx
            best_vec = vec
    if best_idx is None:
        return CaseResult(input=input_key, any_valid=True, success=False)

    sel_mol = mols[best_idx]
    sel_key = canonical_smiles(sel_mol)
    sim = tanimoto(
        morgan(input_mol, radius=radius, width=width),
        morgan(sel_mol, radius=radius, width=width),
    )
    novel = None if train_mols is None else sel_key not in train_mols
    sas = None
    if AUX_SAS in oracle.properties:
        res = oracle.score_batch([sel_key], (AUX_SAS,))[0]
        if isinstance(res, dict):
            sas = res[AUX_SAS]
    return CaseResult(
        input=input_key,
        any_valid=True,
        success=True,
        selected=sel_key,
        sim=sim,
        ri=best_ri,
        selected_scores=best_vec,
        novel=novel,
        sas=sas,
    )


def _mean(values: list[float]) -> float | None:
    if not values:
        return None
    return sum(values) / len(values)


def aggregate(cases: Sequence[CaseResult], task: TaskSpec) -> TaskReport:
    if not cases:
        raise EmptyCaseList(f"task {task.name}: no cases")
    n = len(cases)
    wins = [c for c in cases if c.success]
    sr = 100.0 * len(wins) / n
    val = 100.0 * sum(1 for c in cases if c.any_valid) / n
    aps: PropertyVector = {}
    if wins:
        for letter in task.letters:
            aps[letter] = sum(c.selected_scores[letter] for c in wins) / len(
                wins
            )
    novels = [c.novel for c in wins if c.novel is not None]
    return TaskReport(
        task=task.name,
        n_cases=n,
        sr=sr,
        val=val,
        sim=_mean([c.sim for c in wins]),
        nov=(100.0 * sum(novels) / len(novels)) if novels else None,
        sas=_mean([c.sas for c in wins if c.sas is not None]),
        ri=_mean([c.ri for c in wins]),
        aps=aps,
    )


def evaluate_records(
    records: Iterable[GenerationRecord],
    oracle,
    *,
    train_mols: set[str] | None = None,
    mode: str = "loose",
    registry: PropertyRegistry | None = None,
) -> tuple[list[TaskReport], dict[str, list[CaseResult]]]:
    """Group records by task (first-appearance order) and aggregate."""
    registry = registry or PropertyRegistry.default()
    grouped: dict[str, list[GenerationRecord]] = {}
    for rec in records:
        grouped.setdefault(rec.task_name, []).append(rec)
    reports: list[TaskReport] = []
    cases_by_task: dict[str, list[CaseResult]] = {}
    for name, recs in grouped.items():
        task = task_from_letters(name, registry=registry)
        cases = [
            evaluate_case(
                r, task, oracle, train_mols, mode, registry=registry
            )
            for r in recs
        ]
        cases_by_task[name] = cases
        reports.append(aggregate(cases, task))
    return reports, cases_by_task


# --- serialization ---------------------------------------------------------


def read_generations(fh) -> Iterator[GenerationRecord]:
    for line in fh:
        line = line.strip()
        if not line:
            continue
        obj = json.loads(line)
        if "_manifest" in obj:
            continue
        yield GenerationRecord.from_json(obj)


_NA = "n/a"


def _cell(value: float | None) -> str:
    return _NA if value is None else f"{value:.2f}"


def _aps_letters(reports: Sequence[TaskReport]) -> list[str]:
    from molforge.properties import _global_key

    letters = {letter for rep in reports for letter in rep.aps}
    for rep in reports:
        letters.update(rep.task)
    return sorted(letters, key=_global_key)


def report_columns(reports: Sequence[TaskReport]) -> list[str]:
    return ["task", "n", "SR", "Val", "Sim", "Nov", "SAS", "RI"] + [
        f"APS_{letter}" for letter in _aps_letters(reports)
    ]


def _row_cells(rep: TaskReport, letters: list[str]) -> list[str]:
    cells = [
        rep.task,
        str(rep.n_cases),
        _cell(rep.sr),
        _cell(rep.val),
        _cell(rep.sim),
        _cell(rep.nov),
        _cell(rep.sas),
        _cell(rep.ri),
    ]
    for letter in letters:
        cells.append(_cell(rep.aps.get(letter)))
    return cells


def write_report(
    reports: Sequence[TaskReport],
    fmt: str,
    fh,
    *,
    manifest: dict | None = None,
) -> None:
    manifest = dict(manifest or {})
    manifest.setdefault(
        "averaging", "Sim/Nov/SAS/RI/APS over successful cases; Val over all"
    )
    letters = _aps_letters(reports)
    columns = report_columns(reports)
    if fmt == "tsv":
        fh.write("# manifest: " + json.dumps(manifest, sort_keys=True) + "\n")
        fh.write("\t".join(columns) + "\n")
        for rep in reports:
            fh.write("\t".join(_row_cells(rep, letters)) + "\n")
    elif fmt == "json":
        rows = []
        for rep in reports:
            rows.append(
                {
                    "task": rep.task,
                    "n": rep.n_cases,
                    "SR": _round2(rep.sr),
                    "Val": _round2(rep.val),
                    "Sim": _round2(rep.sim),
                    "Nov": _round2(rep.nov),
                    "SAS": _round2(rep.sas),
                    "RI": _round2(rep.ri),
                    "APS": {
                        letter: _round2(rep.aps.get(letter))
                        for letter in letters
                    },
                }
            )
        json.dump(
            {"manifest": manifest, "columns": columns, "rows": rows},
            fh,
            sort_keys=True,
            indent=2,
        )
        fh.write("\n")
    elif fmt == "markdown":
        fh.write("| " + " | ".join(columns) + " |\n")
        fh.write("|" + "---|" * len(columns) + "\n")
        for rep in reports:
            fh.write("| " + " | ".join(_row_cells(rep, letters)) + " |\n")
    else:
        raise ValueError(f"unknown report format {fmt!r}")


def _round2(value: float | None) -> float | None:
    return None if value is None else round(value, 2)
