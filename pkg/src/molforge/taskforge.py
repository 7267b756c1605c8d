"""Task enumeration, splits, training medians, and test-set builds.

A task is a subset of properties to improve jointly. For each task we
split its pairs into train/val, take per-property medians of the
starting molecules (MPS), and assemble a test set of molecules that sit
strictly below those medians, so any success at evaluation time is a
real improvement over the training baseline.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from statistics import median
from typing import Iterable, Sequence

from molforge.errors import (
    EmptyPool,
    EmptyTrainingSet,
    MinSizeTooLarge,
    MissingScore,
)
from molforge.molgraph import canonical
from molforge.pairmine import PairRecord
from molforge.properties import (
    GLOBAL_ORDER,
    PropertyRegistry,
    PropertyVector,
    TaskSpec,
    task_from_letters,
    worse_than,
)


@dataclass(slots=True)
class SplitConfig:
    val_fraction: float = 0.10
    test_cap: int = 500
    seed: int = 42
    percentile_floor: float = 0.10

    def __post_init__(self) -> None:
        if not 0.0 <= self.val_fraction < 1.0:
            raise ValueError("val_fraction must be in [0, 1)")
        if self.test_cap < 1:
            raise ValueError("test_cap must be >= 1")
        if not 0.0 <= self.percentile_floor <= 1.0:
            raise ValueError("percentile_floor must be in [0, 1]")


@dataclass(slots=True)
class TaskStats:
    task: TaskSpec
    n_train: int
    n_val: int
    n_test: int
    n_unique_mols: int
    mps_train: PropertyVector
    aps_test: PropertyVector


def enumerate_tasks(
    letters: Iterable[str],
    min_size: int = 1,
    *,
    registry: PropertyRegistry | None = None,
) -> list[TaskSpec]:
    """All property subsets of size >= min_size, in (size, name) order."""
    pool = list(dict.fromkeys(letters))
    if not pool:
        raise ValueError("no properties given")
    if min_size > len(pool):
        raise MinSizeTooLarge(
            f"min_size {min_size} exceeds {len(pool)} properties"
        )
    min_size = max(min_size, 1)
    ordered = sorted(
        pool, key=lambda c: (GLOBAL_ORDER.find(c) == -1, GLOBAL_ORDER.find(c), c)
    )
    tasks: list[TaskSpec] = []
    for size in range(min_size, len(ordered) + 1):
        for combo in combinations(ordered, size):
            tasks.append(task_from_letters(combo, registry=registry))
    return tasks


def round_half_up(x: float) -> int:
    return int(x + 0.5)


def split_train_val(
    pairs: Sequence[PairRecord], cfg: SplitConfig
) -> tuple[list[PairRecord], list[PairRecord]]:
    """Seeded shuffle, then carve off round(val_fraction * n) for val."""
    shuffled = list(pairs)
    random.Random(cfg.seed).shuffle(shuffled)
    n_val = round_half_up(cfg.val_fraction * len(shuffled))
    return shuffled[n_val:], shuffled[:n_val]


def training_medians(
    task: TaskSpec, train_pairs: Sequence[PairRecord]
) -> PropertyVector:
    """Per-property median of the starting molecules' scores (MPS)."""
    if not train_pairs:
        raise EmptyTrainingSet(f"task {task.name}: no training pairs")
    out: PropertyVector = {}
    for letter in task.letters:
        try:
            out[letter] = float(
                median(pair.vx[letter] for pair in train_pairs)
            )
        except KeyError:
            raise MissingScore(letter) from None
    return out


def percentile(values: Sequence[float], q: float) -> float:
    """Linear-interpolation percentile, q in [0, 1]."""
    if not values:
        raise ValueError("percentile of empty sequence")
    if not 0.0 <= q <= 1.0:
        raise ValueError("q must be in [0, 1]")
    ordered = sorted(values)
    pos = q * (len(ordered) - 1)
    lo = int(pos)
    frac = pos - lo
    if frac == 0.0:
        return ordered[lo]
    return ordered[lo] + frac * (ordered[lo + 1] - ordered[lo])


def training_floors(
    task: TaskSpec,
    train_pairs: Sequence[PairRecord],
    cfg: SplitConfig,
    *,
    registry: PropertyRegistry | None = None,
) -> PropertyVector:
    """Extreme-value cutoffs for skewed properties.

    For a skewed property the test set must not include molecules out in
    the undesirable tail beyond the configured percentile of training
    starting scores; a plogP of -30 is technically "worse than median"
    but useless as an optimization start.
    """
    registry = registry or PropertyRegistry.default()
    if not train_pairs:
        raise EmptyTrainingSet(f"task {task.name}: no training pairs")
    floors: PropertyVector = {}
    for letter in task.letters:
        spec = registry.get(letter)
        if not spec.skewed:
            continue
        try:
            scores = [pair.vx[letter] for pair in train_pairs]
        except KeyError:
            raise MissingScore(letter) from None
        q = (
            cfg.percentile_floor
            if spec.higher_is_better
            else 1.0 - cfg.percentile_floor
        )
        floors[letter] = percentile(scores, q)
    return floors


def training_molecules(pairs: Iterable[PairRecord]) -> set[str]:
    mols: set[str] = set()
    for pair in pairs:
        mols.add(pair.mx)
        mols.add(pair.my)
    return mols


def build_testset(
    task: TaskSpec,
    pool: Iterable[tuple[str, PropertyVector]],
    train_mols: set[str],
    mps: PropertyVector,
    cfg: SplitConfig,
    *,
    registry: PropertyRegistry | None = None,
    floors: PropertyVector | None = None,
) -> list[str]:
    """Sample up to cfg.test_cap molecules strictly worse than MPS.

    Eligibility: not a training molecule, strictly worse than the
    median on every task property, and inside the percentile floor for
    skewed properties. floors comes from training_floors; pass {} to
    skip the floor (e.g. no skewed property in the task).
    """
    registry = registry or PropertyRegistry.default()
    floors = floors or {}
    entries = list(pool)
    if not entries:
        raise EmptyPool(f"task {task.name}: empty candidate pool")
    eligible: list[str] = []
    seen: set[str] = set()
    for text, vector in entries:
        key = canonical(text)
        if key in seen or key in train_mols:
            continue
        seen.add(key)
        ok = True
        for letter in task.letters:
            spec = registry.get(letter)
            if letter not in vector:
                raise MissingScore(letter, key)
            if not worse_than(spec, vector[letter], mps[letter]):
                ok = False
                break
            floor = floors.get(letter)
            if floor is not None:
                outside = (
                    vector[letter] < floor
                    if spec.higher_is_better
                    else vector[letter] > floor
                )
                if outside:
                    ok = False
                    break
        if ok:
            eligible.append(key)
    if len(eligible) <= cfg.test_cap:
        return eligible
    return random.Random(cfg.seed).sample(eligible, cfg.test_cap)


def task_stats(
    task: TaskSpec,
    train_pairs: Sequence[PairRecord],
    val_pairs: Sequence[PairRecord],
    test_smiles: Sequence[str],
    test_scores: dict[str, PropertyVector],
) -> TaskStats:
    mps = training_medians(task, train_pairs)
    aps: PropertyVector = {}
    if test_smiles:
        for letter in task.letters:
            aps[letter] = sum(
                test_scores[m][letter] for m in test_smiles
            ) / len(test_smiles)
    mols = training_molecules(train_pairs) | training_molecules(val_pairs)
    return TaskStats(
        task=task,
        n_train=len(train_pairs),
        n_val=len(val_pairs),
        n_test=len(test_smiles),
        n_unique_mols=len(mols),
        mps_train=mps,
        aps_test=aps,
    )
