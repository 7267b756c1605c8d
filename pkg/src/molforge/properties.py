"""Property registry, improvement predicates, and task descriptors.

Six properties ship as compiled-in defaults: BBBP (B), DRD2 (D), HIA (H),
Mutagenicity (M), penalized logP (P) and QED (Q), with their optimization
directions and minimum improvement thresholds. Mutagenicity is the sole
lower-is-better property; penalized logP is the sole unbounded and skewed
one. A JSON registry file can replace or extend the defaults. The letter
"S" (synthetic accessibility) is reserved as an auxiliary score channel:
oracles may serve it, but it never names a task.

A score vector is a plain dict mapping property letters to floats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from molforge.errors import MissingScore, UnknownProperty

PropertyVector = dict[str, float]

GLOBAL_ORDER = "BDHMPQ"

AUX_SAS = "S"


@dataclass(frozen=True, slots=True)
class PropertySpec:
    letter: str
    seen_name: str
    unseen_name: str
    higher_is_better: bool
    delta: float
    bounded01: bool
    skewed: bool

    @property
    def direction(self) -> int:
        return 1 if self.higher_is_better else -1


_DEFAULT_SPECS = (
    PropertySpec("B", "BBB permeability",
                 "Blood-brain barrier permeability (BBBP)",
                 True, 0.2, True, False),
    PropertySpec("D", "DRD2 inhibition",
                 "inhibition probability of Dopamine receptor D2",
                 True, 0.2, True, False),
    PropertySpec("H", "Intestinal adsorption",
                 "human intestinal adsorption ability",
                 True, 0.1, True, False),
    PropertySpec("M", "Mutagenicity",
                 "probability to induce genetic alterations (mutagenicity)",
                 False, 0.1, True, False),
    PropertySpec("P", "Penalized octanol-water partition coefficient "
                 "(penalized logP)",
                 "Penalized logP which is logP penalized by synthetic "
                 "accessibility score and number of large rings",
                 True, 1.0, False, True),
    PropertySpec("Q", "QED", "drug-likeness quantified by QED score",
                 True, 0.1, True, False),
)


class PropertyRegistry:
    """Immutable letter -> PropertySpec map, iterated in global order."""

    def __init__(self, specs: list[PropertySpec] | tuple[PropertySpec, ...]):
        self._specs: dict[str, PropertySpec] = {}
        for spec in specs:
            if spec.letter in self._specs:
                raise UnknownProperty(f"duplicate property letter {spec.letter}")
            self._specs[spec.letter] = spec
        self._order = sorted(self._specs)

    @classmethod
    def default(cls) -> PropertyRegistry:
        return cls(_DEFAULT_SPECS)

    @classmethod
    def from_json(cls, path: str | Path) -> PropertyRegistry:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        specs = [
            PropertySpec(
                letter=entry["letter"],
                seen_name=entry["seen_name"],
                unseen_name=entry["unseen_name"],
                higher_is_better=bool(entry["higher_is_better"]),
                delta=float(entry["delta"]),
                bounded01=bool(entry["bounded01"]),
                skewed=bool(entry["skewed"]),
            )
            for entry in raw["properties"]
        ]
        return cls(specs)

    def to_json(self) -> str:
        return json.dumps(
            {
                "properties": [
                    {
                        "letter": s.letter,
                        "seen_name": s.seen_name,
                        "unseen_name": s.unseen_name,
                        "higher_is_better": s.higher_is_better,
                        "delta": s.delta,
                        "bounded01": s.bounded01,
                        "skewed": s.skewed,
                    }
                    for s in self
                ]
            },
            indent=2,
        )

    def get(self, letter: str) -> PropertySpec:
        try:
            return self._specs[letter]
        except KeyError:
            raise UnknownProperty(f"unknown property letter {letter!r}") from None

    def __contains__(self, letter: str) -> bool:
        return letter in self._specs

    def __iter__(self):
        return (self._specs[letter] for letter in self._order)

    def __len__(self) -> int:
        return len(self._specs)

    @property
    def letters(self) -> str:
        return "".join(self._order)


# --- task descriptors -----------------------------------------------------

CATEGORY_GT = "GT"
CATEGORY_CS = "CS"

SPLIT_IND = "IND"
SPLIT_OOD = "OOD"
SPLIT_TRAIN_ONLY = "TRAIN_ONLY"

# The ten held-out evaluation property combinations.
IND_TASKS = ("BDP", "BDQ", "BPQ", "DPQ", "BDPQ")
OOD_TASKS = ("MPQ", "BDMQ", "BHMQ", "BMPQ", "HMPQ")


@dataclass(frozen=True, slots=True)
class TaskSpec:
    letters: tuple[str, ...]
    category: str
    split: str

    @property
    def name(self) -> str:
        return "".join(self.letters)

    def __str__(self) -> str:
        return self.name


def task_from_letters(letters, *, registry: PropertyRegistry | None = None) -> TaskSpec:
    """Build a TaskSpec from an iterable of property letters.

    Letters are ordered globally; category defaults mirror the evaluation
    tables (CS when the task touches B or D, else GT) and split tags mark
    the ten held-out combinations.
    """
    if registry is not None:
        for letter in letters:
            registry.get(letter)  # raises UnknownProperty
    unique = set(letters)
    if not unique:
        raise UnknownProperty("a task needs at least one property letter")
    ordered = tuple(sorted(unique, key=_global_key))
    name = "".join(ordered)
    category = CATEGORY_CS if ("B" in unique or "D" in unique) else CATEGORY_GT
    if name in IND_TASKS:
        split = SPLIT_IND
    elif name in OOD_TASKS:
        split = SPLIT_OOD
    else:
        split = SPLIT_TRAIN_ONLY
    return TaskSpec(ordered, category, split)


def _global_key(letter: str):
    pos = GLOBAL_ORDER.find(letter)
    return (pos if pos != -1 else len(GLOBAL_ORDER), letter)


# --- predicates -------------------------------------------------------------

def oriented_gain(spec: PropertySpec, x: float, y: float) -> float:
    """Signed improvement from x to y; positive always means better."""
    return (y - x) if spec.higher_is_better else (x - y)


def _score(vec: PropertyVector, letter: str) -> float:
    try:
        return vec[letter]
    except KeyError:
        raise MissingScore(letter) from None


def satisfies_pair(
    task: TaskSpec,
    registry: PropertyRegistry,
    vx: PropertyVector,
    vy: PropertyVector,
    mode: str = "strict",
) -> bool:
    """True when y improves on x for every task property.

    strict mode requires each oriented gain to reach the property's delta
    (boundary inclusive); loose mode requires any positive gain.
    """
    if mode not in ("strict", "loose"):
        raise ValueError(f"mode must be strict or loose, got {mode!r}")
    for letter in task.letters:
        spec = registry.get(letter)
        gain = oriented_gain(spec, _score(vx, letter), _score(vy, letter))
        if mode == "strict":
            if gain < spec.delta:
                return False
        elif gain <= 0:
            return False
    return True


def worse_than(spec: PropertySpec, value: float, reference: float) -> bool:
    """Strictly worse in the property's undesirable direction."""
    if spec.higher_is_better:
        return value < reference
    return value > reference
