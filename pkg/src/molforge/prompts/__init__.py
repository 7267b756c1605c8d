"""Instruction rendering.

Six phrasings of the same optimization instruction live in
templates.json; the sixth is reserved for held-out evaluation and must
never enter a training corpus. Property display names come in a "seen"
variant (used for tuning) and an "unseen" variant (evaluation only).

Rendering is pure string work. The one composite sentence everything
shares is the task sentence: "Modify the molecule <SMILES> x </SMILES>
to <clause>. Keep the modifications to the molecule structure as
minimal as possible."
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Iterator, Sequence

from molforge.errors import HeldOutTemplateInTraining, MissingName
from molforge.pairmine import PairRecord
from molforge.properties import PropertyRegistry, TaskSpec

_DATA_FILE = "templates.json"


@dataclass(frozen=True, slots=True)
class InstructionTemplate:
    index: int
    text: str
    held_out: bool = False


@dataclass(frozen=True, slots=True)
class NameSet:
    variant: str
    names: dict
    no_suffix: frozenset

    def display(self, letter: str) -> str:
        try:
            return self.names[letter]
        except KeyError:
            raise MissingName(
                f"no {self.variant} display name for property {letter!r}"
            ) from None

    def wants_suffix(self, letter: str) -> bool:
        return letter not in self.no_suffix


@dataclass(slots=True)
class PromptRecord:
    task_name: str
    instruction: str
    input_smiles: str
    target_smiles: str | None
    template_index: int
    name_variant: str

    def to_json(self) -> dict:
        obj = {
            "task": self.task_name,
            "instruction": self.instruction,
            "input": self.input_smiles,
            "template": self.template_index,
            "names": self.name_variant,
        }
        if self.target_smiles is not None:
            obj["output"] = self.target_smiles
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "PromptRecord":
        return cls(
            task_name=obj["task"],
            instruction=obj["instruction"],
            input_smiles=obj["input"],
            target_smiles=obj.get("output"),
            template_index=int(obj["template"]),
            name_variant=obj["names"],
        )


def _load_data() -> dict:
    with resources.files(__package__).joinpath(_DATA_FILE).open(
        encoding="utf-8"
    ) as fh:
        return json.load(fh)


_DATA = _load_data()

SYSTEM_SENTENCE: str = _DATA["system"]
GUIDE_SENTENCE: str = _DATA["guide_sentence"]


def default_templates() -> list[InstructionTemplate]:
    return [
        InstructionTemplate(
            index=t["index"], text=t["text"], held_out=t["held_out"]
        )
        for t in _DATA["templates"]
    ]


def default_names(variant: str = "seen") -> NameSet:
    if variant not in _DATA["names"]:
        raise ValueError(f"unknown name variant {variant!r}")
    table = _DATA["names"][variant]
    return NameSet(
        variant=variant,
        names={k: v["text"] for k, v in table.items()},
        no_suffix=frozenset(
            k for k, v in table.items() if not v["value_suffix"]
        ),
    )


def render_task_clause(
    task: TaskSpec,
    names: NameSet,
    *,
    registry: PropertyRegistry | None = None,
) -> str:
    """Comma-joined directives, one per property, in task letter order.

    "decrease its Mutagenicity, increase its ... value, and increase
    its QED value" -- the trailing "value" is a per-name choice.
    """
    registry = registry or PropertyRegistry.default()
    items = []
    for letter in task.letters:
        spec = registry.get(letter)
        verb = "increase" if spec.higher_is_better else "decrease"
        phrase = f"{verb} its {names.display(letter)}"
        if names.wants_suffix(letter):
            phrase += " value"
        items.append(phrase)
    if len(items) == 1:
        return items[0]
    if len(items) == 2:
        return f"{items[0]} and {items[1]}"
    return ", ".join(items[:-1]) + f", and {items[-1]}"


def task_sentence(smiles: str, clause: str) -> str:
    return (
        f"Modify the molecule <SMILES> {smiles} </SMILES> to {clause}. "
        "Keep the modifications to the molecule structure as minimal as "
        "possible."
    )


def render_training_example(
    pair: PairRecord,
    task: TaskSpec,
    template: InstructionTemplate,
    names: NameSet,
    *,
    registry: PropertyRegistry | None = None,
    strict: bool = True,
) -> PromptRecord:
    if strict and template.held_out:
        raise HeldOutTemplateInTraining(
            f"template {template.index} is reserved for evaluation"
        )
    clause = render_task_clause(task, names, registry=registry)
    instruction = template.text + "\n\n" + task_sentence(pair.mx, clause)
    return PromptRecord(
        task_name=task.name,
        instruction=instruction,
        input_smiles=pair.mx,
        target_smiles=pair.my,
        template_index=template.index,
        name_variant=names.variant,
    )


def emit_training_corpus(
    pairs: Iterable[PairRecord],
    task: TaskSpec,
    templates: Sequence[InstructionTemplate] | None = None,
    names: NameSet | None = None,
    *,
    registry: PropertyRegistry | None = None,
    strict: bool = True,
) -> Iterator[PromptRecord]:
    """One record per pair, cycling through the usable templates.

    Cycling (rather than a random draw) keeps corpora reproducible with
    no seed and spreads phrasings evenly.
    """
    templates = templates or default_templates()
    names = names or default_names("seen")
    usable = [t for t in templates if not (strict and t.held_out)]
    if not usable:
        raise HeldOutTemplateInTraining("no usable templates")
    for k, pair in enumerate(pairs):
        yield render_training_example(
            pair,
            task,
            usable[k % len(usable)],
            names,
            registry=registry,
            strict=strict,
        )


def to_tuning_text(record: PromptRecord) -> str:
    """The supervised-tuning serialization of one record."""
    text = f"[INST]\n{record.instruction}\n\n[/INST]\n"
    if record.target_smiles is not None:
        text += f"<SMILES> {record.target_smiles} </SMILES>"
    return text


def render_eval_prompt(
    input_smiles: str,
    task: TaskSpec,
    template: InstructionTemplate | None = None,
    names: NameSet | None = None,
    *,
    style: str = "chat",
    fewshot: Sequence[PairRecord] = (),
    registry: PropertyRegistry | None = None,
) -> str:
    """Evaluation prompt in one of two shapes.

    chat: system block, instruction (with the few-shot guide sentence
    spliced in after the template's first sentence), optional Examples
    section, then the task sentence inside [INST] ... [/INST].

    simple: the bare task sentence, nothing else; template and fewshot
    are ignored.
    """
    names = names or default_names("seen")
    clause = render_task_clause(task, names, registry=registry)
    sentence = task_sentence(input_smiles, clause)
    if style == "simple":
        return sentence
    if style != "chat":
        raise ValueError(f"unknown prompt style {style!r}")
    template = template or default_templates()[0]
    head, sep, tail = template.text.partition(". ")
    if sep:
        instruction = f"{head}. {GUIDE_SENTENCE} {tail}"
    else:
        instruction = f"{template.text} {GUIDE_SENTENCE}"
    parts = [
        f"<<SYS>>\n{SYSTEM_SENTENCE}\n<</SYS>>\n\n[INST]\n{instruction}\n"
    ]
    if fewshot:
        parts.append("\nExamples:\n")
        for ex in fewshot:
            parts.append(
                f"\nTask: {task_sentence(ex.mx, clause)}\n"
                f"Answer: <SMILES> {ex.my} </SMILES>\n"
            )
    parts.append(f"\nTask: {sentence}\n[/INST]")
    return "".join(parts)


def write_records_jsonl(
    fh, records: Iterable[PromptRecord], manifest: dict | None = None
) -> int:
    n = 0
    if manifest is not None:
        fh.write(json.dumps({"_manifest": manifest}, sort_keys=True) + "\n")
    for rec in records:
        fh.write(json.dumps(rec.to_json(), sort_keys=True) + "\n")
        n += 1
    return n


def read_records_jsonl(fh) -> Iterator[PromptRecord]:
    for line in fh:
        line = line.strip()
        if not line:
            continue
        obj = json.loads(line)
        if "_manifest" in obj:
            continue
        yield PromptRecord.from_json(obj)
