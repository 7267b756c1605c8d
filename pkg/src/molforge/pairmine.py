"""Training-pair construction.

A pair is two scored molecules (mx, my) plus their Tanimoto similarity.
Pairs come from two places: pre-existing pair lists read from TSV, or
similarity mining over a scored pool. Either way they pass through
filter/orient steps that apply a task's property constraints.

Mining is a generalization: curated pair sets restrict to single-site
structural edits, which we do not reproduce; a Tanimoto threshold over
fingerprints stands in. The strict '>' at the threshold is deliberate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator

from molforge.errors import TableParseError
from molforge.fingerprint import morgan, pairwise_similar, tanimoto
from molforge.molgraph import canonical_smiles, parse
from molforge.properties import (
    PropertyRegistry,
    PropertyVector,
    TaskSpec,
    satisfies_pair,
)

DEFAULT_THRESHOLD = 0.6


@dataclass(slots=True)
class PairRecord:
    mx: str
    my: str
    similarity: float
    vx: PropertyVector
    vy: PropertyVector

    def swapped(self) -> "PairRecord":
        return PairRecord(
            mx=self.my,
            my=self.mx,
            similarity=self.similarity,
            vx=dict(self.vy),
            vy=dict(self.vx),
        )

    def to_json(self) -> dict:
        return {
            "mx": self.mx,
            "my": self.my,
            "similarity": self.similarity,
            "vx": self.vx,
            "vy": self.vy,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PairRecord":
        return cls(
            mx=obj["mx"],
            my=obj["my"],
            similarity=float(obj["similarity"]),
            vx={k: float(v) for k, v in obj["vx"].items()},
            vy={k: float(v) for k, v in obj["vy"].items()},
        )


def mine_pairs(
    pool: Iterable[tuple[str, PropertyVector]],
    *,
    threshold: float = DEFAULT_THRESHOLD,
    radius: int = 2,
    width: int = 2048,
    backend: str = "auto",
) -> list[PairRecord]:
    """All unordered pairs from the pool with similarity > threshold.

    Pool entries are canonicalized; duplicate molecules collapse to the
    first occurrence, so no pair ever relates a molecule to itself.
    Orientation is left to orient_pairs.
    """
    smiles: list[str] = []
    fps = []
    scores: list[PropertyVector] = []
    seen: set[str] = set()
    for text, vector in pool:
        mol = parse(text)
        key = canonical_smiles(mol)
        if key in seen:
            continue
        seen.add(key)
        smiles.append(key)
        fps.append(morgan(mol, radius=radius, width=width))
        scores.append(vector)
    hits = pairwise_similar(fps, threshold, backend=backend)
    return [
        PairRecord(
            mx=smiles[i],
            my=smiles[j],
            similarity=sim,
            vx=dict(scores[i]),
            vy=dict(scores[j]),
        )
        for i, j, sim in hits
    ]


def filter_pairs(
    pairs: Iterable[PairRecord],
    task: TaskSpec,
    mode: str = "strict",
    *,
    registry: PropertyRegistry | None = None,
) -> list[PairRecord]:
    """Pairs already oriented: keep those whose my improves on mx.

    Order preserved; duplicates on (mx, my) dropped after the first.
    """
    registry = registry or PropertyRegistry.default()
    out: list[PairRecord] = []
    seen: set[tuple[str, str]] = set()
    for pair in pairs:
        key = (pair.mx, pair.my)
        if key in seen:
            continue
        seen.add(key)
        if satisfies_pair(task, registry, pair.vx, pair.vy, mode=mode):
            out.append(pair)
    return out


def orient_pairs(
    pairs: Iterable[PairRecord],
    task: TaskSpec,
    mode: str = "strict",
    *,
    registry: PropertyRegistry | None = None,
) -> list[PairRecord]:
    """Decide direction for unordered pairs.

    Each input yields zero, one, or (for mixed-direction score profiles)
    both orderings; an ordering survives when the second molecule
    improves on the first for every task property under the given mode.
    """
    registry = registry or PropertyRegistry.default()
    out: list[PairRecord] = []
    seen: set[tuple[str, str]] = set()
    for pair in pairs:
        for cand in (pair, pair.swapped()):
            key = (cand.mx, cand.my)
            if key in seen:
                continue
            if satisfies_pair(task, registry, cand.vx, cand.vy, mode=mode):
                seen.add(key)
                out.append(cand)
    return out


# --- serialization ---------------------------------------------------------


def read_pairs_tsv(
    path,
    *,
    oracle=None,
    letters: Iterable[str] | None = None,
    radius: int = 2,
    width: int = 2048,
) -> list[PairRecord]:
    """Load a pair list.

    Two layouts: "mx\\tmy" (scores fetched through the oracle for the
    given letters) or "mx\\tmy" plus per-property columns suffixed _x
    and _y. Similarity is always computed here; curated lists rarely
    carry it and we want the field honest.
    """
    rows: list[tuple[str, str]] = []
    vx_cols: list[tuple[int, str]] = []
    vy_cols: list[tuple[int, str]] = []
    header: list[str] | None = None
    raw_vectors: list[tuple[PropertyVector, PropertyVector]] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if header is None:
                header = fields
                if header[:2] != ["mx", "my"]:
                    raise TableParseError(
                        f"{path}: header must start with mx\\tmy", lineno
                    )
                for col, name in enumerate(header[2:], start=2):
                    if name.endswith("_x"):
                        vx_cols.append((col, name[:-2]))
                    elif name.endswith("_y"):
                        vy_cols.append((col, name[:-2]))
                    else:
                        raise TableParseError(
                            f"{path}: score column {name!r} needs _x/_y suffix",
                            lineno,
                        )
                if {n for _, n in vx_cols} != {n for _, n in vy_cols}:
                    raise TableParseError(
                        f"{path}: _x and _y columns do not pair up", lineno
                    )
                continue
            if len(fields) != len(header):
                raise TableParseError(
                    f"{path}: expected {len(header)} fields, got {len(fields)}",
                    lineno,
                )
            rows.append((fields[0], fields[1]))
            try:
                raw_vectors.append(
                    (
                        {name: float(fields[c]) for c, name in vx_cols},
                        {name: float(fields[c]) for c, name in vy_cols},
                    )
                )
            except ValueError as exc:
                raise TableParseError(
                    f"{path}: non-numeric score: {exc}", lineno
                ) from exc
    if header is None:
        raise TableParseError(f"{path}: empty pair file", 0)

    has_columns = bool(vx_cols)
    if not has_columns:
        if oracle is None or letters is None:
            raise ValueError(
                "pair file has no score columns; oracle and letters required"
            )
        letters = tuple(letters)
        flat = [m for row in rows for m in row]
        scored = oracle.score_batch(flat, letters)
        for m, res in zip(flat, scored):
            if not isinstance(res, dict):
                raise res
        raw_vectors = [
            (scored[2 * k], scored[2 * k + 1]) for k in range(len(rows))
        ]

    out: list[PairRecord] = []
    for (mx_raw, my_raw), (vx, vy) in zip(rows, raw_vectors):
        mol_x = parse(mx_raw)
        mol_y = parse(my_raw)
        sim = tanimoto(
            morgan(mol_x, radius=radius, width=width),
            morgan(mol_y, radius=radius, width=width),
        )
        out.append(
            PairRecord(
                mx=canonical_smiles(mol_x),
                my=canonical_smiles(mol_y),
                similarity=sim,
                vx=vx,
                vy=vy,
            )
        )
    return out


def write_pairs_jsonl(fh, pairs: Iterable[PairRecord], manifest: dict | None = None) -> int:
    n = 0
    if manifest is not None:
        fh.write(json.dumps({"_manifest": manifest}, sort_keys=True) + "\n")
    for pair in pairs:
        fh.write(json.dumps(pair.to_json(), sort_keys=True) + "\n")
        n += 1
    return n


def read_pairs_jsonl(fh) -> Iterator[PairRecord]:
    for line in fh:
        line = line.strip()
        if not line:
            continue
        obj = json.loads(line)
        if "_manifest" in obj:
            continue
        yield PairRecord.from_json(obj)
