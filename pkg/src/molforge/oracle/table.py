"""Static score tables.

TSV with a header line "smiles<TAB><letter>..."; every row carries a
score for every declared property. Keys are canonicalized on load;
identical duplicate rows merge, conflicting ones are an error.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from molforge.errors import (
    ConflictingDuplicate,
    MissingColumn,
    ParseError,
    TableParseError,
    UnknownMolecule,
    UnknownProperty,
)
from molforge.molgraph import canonical
from molforge.properties import PropertyVector


@dataclass(slots=True)
class ScoreTable:
    rows: dict[str, PropertyVector]
    declared: tuple[str, ...]
    source: str = ""

    def __len__(self) -> int:
        return len(self.rows)


def load_table(path: str | Path) -> ScoreTable:
    path = Path(path)
    header: list[str] | None = None
    rows: dict[str, PropertyVector] = {}
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if header is None:
                header = fields
                if not header or header[0] != "smiles":
                    raise MissingColumn(
                        f"{path}: first header column must be 'smiles'"
                    )
                if len(set(header)) != len(header):
                    raise TableParseError(
                        f"{path}: duplicate header columns", lineno
                    )
                continue
            if len(fields) != len(header):
                raise TableParseError(
                    f"{path}: expected {len(header)} fields, got {len(fields)}",
                    lineno,
                )
            try:
                key = canonical(fields[0])
            except ParseError as exc:
                raise TableParseError(
                    f"{path}: bad SMILES {fields[0]!r}: {exc}", lineno
                ) from exc
            try:
                vector = {
                    header[k]: float(fields[k]) for k in range(1, len(header))
                }
            except ValueError as exc:
                raise TableParseError(
                    f"{path}: non-numeric score: {exc}", lineno
                ) from exc
            if key in rows:
                if rows[key] != vector:
                    raise ConflictingDuplicate(fields[0])
                continue
            rows[key] = vector
    if header is None:
        raise MissingColumn(f"{path}: empty table")
    return ScoreTable(rows=rows, declared=tuple(header[1:]), source=str(path))


class TableBackend:
    """Oracle backend over a loaded ScoreTable."""

    def __init__(self, table: ScoreTable):
        self.table = table

    @property
    def identity(self) -> str:
        return f"table:{self.table.source}"

    @property
    def properties(self) -> tuple[str, ...]:
        return self.table.declared

    def score_items(self, items, letters):
        """items: list of (raw text, canonical or None)."""
        for letter in letters:
            if letter not in self.table.declared:
                raise UnknownProperty(
                    f"table {self.table.source} has no column {letter!r}"
                )
        out = []
        for raw, key in items:
            if key is None or key not in self.table.rows:
                out.append(UnknownMolecule(f"not in score table: {raw!r}"))
                continue
            row = self.table.rows[key]
            out.append({letter: row[letter] for letter in letters})
        return out

    def close(self) -> None:
        pass
