"""Property scoring front end.

An Oracle wraps one backend (score table or scorer subprocess) behind a
single batch call. Inputs are canonicalized once here, so the cache and
every backend see one spelling per molecule; the cache keys on
(canonical, letters) and stores successes only, so a molecule is never
scored twice in a session no matter how it was written.
"""

from __future__ import annotations

from molforge.errors import OracleError, ParseError, UnknownMolecule
from molforge.molgraph import canonical
from molforge.properties import PropertyVector

from .table import ScoreTable, TableBackend, load_table
from .subproc import SubprocessScorer

__all__ = [
    "Oracle",
    "ScoreTable",
    "TableBackend",
    "SubprocessScorer",
    "load_table",
]


class Oracle:
    def __init__(self, backend, *, cache: bool = True):
        self.backend = backend
        self._cache: dict | None = {} if cache else None

    @property
    def identity(self) -> str:
        return self.backend.identity

    @property
    def properties(self) -> tuple[str, ...]:
        return self.backend.properties

    def score_batch(
        self, smiles: list[str], letters
    ) -> list[PropertyVector | OracleError]:
        """One result per input: a letter->value dict or an error instance."""
        letters = tuple(letters)
        keys: list[str | None] = []
        for text in smiles:
            try:
                keys.append(canonical(text))
            except ParseError:
                keys.append(None)
        results: list[PropertyVector | OracleError | None] = [None] * len(
            smiles
        )
        # one backend request per distinct molecule; unparseable inputs
        # (key None) are never merged, each goes through as written
        misses: dict[object, list[int]] = {}
        for i, key in enumerate(keys):
            if self._cache is not None and key is not None:
                hit = self._cache.get((key, letters))
                if hit is not None:
                    results[i] = dict(hit)
                    continue
            misses.setdefault(key if key is not None else (i,), []).append(i)
        if misses:
            groups = list(misses.values())
            fetched = self.backend.score_items(
                [(smiles[g[0]], keys[g[0]]) for g in groups], letters
            )
            if len(fetched) != len(groups):
                raise RuntimeError("backend returned wrong result count")
            for g, res in zip(groups, fetched):
                for i in g:
                    results[i] = dict(res) if isinstance(res, dict) else res
                key = keys[g[0]]
                if (
                    self._cache is not None
                    and key is not None
                    and isinstance(res, dict)
                ):
                    self._cache[(key, letters)] = dict(res)
        return results  # type: ignore[return-value]

    def score_one(self, text: str, letters) -> PropertyVector:
        res = self.score_batch([text], letters)[0]
        if isinstance(res, OracleError):
            raise res
        return res

    def close(self) -> None:
        self.backend.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
