"""Score table parsing, the caching facade, and the subprocess scorer."""

import sys

import pytest

from molforge.errors import (
    ConflictingDuplicate,
    MissingColumn,
    ProtocolViolation,
    ScorerError,
    ScorerExited,
    ScorerTimeout,
    TableParseError,
    UnknownMolecule,
    UnknownProperty,
)
from molforge.molgraph import canonical
from molforge.oracle import (
    Oracle,
    SubprocessScorer,
    TableBackend,
    load_table,
)

from conftest import FIXTURES, MOCK_SCORER


def write_table(tmp_path, text, name="t.tsv"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


GOOD = "smiles\tB\tQ\nCCO\t0.5\t0.25\nc1ccccc1\t0.125\t0.75\n"


class TestLoadTable:
    def test_basic(self, tmp_path):
        table = load_table(write_table(tmp_path, GOOD))
        assert table.declared == ("B", "Q")
        assert len(table) == 2
        assert table.rows[canonical("CCO")] == {"B": 0.5, "Q": 0.25}

    def test_keys_are_canonical(self, tmp_path):
        table = load_table(write_table(tmp_path, "smiles\tQ\nOCC\t0.5\n"))
        assert canonical("CCO") in table.rows

    def test_missing_smiles_column(self, tmp_path):
        with pytest.raises(MissingColumn):
            load_table(write_table(tmp_path, "mol\tQ\nCCO\t0.5\n"))

    def test_duplicate_header_column(self, tmp_path):
        with pytest.raises(TableParseError):
            load_table(write_table(tmp_path, "smiles\tQ\tQ\nCCO\t0.5\t0.5\n"))

    def test_field_count_mismatch_reports_line(self, tmp_path):
        with pytest.raises(TableParseError) as exc:
            load_table(write_table(tmp_path, "smiles\tQ\nCCO\t0.5\t0.9\n"))
        assert exc.value.line == 2

    def test_non_numeric_cell(self, tmp_path):
        with pytest.raises(TableParseError):
            load_table(write_table(tmp_path, "smiles\tQ\nCCO\thigh\n"))

    def test_unparseable_smiles(self, tmp_path):
        with pytest.raises(TableParseError):
            load_table(write_table(tmp_path, "smiles\tQ\nC(C\t0.5\n"))

    def test_identical_duplicates_merge(self, tmp_path):
        table = load_table(
            write_table(tmp_path, "smiles\tQ\nCCO\t0.5\nOCC\t0.5\n")
        )
        assert len(table) == 1

    def test_conflicting_duplicates_rejected(self, tmp_path):
        with pytest.raises(ConflictingDuplicate):
            load_table(write_table(tmp_path, "smiles\tQ\nCCO\t0.5\nOCC\t0.6\n"))


class TestTableBackend:
    def test_score_and_subset(self, tmp_path):
        backend = TableBackend(load_table(write_table(tmp_path, GOOD)))
        items = [("CCO", canonical("CCO"))]
        assert backend.score_items(items, "B") == [{"B": 0.5}]

    def test_unknown_molecule_is_per_item(self, tmp_path):
        backend = TableBackend(load_table(write_table(tmp_path, GOOD)))
        items = [("CCO", canonical("CCO")), ("CCN", canonical("CCN"))]
        out = backend.score_items(items, "BQ")
        assert out[0] == {"B": 0.5, "Q": 0.25}
        assert isinstance(out[1], UnknownMolecule)

    def test_undeclared_property_raises(self, tmp_path):
        backend = TableBackend(load_table(write_table(tmp_path, GOOD)))
        with pytest.raises(UnknownProperty):
            backend.score_items([("CCO", canonical("CCO"))], "BP")

    def test_identity_and_properties(self, tmp_path):
        path = write_table(tmp_path, GOOD)
        backend = TableBackend(load_table(path))
        assert tuple(backend.properties) == ("B", "Q")
        assert backend.identity.startswith("table:")


class CountingBackend:
    """Table-like backend that counts how many items it was asked about."""

    identity = "counting"
    properties = "BQ"

    def __init__(self):
        self.items_seen = 0
        self.calls = 0

    def score_items(self, items, letters):
        self.calls += 1
        self.items_seen += len(items)
        out = []
        for raw, key in items:
            if key is None or "N" in key:
                out.append(UnknownMolecule(raw))
            else:
                out.append({letter: 0.5 for letter in letters})
        return out

    def close(self):
        pass


class TestOracleFacade:
    def test_cache_skips_repeat_batches(self):
        backend = CountingBackend()
        oracle = Oracle(backend)
        first = oracle.score_batch(["CCO", "CCC"], "BQ")
        second = oracle.score_batch(["OCC", "CCC"], "BQ")
        assert backend.items_seen == 2
        assert first[0] == second[0] == {"B": 0.5, "Q": 0.5}

    def test_within_batch_duplicates_collapse(self):
        backend = CountingBackend()
        oracle = Oracle(backend)
        out = oracle.score_batch(["CCO", "OCC", "C(C)O"], "Q")
        assert backend.items_seen == 1
        assert out[0] == out[1] == out[2]
        # fan-out must hand each caller an independent dict
        out[0]["Q"] = 99.0
        assert out[1]["Q"] == 0.5

    def test_unparseable_inputs_never_merge(self):
        # the backend decides what it can score, so unparseable text is
        # forwarded as written, one request per occurrence
        backend = CountingBackend()
        oracle = Oracle(backend)
        out = oracle.score_batch(["C(C", "C(C"], "Q")
        assert backend.items_seen == 2
        assert all(isinstance(r, UnknownMolecule) for r in out)

    def test_errors_are_not_cached(self):
        backend = CountingBackend()
        oracle = Oracle(backend)
        oracle.score_batch(["CCN"], "Q")
        oracle.score_batch(["CCN"], "Q")
        assert backend.items_seen == 2

    def test_cache_keyed_by_letters(self):
        backend = CountingBackend()
        oracle = Oracle(backend)
        oracle.score_batch(["CCO"], "B")
        oracle.score_batch(["CCO"], "Q")
        assert backend.items_seen == 2

    def test_cache_disabled(self):
        backend = CountingBackend()
        oracle = Oracle(backend, cache=False)
        oracle.score_batch(["CCO"], "Q")
        oracle.score_batch(["CCO"], "Q")
        assert backend.items_seen == 2

    def test_score_one_raises_errors(self):
        oracle = Oracle(CountingBackend())
        assert oracle.score_one("CCO", "Q") == {"Q": 0.5}
        with pytest.raises(UnknownMolecule):
            oracle.score_one("CCN", "Q")


def scorer(*extra):
    return SubprocessScorer(MOCK_SCORER + list(extra), timeout=10.0)


class TestSubprocessScorer:
    def test_handshake_and_properties(self):
        with scorer() as s:
            assert tuple(s.properties) == tuple("BDHMPQS")
            assert s.identity.startswith("scorer:")

    def test_scores_match_repeat_calls(self):
        items = [("CCO", canonical("CCO")), ("c1ccccc1", canonical("c1ccccc1"))]
        with scorer() as s:
            first = s.score_items(items, "PQ")
            second = s.score_items(items, "PQ")
        assert first == second
        assert set(first[0]) == {"P", "Q"}

    def test_out_of_order_responses(self):
        items = [(f"{'C' * k}O", None) for k in range(1, 9)]
        with scorer("--shuffle-window", "4") as s:
            out = s.score_items(items, "Q")
        with scorer() as s:
            ref = s.score_items(items, "Q")
        assert out == ref

    def test_error_responses_become_scorer_error(self):
        with scorer() as s:
            out = s.score_items([("CC!O", None), ("CCO", None)], "Q")
        assert isinstance(out[0], ScorerError)
        assert isinstance(out[1], dict)

    def test_timeout_on_swallowed_response(self):
        # request ids start at 0, so the first item never gets an answer
        with SubprocessScorer(
            MOCK_SCORER + ["--swallow-id", "0"], timeout=0.8
        ) as s:
            out = s.score_items([("CCO", None), ("CCC", None)], "Q")
        assert isinstance(out[0], ScorerTimeout)
        assert isinstance(out[1], dict)

    def test_scorer_death_fails_remaining(self):
        with SubprocessScorer(
            MOCK_SCORER + ["--die-after", "2"], timeout=5.0
        ) as s:
            out = s.score_items([(f"{'C' * k}O", None) for k in range(1, 6)], "Q")
        assert sum(isinstance(r, dict) for r in out) == 2
        assert sum(isinstance(r, ScorerExited) for r in out) == 3

    def test_garbage_line_is_protocol_violation(self):
        with SubprocessScorer(
            MOCK_SCORER + ["--garbage-after", "1"], timeout=5.0
        ) as s:
            with pytest.raises(ProtocolViolation):
                s.score_items([("CCO", None), ("CCC", None)], "Q")

    def test_missing_handshake(self):
        with pytest.raises(ProtocolViolation):
            SubprocessScorer(MOCK_SCORER + ["--no-handshake"], timeout=2.0)

    def test_wrong_handshake_version(self):
        with pytest.raises(ProtocolViolation):
            SubprocessScorer(MOCK_SCORER + ["--bad-handshake"], timeout=2.0)

    def test_immediate_exit_reported(self):
        with pytest.raises(ScorerExited):
            SubprocessScorer(
                [sys.executable, "-c", "raise SystemExit(2)"], timeout=2.0
            )

    def test_window_respected_under_slow_scorer(self):
        # window smaller than the batch still answers everything
        items = [(f"{'C' * k}O", None) for k in range(1, 12)]
        with SubprocessScorer(MOCK_SCORER, timeout=10.0, window=3) as s:
            out = s.score_items(items, "Q")
        assert all(isinstance(r, dict) for r in out)

    def test_facade_over_subprocess(self):
        with scorer() as backend:
            oracle = Oracle(backend)
            out = oracle.score_batch(["CCO", "OCC", "CC!O"], "BQ")
        assert out[0] == out[1]
        assert isinstance(out[2], ScorerError)
