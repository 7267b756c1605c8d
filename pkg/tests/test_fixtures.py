"""Committed fixture files must match their generator and stay parseable."""

import hashlib
import subprocess
import sys

from molforge.molgraph import canonical

from conftest import FIXTURES


def test_corpus_100_parses_and_is_unique(corpus_100):
    assert len(corpus_100) == 100
    keys = [canonical(s) for s in corpus_100]
    assert len(set(keys)) == 100


def test_generator_reproduces_committed_files(tmp_path):
    subprocess.run(
        [sys.executable, str(FIXTURES / "gen_corpus.py"), str(tmp_path)],
        check=True,
    )
    for name in ("corpus_1k.smi", "scores_1k.tsv"):
        fresh = (tmp_path / name).read_bytes()
        committed = (FIXTURES / name).read_bytes()
        assert hashlib.sha256(fresh).hexdigest() == hashlib.sha256(
            committed
        ).hexdigest(), f"{name} drifted from its generator"


def test_score_table_covers_whole_corpus(corpus_1k, score_table_path):
    from molforge.oracle import load_table

    table = load_table(score_table_path)
    assert table.declared == tuple("BDHMPQS")
    assert len(table) == 1000
    for smiles in corpus_1k[:50]:
        assert canonical(smiles) in table.rows
