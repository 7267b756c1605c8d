import sys
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"

MOCK_SCORER = [sys.executable, str(FIXTURES / "mock_scorer.py")]


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def corpus_100() -> list[str]:
    return _read_smi(FIXTURES / "corpus_100.smi")


@pytest.fixture(scope="session")
def corpus_1k() -> list[str]:
    return _read_smi(FIXTURES / "corpus_1k.smi")


@pytest.fixture(scope="session")
def score_table_path() -> Path:
    return FIXTURES / "scores_1k.tsv"


@pytest.fixture(scope="session")
def mock_scorer_cmd() -> list[str]:
    return list(MOCK_SCORER)


def _read_smi(path: Path) -> list[str]:
    out = []
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(line.split()[0])
    return out
