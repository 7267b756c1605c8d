"""Fingerprint cache file.

One record per molecule: canonical SMILES + base64 bitset. The header
pins the hash scheme version, radius and width; any mismatch invalidates
the whole cache (read_cache returns None) so stale bits are never reused
after a scheme change.
"""

from __future__ import annotations

import base64
from pathlib import Path

from molforge.fingerprint import Fingerprint

SCHEME_VERSION = 1
_MAGIC = "#molforge-fpcache"


def write_cache(
    path: str | Path,
    radius: int,
    width: int,
    entries: dict[str, Fingerprint],
) -> None:
    lines = [f"{_MAGIC}\t{SCHEME_VERSION}\t{radius}\t{width}"]
    for smiles in sorted(entries):
        encoded = base64.b64encode(entries[smiles].to_bytes()).decode("ascii")
        lines.append(f"{smiles}\t{encoded}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_cache(
    path: str | Path, radius: int, width: int
) -> dict[str, Fingerprint] | None:
    """Load a cache written with the same scheme/radius/width, else None."""
    path = Path(path)
    if not path.exists():
        return None
    with path.open(encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n").split("\t")
        if header != [_MAGIC, str(SCHEME_VERSION), str(radius), str(width)]:
            return None
        out: dict[str, Fingerprint] = {}
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            smiles, encoded = line.split("\t")
            out[smiles] = Fingerprint.from_bytes(
                width, base64.b64decode(encoded)
            )
    return out
