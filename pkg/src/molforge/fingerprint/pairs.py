"""Bulk threshold similarity search.

pairwise_similar finds every pair with Tanimoto strictly above the
threshold, exactly matching a brute-force double loop. Candidates are
pruned with the popcount bound sim <= min(|a|,|b|)/max(|a|,|b|): rows are
sorted by popcount and the inner scan stops once the bound falls to or
below the threshold. Rounding is monotone, so the float bound check can
never prune a pair the brute force would emit.

Two backends produce bit-identical results: a Cython kernel over packed
uint64 rows and a pure-Python fallback on int bitmasks. Selection is
automatic at import; set MOLFORGE_NO_EXT=1 to force the fallback.
"""

from __future__ import annotations

import os

from molforge.errors import InvalidThreshold, WidthMismatch
from molforge.fingerprint import Fingerprint, tanimoto

try:  # compiled kernel is optional
    from molforge.fingerprint import _kernel
except ImportError:  # pragma: no cover - depends on build environment
    _kernel = None


def compiled_available() -> bool:
    return _kernel is not None


def _resolve_backend(backend: str | None) -> str:
    if backend in (None, "auto"):
        if _kernel is not None and not os.environ.get("MOLFORGE_NO_EXT"):
            return "compiled"
        return "pure"
    if backend not in ("pure", "compiled"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "compiled" and _kernel is None:
        raise RuntimeError("compiled kernel not built")
    return backend


def pairwise_similar(
    pool: list[Fingerprint],
    threshold: float,
    backend: str | None = None,
) -> list[tuple[int, int, float]]:
    """All (i, j, similarity) with i < j and similarity > threshold,
    sorted by (i, j)."""
    if not 0.0 <= threshold < 1.0:
        raise InvalidThreshold(
            f"threshold must be in [0, 1), got {threshold}"
        )
    if len(pool) < 2:
        return []
    width = pool[0].width
    for fp in pool:
        if fp.width != width:
            raise WidthMismatch(f"widths differ: {width} vs {fp.width}")

    # Empty fingerprints: pairwise similarity is 1.0 by definition, which
    # always clears a sub-1 threshold, but the popcount bound cannot rank
    # them. Handle the group directly.
    empties = [i for i, fp in enumerate(pool) if fp.popcount == 0]
    out: list[tuple[int, int, float]] = [
        (empties[x], empties[y], 1.0)
        for x in range(len(empties))
        for y in range(x + 1, len(empties))
    ]

    order = sorted(
        (i for i, fp in enumerate(pool) if fp.popcount > 0),
        key=lambda i: (pool[i].popcount, i),
    )
    which = _resolve_backend(backend)
    if which == "compiled":
        out.extend(_run_compiled(pool, order, threshold))
    else:
        out.extend(_run_pure(pool, order, threshold))
    out.sort(key=lambda t: (t[0], t[1]))
    return out


def _run_pure(pool, order, threshold):
    out = []
    n = len(order)
    for a in range(n):
        i = order[a]
        pa = pool[i].popcount
        for b in range(a + 1, n):
            j = order[b]
            pb = pool[j].popcount
            if pa / pb <= threshold:
                break
            sim = tanimoto(pool[i], pool[j])
            if sim > threshold:
                lo, hi = (i, j) if i < j else (j, i)
                out.append((lo, hi, sim))
    return out


def _run_compiled(pool, order, threshold):
    import numpy as np

    n = len(pool)
    width = pool[0].width
    nwords = (width + 63) // 64
    words = np.zeros((n, nwords), dtype=np.uint64)
    mask = (1 << 64) - 1
    for i, fp in enumerate(pool):
        bits, w = fp.bits, 0
        while bits:
            words[i, w] = bits & mask
            bits >>= 64
            w += 1
    pops = np.array([fp.popcount for fp in pool], dtype=np.int64)
    order_arr = np.array(order, dtype=np.int64)
    return _kernel.similar_pairs(words, pops, order_arr, threshold)
