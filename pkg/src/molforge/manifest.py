"""Output provenance stamps.

Every file the pipeline writes carries a small manifest: tool version,
seed, and a hash of the effective configuration. Deliberately no
timestamps or hostnames, so identical runs produce identical bytes.
"""

from __future__ import annotations

import hashlib
import json

from molforge import __version__


def config_hash(config: dict | None) -> str | None:
    if config is None:
        return None
    blob = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]


def build_manifest(
    *, seed: int | None = None, config: dict | None = None, **extra
) -> dict:
    out: dict = {"tool": "molforge", "version": __version__}
    if seed is not None:
        out["seed"] = seed
    digest = config_hash(config)
    if digest is not None:
        out["config"] = dict(config)
        out["config_hash"] = digest
    out.update(extra)
    return out
