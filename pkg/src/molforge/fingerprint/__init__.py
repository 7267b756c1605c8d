"""Morgan-style circular fingerprints and Tanimoto similarity.

Atom environments are hashed with 64-bit FNV-1a over a fixed byte
encoding and folded modulo the fingerprint width. Bit values are stable
across runs and platforms but intentionally NOT compatible with any
external toolkit's Morgan bits; similarity numbers are therefore
internally consistent approximations.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

from molforge.errors import WidthMismatch, ZeroWidth
from molforge.molgraph.canon import initial_invariants
from molforge.molgraph.types import Molecule

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = (1 << 64) - 1


def fnv1a64(data: bytes) -> int:
    h = _FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * _FNV_PRIME) & _MASK64
    return h


@dataclass(frozen=True, slots=True)
class Fingerprint:
    width: int
    bits: int
    popcount: int = -1

    def __post_init__(self) -> None:
        if self.width <= 0:
            raise ZeroWidth(f"fingerprint width must be positive, got {self.width}")
        object.__setattr__(self, "popcount", self.bits.bit_count())

    @classmethod
    def from_indices(cls, width: int, indices) -> Fingerprint:
        bits = 0
        for idx in indices:
            bits |= 1 << idx
        return cls(width, bits)

    def indices(self) -> list[int]:
        out, bits, base = [], self.bits, 0
        while bits:
            chunk = bits & 0xFFFFFFFFFFFFFFFF
            b = 0
            while chunk:
                if chunk & 1:
                    out.append(base + b)
                chunk >>= 1
                b += 1
            bits >>= 64
            base += 64
        return out

    def to_bytes(self) -> bytes:
        return self.bits.to_bytes((self.width + 7) // 8, "little")

    @classmethod
    def from_bytes(cls, width: int, raw: bytes) -> Fingerprint:
        return cls(width, int.from_bytes(raw, "little"))


def _hash_invariant(inv: tuple) -> int:
    return fnv1a64(struct.pack("<7q", *inv))


def _hash_environment(center: int, neighborhood: list[tuple[int, int]]) -> int:
    parts = [struct.pack("<QB", center, len(neighborhood))]
    for order, nbr in neighborhood:
        parts.append(struct.pack("<BQ", order, nbr))
    return fnv1a64(b"".join(parts))


def morgan(mol: Molecule, radius: int = 2, width: int = 2048) -> Fingerprint:
    """Circular fingerprint: one folded bit per (atom, radius level)
    environment hash, radius 0 through `radius` inclusive."""
    if width <= 0:
        raise ZeroWidth(f"fingerprint width must be positive, got {width}")
    if radius < 0:
        raise ValueError("radius must be non-negative")
    codes: list[list[tuple[int, int]]] = [[] for _ in mol.atoms]
    for bond in mol.bonds:
        codes[bond.a].append((bond.order, bond.b))
        codes[bond.b].append((bond.order, bond.a))
    current = [_hash_invariant(inv) for inv in initial_invariants(mol)]
    bits = 0
    for h in current:
        bits |= 1 << (h % width)
    for _ in range(radius):
        nxt = []
        for i in range(len(mol.atoms)):
            env = sorted((order, current[j]) for order, j in codes[i])
            nxt.append(_hash_environment(current[i], env))
        current = nxt
        for h in current:
            bits |= 1 << (h % width)
    return Fingerprint(width, bits)


def tanimoto(a: Fingerprint, b: Fingerprint) -> float:
    """|A n B| / |A u B|; 1.0 when both fingerprints are empty."""
    if a.width != b.width:
        raise WidthMismatch(f"widths differ: {a.width} vs {b.width}")
    union = (a.bits | b.bits).bit_count()
    if union == 0:
        return 1.0
    return (a.bits & b.bits).bit_count() / union


from molforge.fingerprint.cache import read_cache, write_cache  # noqa: E402
from molforge.fingerprint.pairs import pairwise_similar  # noqa: E402

__all__ = [
    "Fingerprint",
    "fnv1a64",
    "morgan",
    "pairwise_similar",
    "read_cache",
    "tanimoto",
    "write_cache",
]
