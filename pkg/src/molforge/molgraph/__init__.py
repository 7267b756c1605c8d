"""SMILES parsing, validity checking, and canonicalization."""

from molforge.molgraph.canon import canonical_ranks, canonical_smiles
from molforge.molgraph.parse import parse
from molforge.molgraph.types import (
    BOND_AROMATIC,
    BOND_DOUBLE,
    BOND_SINGLE,
    BOND_TRIPLE,
    Atom,
    Bond,
    Molecule,
    total_hydrogens,
)
from molforge.molgraph.valence import ValidityVerdict, validate
from molforge.molgraph.write import emit_smiles, renumber


def canonical(text: str) -> str:
    """Parse then canonicalize in one step."""
    return canonical_smiles(parse(text))


__all__ = [
    "Atom",
    "Bond",
    "Molecule",
    "BOND_SINGLE",
    "BOND_DOUBLE",
    "BOND_TRIPLE",
    "BOND_AROMATIC",
    "ValidityVerdict",
    "canonical",
    "canonical_ranks",
    "canonical_smiles",
    "emit_smiles",
    "parse",
    "renumber",
    "total_hydrogens",
    "validate",
]
