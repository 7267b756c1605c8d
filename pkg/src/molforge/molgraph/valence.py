"""Chemical validity checking.

An atom is valid when its bond-order sum plus hydrogens fits an allowed
valence for its (charge-shifted) element. Aromatic atoms may additionally
count one pi electron toward valence, which accepts benzene, pyridine,
furan, thiophene and pyrrole alike without a kekulization engine.
Verdicts carry human-readable violations instead of raising.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from molforge.elements import SYMBOL, allowed_valences
from molforge.molgraph.types import Molecule, bond_order_sums, total_hydrogens


@dataclass(slots=True)
class ValidityVerdict:
    valid: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid


def validate(mol: Molecule) -> ValidityVerdict:
    """Check every atom against the valence table.

    Charged atoms validate against the isoelectronic neutral element;
    elements outside the table are unconstrained.
    """
    sigma = bond_order_sums(mol)
    hydro = total_hydrogens(mol)
    violations: list[str] = []
    for i, atom in enumerate(mol.atoms):
        allowed = allowed_valences(atom.atomic_number, atom.formal_charge)
        if allowed is None:
            continue
        base = sigma[i] + hydro[i]
        candidates = (base, base + 1) if atom.aromatic else (base,)
        if not any(c in allowed for c in candidates):
            symbol = SYMBOL[atom.atomic_number]
            charge = (
                f"{atom.formal_charge:+d}" if atom.formal_charge else ""
            )
            violations.append(
                f"atom {i} ({symbol}{charge}): valence {base} not in "
                f"{'/'.join(map(str, allowed))}"
            )
    return ValidityVerdict(valid=not violations, violations=violations)
