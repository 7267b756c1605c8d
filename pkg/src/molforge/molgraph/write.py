"""Non-canonical SMILES emission and atom renumbering.

emit_smiles writes the molecule back out following input atom order,
keeping stereo tokens; together with renumber it lets tests re-express the
same graph under arbitrary atom orderings.
"""

from __future__ import annotations

from molforge.molgraph.canon import emit_component
from molforge.molgraph.types import Atom, Bond, Molecule, total_hydrogens


def emit_smiles(mol: Molecule, include_stereo: bool = True) -> str:
    """Write the molecule as SMILES in input atom order (not canonical)."""
    if not mol.atoms:
        return ""
    adj = mol.adjacency()
    hs = total_hydrogens(mol)
    pieces = []
    for comp in mol.components():  # sorted indices; components by first atom
        lidx = {a: k for k, a in enumerate(comp)}
        lnbrs = [[(lidx[v], bond) for v, bond in adj[a]] for a in comp]
        lranks = list(range(len(comp)))
        pieces.append(
            emit_component(mol, comp, lnbrs, lranks, hs, include_stereo)
        )
    return ".".join(pieces)


def renumber(mol: Molecule, order: list[int]) -> Molecule:
    """Rebuild the molecule with atoms permuted so new index k holds old
    atom order[k]. Bonds are remapped; source_text is dropped."""
    n = len(mol.atoms)
    if sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of atom indices")
    inverse = [0] * n
    for new, old in enumerate(order):
        inverse[old] = new
    atoms = [
        Atom(
            atomic_number=a.atomic_number,
            aromatic=a.aromatic,
            formal_charge=a.formal_charge,
            explicit_h=a.explicit_h,
            isotope=a.isotope,
            bracket=a.bracket,
            chirality=a.chirality,
        )
        for a in (mol.atoms[old] for old in order)
    ]
    bonds = [
        Bond(inverse[b.a], inverse[b.b], b.order, b.stereo_mark)
        for b in mol.bonds
    ]
    return Molecule(atoms, bonds, source_text="")
