"""Molecular graph types shared across the package.

A Molecule is a plain atom/bond list parsed from SMILES. Hydrogen counts
are not stored on non-bracket atoms; they are inferred on demand with the
same rule the emitter uses, so parse -> emit round-trips are stable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from molforge.elements import AROMATIC_PI, VALENCES

BOND_SINGLE = 1
BOND_DOUBLE = 2
BOND_TRIPLE = 3
BOND_AROMATIC = 4

BOND_CHAR = {BOND_SINGLE: "-", BOND_DOUBLE: "=", BOND_TRIPLE: "#", BOND_AROMATIC: ":"}


@dataclass(slots=True)
class Atom:
    atomic_number: int
    aromatic: bool = False
    formal_charge: int = 0
    explicit_h: int | None = None
    isotope: int | None = None
    bracket: bool = False
    # Opaque chirality token from input ('@' or '@@'); preserved for
    # round-tripping, never canonicalized.
    chirality: str = ""


@dataclass(slots=True)
class Bond:
    a: int
    b: int
    order: int
    # Directional token ('/' or '\\') as written between atom a and atom b;
    # preserved for round-tripping, never canonicalized.
    stereo_mark: str = ""

    def other(self, idx: int) -> int:
        return self.b if idx == self.a else self.a

    def sigma(self) -> int:
        """Contribution to an atom's bond-order sum (aromatic counts 1)."""
        return 1 if self.order == BOND_AROMATIC else self.order


@dataclass(slots=True)
class Molecule:
    atoms: list[Atom] = field(default_factory=list)
    bonds: list[Bond] = field(default_factory=list)
    source_text: str = ""

    def adjacency(self) -> list[list[tuple[int, Bond]]]:
        adj: list[list[tuple[int, Bond]]] = [[] for _ in self.atoms]
        for bond in self.bonds:
            adj[bond.a].append((bond.b, bond))
            adj[bond.b].append((bond.a, bond))
        return adj

    def components(self) -> list[list[int]]:
        """Connected components as sorted atom-index lists."""
        adj = self.adjacency()
        seen = [False] * len(self.atoms)
        comps: list[list[int]] = []
        for start in range(len(self.atoms)):
            if seen[start]:
                continue
            stack, comp = [start], []
            seen[start] = True
            while stack:
                u = stack.pop()
                comp.append(u)
                for v, _ in adj[u]:
                    if not seen[v]:
                        seen[v] = True
                        stack.append(v)
            comps.append(sorted(comp))
        return comps


def infer_implicit_h(atomic_number: int, aromatic: bool, sigma: int) -> int:
    """Implicit hydrogens for a bare organic-subset atom.

    Uses the lowest allowed valence that accommodates the bond-order sum;
    aromatic atoms first add their pi contribution (1 for c/n/b/p, 0 for
    o/s). Over-bonded atoms get 0 and are flagged later by validation.
    """
    load = sigma + (AROMATIC_PI.get(atomic_number, 0) if aromatic else 0)
    for valence in VALENCES.get(atomic_number, ()):
        if valence >= load:
            return valence - load
    return 0


def total_hydrogens(mol: Molecule) -> list[int]:
    """Total attached hydrogens per atom (explicit for bracket atoms,
    inferred for bare ones)."""
    sigma = [0] * len(mol.atoms)
    for bond in mol.bonds:
        s = bond.sigma()
        sigma[bond.a] += s
        sigma[bond.b] += s
    out = []
    for i, atom in enumerate(mol.atoms):
        if atom.bracket:
            out.append(atom.explicit_h or 0)
        else:
            out.append(infer_implicit_h(atom.atomic_number, atom.aromatic, sigma[i]))
    return out


def bond_order_sums(mol: Molecule) -> list[int]:
    sigma = [0] * len(mol.atoms)
    for bond in mol.bonds:
        s = bond.sigma()
        sigma[bond.a] += s
        sigma[bond.b] += s
    return sigma


def ring_membership(mol: Molecule) -> list[bool]:
    """True for atoms lying on a cycle.

    A bond is a ring bond iff it is not a bridge; bridges are found with an
    iterative low-link DFS, then endpoints of all non-bridge bonds are
    marked. Depends only on the graph, never on input atom order.
    """
    n = len(mol.atoms)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for bi, bond in enumerate(mol.bonds):
        adj[bond.a].append((bond.b, bi))
        adj[bond.b].append((bond.a, bi))
    disc = [-1] * n
    low = [0] * n
    is_bridge = [False] * len(mol.bonds)
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            u, parent_bi, neighbors = stack[-1]
            descended = False
            for v, bi in neighbors:
                if bi == parent_bi:
                    continue
                if disc[v] == -1:
                    disc[v] = low[v] = timer
                    timer += 1
                    stack.append((v, bi, iter(adj[v])))
                    descended = True
                    break
                low[u] = min(low[u], disc[v])
            if not descended:
                stack.pop()
                if parent_bi != -1:
                    p = mol.bonds[parent_bi].other(u)
                    low[p] = min(low[p], low[u])
                    if low[u] > disc[p]:
                        is_bridge[parent_bi] = True
    in_ring = [False] * n
    for bi, bond in enumerate(mol.bonds):
        if not is_bridge[bi]:
            in_ring[bond.a] = in_ring[bond.b] = True
    return in_ring
