"""Canonical SMILES via iterative invariant refinement.

Atoms start from the invariant tuple (atomic number, degree, charge, total
hydrogens, aromatic flag, ring flag, isotope) and are refined by sorted
neighbor (bond order, rank) multisets until the partition stabilizes.
Remaining ties are resolved exhaustively: each member of the lowest tied cell
is promoted in turn, refinement re-runs, and the recursion bottoms out in
a discrete ordering; one string is emitted per discrete ordering and the
lexicographically smallest wins. Components canonicalize independently
and join sorted with '.'.

Canonical output drops stereo tokens (documented limitation); round-trip
emission with stereo lives in write.py and shares the emitter here.
"""

from __future__ import annotations

import heapq

from molforge.elements import AROMATIC_ORGANIC, ORGANIC_SUBSET, SYMBOL
from molforge.molgraph.types import (
    BOND_AROMATIC,
    BOND_CHAR,
    BOND_SINGLE,
    Bond,
    Molecule,
    infer_implicit_h,
    ring_membership,
    total_hydrogens,
)

_FLIP_MARK = {"/": "\\", "\\": "/"}


def initial_invariants(mol: Molecule) -> list[tuple]:
    hs = total_hydrogens(mol)
    rings = ring_membership(mol)
    degree = [0] * len(mol.atoms)
    for bond in mol.bonds:
        degree[bond.a] += 1
        degree[bond.b] += 1
    return [
        (
            atom.atomic_number,
            degree[i],
            atom.formal_charge,
            hs[i],
            1 if atom.aromatic else 0,
            1 if rings[i] else 0,
            atom.isotope or 0,
        )
        for i, atom in enumerate(mol.atoms)
    ]


def _densify(keys: list) -> list[int]:
    lookup = {k: r for r, k in enumerate(sorted(set(keys)))}
    return [lookup[k] for k in keys]


def _refine(ranks: list[int], codes: list[list[tuple[int, int]]]) -> list[int]:
    """Refine dense ranks by sorted neighbor (order, rank) multisets until
    the partition is stable."""
    n = len(ranks)
    while True:
        keys = [
            (ranks[i], tuple(sorted((oc, ranks[j]) for oc, j in codes[i])))
            for i in range(n)
        ]
        new = _densify(keys)
        if new == ranks:
            return ranks
        ranks = new


def canonical_ranks(mol: Molecule) -> list[int]:
    """Stable (possibly tied) canonical ranks over the whole molecule."""
    codes: list[list[tuple[int, int]]] = [[] for _ in mol.atoms]
    for bond in mol.bonds:
        codes[bond.a].append((bond.order, bond.b))
        codes[bond.b].append((bond.order, bond.a))
    return _refine(_densify(initial_invariants(mol)), codes)


def canonical_smiles(mol: Molecule) -> str:
    """Canonical SMILES string for the molecule.

    Depends only on the molecular graph, not on input atom order;
    idempotent under re-parsing.
    """
    if not mol.atoms:
        return ""
    adj = mol.adjacency()
    hs = total_hydrogens(mol)
    granks = canonical_ranks(mol)
    pieces = [
        _component_canonical(mol, comp, adj, granks, hs)
        for comp in mol.components()
    ]
    return ".".join(sorted(pieces))


# --- component-level search ---------------------------------------------


def _component_canonical(mol, comp, adj, granks, hs) -> str:
    lidx = {a: k for k, a in enumerate(comp)}
    lnbrs: list[list[tuple[int, Bond]]] = [
        [(lidx[v], bond) for v, bond in adj[a]] for a in comp
    ]
    codes = [[(bond.order, v) for v, bond in row] for row in lnbrs]
    lranks = _refine(_densify([granks[a] for a in comp]), codes)
    best: str | None = None
    for leaf in _discrete_orderings(lranks, codes):
        text = emit_component(mol, comp, lnbrs, leaf, hs, include_stereo=False)
        if best is None or text < best:
            best = text
    assert best is not None
    return best


def _discrete_orderings(lranks: list[int], codes):
    """Yield all discrete rank assignments reachable by promoting members
    of the lowest tied cell, refining, and recursing."""
    counts: dict[int, int] = {}
    for r in lranks:
        counts[r] = counts.get(r, 0) + 1
    tied = sorted(r for r, c in counts.items() if c > 1)
    if not tied:
        yield lranks
        return
    cell = tied[0]
    members = [k for k, r in enumerate(lranks) if r == cell]
    for target in members:
        promoted = [
            2 * r if (k == target or r != cell) else 2 * r + 1
            for k, r in enumerate(lranks)
        ]
        yield from _discrete_orderings(_refine(_densify(promoted), codes), codes)


# --- emission (shared with write.py) --------------------------------------


def emit_component(
    mol: Molecule,
    comp: list[int],
    lnbrs: list[list[tuple[int, Bond]]],
    lranks: list[int],
    hs: list[int],
    include_stereo: bool,
) -> str:
    """Emit one connected component as SMILES, traversing in rank order
    from the minimum-rank atom. lranks must be discrete within comp."""
    nloc = len(comp)
    root = min(range(nloc), key=lambda k: lranks[k])
    visited = [False] * nloc
    children: list[list[tuple[Bond, int]]] = [[] for _ in range(nloc)]
    ring_edges: list[tuple[int, int, Bond]] = []  # (opener, closer, bond)
    seen_bonds: set[int] = set()
    preorder: list[int] = []

    def dfs(u: int, enter: Bond | None) -> None:
        visited[u] = True
        preorder.append(u)
        for v, bond in sorted(lnbrs[u], key=lambda t: lranks[t[0]]):
            if bond is enter:
                continue
            if visited[v]:
                if id(bond) not in seen_bonds:
                    seen_bonds.add(id(bond))
                    ring_edges.append((v, u, bond))
            else:
                seen_bonds.add(id(bond))
                children[u].append((bond, v))
                dfs(v, bond)

    dfs(root, None)

    pos = {u: p for p, u in enumerate(preorder)}
    opens_at: dict[int, list[int]] = {}
    closes_at: dict[int, list[int]] = {}
    for ei, (opener, closer, _) in enumerate(ring_edges):
        opens_at.setdefault(opener, []).append(ei)
        closes_at.setdefault(closer, []).append(ei)
    for opener, eis in opens_at.items():
        eis.sort(key=lambda ei: pos[ring_edges[ei][1]])

    digit_of: dict[int, int] = {}
    free: list[int] = list(range(1, 100))
    heapq.heapify(free)
    for u in preorder:
        for ei in closes_at.get(u, ()):
            heapq.heappush(free, digit_of[ei])
        for ei in opens_at.get(u, ()):
            if not free:
                raise RuntimeError("more than 99 concurrently open rings")
            digit_of[ei] = heapq.heappop(free)

    def ring_token(digit: int) -> str:
        return str(digit) if digit < 10 else f"%{digit:02d}"

    def bond_str(bond: Bond, u: int, v: int) -> str:
        au = mol.atoms[comp[u]]
        av = mol.atoms[comp[v]]
        if bond.order == BOND_SINGLE:
            if include_stereo and bond.stereo_mark:
                forward = bond.a == comp[u]
                return bond.stereo_mark if forward else _FLIP_MARK[bond.stereo_mark]
            return "-" if (au.aromatic and av.aromatic) else ""
        if bond.order == BOND_AROMATIC:
            return "" if (au.aromatic and av.aromatic) else ":"
        return BOND_CHAR[bond.order]

    def atom_token(u: int) -> str:
        atom = mol.atoms[comp[u]]
        h = hs[comp[u]]
        z = atom.atomic_number
        symbol = SYMBOL[z]
        chirality = atom.chirality if include_stereo else ""
        if atom.isotope is None and atom.formal_charge == 0 and not chirality:
            sigma = sum(bond.sigma() for _, bond in lnbrs[u])
            if atom.aromatic:
                token, eligible = symbol.lower(), symbol.lower() in AROMATIC_ORGANIC
            else:
                token, eligible = symbol, symbol in ORGANIC_SUBSET
            if eligible and infer_implicit_h(z, atom.aromatic, sigma) == h:
                return token
        parts = ["["]
        if atom.isotope is not None:
            parts.append(str(atom.isotope))
        parts.append(symbol.lower() if atom.aromatic else symbol)
        parts.append(chirality)
        if h == 1:
            parts.append("H")
        elif h > 1:
            parts.append(f"H{h}")
        q = atom.formal_charge
        if q == 1:
            parts.append("+")
        elif q == -1:
            parts.append("-")
        elif q > 1:
            parts.append(f"+{q}")
        elif q < -1:
            parts.append(f"-{-q}")
        parts.append("]")
        return "".join(parts)

    def write(u: int) -> str:
        parts = [atom_token(u)]
        for ei in sorted(closes_at.get(u, ()), key=lambda ei: digit_of[ei]):
            opener, closer, bond = ring_edges[ei]
            parts.append(bond_str(bond, opener, closer) + ring_token(digit_of[ei]))
        for ei in opens_at.get(u, ()):
            parts.append(ring_token(digit_of[ei]))
        kids = children[u]
        for bond, v in kids[:-1]:
            parts.append("(" + bond_str(bond, u, v) + write(v) + ")")
        if kids:
            bond, v = kids[-1]
            parts.append(bond_str(bond, u, v) + write(v))
        return "".join(parts)

    return write(root)
