"""SMILES parser.

Covers the working subset this pipeline needs: organic-subset atoms,
bracket atoms with isotope/chirality/H-count/charge/atom-class, branches,
ring closures including %nn, '.'-separated components, aromatic lowercase
notation, and directional bond tokens. Chirality and bond direction are
preserved as opaque tokens. Aromaticity is taken from the notation; no
perception or kekulization happens here.

The parser never raises anything but ParseError subclasses on bad input,
no matter how mangled the bytes are.
"""

from __future__ import annotations

from molforge.elements import (
    AROMATIC_ELEMENTS,
    AROMATIC_ORGANIC,
    ATOMIC_NUMBER,
    ORGANIC_SUBSET,
)
from molforge.errors import (
    ConflictingRingBond,
    DanglingBondSymbol,
    EmptyInput,
    MalformedBracketAtom,
    MalformedRingClosure,
    UnbalancedParenthesis,
    UnclosedRing,
    UnknownElement,
)
from molforge.molgraph.types import (
    BOND_AROMATIC,
    BOND_SINGLE,
    Atom,
    Bond,
    Molecule,
)

_BOND_TOKENS = {"-": 1, "=": 2, "#": 3, ":": 4, "/": 1, "\\": 1}
_CHIRALITY_CLASSES = ("TH", "AL", "SP", "TB", "OH")


def parse(text: str) -> Molecule:
    """Parse a SMILES string into a Molecule."""
    if text is None:
        raise EmptyInput("empty SMILES input")
    s = text.strip()
    if not s:
        raise EmptyInput("empty SMILES input", text)

    atoms: list[Atom] = []
    bonds: list[Bond] = []
    bonded: set[tuple[int, int]] = set()
    prev: int | None = None
    # (attach atom, atom count at open) per '('.
    stack: list[tuple[int, int]] = []
    # pending explicit bond token: (order, stereo mark)
    pending: tuple[int, str] | None = None
    # open ring closures: digit -> (atom index, order or None, stereo mark)
    ring: dict[int, tuple[int, int | None, str]] = {}
    fresh_component = True  # true at start and right after '.'

    def add_bond(a: int, b: int, order: int, mark: str, pos: int) -> None:
        if a == b:
            raise ConflictingRingBond("ring closure bonds an atom to itself", s, pos)
        key = (min(a, b), max(a, b))
        if key in bonded:
            raise ConflictingRingBond("duplicate bond between the same atoms", s, pos)
        bonded.add(key)
        bonds.append(Bond(a, b, order, mark))

    def add_atom(atom: Atom, pos: int) -> None:
        nonlocal prev, pending, fresh_component
        idx = len(atoms)
        atoms.append(atom)
        if prev is not None:
            if pending is not None:
                order, mark = pending
            else:
                order = (
                    BOND_AROMATIC
                    if atoms[prev].aromatic and atom.aromatic
                    else BOND_SINGLE
                )
                mark = ""
            add_bond(prev, idx, order, mark, pos)
        prev = idx
        pending = None
        fresh_component = False

    def close_ring(digit: int, pos: int) -> None:
        nonlocal pending
        if prev is None:
            raise UnclosedRing("ring closure digit before any atom", s, pos)
        order, mark = pending if pending is not None else (None, "")
        pending = None
        if digit in ring:
            other, other_order, other_mark = ring.pop(digit)
            if order is not None and other_order is not None and order != other_order:
                raise ConflictingRingBond(
                    f"ring closure {digit} has conflicting bond orders", s, pos
                )
            final = order if order is not None else other_order
            if final is None:
                final = (
                    BOND_AROMATIC
                    if atoms[other].aromatic and atoms[prev].aromatic
                    else BOND_SINGLE
                )
            add_bond(other, prev, final, other_mark or mark, pos)
        else:
            ring[digit] = (prev, order, mark)

    i = 0
    n = len(s)
    while i < n:
        c = s[i]
        if c in _BOND_TOKENS:
            if pending is not None:
                raise DanglingBondSymbol("two bond symbols in a row", s, i)
            if prev is None:
                raise DanglingBondSymbol("bond symbol with no preceding atom", s, i)
            pending = (_BOND_TOKENS[c], c if c in "/\\" else "")
            i += 1
        elif c == "(":
            if prev is None:
                raise UnbalancedParenthesis("branch with no preceding atom", s, i)
            if pending is not None:
                raise DanglingBondSymbol("bond symbol before '('", s, i)
            stack.append((prev, len(atoms)))
            i += 1
        elif c == ")":
            if pending is not None:
                raise DanglingBondSymbol("bond symbol before ')'", s, i)
            if not stack:
                raise UnbalancedParenthesis("unmatched ')'", s, i)
            attach, count_at_open = stack.pop()
            if len(atoms) == count_at_open:
                raise UnbalancedParenthesis("empty branch", s, i)
            prev = attach
            i += 1
        elif c == ".":
            if pending is not None:
                raise DanglingBondSymbol("bond symbol before '.'", s, i)
            if stack:
                raise UnbalancedParenthesis("'.' inside a branch", s, i)
            if fresh_component:
                raise EmptyInput("empty molecule component", s, i)
            prev = None
            fresh_component = True
            i += 1
        elif c.isdigit():
            close_ring(int(c), i)
            i += 1
        elif c == "%":
            if len(s) < i + 3 or not s[i + 1 : i + 3].isdigit():
                raise MalformedRingClosure("'%' needs two digits", s, i)
            close_ring(int(s[i + 1 : i + 3]), i)
            i += 3
        elif c == "[":
            atom, i = _parse_bracket(s, i)
            add_atom(atom, i)
        else:
            atom, i = _parse_bare(s, i)
            add_atom(atom, i)

    if pending is not None:
        raise DanglingBondSymbol("trailing bond symbol", s, n - 1)
    if stack:
        raise UnbalancedParenthesis("unclosed '('", s, n - 1)
    if ring:
        raise UnclosedRing(
            f"unmatched ring closure digit(s): {sorted(ring)}", s, n - 1
        )
    if fresh_component:
        raise EmptyInput("empty molecule component", s, n - 1)
    return Molecule(atoms, bonds, source_text=s)


def _parse_bare(s: str, i: int) -> tuple[Atom, int]:
    """Unbracketed atom token at position i."""
    two = s[i : i + 2]
    if two in ("Cl", "Br"):
        return Atom(ATOMIC_NUMBER[two]), i + 2
    c = s[i]
    if c in ORGANIC_SUBSET:
        return Atom(ATOMIC_NUMBER[c]), i + 1
    if c in AROMATIC_ORGANIC:
        return Atom(ATOMIC_NUMBER[c.upper()], aromatic=True), i + 1
    raise UnknownElement(f"unexpected character {c!r}", s, i)


def _parse_bracket(s: str, i: int) -> tuple[Atom, int]:
    """Bracket atom starting at the '[' at position i; returns the atom and
    the index just past ']'."""
    start = i
    i += 1
    end = s.find("]", i)
    if end == -1:
        raise MalformedBracketAtom("unclosed bracket atom", s, start)

    isotope = None
    j = i
    while j < end and s[j].isdigit():
        j += 1
    if j > i:
        isotope = int(s[i:j])
        if isotope == 0:
            raise MalformedBracketAtom("isotope 0 is not a thing", s, i)
    i = j
    if i >= end:
        raise MalformedBracketAtom("bracket atom with no element", s, start)

    aromatic = False
    two = s[i : i + 2]
    if two in ("se", "as"):
        symbol = two.capitalize()
        aromatic = True
        i += 2
    elif s[i].islower():
        if s[i] not in AROMATIC_ORGANIC:
            raise UnknownElement(f"unknown aromatic element {s[i]!r}", s, i)
        symbol = s[i].upper()
        aromatic = True
        i += 1
    else:
        if i + 1 < end and s[i + 1].islower() and two in ATOMIC_NUMBER:
            symbol = two
            i += 2
        elif s[i] in ATOMIC_NUMBER:
            symbol = s[i]
            i += 1
        else:
            raise UnknownElement(f"unknown element {two!r}", s, i)
    z = ATOMIC_NUMBER[symbol]
    if aromatic and z not in AROMATIC_ELEMENTS:
        raise UnknownElement(f"element {symbol} cannot be aromatic", s, i)

    chirality = ""
    if i < end and s[i] == "@":
        chirality = "@"
        i += 1
        if i < end and s[i] == "@":
            chirality = "@@"
            i += 1
        if s[i : i + 2] in _CHIRALITY_CLASSES:
            raise MalformedBracketAtom(
                f"unsupported chirality class {s[i:i+2]!r}", s, i
            )

    explicit_h = 0
    if i < end and s[i] == "H":
        i += 1
        j = i
        while j < end and s[j].isdigit():
            j += 1
        explicit_h = int(s[i:j]) if j > i else 1
        i = j

    charge = 0
    if i < end and s[i] in "+-":
        sign = 1 if s[i] == "+" else -1
        symbol_char = s[i]
        i += 1
        j = i
        while j < end and s[j].isdigit():
            j += 1
        if j > i:
            charge = sign * int(s[i:j])
            i = j
        else:
            charge = sign
            while i < end and s[i] == symbol_char:
                charge += sign
                i += 1

    if i < end and s[i] == ":":
        i += 1
        j = i
        while j < end and s[j].isdigit():
            j += 1
        if j == i:
            raise MalformedBracketAtom("atom class ':' needs digits", s, i)
        i = j  # atom-map class parsed and dropped

    if i != end:
        raise MalformedBracketAtom(
            f"unexpected {s[i]!r} in bracket atom", s, i
        )
    return (
        Atom(
            atomic_number=z,
            aromatic=aromatic,
            formal_charge=charge,
            explicit_h=explicit_h,
            isotope=isotope,
            bracket=True,
            chirality=chirality,
        ),
        end + 1,
    )
