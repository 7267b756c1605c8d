"""Element symbol table and valence data.

The symbol table covers H through Og. Valence checking uses the standard
organic valence table; charged atoms are validated against the row of the
isoelectronic neutral element (atomic number minus charge), which covers
ammonium, borohydride, sulfonium and friends with one rule. Elements
without a table row are unconstrained.
"""

from __future__ import annotations

_SYMBOLS = (
    "H He Li Be B C N O F Ne Na Mg Al Si P S Cl Ar K Ca Sc Ti V Cr Mn Fe "
    "Co Ni Cu Zn Ga Ge As Se Br Kr Rb Sr Y Zr Nb Mo Tc Ru Rh Pd Ag Cd In "
    "Sn Sb Te I Xe Cs Ba La Ce Pr Nd Pm Sm Eu Gd Tb Dy Ho Er Tm Yb Lu Hf "
    "Ta W Re Os Ir Pt Au Hg Tl Pb Bi Po At Rn Fr Ra Ac Th Pa U Np Pu Am "
    "Cm Bk Cf Es Fm Md No Lr Rf Db Sg Bh Hs Mt Ds Rg Cn Nh Fl Mc Lv Ts Og"
).split()

ATOMIC_NUMBER: dict[str, int] = {s: i + 1 for i, s in enumerate(_SYMBOLS)}
SYMBOL: dict[int, str] = {i + 1: s for i, s in enumerate(_SYMBOLS)}

# Bare (unbracketed) atom tokens: the SMILES organic subset.
ORGANIC_SUBSET = {"B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I"}

# Lowercase aromatic tokens allowed outside brackets.
AROMATIC_ORGANIC = {"b", "c", "n", "o", "p", "s"}

# Elements that may carry the aromatic flag (bracket forms included).
AROMATIC_ELEMENTS = {5, 6, 7, 8, 15, 16, 33, 34}  # B C N O P S As Se

# Allowed total valences for neutral atoms, keyed by atomic number.
VALENCES: dict[int, tuple[int, ...]] = {
    1: (1,),          # H
    5: (3,),          # B
    6: (4,),          # C
    7: (3, 5),        # N
    8: (2,),          # O
    9: (1,),          # F
    15: (3, 5),       # P
    16: (2, 4, 6),    # S
    17: (1,),         # Cl
    35: (1,),         # Br
    53: (1,),         # I
}

# pi-system contribution used when inferring implicit hydrogens on bare
# aromatic atoms: c/n/b/p donate one electron to the ring (pyridine-type
# nitrogen), o/s donate a lone pair and contribute nothing to valence.
# Pyrrole-type nitrogen must therefore be written [nH].
AROMATIC_PI: dict[int, int] = {5: 1, 6: 1, 7: 1, 15: 1, 8: 0, 16: 0, 33: 1, 34: 0}


def allowed_valences(atomic_number: int, charge: int) -> tuple[int, ...] | None:
    """Allowed total valences for an atom, or None when unconstrained.

    Charged atoms use the isoelectronic neutral element's row: N+ checks
    like carbon, O- like fluorine, B- like carbon. A shift landing outside
    the table (metals, noble gases, bare protons) means no constraint.
    """
    return VALENCES.get(atomic_number - charge)
