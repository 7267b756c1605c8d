"""Exception hierarchy.

Every domain error raised by this package derives from MolforgeError so
the CLI can map them to exit code 1 (usage errors handled by argparse are
exit code 2). Parse errors carry the offending position when known.
"""

from __future__ import annotations


class MolforgeError(Exception):
    """Base class for all domain errors."""


# --- SMILES parsing ---------------------------------------------------------

class ParseError(MolforgeError):
    """Malformed SMILES input."""

    def __init__(self, message: str, text: str = "", pos: int | None = None):
        self.text = text
        self.pos = pos
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


class EmptyInput(ParseError):
    pass


class UnknownElement(ParseError):
    pass


class MalformedBracketAtom(ParseError):
    pass


class UnbalancedParenthesis(ParseError):
    pass


class UnclosedRing(ParseError):
    pass


class DanglingBondSymbol(ParseError):
    pass


class ConflictingRingBond(ParseError):
    """Ring closure whose two ends disagree (bond order or self-bond)."""


class MalformedRingClosure(ParseError):
    pass


# --- fingerprints -----------------------------------------------------------

class ZeroWidth(MolforgeError):
    pass


class WidthMismatch(MolforgeError):
    pass


class InvalidThreshold(MolforgeError):
    pass


# --- property model ---------------------------------------------------------

class UnknownProperty(MolforgeError):
    pass


class MissingScore(MolforgeError):
    def __init__(self, letter: str, smiles: str = ""):
        self.letter = letter
        self.smiles = smiles
        detail = f" for {smiles}" if smiles else ""
        super().__init__(f"missing score for property {letter}{detail}")


# --- oracle -----------------------------------------------------------------

class OracleError(MolforgeError):
    """Base for score-oracle failures; per-item errors are returned as
    values inside batch results, batch-level errors are raised."""


class MissingColumn(OracleError):
    pass


class TableParseError(OracleError):
    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"{message} (line {line})")


class ConflictingDuplicate(OracleError):
    def __init__(self, smiles: str):
        self.smiles = smiles
        super().__init__(f"conflicting scores for duplicate molecule {smiles}")


class UnknownMolecule(OracleError):
    pass


class ScorerError(OracleError):
    pass


class ScorerTimeout(OracleError):
    pass


class ScorerExited(OracleError):
    pass


class ProtocolViolation(OracleError):
    pass


# --- task construction ------------------------------------------------------

class MinSizeTooLarge(MolforgeError):
    pass


class EmptyTrainingSet(MolforgeError):
    pass


class EmptyPool(MolforgeError):
    pass


# --- prompts ----------------------------------------------------------------

class MissingName(MolforgeError):
    pass


class HeldOutTemplateInTraining(MolforgeError):
    pass


# --- evaluation -------------------------------------------------------------

class InputUnscoreable(MolforgeError):
    pass


class EmptyCaseList(MolforgeError):
    pass
