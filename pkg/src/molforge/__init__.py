"""Data pipeline for multi-property molecule optimization.

Parse and canonicalize SMILES, fingerprint and mine similar pairs,
filter them by property-improvement constraints, build per-task
train/val/test splits, render instruction prompts, and score generated
molecules against an oracle.
"""

from molforge.errors import MolforgeError, ParseError

__version__ = "0.1.0"

__all__ = ["MolforgeError", "ParseError", "__version__"]
