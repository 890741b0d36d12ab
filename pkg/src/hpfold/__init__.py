"""Protein folding in the HP model on the 2D triangular lattice."""
from .lattice import Direction, LatticePoint, are_adjacent, neighbors, step
from .hp_model import (
    CollisionError,
    Conformation,
    HpSequence,
    decode,
    energy,
    hh_contacts,
    parse_sequence,
)

__version__ = "0.1.0"
