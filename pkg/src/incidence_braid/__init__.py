"""Exact verification and enumeration of braidings on incidence coalgebras of finite posets."""
from __future__ import annotations

from .braidcheck import braid_report, braid_residual, linear_part_check, linear_part_data
from .braiding import LambdaTensor, SetSolution, extract_restriction, verify_structure
from .coalgebra import IntervalBasis
from .families import FAMILY_IDS, FamilyInstance, flip_solution, random_instance, realize
from .poset import Poset, antichain, chain, vee
from .scalars import GF, Q, Field

__all__ = [
    "FAMILY_IDS", "GF", "Field", "FamilyInstance", "IntervalBasis", "LambdaTensor", "Poset", "Q",
    "SetSolution", "antichain", "braid_report", "braid_residual", "chain", "extract_restriction",
    "flip_solution", "linear_part_check", "linear_part_data", "random_instance", "realize",
    "vee", "verify_structure",
]
