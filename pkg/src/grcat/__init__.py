"""Finite Gr-categories (2-groups): cohomology, classification, crossed
modules, Pic-categories, coherence and nerves."""

from . import cohomology, coherence, crossedmod, errors, fingroup, grcore, linalg, nerve, piccat
from .cohomology import Cochain, class_equal, cohomology_group, is_cocycle
from .fingroup import (
    abelian_group,
    cyclic_decomposition,
    cyclic_group,
    dihedral_group,
    make_action,
    make_hom,
    symmetric_group,
    trivial_action,
)
from .grcore import build, equivalent, sinh_invariant

__version__ = "0.1.0"

__all__ = [
    "cohomology",
    "coherence",
    "crossedmod",
    "errors",
    "fingroup",
    "grcore",
    "linalg",
    "nerve",
    "piccat",
    "Cochain",
    "class_equal",
    "cohomology_group",
    "is_cocycle",
    "abelian_group",
    "cyclic_decomposition",
    "cyclic_group",
    "dihedral_group",
    "make_action",
    "make_hom",
    "symmetric_group",
    "trivial_action",
    "build",
    "equivalent",
    "sinh_invariant",
]
