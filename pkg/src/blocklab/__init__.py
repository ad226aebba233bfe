"""Block theory of small group algebras over finite fields."""

from .algebra import Block, GroupAlgebra, block_decomposition
from .constructors import group_from_file, named
from .errors import BlocklabError, ConfigurationError, InvariantViolation
from .gf import GF, field, splitting_degree
from .groups import FiniteGroup, Subgroup
from .harness import analyze

__all__ = [
    "Block", "GroupAlgebra", "block_decomposition", "group_from_file", "named",
    "BlocklabError", "ConfigurationError", "InvariantViolation", "GF", "field",
    "splitting_degree", "FiniteGroup", "Subgroup", "analyze",
]
__version__ = "0.1.0"
