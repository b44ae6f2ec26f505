"""Stallings graphs, fiber products and graph-of-free-groups splittings of triangle Artin groups."""
from .fiber import conjugate_intersections, fiber_product
from .graph import LabeledGraph, canonical_form, check_cover, fold, prune, rank
from .presentation import Presentation, abelianization, artin_standard, artin_star, smith_normal_form
from .splitting import ArtinParams, build_edge_space, split, split_dihedral, split_infty, verify_splitting
from .subgroup import SubgroupGraph, contains, from_words, index
from .words import Word, format_word, parse_word

__version__ = "0.1.0"

__all__ = [
    "ArtinParams", "LabeledGraph", "Presentation", "SubgroupGraph", "Word",
    "abelianization", "artin_standard", "artin_star", "build_edge_space", "canonical_form",
    "check_cover", "conjugate_intersections", "contains", "fiber_product", "fold", "format_word",
    "from_words", "index", "parse_word", "prune", "rank", "smith_normal_form", "split",
    "split_dihedral", "split_infty", "verify_splitting",
]
