"""Birational endomorphisms of the affine plane built from simple affine contractions."""

from .bipoly import BiPoly, UniPoly, parse, serialize
from .endo import PlaneEndo, compose, missing_lines, contracting_curves
from .genword import GenWord, parse_word, serialize_word, to_endo, word_n
from .config import LineConfig, classify_corollary, generate_example
from .sacfactor import classify, compare_normal_forms, sac_factorize

__version__ = "0.1.0"

__all__ = [
    "BiPoly",
    "UniPoly",
    "parse",
    "serialize",
    "PlaneEndo",
    "compose",
    "missing_lines",
    "contracting_curves",
    "GenWord",
    "parse_word",
    "serialize_word",
    "to_endo",
    "word_n",
    "LineConfig",
    "classify_corollary",
    "generate_example",
    "classify",
    "compare_normal_forms",
    "sac_factorize",
]
