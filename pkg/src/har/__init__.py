"""Sparse adjacency representations of string diagrams."""
from .canonical import canonicalize, find_witness, iso_eq
from .core import (
    Har, HarError, BoundaryMismatch, Op, Signature, Violation,
    check_permeq, compose, identity, is_valid, lbo, permutation, permute, rbo,
    singleton, symmetry, tensor, validate,
)
from .hypergraph import MaHypergraph, from_har, to_har
from .sparse import Perm, SparseMat
from .terms import eval_har, parse, show

__all__ = [
    "BoundaryMismatch", "Har", "HarError", "MaHypergraph", "Op", "Perm", "Signature",
    "SparseMat", "Violation", "canonicalize", "check_permeq", "compose", "eval_har",
    "find_witness", "from_har", "identity", "is_valid", "iso_eq", "lbo", "parse",
    "permutation", "permute", "rbo", "show", "singleton", "symmetry", "tensor", "to_har",
    "validate",
]
