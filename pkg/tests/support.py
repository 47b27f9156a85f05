"""Shared builders for the test suite."""
from __future__ import annotations

import random

import numpy as np

from har.circuits import BOOL_SIG
from har.core import Har, Signature, from_parts
from har.hypergraph import hypergraph
from har.sparse import Perm
from har.terms import eval_har, random_term, typecheck

# The running example: alpha: 1 -> 1, beta: 1 -> 2, gamma: 2 -> 1.
GOLDEN_SIG = Signature.of(("alpha", 1, 1), ("beta", 1, 2), ("gamma", 2, 1))
GOLDEN_TERM = "(alpha * beta) ; (sym 1 1 * id 1) ; (gamma * id 1) ; sym 1 1"
GOLDEN_TRIPLES = [
    (2, 0, 1), (3, 1, 1), (4, 2, 1), (5, 3, 1),
    (6, 4, 2), (6, 5, 1), (7, 6, 1), (8, 3, 2),
]
GOLDEN_LABELS = [None, None, "alpha", "beta", None, None, "gamma", None, None]
GOLDEN_R = [0, 1, 2, 3, 4, 5, 6, 8, 7]


def golden_har() -> Har:
    return from_parts(2, 2, 9, GOLDEN_TRIPLES, list(range(9)), GOLDEN_R,
                      GOLDEN_LABELS, GOLDEN_SIG)


def golden_hypergraph():
    # nodes are named after their position in the golden HAR
    return hypergraph(
        GOLDEN_SIG, [0, 1, 4, 5, 7, 8],
        [("alpha", [0], [4]), ("beta", [1], [5, 8]), ("gamma", [5, 4], [7])],
        left=[0, 1], right=[8, 7])


def random_perm(rng: random.Random, n: int) -> Perm:
    p = list(range(n))
    rng.shuffle(p)
    return Perm(p)


def random_har(rng: random.Random, sig: Signature = BOOL_SIG, max_gens: int = 8,
               dom: int | None = None) -> Har:
    return eval_har(random_term(rng, sig, max_gens, dom), sig)


def composable_triple(rng: random.Random, sig: Signature = BOOL_SIG, max_gens: int = 6):
    f = random_term(rng, sig, max_gens)
    _, b = typecheck(f, sig)
    g = random_term(rng, sig, max_gens, dom=b)
    _, c = typecheck(g, sig)
    h = random_term(rng, sig, max_gens, dom=c)
    return eval_har(f, sig), eval_har(g, sig), eval_har(h, sig)


def dense(h: Har) -> np.ndarray:
    return h.M.to_dense()
