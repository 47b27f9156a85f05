"""Canonical node numbering and isomorphism of HARs.

Every node of a well-formed HAR has a deterministic, label-ordered list of
neighbours: a wire sees its producing box then its consuming box, a box sees
its inputs by label then its outputs by label. A breadth-first walk seeded by
the ordered interfaces therefore numbers every node that is connected to an
interface in an isomorphism-invariant way. Closed components (touching no
interface) are numbered by the lexicographically least walk over all start
nodes and then sorted by that encoding, which makes the form complete.
"""
from __future__ import annotations

from collections import deque

import numpy as np

from .core import Har, HarError, check_permeq, permute
from .sparse import Perm


class _Adjacency:
    def __init__(self, h: Har) -> None:
        K = h.K
        self.N = h.N.tolist()
        ins: list[list[int]] = [[] for _ in range(K)]
        outs: list[list[int]] = [[] for _ in range(K)]
        # sort neighbours by edge label; wires have at most one each way
        rows = h.M.row_ids().tolist()
        for i, j, v in sorted(zip(rows, h.M.indices.tolist(), h.M.data.tolist()),
                              key=lambda t: t[2]):
            ins[i].append(j)
            outs[j].append(i)
        self.ins = ins
        self.outs = outs

    def neighbours(self, v: int) -> list[int]:
        return self.ins[v] + self.outs[v]


def _walk(adj: _Adjacency, seeds: list[int], number: dict[int, int]) -> list[int]:
    """Extend ``number`` by a BFS from ``seeds``; return newly numbered nodes in order."""
    order = []
    queue: deque[int] = deque()
    for s in seeds:
        if s not in number:
            number[s] = len(number)
            order.append(s)
            queue.append(s)
    while queue:
        v = queue.popleft()
        for w in adj.neighbours(v):
            if w not in number:
                number[w] = len(number)
                order.append(w)
                queue.append(w)
    return order


def _component_encoding(adj: _Adjacency, h: Har, nodes: list[int]) -> tuple:
    labels = tuple(adj.N[v] for v in nodes)
    local = {v: k for k, v in enumerate(nodes)}
    edge_labels = []
    for v in nodes:
        for u in adj.ins[v]:
            edge_labels.append((local[u], local[v], h.M.get(v, u)))
    return labels, tuple(sorted(edge_labels))


def canonical_order(h: Har) -> np.ndarray:
    """``order[k]`` is the node placed at canonical position ``k``."""
    adj = _Adjacency(h)
    number: dict[int, int] = {}
    order = _walk(adj, h.left_interface().tolist() + h.right_interface().tolist(), number)
    if len(order) == h.K:
        return np.asarray(order, dtype=np.int64)

    # closed components: find them, canonically number each, then sort
    comps = []
    seen = set(number)
    for start in range(h.K):
        if start in seen:
            continue
        comp = _walk(adj, [start], {})
        seen.update(comp)
        best = None
        for s in comp:
            walk = _walk(adj, [s], {})
            key = (_component_encoding(adj, h, walk), walk)
            if best is None or key[0] < best[0]:
                best = key
        comps.append(best)
    comps.sort(key=lambda c: c[0])
    for _, walk in comps:
        order.extend(walk)
    return np.asarray(order, dtype=np.int64)


def canonicalize(h: Har) -> Har:
    """Distinguished representative of ``h``'s equivalence class.

    Nodes are renumbered by ``canonical_order``; the non-interface tails of
    ``L`` and ``R`` are listed in ascending node order.
    """
    order = Perm(canonical_order(h))
    g = permute(h, order)
    K = g.K
    left = g.L.p[:g.A]
    right = g.R.p[K - g.B:]
    rest = np.ones(K, dtype=bool)
    rest[left] = False
    L = np.concatenate((left, np.flatnonzero(rest)))
    rest[:] = True
    rest[right] = False
    R = np.concatenate((np.flatnonzero(rest), right))
    return Har(g.A, g.B, g.M, Perm(L, check=False), Perm(R, check=False), g.N, g.signature)


def iso_eq(f: Har, g: Har) -> bool:
    """Equivalence as diagrams: same type and identical canonical forms."""
    if f.type != g.type or f.K != g.K or f.M.nnz != g.M.nnz:
        return False
    return canonicalize(f) == canonicalize(g)


def find_witness(f: Har, g: Har) -> Perm | None:
    """A renumbering ``p`` with node ``i`` of ``g`` equal to node ``p[i]`` of ``f``."""
    if not iso_eq(f, g):
        return None
    of = canonical_order(f)
    og = canonical_order(g)
    inv = np.empty_like(og)
    inv[og] = np.arange(og.size)
    p = Perm(of[inv])
    if not check_permeq(f, g, p, interfaces_only=True):
        raise HarError("canonical numbering produced an invalid witness")
    return p
