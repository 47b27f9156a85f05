"""Monogamous acyclic hypergraphs with interfaces.

A deliberately plain implementation used to cross-check the matrix
representation: composition glues nodes with a union-find, tensor takes a
disjoint union. Nothing here is tuned for speed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .canonical import iso_eq
from .core import WIRE, Har, HarError, Signature
from .sparse import Perm, SparseMat


@dataclass(frozen=True)
class Hyperedge:
    label: str
    sources: tuple[int, ...]
    targets: tuple[int, ...]


@dataclass(frozen=True)
class MaHypergraph:
    """A cospan ``left -> (nodes, edges) <- right`` over a signature."""

    signature: Signature
    nodes: tuple[int, ...]
    edges: tuple[Hyperedge, ...]
    left: tuple[int, ...]
    right: tuple[int, ...]

    @property
    def type(self) -> tuple[int, int]:
        return len(self.left), len(self.right)


def hypergraph(signature: Signature, nodes: Iterable[int],
               edges: Iterable[tuple[str, Iterable[int], Iterable[int]]],
               left: Iterable[int], right: Iterable[int]) -> MaHypergraph:
    return MaHypergraph(signature, tuple(nodes),
                        tuple(Hyperedge(lbl, tuple(s), tuple(t)) for lbl, s, t in edges),
                        tuple(left), tuple(right))


def validate_ma(h: MaHypergraph) -> str | None:
    """Name of the first violated condition, or None."""
    nodes = set(h.nodes)
    if len(nodes) != len(h.nodes):
        return "duplicate node"
    producer: dict[int, int] = {}
    consumer: dict[int, int] = {}
    for k, e in enumerate(h.edges):
        if e.label not in h.signature:
            return f"unknown operation {e.label!r}"
        op = h.signature.lookup(e.label)
        if len(e.sources) != op.arity or len(e.targets) != op.coarity:
            return "arity"
        for v in e.sources + e.targets:
            if v not in nodes:
                return "unknown node"
        for v in e.sources:
            if v in consumer:
                return "monogamy"
            consumer[v] = k
        for v in e.targets:
            if v in producer:
                return "monogamy"
            producer[v] = k
    for side, iface in (("left", h.left), ("right", h.right)):
        if len(set(iface)) != len(iface):
            return f"{side} interface not injective"
        if not set(iface) <= nodes:
            return "unknown node"
    if set(h.left) != nodes - set(producer):
        return "left interface must be exactly the nodes without a producer"
    if set(h.right) != nodes - set(consumer):
        return "right interface must be exactly the nodes without a consumer"
    # acyclicity on edges: edge a precedes edge b if a produces a source of b
    indeg = [0] * len(h.edges)
    succ: list[list[int]] = [[] for _ in h.edges]
    for k, e in enumerate(h.edges):
        for v in e.sources:
            if v in producer:
                succ[producer[v]].append(k)
                indeg[k] += 1
    ready = [k for k, d in enumerate(indeg) if d == 0]
    seen = 0
    while ready:
        k = ready.pop()
        seen += 1
        for m in succ[k]:
            indeg[m] -= 1
            if indeg[m] == 0:
                ready.append(m)
    if seen != len(h.edges):
        return "acyclic"
    return None


def identity_cospan(signature: Signature, n: int) -> MaHypergraph:
    nodes = tuple(range(n))
    return MaHypergraph(signature, nodes, (), nodes, nodes)


def symmetry_cospan(signature: Signature, a: int, b: int) -> MaHypergraph:
    nodes = tuple(range(a + b))
    return MaHypergraph(signature, nodes, (), nodes, nodes[a:] + nodes[:a])


def generator_cospan(signature: Signature, name: str) -> MaHypergraph:
    op = signature.lookup(name)
    ins = tuple(range(op.arity))
    outs = tuple(range(op.arity, op.arity + op.coarity))
    return MaHypergraph(signature, ins + outs, (Hyperedge(name, ins, outs),), ins, outs)


def _union(f: MaHypergraph, g: MaHypergraph, glue: list[tuple[int, int]]):
    # tag nodes by side, merge glued pairs, renumber in order of appearance
    parent: dict[tuple[int, int], tuple[int, int]] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v in f.nodes:
        parent[(0, v)] = (0, v)
    for v in g.nodes:
        parent[(1, v)] = (1, v)
    for a, b in glue:
        ra, rb = find((0, a)), find((1, b))
        if ra != rb:
            parent[rb] = ra
    ids: dict[tuple[int, int], int] = {}
    for key in [(0, v) for v in f.nodes] + [(1, v) for v in g.nodes]:
        root = find(key)
        if root not in ids:
            ids[root] = len(ids)

    def fmap(v):
        return ids[find((0, v))]

    def gmap(v):
        return ids[find((1, v))]

    edges = tuple(Hyperedge(e.label, tuple(map(fmap, e.sources)), tuple(map(fmap, e.targets)))
                  for e in f.edges)
    edges += tuple(Hyperedge(e.label, tuple(map(gmap, e.sources)), tuple(map(gmap, e.targets)))
                   for e in g.edges)
    return tuple(range(len(ids))), edges, fmap, gmap


def _check_signatures(f: MaHypergraph, g: MaHypergraph) -> None:
    if f.signature != g.signature:
        raise HarError("cannot combine hypergraphs over different signatures")


def compose_pushout(f: MaHypergraph, g: MaHypergraph) -> MaHypergraph:
    """Glue ``f.right[i]`` to ``g.left[i]`` for every ``i``."""
    if len(f.right) != len(g.left):
        raise HarError(f"boundary mismatch: {len(f.right)} vs {len(g.left)}")
    _check_signatures(f, g)
    nodes, edges, fmap, gmap = _union(f, g, list(zip(f.right, g.left)))
    return MaHypergraph(f.signature, nodes, edges, tuple(map(fmap, f.left)),
                        tuple(map(gmap, g.right)))


def tensor_disjoint(f: MaHypergraph, g: MaHypergraph) -> MaHypergraph:
    _check_signatures(f, g)
    nodes, edges, fmap, gmap = _union(f, g, [])
    return MaHypergraph(f.signature, nodes, edges,
                        tuple(map(fmap, f.left)) + tuple(map(gmap, g.left)),
                        tuple(map(fmap, f.right)) + tuple(map(gmap, g.right)))


def relabel(h: MaHypergraph, mapping: dict[int, int]) -> MaHypergraph:
    """Rename nodes through an injective ``mapping``."""
    m = mapping.__getitem__
    return MaHypergraph(
        h.signature, tuple(map(m, h.nodes)),
        tuple(Hyperedge(e.label, tuple(map(m, e.sources)), tuple(map(m, e.targets)))
              for e in h.edges),
        tuple(map(m, h.left)), tuple(map(m, h.right)))


def to_har(h: MaHypergraph) -> Har:
    """Bipartite encoding: one wire node per node, one box node per hyperedge.

    Wires come first in ``h.nodes`` order, then boxes in edge order.
    """
    problem = validate_ma(h)
    if problem is not None:
        raise HarError(f"invalid hypergraph: {problem}")
    index = {v: i for i, v in enumerate(h.nodes)}
    nw = len(h.nodes)
    K = nw + len(h.edges)
    triples = []
    N = np.full(K, WIRE, dtype=np.int32)
    for k, e in enumerate(h.edges):
        box = nw + k
        N[box] = h.signature.index(e.label)
        for pos, v in enumerate(e.sources, 1):
            triples.append((box, index[v], pos))
        for pos, v in enumerate(e.targets, 1):
            triples.append((index[v], box, pos))
    left = [index[v] for v in h.left]
    right = [index[v] for v in h.right]
    rest_l = sorted(set(range(K)) - set(left))
    rest_r = sorted(set(range(K)) - set(right))
    return Har(len(left), len(right), SparseMat.from_triples(K, K, triples),
               Perm(left + rest_l), Perm(rest_r + right), N, h.signature)


def from_har(h: Har, signature: Signature | None = None) -> MaHypergraph:
    """Read a hypergraph off a HAR: wires become nodes, boxes hyperedges.

    Node ids are the HAR's node indices. The ``i``-th left interface node is
    the node at position ``i`` of the ``L`` order, the ``j``-th right one the
    node at position ``K - B + j`` of the ``R`` order.
    """
    sig = signature if signature is not None else h.signature
    if sig is None:
        sig = Signature(())
    N = h.N.tolist()
    names = [op.name for op in h.signature] if h.signature else []
    ins: dict[int, dict[int, int]] = {}
    outs: dict[int, dict[int, int]] = {}
    for i, j, v in h.M.triples():
        # edge j -> i with label v
        if N[i] != WIRE:
            ins.setdefault(i, {})[v] = j
        if N[j] != WIRE:
            outs.setdefault(j, {})[v] = i
    edges = []
    for b, lab in enumerate(N):
        if lab == WIRE:
            continue
        op = h.signature.ops[lab]
        try:
            sources = tuple(ins.get(b, {})[k] for k in range(1, op.arity + 1))
            targets = tuple(outs.get(b, {})[k] for k in range(1, op.coarity + 1))
        except KeyError:
            raise HarError(f"box {b} has a missing port label") from None
        edges.append(Hyperedge(names[lab], sources, targets))
    nodes = tuple(v for v, lab in enumerate(N) if lab == WIRE)
    return MaHypergraph(sig, nodes, tuple(edges),
                        tuple(h.left_interface().tolist()),
                        tuple(h.right_interface().tolist()))


def hyp_iso(f: MaHypergraph, g: MaHypergraph) -> bool:
    """Isomorphism preserving labels, port order and both interfaces."""
    if f.type != g.type or len(f.nodes) != len(g.nodes) or len(f.edges) != len(g.edges):
        return False
    return iso_eq(to_har(f), to_har(g))
