"""Hypergraph adjacency representations of string diagrams.

A ``Har`` of type ``A -> B`` is a bipartite graph of wire nodes and box nodes
held as a labelled adjacency matrix ``M`` together with two reorderings:
``L`` lists the left interface first and ``R`` lists the right interface last.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .sparse import (
    MAX_NAT, NAT, Perm, SparseMat, apply_perm, block_swap, direct_sum,
    perm_compose, perm_direct_sum, topological_order,
)

WIRE = -1


class HarError(ValueError):
    pass


class BoundaryMismatch(HarError):
    pass


@dataclass(frozen=True)
class Op:
    name: str
    arity: int
    coarity: int


@dataclass(frozen=True)
class Signature:
    """An ordered set of generating operations."""

    ops: tuple[Op, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        index = {}
        for i, op in enumerate(self.ops):
            if op.name in index:
                raise HarError(f"duplicate operation {op.name!r}")
            if op.arity < 0 or op.coarity < 0:
                raise HarError(f"operation {op.name!r} has negative arity")
            if op.arity > MAX_NAT or op.coarity > MAX_NAT:
                raise HarError(f"operation {op.name!r} arity exceeds 32-bit range")
            index[op.name] = i
        object.__setattr__(self, "_index", index)

    @classmethod
    def of(cls, *ops: tuple[str, int, int]) -> Signature:
        return cls(tuple(Op(name, int(m), int(n)) for name, m, n in ops))

    @classmethod
    def parse(cls, text: str) -> Signature:
        """Read ``name arity coarity`` lines; blank lines and ``#`` comments skipped."""
        ops = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise HarError(f"line {lineno}: expected 'name arity coarity'")
            try:
                ops.append((parts[0], int(parts[1]), int(parts[2])))
            except ValueError:
                raise HarError(f"line {lineno}: arity and coarity must be integers") from None
        return cls.of(*ops)

    @classmethod
    def load(cls, path: str | Path) -> Signature:
        return cls.parse(Path(path).read_text())

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __iter__(self):
        return iter(self.ops)

    def __len__(self) -> int:
        return len(self.ops)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"operation {name!r} not in signature") from None

    def lookup(self, name: str) -> Op:
        return self.ops[self.index(name)]

    def dumps(self) -> str:
        return "".join(f"{op.name} {op.arity} {op.coarity}\n" for op in self.ops)


@dataclass(frozen=True, eq=False)
class Har:
    """Immutable HAR of type ``A -> B``.

    ``N`` holds one entry per node: ``WIRE`` or the index of the box's
    operation in ``signature``.
    """

    A: int
    B: int
    M: SparseMat
    L: Perm
    R: Perm
    N: np.ndarray
    signature: Signature | None = None

    def __post_init__(self) -> None:
        K = self.N.size
        if self.M.shape != (K, K) or self.L.size != K or self.R.size != K:
            raise HarError(
                f"inconsistent sizes: K={K}, M={self.M.shape}, "
                f"L={self.L.size}, R={self.R.size}")
        if not (0 <= self.A <= K and 0 <= self.B <= K):
            raise HarError(f"interface sizes {self.A}->{self.B} exceed K={K}")
        if K and self.N.max() >= 0:
            if self.signature is None:
                raise HarError("box nodes need a signature")
            if self.N.max() >= len(self.signature) or self.N.min() < WIRE:
                raise HarError("node label outside the signature")
        self.N.flags.writeable = False

    @property
    def K(self) -> int:
        return int(self.N.size)

    @property
    def type(self) -> tuple[int, int]:
        return self.A, self.B

    def left_interface(self) -> np.ndarray:
        return self.L.p[:self.A]

    def right_interface(self) -> np.ndarray:
        return self.R.p[self.K - self.B:]

    def is_box(self) -> np.ndarray:
        return self.N >= 0

    def box_count(self) -> int:
        return int(np.count_nonzero(self.N >= 0))

    def labels(self) -> list[str | None]:
        """Operation name per node, None for wires."""
        names = [op.name for op in self.signature] if self.signature else []
        return [None if v < 0 else names[v] for v in self.N.tolist()]

    def tokens(self) -> list[str]:
        return ["w" if name is None else f"b:{name}" for name in self.labels()]

    def same_labels(self, other: Har) -> bool:
        if self.K != other.K:
            return False
        if self.signature == other.signature:
            return bool(np.array_equal(self.N, other.N))
        return self.labels() == other.labels()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Har):
            return NotImplemented
        return (self.A == other.A and self.B == other.B and self.M == other.M
                and self.L == other.L and self.R == other.R
                and self.same_labels(other))

    __hash__ = None  # type: ignore[assignment]

    def __rshift__(self, other: Har) -> Har:
        return compose(self, other)

    def __matmul__(self, other: Har) -> Har:
        return tensor(self, other)

    def __repr__(self) -> str:
        return f"Har({self.A}->{self.B}, K={self.K}, nnz={self.M.nnz})"


def _wires(n: int) -> np.ndarray:
    return np.full(n, WIRE, dtype=np.int32)


def _join_signatures(f: Har, g: Har) -> Signature | None:
    if f.signature is None or f.signature is g.signature:
        return g.signature if f.signature is None else f.signature
    if g.signature is None or f.signature == g.signature:
        return f.signature
    if not f.is_box().any():
        return g.signature
    if not g.is_box().any():
        return f.signature
    raise HarError("cannot combine diagrams over different signatures")


def _relabel(h: Har, signature: Signature | None) -> np.ndarray:
    # map h's box labels into another signature by name
    if h.signature is None or signature is None or h.signature is signature \
            or h.signature == signature:
        return h.N
    table = np.array([signature.index(op.name) for op in h.signature], dtype=np.int32)
    out = h.N.copy()
    boxes = out >= 0
    out[boxes] = table[out[boxes]]
    return out


# ---------------------------------------------------------------------------
# constructors


def identity(A: int, signature: Signature | None = None) -> Har:
    ident = Perm.identity(A)
    return Har(A, A, SparseMat.zeros(A, A), ident, ident, _wires(A), signature)


def symmetry(A: int, B: int, signature: Signature | None = None) -> Har:
    """The swap ``A + B -> B + A``; the right order lists the B block first."""
    K = A + B
    return Har(K, K, SparseMat.zeros(K, K), Perm.identity(K), block_swap(A, B),
               _wires(K), signature)


def permutation(p: Perm, signature: Signature | None = None) -> Har:
    """Wiring-only HAR whose ``k``-th output is its ``p[k]``-th input."""
    K = p.size
    return Har(K, K, SparseMat.zeros(K, K), Perm.identity(K), p, _wires(K), signature)


def singleton(signature: Signature, name: str) -> Har:
    """One box for ``name`` with its input wires before it and outputs after."""
    op = signature.lookup(name)
    a, b = op.arity, op.coarity
    K = a + b + 1
    box = a
    rows = np.concatenate((np.full(a, box), np.arange(a + 1, K)))
    cols = np.concatenate((np.arange(a), np.full(b, box)))
    vals = np.concatenate((np.arange(1, a + 1), np.arange(1, b + 1)))
    M = SparseMat.from_coo(K, K, rows, cols, vals)
    N = _wires(K)
    N[box] = signature.index(name)
    ident = Perm.identity(K)
    return Har(a, b, M, ident, ident, N, signature)


# ---------------------------------------------------------------------------
# reorderings


def permute(h: Har, p: Perm) -> Har:
    """The HAR ``g`` with ``h`` equivalent to ``g`` up to ``p``: node ``i`` of ``g`` is node ``p[i]`` of ``h``."""
    if p.size != h.K:
        raise HarError(f"permutation of size {p.size} for K={h.K}")
    inv = p.inverse()
    return Har(h.A, h.B, apply_perm(h.M, p, p), perm_compose(inv, h.L),
               perm_compose(inv, h.R), h.N[p.p], h.signature)


def lbo(f: Har) -> Har:
    """Left boundary order: renumber so that ``L`` is the identity."""
    if f.L.is_identity():
        return f
    inv = f.L.inverse()
    return Har(f.A, f.B, apply_perm(f.M, f.L, f.L), Perm.identity(f.K),
               perm_compose(inv, f.R), f.N[f.L.p], f.signature)


def rbo(f: Har) -> Har:
    """Right boundary order: renumber so that ``R`` is the identity."""
    if f.R.is_identity():
        return f
    inv = f.R.inverse()
    return Har(f.A, f.B, apply_perm(f.M, f.R, f.R), perm_compose(inv, f.L),
               Perm.identity(f.K), f.N[f.R.p], f.signature)


# ---------------------------------------------------------------------------
# monoidal structure


def tensor(f: Har, g: Har) -> Har:
    """Parallel composition: direct sum of the graphs, interfaces concatenated."""
    sig = _join_signatures(f, g)
    fK, gK = f.K, g.K
    A1, A2, B1, B2 = f.A, g.A, f.B, g.B
    ident = Perm.identity
    L = perm_compose(perm_direct_sum(f.L, g.L),
                     perm_direct_sum(ident(A1), block_swap(fK - A1, A2), ident(gK - A2)))
    R = perm_compose(perm_direct_sum(f.R, g.R),
                     perm_direct_sum(ident(fK - B1), block_swap(B1, gK - B2), ident(B2)))
    N = np.concatenate((_relabel(f, sig), _relabel(g, sig)))
    return Har(A1 + A2, B1 + B2, direct_sum(f.M, g.M), L, R, N, sig)


def compose(f: Har, g: Har) -> Har:
    """Sequential composition ``f ; g`` by gluing ``f``'s right interface to ``g``'s left."""
    if f.B != g.A:
        raise BoundaryMismatch(f"cannot compose {f.A}->{f.B} with {g.A}->{g.B}")
    sig = _join_signatures(f, g)
    F, G = rbo(f), lbo(g)
    B = f.B
    shift = F.K - B
    K = F.K + G.K - B
    # F's boundary nodes have no outgoing edges and G's none incoming, so the
    # glued rows are F's rows followed by G's non-boundary rows.
    gm = G.M
    if gm.indptr[B] != 0:
        raise HarError("left interface node with incoming edges")
    g_start = gm.indptr[B]
    indptr = np.concatenate((F.M.indptr, gm.indptr[B + 1:] - g_start + F.M.nnz))
    indices = np.concatenate((F.M.indices, gm.indices[g_start:] + shift))
    data = np.concatenate((F.M.data, gm.data[g_start:]))
    M = SparseMat((K, K), indptr, indices, data, NAT)
    L = perm_direct_sum(F.L, Perm.identity(G.K - B))
    R = perm_direct_sum(Perm.identity(shift), G.R)
    N = np.concatenate((_relabel(F, sig), _relabel(G, sig)[B:]))
    return Har(f.A, g.B, M, L, R, N, sig)


def tensor_all(hars: Sequence[Har], unit: Har | None = None) -> Har:
    """Balanced tensor of a sequence of HARs."""
    if not hars:
        return unit if unit is not None else identity(0)
    if len(hars) == 1:
        return hars[0]
    mid = len(hars) // 2
    return tensor(tensor_all(hars[:mid]), tensor_all(hars[mid:]))


def compose_all(hars: Sequence[Har]) -> Har:
    if not hars:
        raise HarError("empty composite")
    if len(hars) == 1:
        return hars[0]
    mid = len(hars) // 2
    return compose(compose_all(hars[:mid]), compose_all(hars[mid:]))


# ---------------------------------------------------------------------------
# equivalence


def check_permeq(f: Har, g: Har, p: Perm, interfaces_only: bool = False) -> bool:
    """Whether ``g`` is ``f`` renumbered by ``p``.

    The strict check compares the full ``L`` and ``R`` reorderings. With
    ``interfaces_only`` only the interface prefix of ``L`` and suffix of ``R``
    must agree, since the order of the remaining nodes carries no meaning.
    """
    if f.K != g.K or p.size != f.K:
        raise HarError(f"size mismatch: K={f.K}, K={g.K}, |p|={p.size}")
    if f.type != g.type:
        return False
    if apply_perm(f.M, p, p) != g.M:
        return False
    if not g.same_labels(_with_labels(f, f.N[p.p])):
        return False
    inv = p.inverse()
    L = inv.p[f.L.p]
    R = inv.p[f.R.p]
    if interfaces_only:
        K = f.K
        return (np.array_equal(L[:f.A], g.L.p[:g.A])
                and np.array_equal(R[K - f.B:], g.R.p[K - g.B:]))
    return bool(np.array_equal(L, g.L.p) and np.array_equal(R, g.R.p))


def _with_labels(h: Har, N: np.ndarray) -> Har:
    return Har(h.A, h.B, h.M, h.L, h.R, N, h.signature)


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    clause: str
    node: int | None
    detail: str = ""

    def __str__(self) -> str:
        where = "" if self.node is None else f" at node {self.node}"
        extra = f": {self.detail}" if self.detail else ""
        return f"{self.clause}{where}{extra}"


def validate(h: Har) -> Violation | None:
    """First violated well-formedness clause, or None if ``h`` is well formed."""
    K = h.K
    N = h.N.tolist()
    sig = h.signature
    rows_ptr = h.M.indptr.tolist()
    rows_idx = h.M.indices.tolist()
    rows_val = h.M.data.tolist()
    mt = h.M.transpose()
    cols_ptr = mt.indptr.tolist()
    cols_idx = mt.indices.tolist()
    cols_val = mt.data.tolist()

    left = set(h.left_interface().tolist())
    right = set(h.right_interface().tolist())
    for v in h.left_interface().tolist():
        if N[v] != WIRE:
            return Violation("left interface node is not a wire", v)
    for v in h.right_interface().tolist():
        if N[v] != WIRE:
            return Violation("right interface node is not a wire", v)

    for v in range(K):
        is_wire = N[v] == WIRE
        for k in range(rows_ptr[v], rows_ptr[v + 1]):
            u = rows_idx[k]
            if (N[u] == WIRE) == is_wire:
                return Violation("edge between nodes of the same kind", v,
                                 f"edge {u}->{v}")

    for v in range(K):
        indeg = rows_ptr[v + 1] - rows_ptr[v]
        outdeg = cols_ptr[v + 1] - cols_ptr[v]
        if N[v] == WIRE:
            if indeg > 1:
                return Violation("wire has more than one incoming edge", v)
            if outdeg > 1:
                return Violation("wire has more than one outgoing edge", v)
            if (indeg == 0) != (v in left):
                return Violation(
                    "wire without incoming edge must be exactly a left interface node", v)
            if (outdeg == 0) != (v in right):
                return Violation(
                    "wire without outgoing edge must be exactly a right interface node", v)
        else:
            op = sig.ops[N[v]]
            ins = sorted(rows_val[rows_ptr[v]:rows_ptr[v + 1]])
            if ins != list(range(1, op.arity + 1)):
                return Violation("box incoming labels not contiguous", v,
                                 f"{op.name} expects 1..{op.arity}, got {ins}")
            outs = sorted(cols_val[cols_ptr[v]:cols_ptr[v + 1]])
            if outs != list(range(1, op.coarity + 1)):
                return Violation("box outgoing labels not contiguous", v,
                                 f"{op.name} expects 1..{op.coarity}, got {outs}")

    if topological_order(h.M) is None:
        return Violation("graph is not acyclic", None)
    return None


def is_valid(h: Har) -> bool:
    return validate(h) is None


def sparsity_bounds(signature: Signature | None) -> tuple[int, int]:
    """Row and column nonzero bounds implied by the signature's widest operation."""
    m = max((op.arity for op in signature), default=0) if signature else 0
    n = max((op.coarity for op in signature), default=0) if signature else 0
    return max(m, 1), max(n, 1)


def within_sparsity_bounds(h: Har, signature: Signature | None = None) -> bool:
    row_bound, col_bound = sparsity_bounds(h.signature if signature is None else signature)
    if h.M.nnz == 0:
        return True
    return (int(h.M.row_counts().max()) <= row_bound
            and int(h.M.col_counts().max()) <= col_bound
            and h.M.nnz <= h.K * max(row_bound, col_bound))


# ---------------------------------------------------------------------------
# construction from raw data


def from_parts(A: int, B: int, K: int, triples: Iterable[tuple[int, int, int]],
               L: Sequence[int], R: Sequence[int], labels: Sequence[str | None],
               signature: Signature | None) -> Har:
    """Assemble a HAR from plain Python data; labels are op names or None for wires."""
    N = _wires(K)
    for i, name in enumerate(labels):
        if name is not None:
            if signature is None:
                raise HarError("box labels need a signature")
            N[i] = signature.index(name)
    return Har(A, B, SparseMat.from_triples(K, K, triples), Perm(L), Perm(R), N, signature)

