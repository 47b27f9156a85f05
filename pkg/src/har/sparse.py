"""Sparse matrices over the naturals and booleans, and index permutations.

Matrices are stored in compressed-row form with column indices sorted inside
each row. An entry ``(i, j) = v`` is read as an edge from node ``j`` to node
``i`` carrying label ``v``: column ``j`` lists the outgoing edges of ``j`` and
row ``i`` its incoming edges.

Permutations are index vectors. Position ``i`` of the reordered sequence holds
original element ``p[i]``; the matching 0/1 matrix has a one at
``(p[i], i)``, so reordering a square matrix by ``p`` is ``P^T M P``.
"""
from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

INDEX = np.int64
VALUE = np.uint32
MAX_NAT = 2**32 - 1


@dataclass(frozen=True)
class Semiring:
    name: str
    zero: int
    one: int
    add: Callable[[int, int], int]
    mul: Callable[[int, int], int]
    # vectorised ``add`` used when merging duplicate coordinates
    reduce: np.ufunc

    def __repr__(self) -> str:
        return f"Semiring({self.name})"


NAT = Semiring("nat", 0, 1, operator.add, operator.mul, np.add)
BOOL = Semiring("bool", 0, 1, operator.or_, operator.and_, np.maximum)


class SparseMat:
    """Immutable sparse matrix in compressed-row form."""

    __slots__ = ("shape", "indptr", "indices", "data", "semiring")

    def __init__(self, shape: tuple[int, int], indptr: np.ndarray,
                 indices: np.ndarray, data: np.ndarray,
                 semiring: Semiring = NAT) -> None:
        # Trusted constructor: callers guarantee canonical CSR.
        self.shape = (int(shape[0]), int(shape[1]))
        self.indptr = indptr
        self.indices = indices
        self.data = data
        self.semiring = semiring
        for arr in (indptr, indices, data):
            arr.flags.writeable = False

    @classmethod
    def from_triples(cls, rows: int, cols: int,
                     triples: Iterable[tuple[int, int, int]],
                     semiring: Semiring = NAT) -> SparseMat:
        """Build a canonical matrix from ``(row, col, value)`` triples.

        Duplicate coordinates are combined with the semiring addition and
        zero results are dropped.
        """
        trip = list(triples)
        if rows < 0 or cols < 0:
            raise ValueError(f"negative shape ({rows}, {cols})")
        if not trip:
            return cls.zeros(rows, cols, semiring)
        arr = np.array(trip, dtype=np.int64).reshape(-1, 3)
        return cls.from_coo(rows, cols, arr[:, 0], arr[:, 1], arr[:, 2], semiring)

    @classmethod
    def from_coo(cls, rows: int, cols: int, r: np.ndarray, c: np.ndarray,
                 v: np.ndarray, semiring: Semiring = NAT) -> SparseMat:
        r = np.asarray(r, dtype=INDEX)
        c = np.asarray(c, dtype=INDEX)
        v = np.asarray(v, dtype=np.int64)
        if r.size and (r.min() < 0 or r.max() >= rows):
            bad = int(r[(r < 0) | (r >= rows)][0])
            raise IndexError(f"row index {bad} out of range for {rows} rows")
        if c.size and (c.min() < 0 or c.max() >= cols):
            bad = int(c[(c < 0) | (c >= cols)][0])
            raise IndexError(f"column index {bad} out of range for {cols} columns")
        if v.size and v.min() < 0:
            raise ValueError("negative entry in a natural-number matrix")
        if semiring is BOOL:
            v = (v != 0).astype(np.int64)
        order = np.lexsort((c, r))
        r, c, v = r[order], c[order], v[order]
        if r.size:
            starts = np.flatnonzero(
                np.concatenate(([True], (r[1:] != r[:-1]) | (c[1:] != c[:-1]))))
            r, c = r[starts], c[starts]
            v = semiring.reduce.reduceat(v, starts)
        if v.size and v.max() > MAX_NAT:
            raise OverflowError("entry exceeds 32-bit natural range")
        keep = v != 0
        r, c, v = r[keep], c[keep], v[keep]
        indptr = np.zeros(rows + 1, dtype=INDEX)
        np.cumsum(np.bincount(r, minlength=rows), out=indptr[1:])
        return cls((rows, cols), indptr, c, v.astype(VALUE), semiring)

    @classmethod
    def zeros(cls, rows: int, cols: int, semiring: Semiring = NAT) -> SparseMat:
        return cls((rows, cols), np.zeros(rows + 1, dtype=INDEX),
                   np.zeros(0, dtype=INDEX), np.zeros(0, dtype=VALUE), semiring)

    @classmethod
    def identity(cls, n: int, semiring: Semiring = NAT) -> SparseMat:
        return cls((n, n), np.arange(n + 1, dtype=INDEX),
                   np.arange(n, dtype=INDEX), np.ones(n, dtype=VALUE), semiring)

    @property
    def rows(self) -> int:
        return self.shape[0]

    @property
    def cols(self) -> int:
        return self.shape[1]

    @property
    def nnz(self) -> int:
        return int(self.indices.size)

    def row_ids(self) -> np.ndarray:
        """Row index of every stored entry, in storage order."""
        return np.repeat(np.arange(self.rows, dtype=INDEX), np.diff(self.indptr))

    def row_counts(self) -> np.ndarray:
        return np.diff(self.indptr)

    def col_counts(self) -> np.ndarray:
        return np.bincount(self.indices, minlength=self.cols)

    def triples(self) -> list[tuple[int, int, int]]:
        return list(zip(self.row_ids().tolist(), self.indices.tolist(),
                        self.data.tolist()))

    def get(self, i: int, j: int) -> int:
        lo, hi = self.indptr[i], self.indptr[i + 1]
        k = lo + np.searchsorted(self.indices[lo:hi], j)
        if k < hi and self.indices[k] == j:
            return int(self.data[k])
        return 0

    def row(self, i: int) -> list[tuple[int, int]]:
        lo, hi = self.indptr[i], self.indptr[i + 1]
        return list(zip(self.indices[lo:hi].tolist(), self.data[lo:hi].tolist()))

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.int64)
        out[self.row_ids(), self.indices] = self.data
        return out

    def transpose(self) -> SparseMat:
        order = np.argsort(self.indices, kind="stable")
        indptr = np.zeros(self.cols + 1, dtype=INDEX)
        np.cumsum(self.col_counts(), out=indptr[1:])
        return SparseMat((self.cols, self.rows), indptr, self.row_ids()[order],
                         self.data[order], self.semiring)

    def with_semiring(self, semiring: Semiring) -> SparseMat:
        if semiring is self.semiring:
            return self
        return SparseMat.from_coo(self.rows, self.cols, self.row_ids(),
                                  self.indices, self.data, semiring)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMat):
            return NotImplemented
        return (self.shape == other.shape
                and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices)
                and np.array_equal(self.data, other.data))

    def __hash__(self) -> int:
        return hash((self.shape, self.indices.tobytes(), self.data.tobytes()))

    def __repr__(self) -> str:
        return f"SparseMat({self.rows}x{self.cols}, nnz={self.nnz}, {self.semiring.name})"


def from_triples(rows: int, cols: int, triples: Iterable[tuple[int, int, int]],
                 semiring: Semiring = NAT) -> SparseMat:
    return SparseMat.from_triples(rows, cols, triples, semiring)


def matmul(a: SparseMat, b: SparseMat) -> SparseMat:
    """Semiring product ``a @ b`` by Gustavson's row-merge scheme.

    Each output row ``i`` is accumulated from the rows of ``b`` selected by
    the nonzeros of row ``i`` of ``a``; the work is proportional to
    ``rows + nnz(a) + number of nontrivial multiplications``.
    """
    if a.cols != b.rows:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    if a.semiring is not b.semiring:
        raise ValueError("operands live in different semirings")
    sr = a.semiring
    a_ptr, a_idx, a_val = a.indptr.tolist(), a.indices.tolist(), a.data.tolist()
    b_ptr, b_idx, b_val = b.indptr.tolist(), b.indices.tolist(), b.data.tolist()
    add, mul, zero = sr.add, sr.mul, sr.zero

    # dense accumulator with a per-row marker, reset lazily
    acc = [zero] * b.cols
    mark = [-1] * b.cols
    indptr = [0]
    out_idx: list[int] = []
    out_val: list[int] = []
    for i in range(a.rows):
        touched: list[int] = []
        for ka in range(a_ptr[i], a_ptr[i + 1]):
            k, av = a_idx[ka], a_val[ka]
            for kb in range(b_ptr[k], b_ptr[k + 1]):
                j = b_idx[kb]
                prod = mul(av, b_val[kb])
                if mark[j] != i:
                    mark[j] = i
                    acc[j] = prod
                    touched.append(j)
                else:
                    acc[j] = add(acc[j], prod)
        touched.sort()
        for j in touched:
            if acc[j] != zero:
                if acc[j] > MAX_NAT:
                    raise OverflowError("product entry exceeds 32-bit natural range")
                out_idx.append(j)
                out_val.append(acc[j])
        indptr.append(len(out_idx))
    return SparseMat((a.rows, b.cols), np.array(indptr, dtype=INDEX),
                     np.array(out_idx, dtype=INDEX), np.array(out_val, dtype=VALUE), sr)


def direct_sum(a: SparseMat, b: SparseMat) -> SparseMat:
    """Block-diagonal matrix with ``a`` top-left and ``b`` bottom-right."""
    if a.semiring is not b.semiring:
        raise ValueError("operands live in different semirings")
    indptr = np.concatenate((a.indptr, b.indptr[1:] + a.nnz))
    indices = np.concatenate((a.indices, b.indices + a.cols))
    data = np.concatenate((a.data, b.data))
    return SparseMat((a.rows + b.rows, a.cols + b.cols), indptr, indices, data,
                     a.semiring)


def _sort_within_rows(rows: int, cols: int, indptr: np.ndarray,
                      indices: np.ndarray, data: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if indices.size < 2:
        return indices, data
    row_ids = np.repeat(np.arange(rows, dtype=INDEX), np.diff(indptr))
    key = row_ids * max(cols, 1) + indices
    if np.all(key[1:] > key[:-1]):
        return indices, data
    # rows are already grouped, so the key is a concatenation of short
    # sorted runs and the stable merge sort stays close to linear
    order = np.argsort(key, kind="stable")
    return indices[order], data[order]


def apply_perm(m: SparseMat, rowp: Perm, colp: Perm) -> SparseMat:
    """Return ``out`` with ``out[i][j] = m[rowp[i]][colp[j]]``.

    Rows are gathered in their new order and column indices relabelled
    through the inverse of ``colp``; no general product is formed.
    """
    if rowp.size != m.rows or colp.size != m.cols:
        raise ValueError(
            f"permutation sizes ({rowp.size}, {colp.size}) do not match {m.shape}")
    counts = np.diff(m.indptr)[rowp.p]
    indptr = np.zeros(m.rows + 1, dtype=INDEX)
    np.cumsum(counts, out=indptr[1:])
    src = (np.repeat(m.indptr[:-1][rowp.p] - indptr[:-1], counts)
           + np.arange(m.nnz, dtype=INDEX))
    indices = colp.inverse().p[m.indices[src]]
    data = m.data[src]
    indices, data = _sort_within_rows(m.rows, m.cols, indptr, indices, data)
    return SparseMat(m.shape, indptr, indices, data, m.semiring)


def embed(m: SparseMat, size: int, offset: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """COO arrays of ``m`` shifted by ``offset`` on both axes inside ``size``."""
    if offset < 0 or offset + max(m.rows, m.cols) > size:
        raise ValueError("embedding does not fit")
    return m.row_ids() + offset, m.indices + offset, m.data


def is_acyclic(m: SparseMat) -> bool:
    """Kahn's algorithm over the graph with an edge ``j -> i`` per entry ``(i, j)``."""
    if m.rows != m.cols:
        raise ValueError(f"adjacency matrix must be square, got {m.shape}")
    return topological_order(m) is not None


def topological_order(m: SparseMat) -> list[int] | None:
    """A topological order of the nodes, or None when a cycle exists."""
    n = m.rows
    indeg = np.diff(m.indptr).tolist()
    mt = m.transpose()
    out_ptr, out_idx = mt.indptr.tolist(), mt.indices.tolist()
    stack = [v for v in range(n - 1, -1, -1) if indeg[v] == 0]
    order: list[int] = []
    while stack:
        v = stack.pop()
        order.append(v)
        for k in range(out_ptr[v], out_ptr[v + 1]):
            w = out_idx[k]
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    return order if len(order) == n else None


class Perm:
    """A permutation of ``range(size)`` stored as an index vector."""

    __slots__ = ("p",)

    def __init__(self, mapping: Sequence[int] | np.ndarray, check: bool = True) -> None:
        p = np.asarray(mapping, dtype=INDEX)
        if p.ndim != 1:
            raise ValueError("permutation must be one-dimensional")
        if check and p.size:
            if p.min() < 0 or p.max() >= p.size or \
                    np.bincount(p, minlength=p.size).max() != 1:
                raise ValueError(f"not a permutation: {p.tolist()}")
        p.flags.writeable = False
        self.p = p

    @classmethod
    def identity(cls, n: int) -> Perm:
        return cls(np.arange(n, dtype=INDEX), check=False)

    @classmethod
    def block_swap(cls, a: int, b: int) -> Perm:
        """Exchange a leading block of ``a`` elements with a trailing block of ``b``."""
        return cls(np.concatenate((np.arange(a, a + b, dtype=INDEX),
                                   np.arange(a, dtype=INDEX))), check=False)

    @property
    def size(self) -> int:
        return int(self.p.size)

    def __len__(self) -> int:
        return self.size

    def __getitem__(self, i):
        return self.p[i]

    def tolist(self) -> list[int]:
        return self.p.tolist()

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.p, np.arange(self.size)))

    def inverse(self) -> Perm:
        inv = np.empty_like(self.p)
        inv[self.p] = np.arange(self.size, dtype=INDEX)
        return Perm(inv, check=False)

    def compose(self, other: Perm) -> Perm:
        """``result[i] = self[other[i]]``; reorder by ``self`` then by ``other``."""
        if self.size != other.size:
            raise ValueError(f"size mismatch: {self.size} vs {other.size}")
        return Perm(self.p[other.p], check=False)

    def direct_sum(self, other: Perm) -> Perm:
        return Perm(np.concatenate((self.p, other.p + self.size)), check=False)

    def matrix(self, semiring: Semiring = BOOL) -> SparseMat:
        n = self.size
        # column i holds a single one in row p[i]
        return SparseMat.from_coo(n, n, self.p, np.arange(n), np.ones(n, dtype=np.int64),
                                  semiring)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Perm):
            return NotImplemented
        return bool(np.array_equal(self.p, other.p))

    def __hash__(self) -> int:
        return hash(self.p.tobytes())

    def __repr__(self) -> str:
        if self.size <= 16:
            return f"Perm({self.p.tolist()})"
        return f"Perm(size={self.size})"


def perm_compose(p: Perm, q: Perm) -> Perm:
    return p.compose(q)


def perm_inverse(p: Perm) -> Perm:
    return p.inverse()


def perm_direct_sum(*perms: Perm) -> Perm:
    if not perms:
        return Perm.identity(0)
    sizes = np.cumsum([0] + [q.size for q in perms[:-1]])
    return Perm(np.concatenate([q.p + off for q, off in zip(perms, sizes)]), check=False)


def block_swap(a: int, b: int) -> Perm:
    return Perm.block_swap(a, b)
