"""Text formats for HARs and hypergraphs.

HAR files::

    har-v1
    signature <count>
    <name> <arity> <coarity>      (one line per operation)
    A <n>
    B <n>
    K <n>
    M <nnz>
    <row> <col> <label>           (one line per entry, row-major)
    L <index> ...
    R <index> ...
    N <w | b:name> ...

Hypergraph files start with ``har-v1 hypergraph`` and list ``nodes``,
``edges`` (``<label> <sources> : <targets>``), ``left`` and ``right``.
"""
from __future__ import annotations

from pathlib import Path

from .core import Har, HarError, Signature, from_parts
from .hypergraph import Hyperedge, MaHypergraph

MAGIC = "har-v1"


class FormatError(HarError):
    pass


def _signature_lines(sig: Signature | None) -> list[str]:
    ops = list(sig) if sig is not None else []
    return [f"signature {len(ops)}"] + [f"{op.name} {op.arity} {op.coarity}" for op in ops]


def _join(head: str, values) -> str:
    return " ".join([head, *map(str, values)])


def dumps_har(h: Har) -> str:
    lines = [MAGIC, *_signature_lines(h.signature),
             f"A {h.A}", f"B {h.B}", f"K {h.K}", f"M {h.M.nnz}"]
    lines += [f"{i} {j} {v}" for i, j, v in h.M.triples()]
    lines += [_join("L", h.L.tolist()), _join("R", h.R.tolist()), _join("N", h.tokens())]
    return "\n".join(lines) + "\n"


class _Lines:
    def __init__(self, text: str) -> None:
        self.lines = text.splitlines()
        self.i = 0

    def next(self) -> list[str]:
        if self.i >= len(self.lines):
            raise FormatError("unexpected end of file")
        self.i += 1
        return self.lines[self.i - 1].split()

    def field(self, name: str) -> list[str]:
        parts = self.next()
        if not parts or parts[0] != name:
            raise FormatError(f"line {self.i}: expected field {name!r}")
        return parts[1:]

    def count(self, name: str) -> int:
        rest = self.field(name)
        if len(rest) != 1:
            raise FormatError(f"line {self.i}: {name} takes one integer")
        return _int(rest[0], self.i)

    def done(self) -> None:
        if any(line.strip() for line in self.lines[self.i:]):
            raise FormatError(f"line {self.i + 1}: trailing content")


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"line {lineno}: expected an integer, got {token!r}") from None


def _read_signature(src: _Lines) -> Signature:
    n = src.count("signature")
    ops = []
    for _ in range(n):
        parts = src.next()
        if len(parts) != 3:
            raise FormatError(f"line {src.i}: expected 'name arity coarity'")
        ops.append((parts[0], _int(parts[1], src.i), _int(parts[2], src.i)))
    return Signature.of(*ops)


def loads_har(text: str) -> Har:
    src = _Lines(text)
    if src.next() != [MAGIC]:
        raise FormatError(f"missing {MAGIC} header")
    sig = _read_signature(src)
    A, B, K = src.count("A"), src.count("B"), src.count("K")
    nnz = src.count("M")
    triples = []
    for _ in range(nnz):
        parts = src.next()
        if len(parts) != 3:
            raise FormatError(f"line {src.i}: expected 'row col label'")
        triples.append(tuple(_int(p, src.i) for p in parts))
    L = [_int(p, src.i) for p in src.field("L")]
    R = [_int(p, src.i) for p in src.field("R")]
    tokens = src.field("N")
    src.done()
    if len(L) != K or len(R) != K or len(tokens) != K:
        raise FormatError(f"L, R and N must each have K={K} entries")
    labels = []
    for tok in tokens:
        if tok == "w":
            labels.append(None)
        elif tok.startswith("b:"):
            if tok[2:] not in sig:
                raise FormatError(f"node label {tok!r} not in the signature")
            labels.append(tok[2:])
        else:
            raise FormatError(f"bad node label {tok!r}")
    try:
        h = from_parts(A, B, K, triples, L, R, labels, sig if len(sig) else None)
    except (ValueError, IndexError) as exc:
        raise FormatError(str(exc)) from None
    if h.M.nnz != nnz:
        raise FormatError("duplicate or zero matrix entries")
    return h


def read_har(path: str | Path) -> Har:
    return loads_har(Path(path).read_text())


def write_har(h: Har, path: str | Path) -> None:
    Path(path).write_text(dumps_har(h))


def dumps_hypergraph(h: MaHypergraph) -> str:
    lines = [f"{MAGIC} hypergraph", *_signature_lines(h.signature),
             _join("nodes", h.nodes), f"edges {len(h.edges)}"]
    for e in h.edges:
        lines.append(" ".join([e.label, *map(str, e.sources), ":", *map(str, e.targets)]))
    lines += [_join("left", h.left), _join("right", h.right)]
    return "\n".join(lines) + "\n"


def loads_hypergraph(text: str) -> MaHypergraph:
    src = _Lines(text)
    if src.next() != [MAGIC, "hypergraph"]:
        raise FormatError(f"missing '{MAGIC} hypergraph' header")
    sig = _read_signature(src)
    nodes = tuple(_int(p, src.i) for p in src.field("nodes"))
    edges = []
    for _ in range(src.count("edges")):
        parts = src.next()
        if len(parts) < 2 or ":" not in parts:
            raise FormatError(f"line {src.i}: expected 'label sources : targets'")
        cut = parts.index(":")
        edges.append(Hyperedge(parts[0], tuple(_int(p, src.i) for p in parts[1:cut]),
                               tuple(_int(p, src.i) for p in parts[cut + 1:])))
    left = tuple(_int(p, src.i) for p in src.field("left"))
    right = tuple(_int(p, src.i) for p in src.field("right"))
    src.done()
    return MaHypergraph(sig, nodes, tuple(edges), left, right)
