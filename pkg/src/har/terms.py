"""Terms of the free PROP over a signature.

Concrete syntax::

    term := term ";" term | term "*" term | "(" term ")" | atom
    atom := IDENT | "id" NAT | "sym" NAT NAT

``*`` (parallel) binds tighter than ``;`` (sequential, diagrammatic order);
both associate to the left.
"""
from __future__ import annotations

import heapq
import random
import re
from dataclasses import dataclass
from typing import Callable, TypeVar, Union

from . import core
from . import hypergraph as hyp
from .canonical import canonical_order
from .core import Har, Signature
from .sparse import Perm


@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class Id:
    n: int


@dataclass(frozen=True)
class Sym:
    a: int
    b: int


@dataclass(frozen=True)
class Seq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Par:
    left: Term
    right: Term


Term = Union[Gen, Id, Sym, Seq, Par]
KEYWORDS = frozenset({"id", "sym"})


class TermSyntaxError(ValueError):
    def __init__(self, message: str, pos: int) -> None:
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class TermTypeError(TypeError):
    pass


# ---------------------------------------------------------------------------
# parsing and printing

_TOKEN = re.compile(r"\s*(?:(?P<nat>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[;*()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:]
            if rest.strip():
                at = pos + len(rest) - len(rest.lstrip())
                raise TermSyntaxError(f"unexpected character {text[at]!r}", at)
            break
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, value: str | None = None) -> tuple[str, str, int]:
        tok = self.take()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise TermSyntaxError(f"expected {want}, got {got!r}", tok[2])
        return tok

    def nat(self) -> int:
        return int(self.expect("nat")[1])

    def seq(self) -> Term:
        t = self.par()
        while self.peek()[:2] == ("op", ";"):
            self.take()
            t = Seq(t, self.par())
        return t

    def par(self) -> Term:
        t = self.atom()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            t = Par(t, self.atom())
        return t

    def atom(self) -> Term:
        kind, value, pos = self.take()
        if kind == "op" and value == "(":
            t = self.seq()
            self.expect("op", ")")
            return t
        if kind == "ident":
            if value == "id":
                return Id(self.nat())
            if value == "sym":
                a = self.nat()
                return Sym(a, self.nat())
            return Gen(value)
        raise TermSyntaxError(f"unexpected {value or 'end of input'!r}", pos)


def parse(text: str) -> Term:
    p = _Parser(text)
    t = p.seq()
    kind, value, pos = p.peek()
    if kind != "eof":
        raise TermSyntaxError(f"unexpected {value!r}", pos)
    return t


def _spine(t: Term, cls: type) -> list[Term]:
    items = []
    while isinstance(t, cls):
        items.append(t.right)
        t = t.left
    items.append(t)
    items.reverse()
    return items


def show(t: Term, level: int = 0) -> str:
    """Print with the fewest parentheses; ``parse(show(t)) == t``."""
    if isinstance(t, Gen):
        return t.name
    if isinstance(t, Id):
        return f"id {t.n}"
    if isinstance(t, Sym):
        return f"sym {t.a} {t.b}"
    if isinstance(t, Seq):
        text = " ; ".join(show(x, 1) for x in _spine(t, Seq))
        return f"({text})" if level > 0 else text
    items = _spine(t, Par)
    text = " * ".join([show(items[0], 1)] + [show(x, 2) for x in items[1:]])
    return f"({text})" if level > 1 else text


# ---------------------------------------------------------------------------
# folds

T = TypeVar("T")


def fold(t: Term, gen: Callable[[str], T], ident: Callable[[int], T],
         sym: Callable[[int, int], T], seq: Callable[[T, T], T],
         par: Callable[[T, T], T]) -> T:
    """Post-order evaluation without recursion, so deep terms are fine."""
    stack: list[tuple[Term, bool]] = [(t, False)]
    out: list[T] = []
    while stack:
        node, ready = stack.pop()
        if isinstance(node, (Seq, Par)):
            if ready:
                right = out.pop()
                left = out.pop()
                out.append((seq if isinstance(node, Seq) else par)(left, right))
            else:
                stack.append((node, True))
                stack.append((node.right, False))
                stack.append((node.left, False))
        elif isinstance(node, Gen):
            out.append(gen(node.name))
        elif isinstance(node, Id):
            out.append(ident(node.n))
        elif isinstance(node, Sym):
            out.append(sym(node.a, node.b))
        else:
            raise TypeError(f"not a term: {node!r}")
    return out[0]


def typecheck(t: Term, sig: Signature) -> tuple[int, int]:
    def gen(name):
        if name not in sig:
            raise TermTypeError(f"unknown generator {name!r}")
        op = sig.lookup(name)
        return op.arity, op.coarity

    def seq(l, r):
        if l[1] != r[0]:
            raise TermTypeError(f"cannot compose {l[0]}->{l[1]} with {r[0]}->{r[1]}")
        return l[0], r[1]

    return fold(t, gen, lambda n: (n, n), lambda a, b: (a + b, b + a), seq,
                lambda l, r: (l[0] + r[0], l[1] + r[1]))


def generator_count(t: Term) -> int:
    return fold(t, lambda _: 1, lambda _: 0, lambda a, b: 0,
                lambda l, r: l + r, lambda l, r: l + r)


def eval_har(t: Term, sig: Signature) -> Har:
    """Interpret ``t`` as a HAR: generators become singletons."""
    typecheck(t, sig)
    return fold(t, lambda name: core.singleton(sig, name),
                lambda n: core.identity(n, sig),
                lambda a, b: core.symmetry(a, b, sig),
                core.compose, core.tensor)


def eval_hypergraph(t: Term, sig: Signature) -> hyp.MaHypergraph:
    """Interpret ``t`` directly as a cospan of hypergraphs."""
    typecheck(t, sig)
    return fold(t, lambda name: hyp.generator_cospan(sig, name),
                lambda n: hyp.identity_cospan(sig, n),
                lambda a, b: hyp.symmetry_cospan(sig, a, b),
                hyp.compose_pushout, hyp.tensor_disjoint)


# ---------------------------------------------------------------------------
# decomposition


def _seq_all(items: list[Term]) -> Term:
    t = items[0]
    for x in items[1:]:
        t = Seq(t, x)
    return t


def _par_all(items: list[Term]) -> Term:
    items = [x for x in items if x != Id(0)] or [Id(0)]
    t = items[0]
    for x in items[1:]:
        t = Par(t, x)
    return t


def perm_to_term(p: Perm) -> Term:
    """Adjacent transpositions realising ``p``: output ``k`` carries input ``p[k]``."""
    n = p.size
    arr = list(range(n))
    swaps = []
    for k, want in enumerate(p.tolist()):
        pos = arr.index(want, k)
        for i in range(pos - 1, k - 1, -1):
            arr[i], arr[i + 1] = arr[i + 1], arr[i]
            swaps.append(_par_all([Id(i), Sym(1, 1), Id(n - i - 2)]))
    if not swaps:
        return Id(n)
    return _seq_all(swaps)


def decompose(h: Har) -> Term:
    """Layered normal form ``p1 ; (id * g1 * id) ; p2 ; ... ; pN``.

    Boxes are emitted in topological order, ties broken by canonical node
    number; each permutation layer gathers the next box's inputs.
    """
    sig = h.signature
    N = h.N.tolist()
    ins: dict[int, dict[int, int]] = {}
    outs: dict[int, dict[int, int]] = {}
    consumer: dict[int, int] = {}
    for i, j, v in h.M.triples():
        if N[i] != core.WIRE:
            ins.setdefault(i, {})[v] = j
            consumer[j] = i
        else:
            outs.setdefault(j, {})[v] = i
    rank = {v: k for k, v in enumerate(canonical_order(h).tolist())}
    pending = {b: sig.ops[N[b]].arity for b in range(h.K) if N[b] != core.WIRE}
    ready: list[tuple[int, int]] = []

    def arrive(wires):
        for w in wires:
            b = consumer.get(w)
            if b is not None:
                pending[b] -= 1
                if pending[b] == 0:
                    heapq.heappush(ready, (rank[b], b))

    for b, need in pending.items():
        if need == 0:
            heapq.heappush(ready, (rank[b], b))
    frontier = h.left_interface().tolist()
    arrive(frontier)
    layers: list[Term] = []
    while ready:
        _, b = heapq.heappop(ready)
        op = sig.ops[N[b]]
        inputs = [ins[b][k] for k in range(1, op.arity + 1)]
        outputs = [outs[b][k] for k in range(1, op.coarity + 1)]
        where = {w: k for k, w in enumerate(frontier)}
        at = min((where[w] for w in inputs), default=0)
        taken = set(inputs)
        others = [w for w in frontier if w not in taken]
        arranged = others[:at] + inputs + others[at:]
        layers.append(perm_to_term(Perm([where[w] for w in arranged])))
        layers.append(_par_all([Id(at), Gen(op.name), Id(len(others) - at)]))
        frontier = others[:at] + outputs + others[at:]
        arrive(outputs)
    if len(layers) != 2 * len(pending):
        raise core.HarError("diagram has a cycle")
    where = {w: k for k, w in enumerate(frontier)}
    layers.append(perm_to_term(Perm([where[w] for w in h.right_interface().tolist()])))
    return _seq_all(layers)


def _leaves(t: Term, cls: type) -> list[Term]:
    if isinstance(t, cls):
        return _leaves(t.left, cls) + _leaves(t.right, cls)
    return [t]


def _layer_kind(t: Term) -> str | None:
    parts = _leaves(t, Par)
    gens = [x for x in parts if isinstance(x, Gen)]
    if any(isinstance(x, Seq) for x in parts):
        return None
    if not gens:
        return "perm"
    if len(gens) == 1 and all(isinstance(x, (Gen, Id)) for x in parts):
        return "gen"
    return None


def is_layered_normal_form(t: Term) -> bool:
    """Sequential layers of wiring alternating with single-generator layers."""
    kinds = [_layer_kind(x) for x in _leaves(t, Seq)]
    if None in kinds or kinds[0] != "perm" or kinds[-1] != "perm":
        return False
    return all(not (a == b == "gen") for a, b in zip(kinds, kinds[1:]))


# ---------------------------------------------------------------------------
# random terms


def random_term(rng: random.Random, sig: Signature, max_gens: int = 8,
                dom: int | None = None) -> Term:
    """A well-typed term with at most ``max_gens`` generators."""
    if dom is None:
        dom = rng.randint(0, 4)
    return _random_from(rng, sig, dom, rng.randint(0, max_gens))


def _random_from(rng: random.Random, sig: Signature, dom: int, budget: int) -> Term:
    placeable = [op for op in sig.ops if op.arity <= dom]
    roll = rng.random()
    if budget == 0 or not placeable:
        if dom >= 2 and roll < 0.3:
            a = rng.randint(1, dom - 1)
            return Sym(a, dom - a)
        return Id(dom)
    if roll < 0.25 and dom >= 1:
        left = rng.randint(0, dom)
        share = rng.randint(0, budget)
        return Par(_random_from(rng, sig, left, share),
                   _random_from(rng, sig, dom - left, budget - share))
    if roll < 0.35 and dom >= 2:
        i = rng.randint(0, dom - 2)
        layer = _par_all([Id(i), Sym(1, 1), Id(dom - i - 2)])
        return Seq(layer, _random_from(rng, sig, dom, budget))
    op = rng.choice(placeable)
    at = rng.randint(0, dom - op.arity)
    layer = _par_all([Id(at), Gen(op.name), Id(dom - at - op.arity)])
    rest = _random_from(rng, sig, dom - op.arity + op.coarity, budget - 1)
    return Seq(layer, rest)
