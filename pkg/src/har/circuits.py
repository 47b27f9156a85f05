"""Boolean-circuit diagrams used by the benchmarks."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .core import Har, HarError, Signature, compose, identity, permutation, singleton, tensor
from .sparse import Perm

BOOL_SIG = Signature.of(("copy", 1, 2), ("xor", 2, 1), ("and", 2, 1), ("not", 1, 1))


def bool_signature() -> Signature:
    return BOOL_SIG


def _balanced(op: Callable[[Har, Har], Har], unit: Har, k: int) -> Har:
    # equal halves are shared, so a power-of-two fold costs log2(k) calls
    cache = {1: unit}

    def go(n: int) -> Har:
        if n not in cache:
            half = n // 2
            cache[n] = op(go(half), go(n - half))
        return cache[n]

    return go(k)


def repeated_tensor(name: str, k: int, sig: Signature = BOOL_SIG) -> Har:
    """``g * g * ... * g`` with ``k`` copies."""
    if k == 0:
        return identity(0, sig)
    return _balanced(tensor, singleton(sig, name), k)


def repeated_compose(name: str, k: int, sig: Signature = BOOL_SIG) -> Har:
    """``g ; g ; ... ; g`` with ``k`` copies; ``g`` must be an endomorphism."""
    op = sig.lookup(name)
    if op.arity != op.coarity:
        raise HarError(f"{name} is not an endomorphism")
    if k == 0:
        return identity(op.arity, sig)
    return _balanced(compose, singleton(sig, name), k)


def _wiring(order: list[int]) -> Har:
    return permutation(Perm(order), BOOL_SIG)


def _gate(name: str) -> Har:
    return singleton(BOOL_SIG, name)


def _layer(*parts: Har) -> Har:
    out = parts[0]
    for p in parts[1:]:
        out = tensor(out, p)
    return out


@lru_cache(maxsize=None)
def full_adder() -> Har:
    """``(a, b, cin) -> (sum, cout)``.

    sum = a ^ b ^ cin and cout = (a & b) ^ ((a ^ b) & cin); the two
    products are never both set, so xor stands in for or.
    """
    wire = identity(1, BOOL_SIG)
    copy, xor, and_ = _gate("copy"), _gate("xor"), _gate("and")
    steps = [
        _layer(copy, copy, wire),           # a a b b c
        _wiring([0, 2, 1, 3, 4]),           # a b a b c
        _layer(xor, and_, wire),            # p g c
        _layer(copy, wire, copy),           # p p g c c
        _wiring([0, 3, 1, 4, 2]),           # p c p c g
        _layer(xor, and_, wire),            # s t g
        _layer(wire, xor),                  # s cout
    ]
    out = steps[0]
    for step in steps[1:]:
        out = compose(out, step)
    return out


def adder_halves(bits: int) -> tuple[Har, Har]:
    """The two diagrams whose composite is the ``bits``-bit adder.

    Inputs are ``(a_0..a_{n-1}, b_0..b_{n-1}, cin)`` least significant bit
    first and outputs ``(s_0..s_{n-1}, cout)``. The first half routes the low
    bits into a half-width adder and passes the high bits along with the
    middle carry; the second half adds the high bits.
    """
    if bits < 2 or bits & (bits - 1):
        raise HarError(f"adder halves need a power of two >= 2, got {bits}")
    n = bits // 2
    sub = adder(n)
    # inputs: a_lo a_hi b_lo b_hi c  ->  a_lo b_lo c a_hi b_hi
    a_lo, a_hi = list(range(n)), list(range(n, 2 * n))
    b_lo, b_hi = list(range(2 * n, 3 * n)), list(range(3 * n, 4 * n))
    route_in = _wiring(a_lo + b_lo + [4 * n] + a_hi + b_hi)
    # s_lo c_mid a_hi b_hi  ->  s_lo a_hi b_hi c_mid
    route_mid = _wiring(list(range(n)) + list(range(n + 1, 3 * n + 1)) + [n])
    first = compose(compose(route_in, tensor(sub, identity(2 * n, BOOL_SIG))), route_mid)
    second = tensor(identity(n, BOOL_SIG), sub)
    return first, second


@lru_cache(maxsize=None)
def adder(bits: int) -> Har:
    """Ripple-carry adder of type ``2 * bits + 1 -> bits + 1``."""
    if bits < 1 or bits & (bits - 1):
        raise HarError(f"adder width must be a power of two, got {bits}")
    if bits == 1:
        return full_adder()
    first, second = adder_halves(bits)
    return compose(first, second)


@dataclass(frozen=True)
class BenchFamily:
    name: str
    build: Callable[[int], tuple[Har, Har]]
    kind: str  # "tensor" or "compose"
    description: str

    def combine(self, f: Har, g: Har) -> Har:
        return tensor(f, g) if self.kind == "tensor" else compose(f, g)

    def result_size(self, f: Har, g: Har) -> int:
        return f.K + g.K - (f.B if self.kind == "compose" else 0)


def _pair(h: Har) -> tuple[Har, Har]:
    return h, h


FAMILIES: dict[str, BenchFamily] = {
    "tensor": BenchFamily(
        "tensor", lambda k: _pair(repeated_tensor("and", 2 ** (k - 1))), "tensor",
        "f * f for f the tensor of 2^(k-1) and gates"),
    "compose-small": BenchFamily(
        "compose-small", lambda k: _pair(repeated_compose("not", 2 ** (k - 1))), "compose",
        "f ; f for f a chain of 2^(k-1) not gates (boundary 1)"),
    "compose-large": BenchFamily(
        "compose-large", lambda k: _pair(repeated_tensor("not", 2 ** (k - 1))), "compose",
        "f ; f for f the tensor of 2^(k-1) not gates (boundary 2^(k-1))"),
    "adder": BenchFamily(
        "adder", lambda k: adder_halves(2 ** k), "compose",
        "two 2^(k-1)-bit adders composed into a 2^k-bit adder"),
}


def family(name: str) -> BenchFamily:
    try:
        return FAMILIES[name]
    except KeyError:
        raise KeyError(f"unknown benchmark family {name!r}; "
                       f"choose from {', '.join(FAMILIES)}") from None
