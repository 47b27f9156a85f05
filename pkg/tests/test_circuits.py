import itertools
import random

import pytest

from har.circuits import (
    BOOL_SIG, FAMILIES, adder, adder_halves, bool_signature, family, full_adder,
    repeated_compose, repeated_tensor,
)
from har.core import HarError, compose, singleton, validate
from har.hypergraph import from_har

GATES = {
    "copy": lambda x: (x, x),
    "xor": lambda x, y: (x ^ y,),
    "and": lambda x, y: (x & y,),
    "not": lambda x: (1 - x,),
}


def simulate(h, inputs):
    # test-only boolean evaluation: fire each hyperedge once its sources are known
    g = from_har(h)
    value = dict(zip(g.left, inputs))
    pending = list(g.edges)
    while pending:
        rest = []
        for e in pending:
            if all(s in value for s in e.sources):
                value.update(zip(e.targets, GATES[e.label](*(value[s] for s in e.sources))))
            else:
                rest.append(e)
        assert len(rest) < len(pending), "circuit did not settle"
        pending = rest
    return [value[v] for v in g.right]


def to_bits(x, n):
    return [(x >> i) & 1 for i in range(n)]


def from_bits(bits):
    return sum(b << i for i, b in enumerate(bits))


def check_adds(h, bits, cases):
    for a, b, c in cases:
        out = simulate(h, to_bits(a, bits) + to_bits(b, bits) + [c])
        assert from_bits(out) == a + b + c, (a, b, c)


def test_signature():
    sig = bool_signature()
    assert sig.lookup("and").arity == 2 and sig.lookup("and").coarity == 1
    assert (sig.lookup("copy").arity, sig.lookup("copy").coarity) == (1, 2)
    with pytest.raises(KeyError):
        sig.lookup("or")


def test_repeated_tensor_one():
    assert repeated_tensor("and", 1) == singleton(BOOL_SIG, "and")


def test_repeated_compose_two():
    h = repeated_compose("not", 2)
    assert h.K == 5 and h.type == (1, 1)


@pytest.mark.parametrize("k", [1, 2, 3, 5, 8, 13])
def test_repeated_sizes(k):
    t = repeated_tensor("not", k)
    assert t.type == (k, k) and t.K == 3 * k
    a = repeated_tensor("and", k)
    assert a.type == (2 * k, k) and a.K == 4 * k
    c = repeated_compose("not", k)
    assert c.type == (1, 1) and c.K == 2 * k + 1
    for h in (t, a, c):
        assert validate(h) is None


def test_repeated_compose_needs_endomorphism():
    with pytest.raises(HarError):
        repeated_compose("and", 2)


def test_full_adder_truth_table():
    h = full_adder()
    assert h.type == (3, 2)
    assert h.box_count() == 9
    assert validate(h) is None
    for a, b, c in itertools.product([0, 1], repeat=3):
        assert simulate(h, [a, b, c]) == [a ^ b ^ c, (a + b + c) >> 1]


def test_adder_one_is_full_adder():
    assert adder(1) is full_adder()


def test_adder_two():
    h = adder(2)
    assert h.type == (5, 3)
    assert validate(h) is None
    check_adds(h, 2, itertools.product(range(4), range(4), [0, 1]))


@pytest.mark.parametrize("bits", [4, 8, 16])
def test_adder_adds(bits):
    rng = random.Random(bits)
    top = 2 ** bits - 1
    cases = [(rng.randint(0, top), rng.randint(0, top), rng.randint(0, 1)) for _ in range(40)]
    cases += [(top, top, 1), (top, 0, 1), (0, 0, 0)]
    check_adds(adder(bits), bits, cases)


def test_adder_generator_count_doubles():
    for bits in (1, 2, 4, 8, 16, 32):
        assert adder(2 * bits).box_count() == 2 * adder(bits).box_count()


def test_adder_halves_compose_to_adder():
    first, second = adder_halves(8)
    assert compose(first, second) == adder(8)
    assert first.type == (17, 13) and second.type == (13, 9)


def test_adder_rejects_non_powers():
    with pytest.raises(HarError):
        adder(3)
    with pytest.raises(HarError):
        adder(0)
    with pytest.raises(HarError):
        adder_halves(1)


class TestFamilies:
    def test_names(self):
        assert set(FAMILIES) == {"tensor", "compose-small", "compose-large", "adder"}
        with pytest.raises(KeyError):
            family("nope")

    @pytest.mark.parametrize("name", sorted(FAMILIES))
    def test_combinable_and_valid(self, name):
        fam = family(name)
        for k in range(1, 7):
            f, g = fam.build(k)
            h = fam.combine(f, g)
            assert validate(h) is None
            assert h.K == fam.result_size(f, g)

    def test_generator_counts(self):
        for k in range(1, 8):
            n = 2 ** (k - 1)
            for name in ("tensor", "compose-small", "compose-large"):
                f, g = family(name).build(k)
                assert f.box_count() == g.box_count() == n

    def test_compose_small_boundary(self):
        for k in range(1, 8):
            f, _ = family("compose-small").build(k)
            assert f.B == 1

    def test_compose_large_boundary(self):
        for k in range(1, 8):
            f, _ = family("compose-large").build(k)
            assert f.B == 2 ** (k - 1)

    def test_tensor_sizes_double(self):
        sizes = [family("tensor").result_size(*family("tensor").build(k)) for k in range(1, 6)]
        assert sizes == [8 * 2 ** (k - 1) for k in range(1, 6)]

    def test_adder_family(self):
        f, g = family("adder").build(3)
        assert compose(f, g) == adder(8)
