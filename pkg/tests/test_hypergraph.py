import pytest

from har.canonical import iso_eq
from har.circuits import BOOL_SIG
from har.core import HarError, Signature, compose, identity, singleton, tensor
from har.hypergraph import (
    compose_pushout, from_har, generator_cospan, hyp_iso, hypergraph, identity_cospan,
    relabel, symmetry_cospan, tensor_disjoint, to_har, validate_ma,
)
from har.terms import eval_hypergraph, random_term

from support import composable_triple, golden_har, golden_hypergraph, random_har


def test_empty_is_valid():
    assert validate_ma(hypergraph(BOOL_SIG, [], [], [], [])) is None


def test_golden_is_valid():
    assert validate_ma(golden_hypergraph()) is None


def test_monogamy_violation():
    h = hypergraph(BOOL_SIG, [0, 1, 2], [("not", [0], [1]), ("not", [0], [2])], [0], [1, 2])
    assert validate_ma(h) == "monogamy"


def test_arity_violation():
    h = hypergraph(BOOL_SIG, [0, 1], [("and", [0], [1])], [0], [1])
    assert validate_ma(h) == "arity"


def test_cycle_violation():
    h = hypergraph(BOOL_SIG, [0, 1], [("not", [0], [1]), ("not", [1], [0])], [], [])
    assert validate_ma(h) == "acyclic"


def test_interface_violation():
    h = hypergraph(BOOL_SIG, [0, 1], [("not", [0], [1])], [], [1])
    assert validate_ma(h) is not None


def test_pushout_with_identity():
    g = generator_cospan(BOOL_SIG, "and")
    assert hyp_iso(compose_pushout(g, identity_cospan(BOOL_SIG, 1)), g)
    assert hyp_iso(compose_pushout(identity_cospan(BOOL_SIG, 2), g), g)


def test_pushout_not_not():
    n = generator_cospan(BOOL_SIG, "not")
    h = compose_pushout(n, n)
    assert len(h.nodes) == 3 and len(h.edges) == 2
    assert validate_ma(h) is None
    assert h.edges[0].targets == h.edges[1].sources


def test_pushout_boundary_mismatch():
    with pytest.raises(HarError):
        compose_pushout(generator_cospan(BOOL_SIG, "and"), generator_cospan(BOOL_SIG, "and"))


def test_tensor_with_empty():
    n = generator_cospan(BOOL_SIG, "not")
    assert hyp_iso(tensor_disjoint(n, identity_cospan(BOOL_SIG, 0)), n)


def test_tensor_two_nots():
    n = generator_cospan(BOOL_SIG, "not")
    h = tensor_disjoint(n, n)
    assert len(h.nodes) == 4 and len(h.edges) == 2
    assert len(h.left) == 2
    assert h.left[0] != h.left[1]


def test_symmetry_cospan():
    s = symmetry_cospan(BOOL_SIG, 1, 2)
    assert s.right == (1, 2, 0)


def test_to_har_discrete():
    assert iso_eq(to_har(identity_cospan(BOOL_SIG, 2)), identity(2, BOOL_SIG))


def test_to_har_golden():
    assert iso_eq(to_har(golden_hypergraph()), golden_har())


def test_from_har_identity():
    h = from_har(identity(2, BOOL_SIG))
    assert h.nodes == (0, 1) and h.edges == () and h.left == h.right == (0, 1)


def test_from_har_golden():
    assert hyp_iso(from_har(golden_har()), golden_hypergraph())


def test_to_har_rejects_invalid():
    h = hypergraph(BOOL_SIG, [0, 1], [("not", [0], [1]), ("not", [1], [0])], [], [])
    with pytest.raises(HarError):
        to_har(h)


def test_iso_basics(rng):
    n = generator_cospan(BOOL_SIG, "not")
    assert hyp_iso(n, n)
    h = eval_hypergraph(random_term(rng, BOOL_SIG), BOOL_SIG)
    renamed = relabel(h, {v: 1000 - v for v in h.nodes})
    assert hyp_iso(renamed, h)
    assert not hyp_iso(compose_pushout(n, n), tensor_disjoint(n, n))


def test_roundtrips(rng):
    for _ in range(100):
        h = random_har(rng)
        assert iso_eq(to_har(from_har(h)), h)
        g = eval_hypergraph(random_term(rng, BOOL_SIG), BOOL_SIG)
        assert validate_ma(g) is None
        assert hyp_iso(from_har(to_har(g)), g)


def test_functorial(rng):
    for _ in range(100):
        f, g, _ = composable_triple(rng)
        assert hyp_iso(from_har(compose(f, g)), compose_pushout(from_har(f), from_har(g)))
        k = random_har(rng)
        assert hyp_iso(from_har(tensor(f, k)), tensor_disjoint(from_har(f), from_har(k)))


def test_signature_mismatch():
    other = Signature.of(("f", 1, 1))
    with pytest.raises(HarError):
        tensor_disjoint(generator_cospan(BOOL_SIG, "not"), generator_cospan(other, "f"))


def test_from_har_explicit_signature():
    h = from_har(singleton(BOOL_SIG, "not"), BOOL_SIG)
    assert h.signature == BOOL_SIG
