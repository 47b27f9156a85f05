import random

import pytest
from hypothesis import given, settings, strategies as st

from har.canonical import iso_eq
from har.circuits import BOOL_SIG
from har.core import compose, identity, permutation, singleton, tensor, validate
from har.hypergraph import from_har, hyp_iso
from har.sparse import Perm, block_swap
from har.terms import (
    Gen, Id, Par, Seq, Sym, TermSyntaxError, TermTypeError, decompose, eval_har,
    eval_hypergraph, generator_count, is_layered_normal_form, parse, perm_to_term,
    random_term, show, typecheck,
)

from support import GOLDEN_SIG, GOLDEN_TERM, golden_har, random_har


class TestParse:
    def test_identity(self):
        assert parse("id 0") == Id(0)

    def test_precedence(self):
        assert parse("(not ; not) * and") == Par(Seq(Gen("not"), Gen("not")), Gen("and"))
        assert parse("not ; not * and") == Seq(Gen("not"), Par(Gen("not"), Gen("and")))

    def test_left_associative(self):
        assert parse("a ; b ; c") == Seq(Seq(Gen("a"), Gen("b")), Gen("c"))
        assert parse("a * b * c") == Par(Par(Gen("a"), Gen("b")), Gen("c"))

    def test_symmetry(self):
        assert parse("sym 2 3") == Sym(2, 3)

    def test_whitespace(self):
        assert parse("  (id 1*sym 1 1);not*id 2 ") == parse("(id 1 * sym 1 1) ; not * id 2")

    @pytest.mark.parametrize("text,pos", [
        ("", 0), ("not ;", 5), ("id", 2), ("(not", 4), ("not )", 4), ("not $ and", 4),
        ("sym 1", 5), ("id x", 3),
    ])
    def test_errors_carry_position(self, text, pos):
        with pytest.raises(TermSyntaxError) as info:
            parse(text)
        assert info.value.pos == pos

    def test_unknown_generator_is_a_type_error(self):
        t = parse("or")
        with pytest.raises(TermTypeError):
            typecheck(t, BOOL_SIG)

    def test_show_roundtrip(self):
        rng = random.Random(11)
        for _ in range(1000):
            t = random_term(rng, BOOL_SIG, max_gens=8)
            assert parse(show(t)) == t

    def test_show_normalized_text(self):
        for text in ("(not ; not) * and", "not ; not * and", "a * (b * c)", "(a ; b) ; c ; d",
                     "a ; (b ; c)", "sym 1 2 * id 0"):
            normal = show(parse(text))
            assert show(parse(normal)) == normal
        assert show(parse("((a ; b)) ; c")) == "a ; b ; c"

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 2 ** 31))
    def test_show_roundtrip_property(self, seed):
        t = random_term(random.Random(seed), BOOL_SIG, max_gens=12)
        assert parse(show(t)) == t


class TestTypes:
    def test_identity(self):
        assert typecheck(Id(3), BOOL_SIG) == (3, 3)

    def test_sequence(self):
        assert typecheck(Seq(Gen("and"), Gen("not")), BOOL_SIG) == (2, 1)

    def test_mismatch(self):
        with pytest.raises(TermTypeError):
            typecheck(Seq(Gen("not"), Gen("and")), BOOL_SIG)

    def test_parallel_and_symmetry(self):
        assert typecheck(parse("sym 1 2 * copy"), BOOL_SIG) == (4, 5)

    def test_generator_count(self):
        assert generator_count(parse("(copy * not) ; (xor * id 1) ; sym 1 1")) == 3

    def test_random_terms_typecheck(self, rng):
        for _ in range(200):
            t = random_term(rng, BOOL_SIG, max_gens=8)
            typecheck(t, BOOL_SIG)
            assert generator_count(t) <= 8


class TestEval:
    def test_identity(self):
        assert eval_har(Id(2), BOOL_SIG) == identity(2, BOOL_SIG)

    def test_golden(self):
        assert iso_eq(eval_har(parse(GOLDEN_TERM), GOLDEN_SIG), golden_har())

    def test_homomorphism(self, rng):
        for _ in range(100):
            t1 = random_term(rng, BOOL_SIG)
            _, b = typecheck(t1, BOOL_SIG)
            t2 = random_term(rng, BOOL_SIG, dom=b)
            h1, h2 = eval_har(t1, BOOL_SIG), eval_har(t2, BOOL_SIG)
            assert iso_eq(eval_har(Seq(t1, t2), BOOL_SIG), compose(h1, h2))
            assert iso_eq(eval_har(Par(t1, t2), BOOL_SIG), tensor(h1, h2))

    def test_oracle(self, rng):
        for _ in range(200):
            t = random_term(rng, BOOL_SIG, max_gens=8)
            h = eval_har(t, BOOL_SIG)
            assert validate(h) is None
            assert hyp_iso(from_har(h), eval_hypergraph(t, BOOL_SIG))

    def test_type_error_propagates(self):
        with pytest.raises(TermTypeError):
            eval_har(parse("not ; and"), BOOL_SIG)

    def test_deep_term(self):
        t = parse(" ; ".join(["not"] * 2000))
        h = eval_har(t, BOOL_SIG)
        assert h.K == 4001 and h.box_count() == 2000


class TestDecompose:
    def test_identity(self):
        assert decompose(identity(3, BOOL_SIG)) == Id(3)

    def test_singleton(self):
        s = singleton(BOOL_SIG, "and")
        t = decompose(s)
        assert is_layered_normal_form(t)
        assert iso_eq(eval_har(t, BOOL_SIG), s)

    def test_golden(self):
        h = golden_har()
        assert iso_eq(eval_har(decompose(h), GOLDEN_SIG), h)

    def test_roundtrip(self, rng):
        for _ in range(200):
            h = random_har(rng)
            t = decompose(h)
            assert is_layered_normal_form(t)
            assert generator_count(t) == h.box_count()
            assert iso_eq(eval_har(t, BOOL_SIG), h)

    def test_normal_form_check(self):
        assert not is_layered_normal_form(parse("not * not"))
        assert not is_layered_normal_form(parse("id 1 ; not ; not ; id 1"))
        assert is_layered_normal_form(parse("id 1 ; not ; id 1"))


class TestPermToTerm:
    def test_identity(self):
        assert perm_to_term(Perm.identity(4)) == Id(4)

    def test_single_swap(self):
        t = perm_to_term(block_swap(1, 1))
        assert t == Sym(1, 1)
        assert iso_eq(eval_har(t, BOOL_SIG), eval_har(Sym(1, 1), BOOL_SIG))

    def test_random(self, rng):
        for _ in range(100):
            n = rng.randint(0, 8)
            order = list(range(n))
            rng.shuffle(order)
            p = Perm(order)
            assert iso_eq(eval_har(perm_to_term(p), BOOL_SIG), permutation(p, BOOL_SIG))
