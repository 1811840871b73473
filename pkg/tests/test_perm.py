"""Tests for permutations and the stabilizer chain."""

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pidensity.constructions import build, build_alt, build_cyclic, build_dihedral, build_sym, catalogue
from pidensity.errors import DegreeMismatch, DegreeTooLarge, InvalidParameters, OrderExceedsCap
from pidensity.perm import (
    MAX_DEGREE,
    PermGroup,
    Permutation,
    closure_elements,
    commutator,
    compose,
    contains,
    element_order,
    elements,
    format_cycles,
    group_order,
    inverse,
    parse_cycles,
)


def permutations(max_degree: int = 9) -> st.SearchStrategy[Permutation]:
    return st.integers(min_value=1, max_value=max_degree).flatmap(
        lambda n: st.permutations(list(range(n))).map(Permutation)
    )


def pairs(max_degree: int = 9) -> st.SearchStrategy[tuple]:
    return st.integers(min_value=1, max_value=max_degree).flatmap(
        lambda n: st.tuples(
            st.permutations(list(range(n))).map(Permutation),
            st.permutations(list(range(n))).map(Permutation),
        )
    )


class TestPermutation:
    """Construction, products and notation."""

    def test_rejects_non_bijection(self):
        with pytest.raises(InvalidParameters, match="not a bijection"):
            Permutation([0, 0, 1])

    def test_rejects_empty(self):
        with pytest.raises(InvalidParameters):
            Permutation([])

    def test_compose_acts_left_to_right(self):
        a = Permutation.from_cycles(3, [(0, 1)])
        b = Permutation.from_cycles(3, [(1, 2)])
        product = compose(a, b)
        assert product[0] == b[a[0]] == 2
        assert product == Permutation.from_cycles(3, [(0, 2, 1)])
        assert a * b == product

    def test_compose_degree_mismatch(self):
        with pytest.raises(DegreeMismatch, match="3 != 4"):
            compose(Permutation.identity(3), Permutation.identity(4))

    def test_inverse_of_three_cycle(self):
        c = Permutation.from_cycles(3, [(0, 1, 2)])
        assert inverse(c) == Permutation.from_cycles(3, [(0, 2, 1)])
        assert ~Permutation.identity(5) == Permutation.identity(5)

    def test_element_order_is_lcm_of_cycle_lengths(self):
        assert element_order(Permutation.from_cycles(5, [(0, 1), (2, 3, 4)])) == 6
        assert element_order(Permutation.identity(4)) == 1
        assert Permutation.from_cycles(7, [(0, 1, 2, 3, 4, 5, 6)]).order() == 7

    def test_power_and_negative_power(self):
        c = Permutation.from_cycles(5, [(0, 1, 2, 3, 4)])
        assert (c ** 5).is_identity()
        assert c ** -1 == ~c
        assert c ** 2 == c * c

    def test_commutator_of_commuting_elements_is_identity(self):
        a = Permutation.from_cycles(4, [(0, 1)])
        b = Permutation.from_cycles(4, [(2, 3)])
        assert commutator(a, b).is_identity()

    def test_conjugate(self):
        x = Permutation.from_cycles(3, [(0, 1)])
        g = Permutation.from_cycles(3, [(1, 2)])
        assert x.conjugate(g) == ~g * x * g == Permutation.from_cycles(3, [(0, 2)])

    def test_cycle_notation_round_trip(self):
        p = Permutation.from_cycles(6, [(0, 3), (1, 4, 5)])
        assert str(p) == "(0 3)(1 4 5)"
        assert parse_cycles(str(p), 6) == p
        assert format_cycles(Permutation.identity(3)) == "()"

    def test_parse_cycles_accepts_commas(self):
        assert parse_cycles("(0,1,2)", 4) == Permutation.from_cycles(4, [(0, 1, 2)])

    def test_parse_cycles_rejects_garbage(self):
        with pytest.raises(InvalidParameters, match="malformed"):
            parse_cycles("(0 1", 3)

    def test_from_cycles_rejects_repeated_point(self):
        with pytest.raises(InvalidParameters, match="two cycles"):
            Permutation.from_cycles(4, [(0, 1), (1, 2)])

    @given(permutations())
    def test_inverse_law(self, p):
        assert compose(p, inverse(p)).is_identity()
        assert compose(inverse(p), p).is_identity()
        assert inverse(inverse(p)) == p

    @given(permutations())
    def test_identity_law(self, p):
        e = Permutation.identity(p.degree)
        assert compose(p, e) == p
        assert compose(e, p) == p

    @given(pairs())
    def test_inverse_of_product_reverses(self, ab):
        a, b = ab
        assert inverse(compose(a, b)) == compose(inverse(b), inverse(a))

    @given(permutations())
    def test_order_annihilates(self, p):
        assert (p ** element_order(p)).is_identity()


class TestPermGroup:
    """Orders, membership and enumeration."""

    def test_orders_of_standard_groups(self):
        assert group_order(build_sym(4)) == 24
        assert group_order(build_alt(5)) == 60
        assert group_order(build_cyclic(6)) == 6
        assert group_order(build_sym(1)) == 1

    def test_order_is_product_of_orbit_lengths(self):
        G = build_sym(5)
        product = 1
        for length in G.chain.orbit_lengths():
            product *= length
        assert product == G.order() == 120

    def test_base_point_is_smallest_point_moved_by_opening_generator(self):
        for G in (build_sym(5), build_alt(6), build_dihedral(7)):
            chain = G.chain
            assert PermGroup(G.generators, degree=G.degree).chain.base == chain.base
            for level, point in enumerate(chain.base):
                fixed = chain.base[:level]
                assert any(
                    all(s[b] == b for b in fixed) and min(i for i, x in enumerate(s) if i != x) == point
                    for s in chain.strong
                ), (G, level)

    def test_base_follows_generator_order(self):
        G = PermGroup([Permutation.from_cycles(4, [(2, 3)]), Permutation.from_cycles(4, [(0, 1)])])
        assert G.chain.base == [2, 0]
        assert G.order() == 4

    def test_generators_are_members(self):
        G = build_alt(6)
        assert all(contains(G, g) for g in G.generators)

    def test_membership_rejects_odd_permutation(self):
        G = build_alt(5)
        transposition = Permutation.from_cycles(5, [(0, 1)])
        assert not G.contains(transposition)
        assert transposition not in G

    def test_contains_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            build_sym(3).contains(Permutation.identity(4))

    def test_elements_of_cyclic(self):
        assert len(list(elements(build_cyclic(6)))) == 6

    def test_elements_of_sym4_are_distinct_members(self):
        G = build_sym(4)
        listed = list(G.elements())
        assert len(set(listed)) == 24
        assert all(G.contains(g) for g in listed)

    def test_element_cap(self):
        with pytest.raises(OrderExceedsCap, match="24") as exc:
            list(build_sym(4).elements(cap=10))
        assert exc.value.order == 24

    def test_degree_limit(self):
        with pytest.raises(DegreeTooLarge):
            PermGroup([], degree=MAX_DEGREE + 1)

    def test_mixed_degrees_rejected(self):
        with pytest.raises(DegreeMismatch):
            PermGroup([Permutation.identity(3), Permutation.identity(4)])

    def test_trivial_group(self):
        G = PermGroup([], degree=4)
        assert G.is_trivial()
        assert list(G.elements()) == [Permutation.identity(4)]

    def test_element_order_divides_group_order(self):
        G = build_sym(5)
        assert all(G.order() % element_order(g) == 0 for g in G.elements())

    def test_sifting_soundness_on_random_products(self):
        rng = random.Random(7)
        G = build_alt(7)
        for _ in range(100):
            g = Permutation.identity(7)
            for _ in range(rng.randint(1, 12)):
                g = g * rng.choice(G.generators)
            assert G.contains(g)

    def test_sifting_rejects_random_outsiders(self):
        rng = random.Random(11)
        G = build_dihedral(5)
        members = set(closure_elements(list(G.generators)))
        rejected = 0
        for _ in range(100):
            images = list(range(5))
            rng.shuffle(images)
            p = Permutation(images)
            assert G.contains(p) == (p in members)
            rejected += p not in members
        assert rejected > 0

    @pytest.mark.slow
    def test_order_matches_closure_for_small_catalogue_groups(self):
        for entry in catalogue():
            G = build(entry.expr)
            if G.order() <= 10_000:
                assert len(closure_elements(list(G.generators))) == G.order(), entry.name
