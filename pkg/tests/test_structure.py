"""Tests for classes, centralizers, quotients, Sylow and Hall subgroups."""

import pytest
from loguru import logger

from pidensity.constructions import (
    build,
    build_alt,
    build_cyclic,
    build_extraspecial,
    build_semidirect,
    build_sl2,
    build_sym,
    build_with_factors,
    catalogue,
    parse_group_expr,
)
from pidensity.errors import (
    ElementNotInGroup,
    IndexExceedsCap,
    NotNormal,
    OrderExceedsCap,
    PrimeDoesNotDivideOrder,
)
from pidensity.harness import _tested_normals
from pidensity.invariants import PrimeSet, pi_part, prime_divisors
from pidensity.perm import PermGroup, Permutation
from pidensity.structure import (
    HallStatus,
    SubgroupHandle,
    center,
    centralizer,
    centralizer_of_subgroup,
    closure,
    conjugacy_classes,
    conjugate_subgroup,
    conjugates,
    construct_nilpotent_hall,
    derived_subgroup,
    find_commuting_sylow_pair,
    has_abelian_hall,
    has_nilpotent_hall,
    has_normal_sylow,
    is_abelian,
    is_cp_x_cp,
    is_elementary_abelian,
    is_nilpotent,
    is_normal,
    is_sigma3,
    normal_closure,
    normalizer,
    num_sylow,
    p_element_count,
    quotient,
    sylow,
)


def group(text):
    return build(parse_group_expr(text))


@pytest.fixture
def warnings_logged():
    messages = []
    handler = logger.add(messages.append, level="WARNING", format="{message}")
    yield messages
    logger.remove(handler)


def catalogue_groups(max_order):
    for entry in catalogue():
        G, factors = build_with_factors(entry.expr)
        if G.order() <= max_order:
            yield entry.name, G, factors


class TestConjugacyClasses:
    """Class partitions and their ordering."""

    def test_sym3_class_sizes(self):
        classes = conjugacy_classes(build_sym(3))
        assert [c.size for c in classes] == [1, 3, 2]
        assert [c.order_of_rep for c in classes] == [1, 2, 3]

    def test_class_numbers(self):
        assert len(conjugacy_classes(build_sym(4))) == 5
        assert len(conjugacy_classes(build_sl2(5))) == 9
        assert len(conjugacy_classes(build_alt(5))) == 5

    def test_sizes_partition_the_group(self):
        G = build_sym(5)
        classes = conjugacy_classes(G)
        assert sum(c.size for c in classes) == G.order()
        assert all(G.order() % c.size == 0 for c in classes)

    def test_size_is_index_of_centralizer(self):
        G = build_alt(5)
        for c in conjugacy_classes(G):
            assert c.size * centralizer(G, c.representative).order() == G.order()

    def test_representative_is_smallest_member(self):
        G = build_sym(4)
        for c in conjugacy_classes(G):
            members = {c.representative.conjugate(g) for g in G.elements()}
            assert c.representative == min(members)
            assert len(members) == c.size

    def test_cap(self):
        with pytest.raises(OrderExceedsCap):
            conjugacy_classes(build_sym(6), cap=100)


class TestCentralizersAndCenter:
    """Centralizers, centers and derived subgroups."""

    def test_centralizer_of_identity_is_whole_group(self):
        G = build_sym(4)
        assert centralizer(G, G.identity).order() == 24

    def test_centralizer_of_four_cycle(self):
        G = build_sym(4)
        c = Permutation.from_cycles(4, [(0, 1, 2, 3)])
        assert centralizer(G, c).order() == 4

    def test_centralizer_strictly_contains_center_for_noncentral_element(self):
        G = build_sym(4)
        x = Permutation.from_cycles(4, [(0, 1)])
        assert centralizer(G, x).order() > center(G).order()

    def test_centralizer_rejects_outsider(self):
        with pytest.raises(ElementNotInGroup):
            centralizer(build_alt(4), Permutation.from_cycles(4, [(0, 1)]))

    def test_centralizer_of_subgroup(self):
        G = build_extraspecial(3)
        assert centralizer_of_subgroup(G, G).order() == 3

    def test_center(self):
        assert center(build_cyclic(6)).order() == 6
        assert center(build_sym(3)).order() == 1
        assert center(build_extraspecial(3)).order() == 3
        assert center(build_sl2(5)).order() == 2

    def test_derived_subgroup(self):
        assert derived_subgroup(build_cyclic(12)).order() == 1
        assert derived_subgroup(build_sym(3)).order() == 3
        assert derived_subgroup(build_extraspecial(3)).order() == 3
        assert derived_subgroup(build_sym(4)).order() == 12

    def test_normal_closure_of_transposition_is_sym(self):
        G = build_sym(4)
        N = normal_closure(G, [Permutation.from_cycles(4, [(0, 1)])])
        assert N.order() == 24

    def test_handle_records_ambient(self):
        G = build_sym(3)
        handle = derived_subgroup(G)
        assert isinstance(handle, SubgroupHandle)
        assert handle.ambient is G
        assert all(G.contains(g) for g in handle.generators)


class TestNormalityAndQuotients:
    """Normal subgroups and coset actions."""

    def setup_method(self):
        self.S4 = build_sym(4)
        self.V4 = self.S4.subgroup(
            [Permutation.from_cycles(4, [(0, 1), (2, 3)]), Permutation.from_cycles(4, [(0, 2), (1, 3)])]
        )

    def test_characteristic_subgroups_are_normal(self):
        assert is_normal(self.S4, derived_subgroup(self.S4))
        assert is_normal(self.S4, center(self.S4))
        assert is_normal(self.S4, self.V4)

    def test_point_stabilizer_of_alt5_not_normal(self):
        A5 = build_alt(5)
        stabilizer = A5.subgroup(
            [Permutation.from_cycles(5, [(1, 2, 3)]), Permutation.from_cycles(5, [(2, 3, 4)])]
        )
        assert stabilizer.order() == 12
        assert not is_normal(A5, stabilizer)

    def test_quotient_by_trivial_keeps_order(self):
        assert quotient(self.S4, self.S4.subgroup([])).order() == 24

    def test_quotient_sym4_by_klein_four_is_sigma3(self):
        Q = quotient(self.S4, self.V4)
        assert Q.order() == 6
        assert is_sigma3(Q)

    def test_quotient_sl2_5_by_center(self):
        G = build_sl2(5)
        assert quotient(G, center(G)).order() == 60

    def test_quotient_extraspecial_by_center_is_cp_x_cp(self):
        G = build_extraspecial(3)
        assert is_cp_x_cp(quotient(G, center(G)), 3)

    def test_quotient_requires_normal(self):
        S3 = build_sym(3)
        with pytest.raises(NotNormal):
            quotient(S3, S3.subgroup([Permutation.from_cycles(3, [(0, 1)])]))

    def test_quotient_index_limit(self):
        G = build_sym(5)
        with pytest.raises(IndexExceedsCap) as exc:
            quotient(G, G.subgroup([]), index_limit=100)
        assert exc.value.index == 120

    def test_index_limit_applies_after_cached_quotient(self):
        G = build_sym(5)
        trivial = G.subgroup([])
        assert quotient(G, trivial).order() == 120
        with pytest.raises(IndexExceedsCap):
            quotient(G, trivial, index_limit=10)
        with pytest.raises(IndexExceedsCap):
            quotient(G, trivial, cap=50)
        assert quotient(G, trivial).order() == 120

    def test_conjugate_subgroup(self):
        S3 = build_sym(3)
        H = S3.subgroup([Permutation.from_cycles(3, [(0, 1)])])
        g = Permutation.from_cycles(3, [(1, 2)])
        assert conjugate_subgroup(H, g).generators == (Permutation.from_cycles(3, [(0, 2)]),)

    def test_closure_matches_chain(self):
        G = build_alt(4)
        assert sorted(closure(list(G.generators))) == sorted(G.elements())


class TestSylow:
    """Sylow construction and counts."""

    def test_sylow_orders(self):
        assert sylow(build_sym(4), 2).order() == 8
        assert sylow(build_sym(5), 5).order() == 5
        assert sylow(build_sl2(7), 2).order() == 16

    def test_sylow_3_of_alt7_is_elementary_abelian(self):
        P = sylow(build_alt(7), 3)
        assert P.order() == 9
        assert is_elementary_abelian(P, 3)

    def test_sylow_of_frobenius_group_is_normal(self):
        G = build_semidirect(7, 3)
        P = sylow(G, 7)
        assert P.order() == 7
        assert is_normal(G, P)
        assert has_normal_sylow(G, 7)
        assert not has_normal_sylow(G, 3)

    def test_sylow_requires_divisor(self):
        with pytest.raises(PrimeDoesNotDivideOrder):
            sylow(build_sym(3), 5)

    def test_normalizer(self):
        S3 = build_sym(3)
        assert normalizer(S3, sylow(S3, 3)).order() == 6
        assert normalizer(build_sym(4), sylow(build_sym(4), 3)).order() == 6

    def test_normalizer_cap(self):
        G = build_sym(5)
        with pytest.raises(OrderExceedsCap):
            normalizer(G, sylow(G, 5), cap=60)

    def test_num_sylow(self):
        assert num_sylow(build_sym(4), 3) == 4
        assert num_sylow(build_alt(5), 5) == 6
        assert num_sylow(build_alt(5), 2) == 5
        assert num_sylow(build_semidirect(7, 3), 3) == 7

    def test_conjugates_of_sylow(self):
        G = build_sym(4)
        listed = conjugates(G, sylow(G, 3))
        assert len(listed) == 4
        assert len({frozenset(H.elements()) for H, _ in listed}) == 4

    def test_p_element_count(self):
        assert p_element_count(build_sym(3), 3) == 3
        assert p_element_count(build_sym(3), 2) == 4


class TestHall:
    """Nilpotent and abelian Hall subgroup decisions and witnesses."""

    def test_commuting_pair_in_cyclic(self):
        assert find_commuting_sylow_pair(build_cyclic(15), 3, 5) is not None

    def test_no_commuting_pair_in_frobenius_group(self):
        assert find_commuting_sylow_pair(build_semidirect(7, 3), 3, 7) is None

    def test_commuting_pair_in_direct_product(self):
        pair = find_commuting_sylow_pair(group("Extraspecial(3) x Cyclic(5)"), 3, 5)
        assert pair is not None
        P, Q = pair
        assert (P.order(), Q.order()) == (27, 5)

    def test_single_prime_always_has_hall(self):
        assert has_nilpotent_hall(build_alt(5), PrimeSet.of(5))

    def test_alt5_has_no_nilpotent_hall_35(self):
        assert not has_nilpotent_hall(build_alt(5), PrimeSet.of(3, 5))

    def test_converse_family_has_nilpotent_hall(self):
        G = group("Extraspecial(3) x Dihedral(5) x Dihedral(7)")
        assert has_nilpotent_hall(G, PrimeSet.of(3, 5, 7))

    def test_abelian_hall(self):
        assert has_abelian_hall(build_cyclic(105), PrimeSet.of(3, 5, 7))
        assert not has_abelian_hall(group("Extraspecial(3) x Cyclic(5)"), PrimeSet.of(3, 5))
        assert has_abelian_hall(build_sym(3), PrimeSet.of(3))

    def test_nondividing_primes_are_ignored(self):
        assert has_nilpotent_hall(build_sym(3), PrimeSet.of(3, 7))

    def test_nondividing_primes_warn_once_per_group(self, warnings_logged):
        G = build_cyclic(15)
        pi = PrimeSet.of(3, 5, 7)
        assert has_nilpotent_hall(G, pi)
        assert has_abelian_hall(G, pi)
        assert construct_nilpotent_hall(G, pi).status is HallStatus.CONSTRUCTED
        ignored = [m for m in warnings_logged if "Ignoring primes" in m]
        assert len(ignored) == 1

    def test_construct_pair_witness(self):
        witness = construct_nilpotent_hall(build_cyclic(15), PrimeSet.of(3, 5))
        assert witness.status is HallStatus.CONSTRUCTED
        assert witness.subgroup is not None
        assert witness.subgroup.order() == 15

    def test_construct_three_prime_witness(self):
        G = group("Extraspecial(3) x Dihedral(5) x Dihedral(7)")
        witness = construct_nilpotent_hall(G, PrimeSet.of(3, 5, 7))
        assert witness.status is HallStatus.CONSTRUCTED
        H = witness.subgroup.subgroup
        assert H.order() == 945
        assert is_nilpotent(H)
        assert derived_subgroup(H).order() == 3

    def test_construct_reports_absence(self):
        witness = construct_nilpotent_hall(build_semidirect(7, 3), PrimeSet.of(3, 7))
        assert witness.status is HallStatus.NONE_EXISTS
        assert witness.subgroup is None

    def test_construct_with_exhausted_budget(self):
        G = group("Sym(3) x Dihedral(5) x Dihedral(7)")
        witness = construct_nilpotent_hall(G, PrimeSet.of(3, 5, 7), budget=0)
        assert witness.status is HallStatus.EXISTS_BY_LEMMA_ONLY


class TestPredicates:
    def test_abelian(self):
        assert is_abelian(build_cyclic(12))
        assert not is_abelian(build_sym(3))

    def test_nilpotent(self):
        assert is_nilpotent(build_extraspecial(3))
        assert is_nilpotent(group("Extraspecial(3) x Cyclic(5)"))
        assert not is_nilpotent(build_sym(3))
        assert not is_nilpotent(build_alt(4))

    def test_elementary_abelian(self):
        assert is_elementary_abelian(group("ElemAbelian(3,2)"), 3)
        assert not is_elementary_abelian(build_cyclic(9), 3)
        assert not is_elementary_abelian(build_cyclic(6), 3)

    def test_sigma3(self):
        assert is_sigma3(build_sym(3))
        assert not is_sigma3(build_cyclic(6))


@pytest.mark.slow
class TestCatalogueConsistency:
    """Sylow and quotient facts over every catalogue group small enough to enumerate."""

    MAX_ORDER = 10_000

    def test_sylow_counts(self):
        for name, G, _ in catalogue_groups(self.MAX_ORDER):
            for p in prime_divisors(G.order()):
                n = num_sylow(G, p)
                assert n % p == 1, (name, p, n)
                assert (G.order() // pi_part(G.order(), PrimeSet.of(p))) % n == 0, (name, p, n)

    def test_sylow_subgroups_from_other_generators_are_conjugate(self):
        for name, G, _ in catalogue_groups(self.MAX_ORDER):
            gens = list(G.generators)
            product = gens[0]
            for g in gens[1:]:
                product = product * g
            rebuilt = PermGroup(list(reversed(gens)) + [product], degree=G.degree)
            assert rebuilt.order() == G.order()
            for p in prime_divisors(G.order()):
                other = sylow(rebuilt, p).subgroup.element_set()
                listed = conjugates(G, sylow(G, p))
                assert any(H.element_set() == other for H, _ in listed), (name, p)

    def test_quotient_orders_multiply(self):
        for name, G, factors in catalogue_groups(self.MAX_ORDER):
            for label, N in _tested_normals(G, factors, 2_000_000):
                try:
                    Q = quotient(G, N, index_limit=1500)
                except IndexExceedsCap:
                    continue
                assert G.order() == N.order() * Q.order(), (name, label)
