"""Exhaustive subgroup searches used to cross-check the Hall decisions on small groups.

Nothing here uses the stabilizer chain beyond enumerating the ambient group: subgroups
are plain frozensets of permutations grown by hand, so agreement with
:mod:`pidensity.structure` is an independent confirmation.
"""

from itertools import product
from typing import FrozenSet, List, Optional, Sequence, Set, Tuple

from loguru import logger

from .errors import OrderExceedsCap
from .invariants import PrimeSet, is_pi_number, pi_part, prime_divisors
from .perm import PermGroup, Permutation, _conj, _mul, element_order

ORACLE_MAX_ORDER = 2000

ElementSet = FrozenSet[Permutation]


def _guard(G: PermGroup, max_order: int) -> Tuple[Permutation, ...]:
    if G.order() > max_order:
        raise OrderExceedsCap(G.order(), max_order)
    return G.element_list()


def _normalizes(y: Permutation, members: ElementSet) -> bool:
    return all(_conj(s, y) in members for s in members)


def p_subgroups_of_order(
    G: PermGroup, p: int, order: int, max_order: int = ORACLE_MAX_ORDER
) -> List[ElementSet]:
    """All subgroups of ``G`` of the given ``p``-power order.

    Every ``p``-subgroup of order ``p^(k+1)`` contains a normal subgroup of order ``p^k``,
    so growing one cyclic extension at a time reaches all of them.
    """
    elements = _guard(G, max_order)
    prime = PrimeSet(primes=(p,))
    if order == G.order():
        return [frozenset(elements)]
    p_elements = [x for x in elements if not x.is_identity() and is_pi_number(element_order(x), prime)]
    level: Set[ElementSet] = {frozenset([G.identity])}
    size = 1
    while size < order:
        grown: Set[ElementSet] = set()
        for members in level:
            for y in p_elements:
                if y in members or (y ** p) not in members or not _normalizes(y, members):
                    continue
                coset_powers = [y ** j for j in range(p)]
                grown.add(frozenset(_mul(s, c) for c in coset_powers for s in members))
        level = grown
        size *= p
    return sorted(level, key=lambda s: sorted(s))


def sylow_subgroups(G: PermGroup, p: int, max_order: int = ORACLE_MAX_ORDER) -> List[ElementSet]:
    return p_subgroups_of_order(G, p, pi_part(G.order(), PrimeSet(primes=(p,))), max_order)


def _generated(
    generators: Sequence[Permutation], identity: Permutation, limit: Optional[int] = None
) -> Optional[ElementSet]:
    """Closure of ``generators`` by breadth-first products; ``None`` once it outgrows ``limit``."""
    seen = {identity}
    queue = [identity]
    for x in queue:
        for s in generators:
            y = _mul(x, s)
            if y not in seen:
                seen.add(y)
                if limit is not None and len(seen) > limit:
                    return None
                queue.append(y)
    return frozenset(seen)


def _is_nilpotent_set(members: ElementSet) -> bool:
    """Nilpotency of a subgroup given as its element set.

    A finite group is nilpotent iff for every prime ``p`` it has exactly ``|H|_p``
    elements of ``p``-power order, i.e. its Sylow ``p``-subgroup is unique.
    """
    order = len(members)
    for p in prime_divisors(order):
        prime = PrimeSet(primes=(p,))
        count = sum(1 for x in members if is_pi_number(element_order(x), prime))
        if count != pi_part(order, prime):
            return False
    return True


def hall_subgroups_oracle(
    G: PermGroup, pi: PrimeSet, max_order: int = ORACLE_MAX_ORDER
) -> List[ElementSet]:
    """Every Hall ``pi``-subgroup of ``G``, nilpotent or not.

    A Hall ``pi``-subgroup contains a Sylow ``p``-subgroup of ``G`` for each ``p`` in ``pi``
    and is generated by them, so closing every choice of one Sylow subgroup per prime
    and keeping the closures of order ``|G|_pi`` finds all of them.
    """
    _guard(G, max_order)
    target = pi_part(G.order(), pi)
    if target == 1:
        return [frozenset([G.identity])]
    primes = [p for p in pi.primes if G.order() % p == 0]
    families = [sylow_subgroups(G, p, max_order) for p in primes]
    logger.debug(
        "Oracle Sylow counts",
        group=G.name,
        counts={p: len(f) for p, f in zip(primes, families)},
    )
    found: Set[ElementSet] = set()
    for choice in product(*families):
        gens = sorted({x for members in choice for x in members if not x.is_identity()})
        closed = _generated(gens, G.identity, target)
        if closed is not None and len(closed) == target:
            found.add(closed)
    return sorted(found, key=lambda s: sorted(s))


def has_hall_oracle(G: PermGroup, pi: PrimeSet, max_order: int = ORACLE_MAX_ORDER) -> bool:
    return bool(hall_subgroups_oracle(G, pi, max_order))


def nilpotent_hall_oracle(G: PermGroup, pi: PrimeSet, max_order: int = ORACLE_MAX_ORDER) -> bool:
    """Whether some Hall ``pi``-subgroup found by :func:`hall_subgroups_oracle` is nilpotent.

    Nilpotency is read off each element set by counting prime-power elements, with no
    use of commuting Sylow pairs.
    """
    return any(_is_nilpotent_set(H) for H in hall_subgroups_oracle(G, pi, max_order))
