"""Subgroup-level machinery: classes, centralizers, normalizers, Sylow and Hall subgroups.

Every function here is deterministic. Orbits are explored breadth first over the
generators in their stored order, and ties are broken by the lexicographic order of
image tuples, so repeated calls produce the same subgroups with the same generators.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Dict, Hashable, List, Optional, Sequence, Tuple, Union

from loguru import logger
from sympy import isprime

from .errors import (
    ElementNotInGroup,
    IndexExceedsCap,
    NotNormal,
    NotPrime,
    OrderExceedsCap,
    PrimeDoesNotDivideOrder,
)
from .invariants import PrimeSet, pi_part, prime_divisors
from .perm import (
    DEFAULT_CAP,
    MAX_DEGREE,
    PermGroup,
    Permutation,
    _comm,
    _conj,
    _inv,
    _mul,
    closure_elements,
    element_order,
)

SUBGROUP_KEY_LIMIT = 10_000
HALL_SEARCH_BUDGET = 200_000


@dataclass(frozen=True)
class ConjClass:
    representative: Permutation
    size: int
    order_of_rep: int


@dataclass(frozen=True)
class SubgroupHandle:
    """A subgroup together with the group it was computed in."""

    ambient: PermGroup
    subgroup: PermGroup

    def order(self) -> int:
        return self.subgroup.order()

    @property
    def generators(self) -> Tuple[Permutation, ...]:
        return self.subgroup.generators


GroupLike = Union[PermGroup, SubgroupHandle]


class HallStatus(str, Enum):
    CONSTRUCTED = "constructed"
    NONE_EXISTS = "none_exists"
    EXISTS_BY_LEMMA_ONLY = "exists_by_lemma_only"


@dataclass(frozen=True)
class HallWitness:
    subgroup: Optional[SubgroupHandle]
    status: HallStatus


def as_group(H: GroupLike) -> PermGroup:
    return H.subgroup if isinstance(H, SubgroupHandle) else H


def _require_prime_divisor(G: PermGroup, p: int) -> None:
    if not isprime(p):
        raise NotPrime(p)
    if G.order() % p:
        raise PrimeDoesNotDivideOrder(p, G.order())


def _commute(a: Sequence[int], b: Sequence[int]) -> bool:
    return _mul(a, b) == _mul(b, a)


def _nontrivial(gens: Sequence[Permutation]) -> List[Permutation]:
    return [g for g in gens if not g.is_identity()]


# Orbit-stabilizer over an arbitrary right action

def _orbit(
    G: PermGroup,
    seed: Any,
    act: Callable[[Any, Permutation], Any],
    key: Callable[[Any], Hashable],
) -> Tuple[List[Hashable], Dict[Hashable, Tuple[Any, Permutation]], Dict[Tuple[Hashable, int], Hashable]]:
    """Breadth-first orbit of ``seed`` with a transversal and the Schreier graph edges."""
    start = key(seed)
    transversal: Dict[Hashable, Tuple[Any, Permutation]] = {start: (seed, G.identity)}
    keys = [start]
    edges: Dict[Tuple[Hashable, int], Hashable] = {}
    for k in keys:
        obj, t = transversal[k]
        for i, s in enumerate(G.generators):
            image = act(obj, s)
            image_key = key(image)
            edges[(k, i)] = image_key
            if image_key not in transversal:
                transversal[image_key] = (image, _mul(t, s))
                keys.append(image_key)
    return keys, transversal, edges


def _stabilizer(
    G: PermGroup,
    keys: List[Hashable],
    transversal: Dict[Hashable, Tuple[Any, Permutation]],
    edges: Dict[Tuple[Hashable, int], Hashable],
    known: Sequence[Permutation] = (),
) -> PermGroup:
    """Stabilizer from Schreier generators, stopping once ``|G| / |orbit|`` is reached."""
    target = G.order() // len(keys)
    gens = _nontrivial(known)
    stab = G.subgroup(gens)
    if stab.order() == target:
        return stab
    for k in keys:
        t = transversal[k][1]
        for i, s in enumerate(G.generators):
            u = transversal[edges[(k, i)]][1]
            schreier = _mul(_mul(t, s), _inv(u))
            if schreier.is_identity() or stab.contains(schreier):
                continue
            gens.append(schreier)
            stab = G.subgroup(gens)
            if stab.order() == target:
                return stab
    return stab


def _element_centralizer(G: PermGroup, g: Permutation) -> PermGroup:
    keys, transversal, edges = _orbit(G, g, _conj, lambda x: x)
    known = [g] if G.contains(g) else []
    return _stabilizer(G, keys, transversal, edges, known)


# Conjugacy classes

def conjugacy_classes(G: PermGroup, cap: int = DEFAULT_CAP) -> List[ConjClass]:
    """Partition of ``G`` into conjugacy classes.

    Classes are sorted by (order of representative, size, representative), where the
    representative is the lexicographically smallest member.

    Raises:
        OrderExceedsCap: if ``|G|`` exceeds ``cap``.
    """
    elements = G.element_list(cap)

    def compute() -> Tuple[ConjClass, ...]:
        gens = _nontrivial(G.generators)
        seen: set = set()
        classes = []
        for x in elements:
            if x in seen:
                continue
            seen.add(x)
            orbit = [x]
            for y in orbit:
                for s in gens:
                    z = _conj(y, s)
                    if z not in seen:
                        seen.add(z)
                        orbit.append(z)
            classes.append(ConjClass(min(orbit), len(orbit), element_order(x)))
        classes.sort(key=lambda c: (c.order_of_rep, c.size, c.representative))
        logger.debug("Conjugacy classes computed", group=G.name, order=len(elements), classes=len(classes))
        return tuple(classes)

    return list(G.memo("classes", compute))


def centralizer(G: PermGroup, g: Permutation) -> SubgroupHandle:
    if not G.contains(g):
        raise ElementNotInGroup(f"{g} is not an element of {G!r}")
    return SubgroupHandle(G, _element_centralizer(G, g))


def centralizer_of_subgroup(G: PermGroup, H: GroupLike) -> SubgroupHandle:
    """Elements of ``G`` commuting with every element of ``H``."""
    C = G
    for h in _nontrivial(as_group(H).generators):
        C = _element_centralizer(C, h)
    return SubgroupHandle(G, C)


def center(G: PermGroup, cap: int = DEFAULT_CAP) -> SubgroupHandle:
    elements = G.element_list(cap)

    def compute() -> PermGroup:
        gens = _nontrivial(G.generators)
        Z = G.subgroup([])
        central: List[Permutation] = []
        for x in elements:
            if x.is_identity() or not all(_commute(x, s) for s in gens):
                continue
            if not Z.contains(x):
                central.append(x)
                Z = G.subgroup(central)
        return Z

    return SubgroupHandle(G, G.memo("center", compute))


def commutator(a: Permutation, b: Permutation) -> Permutation:
    """``a^-1 b^-1 a b``."""
    return _comm(a, b)


def normal_closure(G: PermGroup, generators: Sequence[Permutation]) -> SubgroupHandle:
    """Smallest normal subgroup of ``G`` containing ``generators``."""
    gens = _nontrivial(generators)
    N = G.subgroup(gens)
    queue = list(gens)
    for n in queue:
        for s in G.generators:
            c = _conj(n, s)
            if not N.contains(c):
                gens.append(c)
                queue.append(c)
                N = G.subgroup(gens)
    return SubgroupHandle(G, N)


def derived_subgroup(G: PermGroup) -> SubgroupHandle:
    def compute() -> PermGroup:
        gens = G.generators
        commutators = [_comm(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
        return normal_closure(G, commutators).subgroup

    return SubgroupHandle(G, G.memo("derived", compute))


def is_normal(G: PermGroup, N: GroupLike) -> bool:
    sub = as_group(N)
    return all(sub.contains(_conj(n, s)) for n in sub.generators for s in G.generators)


def conjugate_subgroup(H: GroupLike, g: Permutation) -> PermGroup:
    """``H^g`` with generators conjugated in order."""
    sub = as_group(H)
    return sub.subgroup([_conj(h, g) for h in sub.generators])


def closure(generators: Sequence[Permutation], cap: int = DEFAULT_CAP) -> List[Permutation]:
    """All elements generated by ``generators``, found without the stabilizer chain."""
    return closure_elements(list(generators), cap)


def quotient(
    G: PermGroup, N: GroupLike, cap: int = DEFAULT_CAP, index_limit: int = MAX_DEGREE
) -> PermGroup:
    """``G/N`` acting on the right cosets of ``N``.

    Raises:
        NotNormal: if ``N`` is not normal in ``G``.
        IndexExceedsCap: if ``|G:N|`` exceeds ``cap``, ``index_limit`` or the supported degree.
    """
    sub = as_group(N)
    limit = min(cap, index_limit, MAX_DEGREE)

    def compute() -> PermGroup:
        if not is_normal(G, sub):
            raise NotNormal(f"{sub!r} is not normal in {G!r}")
        index = G.order() // sub.order()
        if index > limit:
            raise IndexExceedsCap(index, limit)
        name = f"{G.name}/N" if G.name else None
        if index == 1:
            return PermGroup([], degree=1, name=name)
        members = sub.element_list(cap)

        def coset_key(x: Permutation) -> Permutation:
            return min(_mul(n, x) for n in members)

        labels: Dict[Permutation, int] = {}
        reps: List[Permutation] = []
        first = coset_key(G.identity)
        labels[first] = 0
        reps.append(G.identity)
        images: List[List[int]] = [[] for _ in G.generators]
        for rep in reps:
            for i, s in enumerate(G.generators):
                k = coset_key(_mul(rep, s))
                if k not in labels:
                    labels[k] = len(reps)
                    reps.append(_mul(rep, s))
                images[i].append(labels[k])
        gens = [Permutation._trusted(img) for img in images]
        return PermGroup(gens, degree=index, name=name)

    return G.memo(("quotient", sub, limit), compute)


# Normalizers and Sylow subgroups

def _subgroup_action(
    H: PermGroup, key_limit: int
) -> Tuple[Any, Callable[[Any, Permutation], Any], Callable[[Any], Hashable]]:
    """Seed, action and key for acting on the conjugates of ``H``.

    Small subgroups are identified by their sorted element tuple. Larger ones are
    identified by membership tests against the conjugates already seen.
    """
    if H.order() <= key_limit:
        seed = tuple(sorted(H.element_list()))

        def act_elements(obj: Tuple[Permutation, ...], s: Permutation) -> Tuple[Permutation, ...]:
            return tuple(sorted(_conj(h, s) for h in obj))

        return seed, act_elements, lambda obj: obj

    registry: List[PermGroup] = []

    def act_generators(obj: Tuple[Permutation, ...], s: Permutation) -> Tuple[Permutation, ...]:
        return tuple(_conj(h, s) for h in obj)

    def registry_key(obj: Tuple[Permutation, ...]) -> Hashable:
        for i, known in enumerate(registry):
            if all(known.contains(h) for h in obj):
                return i
        registry.append(H.subgroup(obj))
        return len(registry) - 1

    return tuple(H.generators), act_generators, registry_key


def _conjugate_orbit(
    G: PermGroup, H: PermGroup, key_limit: int
) -> Tuple[List[Hashable], Dict[Hashable, Tuple[Any, Permutation]], Dict[Tuple[Hashable, int], Hashable]]:
    def compute() -> Any:
        seed, act, key = _subgroup_action(H, key_limit)
        return _orbit(G, seed, act, key)

    return G.memo(("conjugates", H, key_limit), compute)  # type: ignore[no-any-return]


def normalizer(
    G: PermGroup, H: GroupLike, cap: int = DEFAULT_CAP, key_limit: int = SUBGROUP_KEY_LIMIT
) -> SubgroupHandle:
    """Stabilizer of ``H`` under conjugation by ``G``."""
    sub = as_group(H)
    if G.order() > cap:
        raise OrderExceedsCap(G.order(), cap)

    def compute() -> PermGroup:
        keys, transversal, edges = _conjugate_orbit(G, sub, key_limit)
        return _stabilizer(G, keys, transversal, edges, sub.generators)

    return SubgroupHandle(G, G.memo(("normalizer", sub, key_limit), compute))


def conjugates(
    G: PermGroup, H: GroupLike, key_limit: int = SUBGROUP_KEY_LIMIT
) -> List[Tuple[PermGroup, Permutation]]:
    """Every ``G``-conjugate of ``H`` with a conjugating element, in orbit order."""
    sub = as_group(H)
    keys, transversal, _ = _conjugate_orbit(G, sub, key_limit)
    return [(conjugate_subgroup(sub, transversal[k][1]), transversal[k][1]) for k in keys]


def sylow(G: PermGroup, p: int, cap: int = DEFAULT_CAP) -> SubgroupHandle:
    """A Sylow ``p``-subgroup built by normalizer growth.

    Starts from the cyclic group of the first nontrivial ``p``-element in enumeration
    order; while ``P`` is not Sylow, adjoins the first element ``y`` of ``N_G(P)``
    outside ``P`` with ``y^p`` in ``P``.
    """
    _require_prime_divisor(G, p)

    def compute() -> PermGroup:
        target = pi_part(G.order(), PrimeSet(primes=(p,)))
        if target == G.order():
            return G
        seed = next(
            x for x in G.element_list(cap)
            if not x.is_identity() and pi_part(element_order(x), PrimeSet(primes=(p,))) == element_order(x)
        )
        gens = [seed]
        P = G.subgroup(gens)
        while P.order() < target:
            N = normalizer(G, P, cap).subgroup
            members = P.element_set()
            y = next(y for y in N.element_list(cap) if y not in members and (y ** p) in members)
            gens.append(y)
            P = G.subgroup(gens)
        logger.debug("Sylow subgroup built", group=G.name, p=p, order=P.order())
        return P

    return SubgroupHandle(G, G.memo(("sylow", p), compute))


def num_sylow(G: PermGroup, p: int, cap: int = DEFAULT_CAP) -> int:
    P = sylow(G, p, cap)
    return G.order() // normalizer(G, P, cap).order()


def p_element_count(G: PermGroup, p: int, cap: int = DEFAULT_CAP) -> int:
    """Number of elements of ``p``-power order, identity included."""
    return sum(
        c.size for c in conjugacy_classes(G, cap)
        if pi_part(c.order_of_rep, PrimeSet(primes=(p,))) == c.order_of_rep
    )


def has_normal_sylow(G: PermGroup, p: int, cap: int = DEFAULT_CAP) -> bool:
    """True iff the Sylow ``p``-subgroup is normal (all ``p``-elements lie in one Sylow)."""
    return p_element_count(G, p, cap) == pi_part(G.order(), PrimeSet(primes=(p,)))


def find_commuting_sylow_pair(
    G: PermGroup, p: int, q: int, cap: int = DEFAULT_CAP
) -> Optional[Tuple[SubgroupHandle, SubgroupHandle]]:
    """A Sylow ``p``-subgroup and a Sylow ``q``-subgroup centralizing each other, if any.

    ``P`` is fixed and every conjugate of ``Q`` is tried in orbit order.
    """
    if p == q:
        raise ValueError("p and q must be distinct")
    _require_prime_divisor(G, p)
    _require_prime_divisor(G, q)
    P = sylow(G, p, cap).subgroup
    Q = sylow(G, q, cap).subgroup
    p_gens = _nontrivial(P.generators)
    for candidate, _ in conjugates(G, Q):
        if all(_commute(a, b) for a in p_gens for b in candidate.generators):
            return SubgroupHandle(G, P), SubgroupHandle(G, candidate)
    return None


def _dividing_primes(G: PermGroup, pi: PrimeSet) -> List[int]:
    kept = [p for p in pi.primes if G.order() % p == 0]
    dropped = [p for p in pi.primes if G.order() % p]
    if dropped:
        G.memo(
            ("ignored_primes", tuple(dropped)),
            lambda: logger.warning(
                "Ignoring primes that do not divide the group order", group=G.name, primes=dropped
            ),
        )
    return kept


def has_nilpotent_hall(G: PermGroup, pi: PrimeSet, cap: int = DEFAULT_CAP) -> bool:
    """Whether ``G`` has a nilpotent Hall ``pi``-subgroup.

    Decided pairwise: it exists iff every two primes of ``pi`` have commuting Sylow
    subgroups.
    """
    primes = _dividing_primes(G, pi)

    def compute() -> bool:
        return all(
            find_commuting_sylow_pair(G, p, q, cap) is not None
            for i, p in enumerate(primes) for q in primes[i + 1:]
        )

    return bool(G.memo(("nilpotent_hall", tuple(primes)), compute))


def has_abelian_hall(G: PermGroup, pi: PrimeSet, cap: int = DEFAULT_CAP) -> bool:
    if not has_nilpotent_hall(G, pi, cap):
        return False
    return all(is_abelian(sylow(G, p, cap)) for p in _dividing_primes(G, pi))


def construct_nilpotent_hall(
    G: PermGroup, pi: PrimeSet, cap: int = DEFAULT_CAP, budget: int = HALL_SEARCH_BUDGET
) -> HallWitness:
    """Assemble a nilpotent Hall ``pi``-subgroup from pairwise commuting Sylow conjugates.

    With three or more primes a depth-first search picks one conjugate per prime; if
    it runs out of ``budget`` the result carries ``EXISTS_BY_LEMMA_ONLY``.
    """
    primes = _dividing_primes(G, pi)

    def compute() -> HallWitness:
        if not primes:
            return HallWitness(SubgroupHandle(G, G.subgroup([])), HallStatus.CONSTRUCTED)
        if not has_nilpotent_hall(G, pi, cap):
            return HallWitness(None, HallStatus.NONE_EXISTS)
        first = sylow(G, primes[0], cap).subgroup
        if len(primes) == 1:
            return HallWitness(SubgroupHandle(G, first), HallStatus.CONSTRUCTED)

        first_gens = _nontrivial(first.generators)
        candidates = []
        for r in primes[1:]:
            options = [
                _nontrivial(c.generators)
                for c, _ in conjugates(G, sylow(G, r, cap).subgroup)
                if all(_commute(a, b) for a in first_gens for b in c.generators)
            ]
            candidates.append(options)

        nodes = 0
        chosen: List[List[Permutation]] = []

        def search(depth: int) -> Optional[bool]:
            nonlocal nodes
            if depth == len(candidates):
                return True
            for option in candidates[depth]:
                nodes += 1
                if nodes > budget:
                    return None
                if all(_commute(a, b) for picked in chosen for a in picked for b in option):
                    chosen.append(option)
                    found = search(depth + 1)
                    if found is None or found:
                        return found
                    chosen.pop()
            return False

        outcome = search(0)
        if not outcome:
            logger.info(
                "Nilpotent Hall subgroup exists but no witness was assembled",
                group=G.name, pi=str(pi), nodes=nodes,
            )
            return HallWitness(None, HallStatus.EXISTS_BY_LEMMA_ONLY)
        gens = first_gens + [g for picked in chosen for g in picked]
        H = G.subgroup(gens)
        expected = pi_part(G.order(), PrimeSet(primes=tuple(primes)))
        if H.order() != expected:
            raise ArithmeticError(f"assembled subgroup has order {H.order()}, expected {expected}")
        return HallWitness(SubgroupHandle(G, H), HallStatus.CONSTRUCTED)

    return G.memo(("hall_witness", tuple(primes), budget), compute)  # type: ignore[no-any-return]


# Predicates

def is_abelian(H: GroupLike) -> bool:
    gens = _nontrivial(as_group(H).generators)
    return all(_commute(a, b) for i, a in enumerate(gens) for b in gens[i + 1:])


def is_nilpotent(H: GroupLike, cap: int = DEFAULT_CAP) -> bool:
    """Every Sylow subgroup is normal."""
    group = as_group(H)
    if is_abelian(group):
        return True
    primes = prime_divisors(group.order())
    if len(primes) <= 1:
        return True
    return all(has_normal_sylow(group, p, cap) for p in primes)


def is_elementary_abelian(H: GroupLike, p: int) -> bool:
    group = as_group(H)
    order = group.order()
    if pi_part(order, PrimeSet(primes=(p,))) != order:
        return False
    return is_abelian(group) and all((g ** p).is_identity() for g in group.generators)


def is_cp_x_cp(H: GroupLike, p: int) -> bool:
    return as_group(H).order() == p * p and is_elementary_abelian(H, p)


def is_sigma3(H: GroupLike) -> bool:
    """Order 6 and nonabelian, which pins down the symmetric group on three letters."""
    return as_group(H).order() == 6 and not is_abelian(H)
