"""Permutations and permutation groups with a deterministic stabilizer chain."""

from __future__ import annotations

import math
import re
from functools import cached_property
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from loguru import logger

from .errors import DegreeMismatch, DegreeTooLarge, InvalidParameters, OrderExceedsCap

MAX_DEGREE = 10_000
DEFAULT_CAP = 2_000_000


class Permutation(tuple):  # type: ignore[type-arg]
    """A bijection of ``{0, ..., n-1}`` stored as its tuple of images.

    Products act left to right: ``(a * b)(i) == b(a(i))``. Ordering and hashing are
    those of the image tuple, so sorting permutations sorts them lexicographically.
    """

    __slots__ = ()

    def __new__(cls, images: Iterable[int]) -> "Permutation":
        perm = tuple.__new__(cls, images)
        if not perm:
            raise InvalidParameters("a permutation needs a positive degree")
        if sorted(perm) != list(range(len(perm))):
            raise InvalidParameters(f"not a bijection on 0..{len(perm) - 1}: {tuple(perm)}")
        return perm

    @classmethod
    def _trusted(cls, images: Iterable[int]) -> "Permutation":
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        if degree < 1:
            raise InvalidParameters("a permutation needs a positive degree")
        return cls._trusted(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Build a permutation from disjoint cycles over 0-based points."""
        images = list(range(degree))
        seen = set()
        for cycle in cycles:
            for point in cycle:
                if not 0 <= point < degree:
                    raise InvalidParameters(f"point {point} outside 0..{degree - 1}")
                if point in seen:
                    raise InvalidParameters(f"point {point} appears in two cycles")
                seen.add(point)
            for a, b in zip(cycle, list(cycle[1:]) + list(cycle[:1])):
                images[a] = b
        return cls._trusted(images)

    @property
    def degree(self) -> int:
        return len(self)

    @property
    def images(self) -> Tuple[int, ...]:
        return tuple(self)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self))

    def __mul__(self, other: Any) -> "Permutation":  # type: ignore[override]
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __pow__(self, exponent: int) -> "Permutation":
        base = self if exponent >= 0 else _inv(self)
        result = Permutation.identity(len(self))
        n = abs(exponent)
        while n:
            if n & 1:
                result = _mul(result, base)
            base = _mul(base, base)
            n >>= 1
        return result

    def conjugate(self, g: "Permutation") -> "Permutation":
        """Return ``g^-1 * self * g``."""
        if len(g) != len(self):
            raise DegreeMismatch(len(self), len(g))
        return _conj(self, g)

    def cycles(self) -> List[Tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range(len(self)):
            if start in seen or self[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self[start]
            while nxt != start:
                seen.add(nxt)
                cycle.append(nxt)
                nxt = self[nxt]
            out.append(tuple(cycle))
        return out

    def order(self) -> int:
        return element_order(self)

    def __str__(self) -> str:
        return format_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)}, degree={len(self)})"


# Unchecked kernels used in hot loops; callers guarantee equal degrees.

def _mul(a: Sequence[int], b: Sequence[int]) -> Permutation:
    return Permutation._trusted(map(b.__getitem__, a))


def _inv(a: Sequence[int]) -> Permutation:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return Permutation._trusted(out)


def _conj(x: Sequence[int], g: Sequence[int]) -> Permutation:
    out = [0] * len(x)
    for i, xi in enumerate(x):
        out[g[i]] = g[xi]
    return Permutation._trusted(out)


def _comm(a: Sequence[int], b: Sequence[int]) -> Permutation:
    """``a^-1 b^-1 a b``."""
    return _mul(_mul(_inv(a), _inv(b)), _mul(a, b))


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Return the product mapping ``i`` to ``b(a(i))``."""
    if len(a) != len(b):
        raise DegreeMismatch(len(a), len(b))
    return _mul(a, b)


def inverse(a: Permutation) -> Permutation:
    return _inv(a)


def element_order(a: Permutation) -> int:
    """Least ``m >= 1`` with ``a**m`` the identity (lcm of the cycle lengths)."""
    return math.lcm(1, *(len(c) for c in a.cycles()))


def commutator(a: Permutation, b: Permutation) -> Permutation:
    if len(a) != len(b):
        raise DegreeMismatch(len(a), len(b))
    return _comm(a, b)


def format_cycles(p: Sequence[int]) -> str:
    """Disjoint-cycle notation such as ``(0 1 2)(3 4)``; the identity is ``()``."""
    cycles = Permutation._trusted(p).cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


_CYCLE_RE = re.compile(r"\(\s*(\d+(?:[\s,]+\d+)*)?\s*\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse disjoint-cycle notation over 0-based points.

    Raises:
        InvalidParameters: on stray characters, repeated points or points out of range.
    """
    stripped = text.strip()
    pos = 0
    cycles: List[List[int]] = []
    while pos < len(stripped):
        if stripped[pos].isspace():
            pos += 1
            continue
        match = _CYCLE_RE.match(stripped, pos)
        if match is None:
            raise InvalidParameters(f"malformed cycle notation {text!r} at offset {pos}")
        if match.group(1):
            cycles.append([int(tok) for tok in re.split(r"[\s,]+", match.group(1).strip())])
        pos = match.end()
    if not stripped:
        raise InvalidParameters("empty permutation text")
    return Permutation.from_cycles(degree, cycles)


class StabilizerChain:
    """Base and strong generating set built by deterministic Schreier-Sims.

    A new level opens when a strong generator fixes every current base point: an input
    generator, or a Schreier residue that sifted through all levels. Its base point is the
    smallest point that generator moves. The base is reproducible for a given generator
    list but is not sorted in general.
    """

    def __init__(self, degree: int, generators: Sequence[Permutation]):
        self.degree = degree
        self.base: List[int] = []
        self.strong: List[Permutation] = []
        self.transversals: List[Dict[int, Permutation]] = []
        self._inverse_transversals: List[Dict[int, Permutation]] = []
        self._build(generators)

    def _level_generators(self, level: int) -> List[Permutation]:
        fixed = self.base[:level]
        return [s for s in self.strong if all(s[b] == b for b in fixed)]

    def _orbit_transversal(self, level: int) -> None:
        point = self.base[level]
        gens = self._level_generators(level)
        transversal: Dict[int, Permutation] = {point: Permutation.identity(self.degree)}
        queue = [point]
        for x in queue:
            for s in gens:
                y = s[x]
                if y not in transversal:
                    transversal[y] = _mul(transversal[x], s)
                    queue.append(y)
        self.transversals[level] = transversal
        self._inverse_transversals[level] = {b: _inv(u) for b, u in transversal.items()}

    def _add_level(self, g: Permutation) -> None:
        moved = next(i for i, x in enumerate(g) if i != x)
        self.base.append(moved)
        self.transversals.append({})
        self._inverse_transversals.append({})

    def sift(self, g: Sequence[int], start: int = 0) -> Tuple[Permutation, int]:
        """Strip ``g`` through the chain from ``start``.

        Returns:
            The residue and the level at which stripping stopped (``len(base)`` when the
            residue survived every level).
        """
        h = Permutation._trusted(g)
        for level in range(start, len(self.base)):
            beta = h[self.base[level]]
            u_inv = self._inverse_transversals[level].get(beta)
            if u_inv is None:
                return h, level
            h = _mul(h, u_inv)
        return h, len(self.base)

    def _build(self, generators: Sequence[Permutation]) -> None:
        for g in generators:
            if g.is_identity() or g in self.strong:
                continue
            self.strong.append(g)
            if all(g[b] == b for b in self.base):
                self._add_level(g)

        level = len(self.base) - 1
        while level >= 0:
            self._orbit_transversal(level)
            gens = self._level_generators(level)
            transversal = self.transversals[level]
            inverses = self._inverse_transversals[level]
            residue: Optional[Permutation] = None
            reached = level
            for beta, u in list(transversal.items()):
                for s in gens:
                    schreier = _mul(_mul(u, s), inverses[s[beta]])
                    h, depth = self.sift(schreier, level + 1)
                    if not h.is_identity():
                        residue, reached = h, depth
                        break
                if residue is not None:
                    break
            if residue is None:
                level -= 1
                continue
            self.strong.append(residue)
            if reached == len(self.base):
                self._add_level(residue)
            level = reached

        logger.debug(
            "Stabilizer chain built",
            degree=self.degree,
            base=self.base,
            strong_generators=len(self.strong),
        )

    def order(self) -> int:
        return math.prod(len(t) for t in self.transversals)

    def orbit_lengths(self) -> List[int]:
        return [len(t) for t in self.transversals]

    def enumerate(self) -> List[Permutation]:
        """All group elements, ordered by the sorted transversal decomposition."""
        elements = [Permutation.identity(self.degree)]
        for level in reversed(range(len(self.base))):
            transversal = self.transversals[level]
            reps = [transversal[b] for b in sorted(transversal)]
            elements = [_mul(h, u) for u in reps for h in elements]
        return elements


class PermGroup:
    """A permutation group given by generators.

    The stabilizer chain is built on first use and never changes afterwards; derived
    structure (classes, Sylow subgroups, ...) is memoized per instance through
    :meth:`memo`.
    """

    def __init__(
        self,
        generators: Iterable[Sequence[int]],
        degree: Optional[int] = None,
        name: Optional[str] = None,
    ):
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        if not gens:
            if degree is None:
                raise InvalidParameters("a group needs a generator or an explicit degree")
            gens = [Permutation.identity(degree)]
        if degree is None:
            degree = len(gens[0])
        if degree > MAX_DEGREE:
            raise DegreeTooLarge(degree, MAX_DEGREE)
        for g in gens:
            if len(g) != degree:
                raise DegreeMismatch(degree, len(g))
        self._degree = degree
        self._generators = tuple(gens)
        self.name = name
        self._memo: Dict[Any, Any] = {}

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def generators(self) -> Tuple[Permutation, ...]:
        return self._generators

    @cached_property
    def identity(self) -> Permutation:
        return Permutation.identity(self._degree)

    @cached_property
    def chain(self) -> StabilizerChain:
        return StabilizerChain(self._degree, self._generators)

    def order(self) -> int:
        return self.chain.order()

    def is_trivial(self) -> bool:
        return self.order() == 1

    def contains(self, g: Sequence[int]) -> bool:
        if len(g) != self._degree:
            raise DegreeMismatch(self._degree, len(g))
        residue, _ = self.chain.sift(g)
        return residue.is_identity()

    def __contains__(self, g: object) -> bool:
        return isinstance(g, tuple) and len(g) == self._degree and self.contains(g)

    def element_list(self, cap: int = DEFAULT_CAP) -> Tuple[Permutation, ...]:
        """All elements in the deterministic enumeration order (memoized)."""
        order = self.order()
        if order > cap:
            raise OrderExceedsCap(order, cap)
        cached = self._memo.get("elements")
        if cached is None:
            cached = tuple(self.chain.enumerate())
            self._memo["elements"] = cached
        return cached

    def elements(self, cap: int = DEFAULT_CAP) -> Iterator[Permutation]:
        return iter(self.element_list(cap))

    def element_set(self, cap: int = DEFAULT_CAP) -> frozenset:
        cached = self._memo.get("element_set")
        if cached is None:
            cached = frozenset(self.element_list(cap))
            self._memo["element_set"] = cached
        return cached

    def subgroup(self, generators: Iterable[Sequence[int]], name: Optional[str] = None) -> "PermGroup":
        return PermGroup(list(generators), degree=self._degree, name=name)

    def memo(self, key: Any, factory: Callable[[], Any]) -> Any:
        """Return the cached value for ``key``, computing it with ``factory`` once."""
        if key not in self._memo:
            self._memo[key] = factory()
        return self._memo[key]

    def __repr__(self) -> str:
        label = self.name or "PermGroup"
        gens = ", ".join(format_cycles(g) for g in self._generators)
        return f"<{label} degree={self._degree} generators=[{gens}]>"


def group_order(G: PermGroup) -> int:
    return G.order()


def contains(G: PermGroup, g: Permutation) -> bool:
    return G.contains(g)


def elements(G: PermGroup, cap: int = DEFAULT_CAP) -> Iterator[Permutation]:
    return G.elements(cap)


def closure_elements(generators: Sequence[Permutation], cap: int = DEFAULT_CAP) -> List[Permutation]:
    """Exhaustive closure of a generating set, independent of the stabilizer chain."""
    if not generators:
        return []
    start = Permutation.identity(len(generators[0]))
    seen = {start}
    queue = [start]
    for x in queue:
        for s in generators:
            y = _mul(x, s)
            if y not in seen:
                seen.add(y)
                queue.append(y)
                if len(seen) > cap:
                    raise OrderExceedsCap(len(seen), cap)
    return queue
