"""Group builders, the group-expression language and the generator-file loader."""

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, NamedTuple, Tuple, Union

from loguru import logger
from sympy import isprime

from .errors import (
    ArityMismatch,
    EmptyGeneratorFile,
    GroupExprSyntaxError,
    InvalidParameters,
    MalformedCycle,
    PointOutOfRange,
    UnknownAtom,
)
from .perm import MAX_DEGREE, PermGroup, Permutation, parse_cycles

CATALOGUE_VERSION = "2024.2"


@dataclass(frozen=True)
class Atom:
    name: str
    params: Tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.name}({','.join(map(str, self.params))})"


@dataclass(frozen=True)
class Product:
    factors: Tuple[Atom, ...]

    def __str__(self) -> str:
        return " x ".join(map(str, self.factors))


GroupExpr = Union[Atom, Product]


def factors_of(expr: GroupExpr) -> Tuple[Atom, ...]:
    return expr.factors if isinstance(expr, Product) else (expr,)


# Builders

def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InvalidParameters(message)


def _cycle(points: List[int], degree: int) -> Permutation:
    return Permutation.from_cycles(degree, [points])


def build_sym(n: int) -> PermGroup:
    _require(1 <= n <= MAX_DEGREE, f"Sym(n) needs 1 <= n <= {MAX_DEGREE}, got {n}")
    gens = []
    if n >= 2:
        gens.append(_cycle([0, 1], n))
    if n >= 3:
        gens.append(_cycle(list(range(n)), n))
    return PermGroup(gens, degree=n)


def build_alt(n: int) -> PermGroup:
    _require(1 <= n <= MAX_DEGREE, f"Alt(n) needs 1 <= n <= {MAX_DEGREE}, got {n}")
    gens = [_cycle([i, i + 1, i + 2], n) for i in range(n - 2)]
    return PermGroup(gens, degree=n)


def build_cyclic(n: int) -> PermGroup:
    _require(1 <= n <= MAX_DEGREE, f"Cyclic(n) needs 1 <= n <= {MAX_DEGREE}, got {n}")
    return PermGroup([_cycle(list(range(n)), n)] if n > 1 else [], degree=n)


def build_dihedral(m: int) -> PermGroup:
    """Symmetries of a regular ``m``-gon, order ``2m``."""
    _require(3 <= m <= MAX_DEGREE, f"Dihedral(m) needs m >= 3, got {m}")
    rotation = Permutation([(i + 1) % m for i in range(m)])
    reflection = Permutation([(-i) % m for i in range(m)])
    return PermGroup([rotation, reflection])


def build_elem_abelian(p: int, k: int) -> PermGroup:
    _require(isprime(p), f"ElemAbelian(p,k) needs p prime, got {p}")
    _require(k >= 1 and p * k <= MAX_DEGREE, f"ElemAbelian(p,k) needs k >= 1, got {k}")
    degree = p * k
    return PermGroup([_cycle(list(range(i * p, (i + 1) * p)), degree) for i in range(k)], degree=degree)


def build_extraspecial(p: int) -> PermGroup:
    """Heisenberg group of order ``p^3`` and exponent ``p`` in its regular representation.

    Elements are triples ``(a, b, c)`` with ``(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')``;
    the point of ``(a, b, c)`` is ``a*p*p + b*p + c``.
    """
    _require(isprime(p) and 3 <= p <= 7, f"Extraspecial(p) needs an odd prime p <= 7, got {p}")

    def right_mult(x: int, y: int, z: int) -> Permutation:
        images = []
        for a in range(p):
            for b in range(p):
                for c in range(p):
                    images.append(((a + x) % p) * p * p + ((b + y) % p) * p + (c + z + a * y) % p)
        return Permutation(images)

    return PermGroup([right_mult(1, 0, 0), right_mult(0, 1, 0)])


def build_wreath(p: int) -> PermGroup:
    """``C_p wr C_p`` on ``p^2`` points in ``p`` blocks."""
    _require(isprime(p) and p <= 7, f"Wreath(p) needs a prime p <= 7, got {p}")
    degree = p * p
    base = _cycle(list(range(p)), degree)
    shift = Permutation([(i + p) % degree for i in range(degree)])
    return PermGroup([base, shift])


def build_semidirect(q: int, p: int) -> PermGroup:
    """``C_q : C_p`` acting on ``Z/q`` by ``x -> r*x + a``."""
    _require(isprime(q) and isprime(p), f"Semidirect(q,p) needs primes, got ({q},{p})")
    _require((q - 1) % p == 0, f"Semidirect(q,p) needs p | q-1, got ({q},{p})")
    r = next(r for r in range(2, q) if pow(r, p, q) == 1)
    translation = Permutation([(x + 1) % q for x in range(q)])
    scaling = Permutation([(r * x) % q for x in range(q)])
    return PermGroup([translation, scaling])


Matrix = Tuple[Tuple[int, int], Tuple[int, int]]

# Generators of SL(2, q): the images of the two standard generators of SL(2, Z).
_SL2_GENERATORS: Tuple[Matrix, Matrix] = (((1, 1), (0, 1)), ((0, -1), (1, 0)))


def _require_field(q: int, family: str) -> None:
    _require(isprime(q) and 3 <= q <= 31, f"{family}(q) needs an odd prime q <= 31, got {q}")


def build_sl2(q: int) -> PermGroup:
    """``SL(2, q)`` acting on the nonzero row vectors of ``GF(q)^2``."""
    _require_field(q, "SL2")
    vectors = [(x, y) for x in range(q) for y in range(q) if (x, y) != (0, 0)]
    index = {v: i for i, v in enumerate(vectors)}

    def act(m: Matrix) -> Permutation:
        (a, b), (c, d) = m
        return Permutation([index[((x * a + y * c) % q, (x * b + y * d) % q)] for x, y in vectors])

    return PermGroup([act(m) for m in _SL2_GENERATORS])


def build_psl2(q: int) -> PermGroup:
    """``PSL(2, q)`` acting on the ``q + 1`` points of the projective line."""
    _require_field(q, "PSL2")

    def normalize(x: int, y: int) -> int:
        if x % q == 0:
            return q
        return (y * pow(x, -1, q)) % q

    points = [(1, y) for y in range(q)] + [(0, 1)]

    def act(m: Matrix) -> Permutation:
        (a, b), (c, d) = m
        return Permutation([normalize(x * a + y * c, x * b + y * d) for x, y in points])

    return PermGroup([act(m) for m in _SL2_GENERATORS])


class _Family(NamedTuple):
    arity: int
    builder: Callable[..., PermGroup]


ATOMS: Dict[str, _Family] = {
    "Sym": _Family(1, build_sym),
    "Alt": _Family(1, build_alt),
    "Cyclic": _Family(1, build_cyclic),
    "Dihedral": _Family(1, build_dihedral),
    "ElemAbelian": _Family(2, build_elem_abelian),
    "Extraspecial": _Family(1, build_extraspecial),
    "Wreath": _Family(1, build_wreath),
    "Semidirect": _Family(2, build_semidirect),
    "SL2": _Family(1, build_sl2),
    "PSL2": _Family(1, build_psl2),
}


def direct_product(groups: List[PermGroup]) -> Tuple[PermGroup, List[PermGroup]]:
    """External direct product on disjoint point sets.

    Returns:
        The product and, for each factor, its embedded copy as a subgroup.
    """
    degree = sum(g.degree for g in groups)
    if degree > MAX_DEGREE:
        raise InvalidParameters(f"direct product degree {degree} exceeds {MAX_DEGREE}")
    embedded: List[List[Permutation]] = []
    offset = 0
    for group in groups:
        lifted = []
        for g in group.generators:
            images = list(range(degree))
            for i, x in enumerate(g):
                images[offset + i] = offset + x
            lifted.append(Permutation(images))
        embedded.append(lifted)
        offset += group.degree
    product = PermGroup([g for gens in embedded for g in gens], degree=degree)
    return product, [product.subgroup(gens) for gens in embedded]


def build_with_factors(expr: GroupExpr) -> Tuple[PermGroup, List[PermGroup]]:
    """Build ``expr`` and return its declared direct factors as subgroups."""
    parts = []
    for atom in factors_of(expr):
        family = ATOMS.get(atom.name)
        if family is None:
            raise UnknownAtom(f"unknown group family {atom.name!r}", 0)
        if len(atom.params) != family.arity:
            raise ArityMismatch(
                f"{atom.name} takes {family.arity} parameter(s), got {len(atom.params)}", 0
            )
        parts.append(family.builder(*atom.params))
    if len(parts) == 1:
        group, factors = parts[0], [parts[0]]
    else:
        group, factors = direct_product(parts)
    group.name = str(expr)
    for atom, factor in zip(factors_of(expr), factors):
        factor.name = factor.name or str(atom)
    return group, factors


def build(expr: GroupExpr) -> PermGroup:
    return build_with_factors(expr)[0]


# Parser


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _expect(self, char: str) -> None:
        self._skip()
        if self.pos >= len(self.text) or self.text[self.pos] != char:
            found = repr(self.text[self.pos]) if self.pos < len(self.text) else "end of input"
            raise GroupExprSyntaxError(f"expected {char!r}, found {found}", self.pos)
        self.pos += 1

    def _integer(self) -> int:
        self._skip()
        match = re.compile(r"\d+").match(self.text, self.pos)
        if match is None:
            raise GroupExprSyntaxError("expected an integer", self.pos)
        self.pos = match.end()
        return int(match.group())

    def atom(self) -> Atom:
        self._skip()
        start = self.pos
        match = re.compile(r"[A-Za-z][A-Za-z0-9]*").match(self.text, self.pos)
        if match is None:
            raise GroupExprSyntaxError("expected a group name", self.pos)
        name = match.group()
        if name not in ATOMS:
            raise UnknownAtom(f"unknown group family {name!r}", start)
        self.pos = match.end()
        self._expect("(")
        params = [self._integer()]
        self._skip()
        while self.pos < len(self.text) and self.text[self.pos] == ",":
            self.pos += 1
            params.append(self._integer())
            self._skip()
        self._expect(")")
        arity = ATOMS[name].arity
        if len(params) != arity:
            raise ArityMismatch(f"{name} takes {arity} parameter(s), got {len(params)}", start)
        return Atom(name, tuple(params))

    def expr(self) -> GroupExpr:
        factors = [self.atom()]
        self._skip()
        while self.pos < len(self.text):
            if self.text[self.pos] not in "x×":
                raise GroupExprSyntaxError(f"unexpected {self.text[self.pos]!r}", self.pos)
            self.pos += 1
            factors.append(self.atom())
            self._skip()
        return factors[0] if len(factors) == 1 else Product(tuple(factors))


def parse_group_expr(text: str) -> GroupExpr:
    """Parse expressions such as ``"Extraspecial(3) x Cyclic(5)"``.

    Raises:
        GroupExprSyntaxError: with the offset of the offending character.
        UnknownAtom: for an unknown family name.
        ArityMismatch: at the offset of the atom with the wrong parameter count.
    """
    if not text.strip():
        raise GroupExprSyntaxError("empty group expression", 0)
    return _Parser(text).expr()


# Generator files

def load_generators(path: Union[str, Path]) -> PermGroup:
    """Load a group from a generator file.

    Line 1 is ``degree <n>``; every further nonempty line is one permutation in
    disjoint-cycle notation over 0-based points. Lines starting with ``#`` are comments.
    """
    path = Path(path)
    lines = [
        (number, line.strip())
        for number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1)
        if line.strip() and not line.strip().startswith("#")
    ]
    if not lines:
        raise EmptyGeneratorFile(f"{path} contains no degree line")
    number, header = lines[0]
    match = re.fullmatch(r"degree\s+(\d+)", header)
    if match is None:
        raise EmptyGeneratorFile(f"expected 'degree <n>', found {header!r}", number)
    degree = int(match.group(1))
    if degree < 1:
        raise EmptyGeneratorFile("degree must be positive", number)
    gens = []
    for number, line in lines[1:]:
        for point in re.findall(r"\d+", line):
            if int(point) >= degree:
                raise PointOutOfRange(f"point {point} outside 0..{degree - 1}", number)
        try:
            gens.append(parse_cycles(line, degree))
        except InvalidParameters as e:
            raise MalformedCycle(str(e), number) from e
    group = PermGroup(gens, degree=degree, name=path.name)
    logger.info("Loaded generators", path=str(path), degree=degree, generators=len(gens))
    return group


# Catalogue

class CatalogueEntry(NamedTuple):
    name: str
    expr: GroupExpr
    tags: Tuple[str, ...]


_CATALOGUE_SOURCE: List[Tuple[str, Tuple[str, ...]]] = [
    *[(f"Sym({n})", ("symmetric",) + (("sigma3",) if n == 3 else ())) for n in range(3, 9)],
    *[(f"Alt({n})", ("alternating",) + (("simple",) if n >= 5 else ())) for n in range(4, 9)],
    *[(f"Cyclic({n})", ("abelian", "cyclic")) for n in (6, 12, 15, 30, 105)],
    *[(f"Dihedral({m})", ("dihedral",)) for m in (4, 5, 7, 9)],
    ("ElemAbelian(3,2)", ("abelian", "p-group")),
    ("Extraspecial(3)", ("extraspecial", "p-group")),
    ("Extraspecial(5)", ("extraspecial", "p-group")),
    ("Wreath(3)", ("p-group", "wreath")),
    ("Semidirect(7,3)", ("frobenius", "sophie-germain")),
    ("Semidirect(13,3)", ("frobenius",)),
    ("Semidirect(11,5)", ("frobenius", "sophie-germain")),
    *[(f"SL2({q})", ("lie-type", "quasisimple")) for q in (5, 7, 11, 13)],
    *[(f"PSL2({q})", ("lie-type", "simple")) for q in (5, 7, 11, 13)],
    ("Extraspecial(3) x Cyclic(5)", ("composite", "sharpness")),
    ("Extraspecial(3) x Dihedral(5) x Dihedral(7)", ("composite", "converse")),
    ("Sym(4) x Cyclic(5)", ("composite", "sharpness")),
    ("Alt(4) x Cyclic(5)", ("composite", "sharpness")),
    ("Sym(3) x Cyclic(5)", ("composite", "sharpness")),
    ("Sym(3) x Dihedral(5) x Dihedral(7)", ("composite", "converse")),
]


def catalogue() -> List[CatalogueEntry]:
    """The fixed, versioned list of groups every sweep runs over."""
    entries = []
    for text, tags in _CATALOGUE_SOURCE:
        expr = parse_group_expr(text)
        entries.append(CatalogueEntry(str(expr), expr, tags))
    return entries
