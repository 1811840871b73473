"""Exact scalar invariants: pi-parts, class counts, densities and thresholds."""

from fractions import Fraction
from itertools import combinations
from typing import Iterator, List, NamedTuple, Tuple

from pydantic import BaseModel, ConfigDict, field_validator
from sympy import factorint, isprime, multiplicity, nextprime

from .errors import DefiningCharacteristicInPi, EvenPrimeInPi, NotPrime
from .perm import DEFAULT_CAP, PermGroup

# Every ratio in the library is a reduced Fraction; nothing is ever a float.
ExactRatio = Fraction


class PrimeSet(BaseModel):
    """A finite set of primes, kept sorted ascending."""

    model_config = ConfigDict(frozen=True)

    primes: Tuple[int, ...] = ()

    @field_validator("primes")
    @classmethod
    def _validate_primes(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        for p in value:
            if not isprime(p):
                raise ValueError(f"{p} is not prime")
        if len(set(value)) != len(value):
            raise ValueError(f"duplicate primes in {value}")
        return tuple(sorted(value))

    @classmethod
    def of(cls, *primes: int) -> "PrimeSet":
        for p in primes:
            if not isprime(p):
                raise NotPrime(p)
        return cls(primes=tuple(sorted(set(primes))))

    @classmethod
    def parse(cls, text: str) -> "PrimeSet":
        """Parse ``"3,5"`` (braces and spaces allowed).

        Raises:
            NotPrime: naming the first token that is not a prime.
        """
        body = text.strip().strip("{}")
        primes: List[int] = []
        for token in body.split(","):
            token = token.strip()
            if not token:
                continue
            try:
                value = int(token)
            except ValueError:
                raise NotPrime(token) from None  # type: ignore[arg-type]
            if not isprime(value):
                raise NotPrime(value)
            if value in primes:
                raise ValueError(f"duplicate prime {value}")
            primes.append(value)
        return cls(primes=tuple(primes))

    @property
    def min(self) -> int:
        if not self.primes:
            raise ValueError("the empty prime set has no smallest member")
        return self.primes[0]

    def __len__(self) -> int:
        return len(self.primes)

    def __contains__(self, p: object) -> bool:
        return p in self.primes

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.primes)) + "}"

    def dividing(self, n: int) -> "PrimeSet":
        """The members that divide ``n``."""
        return PrimeSet(primes=tuple(p for p in self.primes if n % p == 0))

    def subsets(self, max_size: int, proper: bool = False) -> Iterator["PrimeSet"]:
        """Nonempty subsets of size at most ``max_size``, smallest first."""
        top = min(max_size, len(self.primes) - (1 if proper else 0))
        for size in range(1, top + 1):
            for combo in combinations(self.primes, size):
                yield PrimeSet(primes=combo)


class Thresholds(NamedTuple):
    nilpotent: Fraction
    abelian: Fraction


def format_ratio(value: Fraction) -> str:
    """Render as ``a/b`` even for integers."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def prime_divisors(n: int) -> List[int]:
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    return sorted(factorint(n))


def smallest_prime_divisor(n: int) -> int:
    divisors = prime_divisors(n)
    if not divisors:
        raise ValueError("1 has no prime divisor")
    return divisors[0]


def pi_part(n: int, pi: PrimeSet) -> int:
    """Largest pi-number dividing ``n``."""
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    part = 1
    for p in pi.primes:
        part *= p ** multiplicity(p, n)
    return part


def is_pi_number(n: int, pi: PrimeSet) -> bool:
    return pi_part(n, pi) == n


def k_pi(G: PermGroup, pi: PrimeSet, cap: int = DEFAULT_CAP) -> int:
    """Number of conjugacy classes of pi-elements (the identity always counts)."""
    # Import here to avoid circular imports
    from .structure import conjugacy_classes

    return sum(1 for c in conjugacy_classes(G, cap) if is_pi_number(c.order_of_rep, pi))


def d_pi(G: PermGroup, pi: PrimeSet, cap: int = DEFAULT_CAP) -> Fraction:
    return Fraction(k_pi(G, pi, cap), pi_part(G.order(), pi))


def k_pi_over_order(G: PermGroup, pi: PrimeSet, cap: int = DEFAULT_CAP) -> Fraction:
    """``k_pi(G) / |G|``, the alternative normalisation some examples are quoted in."""
    return Fraction(k_pi(G, pi, cap), G.order())


def class_number(G: PermGroup, cap: int = DEFAULT_CAP) -> int:
    from .structure import conjugacy_classes

    return len(conjugacy_classes(G, cap))


def commuting_probability(G: PermGroup, cap: int = DEFAULT_CAP) -> Fraction:
    return Fraction(class_number(G, cap), G.order())


def _require_prime(p: int) -> None:
    if not isprime(p):
        raise NotPrime(p)


def g_p(p: int, x: int) -> Fraction:
    """Upper bound for the commuting probability given ``|G'| = x``."""
    _require_prime(p)
    if x < 1:
        raise ValueError(f"x must be positive, got {x}")
    return (1 + Fraction(p * p - 1, x)) / (p * p)


def next_prime(p: int) -> int:
    _require_prime(p)
    n = int(nextprime(p))
    if not n < 2 * p:
        raise ArithmeticError(f"next prime after {p} is {n}, contradicting Bertrand's postulate")
    return n


def f_p(p: int) -> Fraction:
    n = next_prime(p)
    return Fraction(n + p * p - 1, p * p * n)


def thresholds(p: int) -> Thresholds:
    """``(1/p, (p^2+p-1)/p^3)``: the nilpotent and abelian Hall thresholds."""
    _require_prime(p)
    return Thresholds(Fraction(1, p), Fraction(p * p + p - 1, p ** 3))


def k_pi_sl2_torus(q: int, pi: PrimeSet) -> int:
    """Semisimple pi-class count of SL(2, q) from its two maximal torus orders.

    Averages the pi-parts of ``q - 1`` and ``q + 1`` over the Weyl group of order 2.
    """
    _require_prime(q)
    if q in pi:
        raise DefiningCharacteristicInPi(f"{q} is the defining characteristic and lies in {pi}")
    if 2 in pi:
        raise EvenPrimeInPi(f"{pi} contains 2")
    total = pi_part(q - 1, pi) + pi_part(q + 1, pi)
    if total % 2:
        raise ArithmeticError(f"torus average for q={q}, pi={pi} is not an integer")
    return total // 2
