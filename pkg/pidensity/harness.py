"""Verification suites.

Each suite evaluates a family of bounds and identities on concrete groups and returns
:class:`~pidensity.report.CheckResult` records. A check whose premise does not hold is
``verified`` with ``fired=False`` so coverage can be told apart from runs that never
happened; enumeration or coset limits turn a check into ``skipped``.
"""

from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .config import Config
from .constructions import (
    CatalogueEntry,
    build_alt,
    build_psl2,
    build_sl2,
    build_with_factors,
    build_wreath,
    catalogue,
    load_generators,
    parse_group_expr,
)
from .errors import IndexExceedsCap, OrderExceedsCap
from .invariants import (
    PrimeSet,
    commuting_probability,
    d_pi,
    f_p,
    format_ratio,
    g_p,
    k_pi,
    k_pi_over_order,
    k_pi_sl2_torus,
    pi_part,
    prime_divisors,
    thresholds,
)
from .logging_utils import StructuredLogger
from .oracle import nilpotent_hall_oracle
from .perm import PermGroup
from .report import CheckResult, CheckStatus, Report, Value, build_report
from .structure import (
    HallStatus,
    center,
    centralizer_of_subgroup,
    construct_nilpotent_hall,
    derived_subgroup,
    has_abelian_hall,
    has_nilpotent_hall,
    has_normal_sylow,
    is_abelian,
    is_cp_x_cp,
    is_elementary_abelian,
    is_nilpotent,
    is_sigma3,
    normalizer,
    num_sylow,
    quotient,
    sylow,
)

CAP_ERRORS = (OrderExceedsCap, IndexExceedsCap)

PER_GROUP_SUITES = ("hall", "commuting", "sylow", "density")

PRINTED_NORMALISED_VALUE = Fraction(1, 6)


def _name(G: PermGroup) -> str:
    return G.name or repr(G)


def _premise_false(
    suite: str, check_id: str, group: str, pi: Optional[PrimeSet], lhs: Value = None, rhs: Value = None
) -> CheckResult:
    return CheckResult.make(suite, check_id, group, pi, True, lhs, rhs, "premise false", fired=False)


def _quotient_by_center_abelian(P: PermGroup) -> bool:
    Z = center(P).subgroup
    return all(Z.contains(g) for g in derived_subgroup(P).generators)


# Theorem-level checks

def check_main_theorem(G: PermGroup, pi: PrimeSet, config: Optional[Config] = None) -> CheckResult:
    """Density above ``1/p`` forces a nilpotent Hall subgroup with ``|H'| <= p``; above
    ``(p^2+p-1)/p^3`` it forces an abelian one."""
    cfg = config or Config()
    cap = cfg.compute.cap
    name = _name(G)
    try:
        p = pi.min
        d = d_pi(G, pi, cap)
        nilpotent_bound, abelian_bound = thresholds(p)
        if d <= nilpotent_bound:
            return _premise_false("hall", "hall.main_theorem", name, pi, d, nilpotent_bound)

        problems: List[str] = []
        notes: List[str] = []
        if not has_nilpotent_hall(G, pi, cap):
            problems.append("no nilpotent Hall subgroup")
        else:
            witness = construct_nilpotent_hall(G, pi, cap, cfg.compute.hall_search_budget)
            if witness.subgroup is not None:
                derived = derived_subgroup(witness.subgroup.subgroup).order()
                notes.append(f"witness of order {witness.subgroup.order()} with |H'| = {derived}")
                if derived > p:
                    problems.append(f"witness has |H'| = {derived} > {p}")
            else:
                notes.append(f"witness {witness.status.value}")
        if d > abelian_bound:
            if has_abelian_hall(G, pi, cap):
                notes.append("abelian Hall subgroup exists")
            else:
                problems.append("no abelian Hall subgroup above the abelian threshold")
        return CheckResult.make(
            "hall", "hall.main_theorem", name, pi, not problems, d, nilpotent_bound,
            "; ".join(problems or notes),
        )
    except CAP_ERRORS as e:
        return CheckResult.skipped("hall", "hall.main_theorem", name, pi, str(e))


def check_hall_density_bound(G: PermGroup, pi: PrimeSet, config: Optional[Config] = None) -> CheckResult:
    """``d_pi(G) <= Pr(H)`` for a constructed nilpotent Hall subgroup ``H``."""
    cfg = config or Config()
    cap = cfg.compute.cap
    name = _name(G)
    try:
        witness = construct_nilpotent_hall(G, pi, cap, cfg.compute.hall_search_budget)
        if witness.subgroup is None:
            return CheckResult.make(
                "hall", "hall.witness_density", name, pi, True,
                detail=f"no witness ({witness.status.value})", fired=False,
            )
        d = d_pi(G, pi, cap)
        pr = commuting_probability(witness.subgroup.subgroup, cap)
        return CheckResult.make("hall", "hall.witness_density", name, pi, d <= pr, d, pr)
    except CAP_ERRORS as e:
        return CheckResult.skipped("hall", "hall.witness_density", name, pi, str(e))


def check_pr_suite(G: PermGroup, config: Optional[Config] = None) -> List[CheckResult]:
    """Commuting-probability bounds with ``p`` the smallest prime dividing ``|G|``."""
    cfg = config or Config()
    cap = cfg.compute.cap
    name = _name(G)
    suite = "commuting"
    if G.order() == 1:
        return [CheckResult.skipped(suite, "commuting.all", name, None, "trivial group")]
    try:
        p = prime_divisors(G.order())[0]
        pr = commuting_probability(G, cap)
        Z = center(G, cap).subgroup
        derived = derived_subgroup(G).subgroup
        derived_order = derived.order()
        index = G.order() // Z.order()
        abelian = is_abelian(G)
        nilpotent_bound, abelian_bound = thresholds(p)
        results = []

        if abelian:
            results.append(_premise_false(suite, "commuting.nonabelian_bound", name, None, pr, abelian_bound))
        else:
            cp_x_cp = index == p * p and is_cp_x_cp(quotient(G, Z, cap), p)
            holds = pr <= abelian_bound and (pr == abelian_bound) == cp_x_cp
            results.append(CheckResult.make(
                suite, "commuting.nonabelian_bound", name, None, holds, pr, abelian_bound,
                f"G/Z(G) {'is' if cp_x_cp else 'is not'} C{p} x C{p}",
            ))

        bound = g_p(p, derived_order)
        results.append(CheckResult.make(
            suite, "commuting.derived_bound", name, None, pr <= bound, pr, bound, f"|G'| = {derived_order}",
        ))

        if derived_order <= p:
            central = all(Z.contains(g) for g in derived.generators)
            holds = central and is_nilpotent(G, cap)
            results.append(CheckResult.make(
                suite, "commuting.small_derived_central", name, None, holds, derived_order, p,
                "G' is central and G is nilpotent" if holds else "G' not central or G not nilpotent",
            ))
        else:
            results.append(_premise_false(
                suite, "commuting.small_derived_central", name, None, derived_order, p,
            ))

        in_range = nilpotent_bound < pr <= abelian_bound
        exact = nilpotent_bound + Fraction(p - 1, p * index)
        holds = in_range == (derived_order == p) and (derived_order != p or pr == exact)
        results.append(CheckResult.make(
            suite, "commuting.derived_order_p", name, None, holds, pr,
            exact if derived_order == p else abelian_bound,
            f"|G'| = {derived_order}, |G:Z(G)| = {index}",
            fired=in_range or derived_order == p,
        ))

        large_bound = f_p(p)
        if derived_order > p:
            results.append(CheckResult.make(
                suite, "commuting.large_derived_bound", name, None, pr <= large_bound, pr, large_bound,
            ))
        else:
            results.append(_premise_false(suite, "commuting.large_derived_bound", name, None, pr, large_bound))

        if pr == nilpotent_bound:
            sigma3 = index == 6 and is_sigma3(quotient(G, Z, cap))
            results.append(CheckResult.make(
                suite, "commuting.half_characterization", name, None,
                p == 2 and sigma3, pr, nilpotent_bound,
                "G/Z(G) is Sym(3)" if sigma3 else "G/Z(G) is not Sym(3)",
            ))
        else:
            results.append(_premise_false(
                suite, "commuting.half_characterization", name, None, pr, nilpotent_bound,
            ))

        if pr > large_bound:
            holds = derived_order <= p and is_nilpotent(G, cap)
            results.append(CheckResult.make(
                suite, "commuting.above_f_nilpotent", name, None, holds, pr, large_bound,
                f"|G'| = {derived_order}",
            ))
        else:
            results.append(_premise_false(suite, "commuting.above_f_nilpotent", name, None, pr, large_bound))
        return results
    except CAP_ERRORS as e:
        return [CheckResult.skipped(suite, "commuting.all", name, None, str(e))]


SYLOW_CHECKS = (
    "sylow.quotient_by_center",
    "sylow.other_primes_abelian",
    "sylow.normalizer_index",
    "sylow.count_or_hall",
)


def check_sylow_suite(G: PermGroup, pi: PrimeSet, config: Optional[Config] = None) -> List[CheckResult]:
    """Sylow structure forced by ``d_pi(G) > 1/p``."""
    cfg = config or Config()
    cap = cfg.compute.cap
    name = _name(G)
    suite = "sylow"
    try:
        p = pi.min
        d = d_pi(G, pi, cap)
        bound = Fraction(1, p)
        if d <= bound:
            return [_premise_false(suite, check, name, pi, d, bound) for check in SYLOW_CHECKS]

        primes = [q for q in pi.primes if G.order() % q == 0]
        others = [q for q in primes if q != p]
        results = []

        failures = []
        for q in primes:
            Q = sylow(G, q, cap).subgroup
            derived = derived_subgroup(Q).order()
            if not _quotient_by_center_abelian(Q) or derived > q:
                failures.append(f"q={q}: |Q'| = {derived}")
        results.append(CheckResult.make(
            suite, SYLOW_CHECKS[0], name, pi, not failures, d, bound, "; ".join(failures),
        ))

        nonabelian = [q for q in others if not is_abelian(sylow(G, q, cap))]
        results.append(CheckResult.make(
            suite, SYLOW_CHECKS[1], name, pi, not nonabelian, d, bound,
            f"nonabelian Sylow for {nonabelian}" if nonabelian else "", fired=bool(others),
        ))

        if p in primes and others:
            P = sylow(G, p, cap)
            normalizer_order = normalizer(G, P, cap, cfg.compute.subgroup_key_limit).order()
            index = normalizer_order // centralizer_of_subgroup(G, P).order()
            dividing = [q for q in others if index % q == 0]
            results.append(CheckResult.make(
                suite, SYLOW_CHECKS[2], name, pi, not dividing, index, None,
                f"|N(P):C(P)| = {index}",
            ))
            count = num_sylow(G, p, cap)
            failing = [
                q for q in others
                if count % q and not has_nilpotent_hall(G, PrimeSet(primes=(p, q)), cap)
            ]
            results.append(CheckResult.make(
                suite, SYLOW_CHECKS[3], name, pi, not failing, count, None,
                f"{count} Sylow {p}-subgroups",
            ))
        else:
            reason = f"{p} does not divide |G|" if p not in primes else "no second prime"
            for check in SYLOW_CHECKS[2:]:
                results.append(CheckResult.make(suite, check, name, pi, True, detail=reason, fired=False))
        return results
    except CAP_ERRORS as e:
        return [CheckResult.skipped(suite, check, name, pi, str(e)) for check in SYLOW_CHECKS]


def _tested_normals(G: PermGroup, factors: Sequence[PermGroup], cap: int) -> List[Tuple[str, PermGroup]]:
    candidates: List[Tuple[str, PermGroup]] = [
        ("center", center(G, cap).subgroup),
        ("derived subgroup", derived_subgroup(G).subgroup),
    ]
    for p in prime_divisors(G.order()):
        if has_normal_sylow(G, p, cap):
            candidates.append((f"Sylow {p}-subgroup", sylow(G, p, cap).subgroup))
    if len(factors) > 1:
        candidates.extend((f"factor {f.name}", f) for f in factors)
    kept: List[Tuple[str, PermGroup]] = []
    for label, N in candidates:
        if N.order() in (1, G.order()):
            continue
        if any(M.order() == N.order() and all(M.contains(g) for g in N.generators) for _, M in kept):
            continue
        kept.append((label, N))
    return kept


def check_density_suite(
    G: PermGroup,
    pi: PrimeSet,
    factors: Sequence[PermGroup] = (),
    config: Optional[Config] = None,
) -> List[CheckResult]:
    """Monotonicity in ``pi`` and the bound through a normal subgroup and its quotient."""
    cfg = config or Config()
    cap = cfg.compute.cap
    name = _name(G)
    suite = "density"
    try:
        d = d_pi(G, pi, cap)
        subsets = list(pi.subsets(len(pi), proper=True))
        if subsets:
            smallest = min(d_pi(G, mu, cap) for mu in subsets)
            results = [CheckResult.make(suite, "density.monotone", name, pi, d <= smallest, d, smallest)]
        else:
            results = [CheckResult.make(
                suite, "density.monotone", name, pi, True, d, d, "single prime", fired=False,
            )]
    except CAP_ERRORS as e:
        return [CheckResult.skipped(suite, "density.monotone", name, pi, str(e))]

    try:
        normals = _tested_normals(G, factors, cap)
    except CAP_ERRORS as e:
        return results + [CheckResult.skipped(suite, "density.normal_factor", name, pi, str(e))]
    for label, N in normals:
        try:
            Q = quotient(G, N, cap, cfg.harness.quotient_index_limit)
            bound = d_pi(N, pi, cap) * d_pi(Q, pi, cap)
            results.append(CheckResult.make(
                suite, "density.normal_factor", name, pi, d <= bound, d, bound,
                f"N = {label} of order {N.order()}",
            ))
        except CAP_ERRORS as e:
            results.append(CheckResult.skipped(suite, "density.normal_factor", name, pi, f"N = {label}: {e}"))
    return results


# Suites over fixed families

def _named(group: PermGroup, name: str) -> PermGroup:
    group.name = name
    return group


def _psl2_by_quotient(q: int) -> PermGroup:
    SL = _named(build_sl2(q), f"SL2({q})")
    return _named(quotient(SL, center(SL)), f"PSL2({q})")


def _all_subsets(primes: Iterable[int]) -> List[PrimeSet]:
    full = PrimeSet(primes=tuple(primes))
    return list(full.subsets(len(full)))


def check_simple_suite(config: Optional[Config] = None) -> List[CheckResult]:
    """Density bounds for small simple groups: at most ``1/2`` when ``2`` is in ``pi``, and at
    most ``1/p`` for odd pairs whose smaller Sylow is abelian modulo its center."""
    cfg = config or Config()
    cap = cfg.compute.cap
    suite = "simple"
    groups = [_named(build_alt(n), f"Alt({n})") for n in range(5, 9)]
    groups += [_psl2_by_quotient(q) for q in (5, 7, 11, 13)]
    results = []
    for S in groups:
        name = _name(S)
        primes = prime_divisors(S.order())
        for pi in _all_subsets(primes):
            if 2 not in pi:
                continue
            d = d_pi(S, pi, cap)
            results.append(CheckResult.make(
                suite, "simple.two_bound", name, pi, d <= Fraction(1, 2), d, Fraction(1, 2),
            ))
        odd = [p for p in primes if p != 2]
        for i, p in enumerate(odd):
            for q in odd[i + 1:]:
                pi = PrimeSet(primes=(p, q))
                d = d_pi(S, pi, cap)
                if _quotient_by_center_abelian(sylow(S, p, cap).subgroup):
                    results.append(CheckResult.make(
                        suite, "simple.odd_pair_bound", name, pi, d <= Fraction(1, p), d, Fraction(1, p),
                    ))
                else:
                    results.append(_premise_false(
                        suite, "simple.odd_pair_bound", name, pi, d, Fraction(1, p),
                    ))
    return results


def check_torus_formula(config: Optional[Config] = None) -> List[CheckResult]:
    """Brute-force odd ``pi``-class counts of ``SL(2, q)`` against the torus average, and
    against ``PSL(2, q)`` since the center has order 2."""
    cfg = config or Config()
    cap = cfg.compute.cap
    suite = "torus"
    results = []
    for q in cfg.harness.torus_fields:
        SL = _named(build_sl2(q), f"SL2({q})")
        Z = center(SL, cap).subgroup
        index = SL.order() // Z.order()
        if index <= cfg.harness.quotient_index_limit:
            PSL, model = quotient(SL, Z, cap), "coset action on SL2/Z"
        else:
            PSL, model = build_psl2(q), "projective line"
        odd = [r for r in prime_divisors(q * q - 1) if r != 2]
        for pi in _all_subsets(odd):
            brute = k_pi(SL, pi, cap)
            formula = k_pi_sl2_torus(q, pi)
            results.append(CheckResult.make(
                suite, "torus.class_count", f"SL2({q})", pi, brute == formula, brute, formula,
            ))
            if pi_part(Z.order(), pi) == 1:
                reduced = k_pi(PSL, pi, cap)
                results.append(CheckResult.make(
                    suite, "torus.center_erasure", f"SL2({q})", pi, brute == reduced, brute, reduced, model,
                ))
    return results


def _mismatch(group: PermGroup, pi: PrimeSet, cap: int) -> CheckResult:
    d = d_pi(group, pi, cap)
    alternative = k_pi_over_order(group, pi, cap)
    status = CheckStatus.VERIFIED if d == PRINTED_NORMALISED_VALUE else CheckStatus.PAPER_VALUE_MISMATCH
    return CheckResult(
        suite="sharpness",
        check_id="sharpness.normalisation",
        group=_name(group),
        pi=str(pi),
        status=status,
        lhs=format_ratio(d),
        rhs=format_ratio(PRINTED_NORMALISED_VALUE),
        detail=f"k_pi/|G|_pi = {format_ratio(d)}; k_pi/|G| = {format_ratio(alternative)}",
        fired=True,
    )


def check_sharpness_examples(config: Optional[Config] = None) -> List[CheckResult]:
    """The examples showing the thresholds cannot be lowered and the converses fail."""
    cfg = config or Config()
    cap = cfg.compute.cap
    suite = "sharpness"

    def group(text: str) -> PermGroup:
        return build_with_factors(parse_group_expr(text))[0]

    results = []
    for text in ("Sym(4) x Cyclic(5)", "Alt(4) x Cyclic(5)"):
        results.append(_mismatch(group(text), PrimeSet.of(2, 5), cap))

    for p, q in ((3, 7), (5, 11)):
        G = group(f"Semidirect({q},{p})")
        pi = PrimeSet.of(p, q)
        k = k_pi(G, pi, cap)
        d = d_pi(G, pi, cap)
        expected_d = Fraction(1, 2 * p + 1) * (1 + Fraction(2, p))
        results.append(CheckResult.make(
            suite, "sharpness.frobenius_class_count", _name(G), pi,
            k == p + (q - 1) // p and d == expected_d, k, p + (q - 1) // p, f"d_pi = {format_ratio(d)}",
        ))
        results.append(CheckResult.make(
            suite, "sharpness.frobenius_above_half_p", _name(G), pi,
            d > Fraction(1, 2 * p) and not has_nilpotent_hall(G, pi, cap), d, Fraction(1, 2 * p),
            "no nilpotent Hall subgroup",
        ))

    G = group("Extraspecial(3) x Cyclic(5)")
    pi = PrimeSet.of(3, 5)
    d = d_pi(G, pi, cap)
    witness = construct_nilpotent_hall(G, pi, cap, cfg.compute.hall_search_budget)
    derived = derived_subgroup(witness.subgroup.subgroup).order() if witness.subgroup else None
    holds = (
        d == thresholds(3).abelian
        and not has_abelian_hall(G, pi, cap)
        and witness.status is HallStatus.CONSTRUCTED
        and derived == 3
    )
    results.append(CheckResult.make(
        suite, "sharpness.abelian_threshold", _name(G), pi, holds, d, thresholds(3).abelian,
        f"nilpotent Hall witness with |H'| = {derived}, no abelian Hall subgroup",
    ))

    G = group("Sym(3) x Cyclic(5)")
    pi = PrimeSet.of(2, 3)
    d = d_pi(G, pi, cap)
    results.append(CheckResult.make(
        suite, "sharpness.half_bound", _name(G), pi,
        d == Fraction(1, 2) and not has_nilpotent_hall(G, pi, cap), d, Fraction(1, 2),
        "no nilpotent Hall subgroup at exactly 1/2",
    ))

    G = group("Extraspecial(3) x Dihedral(5) x Dihedral(7)")
    pi = PrimeSet.of(3, 5, 7)
    d = d_pi(G, pi, cap)
    holds = (
        has_nilpotent_hall(G, pi, cap)
        and d == Fraction(132, 945)
        and d < Fraction(1, 3)
        and d < Fraction(5, 6 * 3)
    )
    results.append(CheckResult.make(
        suite, "sharpness.nilpotent_converse", _name(G), pi, holds, d, Fraction(1, 3),
        "nilpotent Hall subgroup below the threshold",
    ))

    G = group("Sym(3) x Dihedral(5) x Dihedral(7)")
    d = d_pi(G, pi, cap)
    holds = (
        has_abelian_hall(G, pi, cap)
        and d == Fraction(8, 35)
        and d <= Fraction(24, 35 * 3)
        and d < thresholds(3).abelian
    )
    results.append(CheckResult.make(
        suite, "sharpness.abelian_converse", _name(G), pi, holds, d, thresholds(3).abelian,
        "abelian Hall subgroup below the threshold",
    ))
    return results


def check_alternating_suite(config: Optional[Config] = None) -> List[CheckResult]:
    """Sylow shape, class counts and density bounds for ``Alt(5)`` to ``Alt(8)``."""
    cfg = config or Config()
    cap = cfg.compute.cap
    suite = "alternating"
    results = []
    for n in range(5, 9):
        A = _named(build_alt(n), f"Alt({n})")
        name = _name(A)
        odd = [p for p in prime_divisors(A.order()) if p != 2]
        for p in odd:
            single = PrimeSet.of(p)
            r = n // p
            if n < p * p:
                P = sylow(A, p, cap)
                holds = is_elementary_abelian(P, p) and P.order() == p ** r
                results.append(CheckResult.make(
                    suite, "alternating.sylow_elementary", name, single, holds, P.order(), p ** r,
                ))
            expected = 1 + r + (1 if n - p in (0, 1) else 0)
            count = k_pi(A, single, cap)
            results.append(CheckResult.make(
                suite, "alternating.p_class_count", name, single, count == expected, count, expected,
            ))
        for i, p in enumerate(odd):
            for q in odd[i + 1:]:
                pi = PrimeSet.of(p, q)
                d = d_pi(A, pi, cap)
                if _quotient_by_center_abelian(sylow(A, p, cap).subgroup):
                    results.append(CheckResult.make(
                        suite, "alternating.pair_bound", name, pi, d <= Fraction(1, p), d, Fraction(1, p),
                    ))
                else:
                    results.append(_premise_false(
                        suite, "alternating.pair_bound", name, pi, d, Fraction(1, p),
                    ))

    A7 = _named(build_alt(7), "Alt(7)")
    d = d_pi(A7, PrimeSet.of(3), cap)
    results.append(CheckResult.make(
        suite, "alternating.tight_value", "Alt(7)", PrimeSet.of(3), d == Fraction(1, 3), d, Fraction(1, 3),
    ))

    W = _named(build_wreath(3), "Wreath(3)")
    A9 = build_alt(9)
    embedded = all(A9.contains(g) for g in W.generators)
    holds = embedded and not _quotient_by_center_abelian(W)
    results.append(CheckResult.make(
        suite, "alternating.wreath_embedding", "Wreath(3)", PrimeSet.of(3), holds, W.order(), None,
        "inside Alt(9) with nonabelian quotient by its center",
    ))
    return results


def check_oracle_suite(
    entries: Optional[Sequence[CatalogueEntry]] = None,
    config: Optional[Config] = None,
    logger: Optional[StructuredLogger] = None,
) -> List[CheckResult]:
    """Nilpotent Hall decisions against exhaustive Sylow enumeration on small groups."""
    cfg = config or Config()
    cap = cfg.compute.cap
    max_order = cfg.harness.oracle_max_order
    results = []
    for entry in entries if entries is not None else catalogue():
        G = build_with_factors(entry.expr)[0]
        if G.order() > max_order:
            continue
        if logger:
            logger.debug("Oracle comparison", group=entry.name, order=G.order())
        primes = prime_divisors(G.order())
        for i, p in enumerate(primes):
            for q in primes[i + 1:]:
                pi = PrimeSet(primes=(p, q))
                fast = has_nilpotent_hall(G, pi, cap)
                slow = nilpotent_hall_oracle(G, pi, max_order)
                results.append(CheckResult.make(
                    "oracle", "oracle.nilpotent_hall", entry.name, pi, fast == slow, str(fast), str(slow),
                ))
    return results


def check_external_j1(config: Optional[Config] = None) -> List[CheckResult]:
    """``d_{3,5}(J1) = 2/5`` on a user-supplied generator file."""
    cfg = config or Config()
    pi = PrimeSet.of(3, 5)
    path = cfg.harness.j1_generators
    if not path:
        return [CheckResult.skipped("j1", "j1.density", "J1", pi, "no generator file configured")]
    try:
        G = load_generators(path)
        d = d_pi(G, pi, cfg.compute.cap)
    except CAP_ERRORS as e:
        return [CheckResult.skipped("j1", "j1.density", "J1", pi, str(e))]
    return [CheckResult.make(
        "j1", "j1.density", "J1", pi, d == Fraction(2, 5), d, Fraction(2, 5), f"|G| = {G.order()}",
    )]


# Orchestration

def sweep_results(
    entries: Sequence[CatalogueEntry],
    max_pi_size: int,
    config: Optional[Config] = None,
    logger: Optional[StructuredLogger] = None,
    suites: Sequence[str] = PER_GROUP_SUITES,
) -> List[CheckResult]:
    """Per-group checks over every ``pi`` of at most ``max_pi_size`` primes dividing ``|G|``."""
    if max_pi_size < 1:
        raise ValueError("max_pi_size must be at least 1")
    cfg = config or Config()
    results: List[CheckResult] = []
    for entry in entries:
        G, factors = build_with_factors(entry.expr)
        primes = PrimeSet(primes=tuple(prime_divisors(G.order())))
        if logger:
            logger.info("Checking group", group=entry.name, order=G.order(), primes=list(primes.primes))
        if "commuting" in suites:
            results.extend(check_pr_suite(G, cfg))
        for pi in primes.subsets(max_pi_size):
            if "hall" in suites:
                results.append(check_main_theorem(G, pi, cfg))
                results.append(check_hall_density_bound(G, pi, cfg))
            if "sylow" in suites:
                results.extend(check_sylow_suite(G, pi, cfg))
            if "density" in suites:
                results.extend(check_density_suite(G, pi, factors, cfg))
    return results


def sweep(
    entries: Sequence[CatalogueEntry],
    max_pi_size: int,
    config: Optional[Config] = None,
    logger: Optional[StructuredLogger] = None,
) -> Report:
    return build_report("sweep", sweep_results(entries, max_pi_size, config, logger))


FIXED_SUITES: Dict[str, Callable[[Optional[Config]], List[CheckResult]]] = {
    "simple": check_simple_suite,
    "torus": check_torus_formula,
    "sharpness": check_sharpness_examples,
    "alternating": check_alternating_suite,
    "j1": check_external_j1,
}


def run_suite(
    name: str,
    config: Optional[Config] = None,
    logger: Optional[StructuredLogger] = None,
    entries: Optional[Sequence[CatalogueEntry]] = None,
    max_pi_size: Optional[int] = None,
) -> Report:
    """Run a named suite, or ``all``, and assemble its report."""
    cfg = config or Config()
    entries = list(entries) if entries is not None else catalogue()
    max_pi = max_pi_size or cfg.harness.max_pi_size
    results: List[CheckResult] = []

    if name == "all":
        results.extend(sweep_results(entries, max_pi, cfg, logger))
        for suite_name, runner in FIXED_SUITES.items():
            if logger:
                logger.info("Running suite", suite=suite_name)
            results.extend(runner(cfg))
    elif name in PER_GROUP_SUITES:
        results.extend(sweep_results(entries, max_pi, cfg, logger, suites=(name,)))
    elif name == "oracle":
        results.extend(check_oracle_suite(entries, cfg, logger))
    elif name in FIXED_SUITES:
        results.extend(FIXED_SUITES[name](cfg))
    else:
        raise ValueError(f"unknown suite {name!r}")

    report = build_report(name, results)
    if logger:
        for r in report.results:
            if r.status is CheckStatus.COUNTEREXAMPLE:
                logger.error("Counterexample", check=r.check_id, group=r.group, pi=r.pi, detail=r.detail)
        logger.info("Suite finished", suite=name, **report.summary.counts)
    return report
