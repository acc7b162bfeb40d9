"""End-to-end quadratization: route every high-degree term through a gadget
until the whole polynomial is quadratic, track costs and the weakest
guarantee, and (optionally) prove the result against the oracle.

Routing order: multi-term grouping first when enabled (grouping after
splitting would destroy shareable structure), then per-term sign routing,
with terms of degree <= 2 passed through untouched.  The rewrite loop is
single-threaded so auxiliary numbering is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

from .errors import (
    InvalidParameter,
    NoApplicableGadget,
    UnknownGadget,
    VerificationFailed,
)
from .gadgets.base import (
    EXPERIMENTAL,
    GADGETS,
    GadgetResult,
    Guarantee,
)
from .gadgets.multi_term import (
    choose_rosenberg_pair,
    discover_fgbz_groups,
    fgbz_negative,
    fgbz_positive,
    rosenberg_pair,
)
from .gadgets.single_term import apply_gadget, ntr_kzfd_literals
from .poly import Domain, Polynomial, monomial_degree, monomial_vars
from .verify import (
    DEFAULT_STATE_CAP,
    CostReport,
    VerificationReport,
    check_groundstate,
    check_pointwise,
    cost_report,
)

OBJECTIVES = ("min_aux", "min_non_submodular", "min_max_coeff")


@dataclass(frozen=True)
class Strategy:
    """How quadratize() picks its rewrites.

    Routes are ordered gadget-name lists tried left to right per term; a
    routed gadget must be must-pass unless allow_experimental is set.
    multi_term enables Rosenberg substitution or the cover reductions as a
    grouping pre-pass; odd_split peels odd positive monomials into an
    even-degree head and a negated-literal tail first.
    """

    negative_route: tuple = ("ntr_kzfd",)
    positive_route: tuple = ("ptr_ishikawa",)
    multi_term: Optional[str] = None  # None | "rosenberg" | "fgbz"
    odd_split: bool = False
    objective: str = "min_aux"
    verify_after: bool = False
    allow_experimental: bool = False
    max_states: int = DEFAULT_STATE_CAP


DEFAULT_STRATEGY = Strategy()


@dataclass
class QuadratizationResult:
    """A degree <= 2 polynomial plus the evidence trail that produced it."""

    output: Polynomial
    aux_map: dict  # aux var id -> trace of the gadget application that made it
    cost: CostReport
    report: Optional[VerificationReport]
    guarantee: str

    @property
    def aux(self) -> tuple:
        return tuple(sorted(self.aux_map))


def _validate_strategy(strategy: Strategy):
    if strategy.multi_term not in (None, "rosenberg", "fgbz"):
        raise InvalidParameter(
            f"multi_term must be None, 'rosenberg' or 'fgbz', got {strategy.multi_term!r}"
        )
    if strategy.objective not in OBJECTIVES:
        raise InvalidParameter(f"objective must be one of {OBJECTIVES}")
    for name in tuple(strategy.negative_route) + tuple(strategy.positive_route):
        if name not in GADGETS:
            raise UnknownGadget(f"no gadget named {name!r}")
        if GADGETS[name].status == EXPERIMENTAL and not strategy.allow_experimental:
            raise InvalidParameter(
                f"{name!r} is experimental; set allow_experimental to route it"
            )


def _term_domain(p: Polynomial, mono) -> Optional[Domain]:
    domains = {p.registry.domain(v) for v in monomial_vars(mono)}
    return domains.pop() if len(domains) == 1 else None


def _merge(state, result: GadgetResult):
    work, aux_map, guarantee = state
    for aux in result.aux:
        aux_map[aux] = result.trace
    return (
        work + result.output,
        aux_map,
        Guarantee.weakest(guarantee, result.guarantee),
    )


def _apply_multi_term(work, aux_map, guarantee, strategy):
    if strategy.multi_term == "rosenberg":
        while work.degree() > 2:
            pair = choose_rosenberg_pair(work)
            if pair is None:
                break
            result = rosenberg_pair(work, *pair, penalty="auto")
            for aux in result.aux:
                aux_map[aux] = result.trace
            work = result.output
            guarantee = Guarantee.weakest(guarantee, result.guarantee)
        return work, aux_map, guarantee
    # Cover reductions: negative groups first (they finish in one step), then
    # positive singleton-common groups; iterate until no group of >= 2 terms.
    while work.degree() > 2:
        groups = discover_fgbz_groups(work, "negative") or discover_fgbz_groups(
            work, "positive"
        )
        if not groups:
            break
        group = groups[0]
        sign = "negative" if group.members[0][1] < 0 else "positive"
        apply = fgbz_negative if sign == "negative" else fgbz_positive
        result = apply(group, work.registry)
        removed = Polynomial(work.registry, dict(group.members))
        for aux in result.aux:
            aux_map[aux] = result.trace
        work = (work - removed) + result.output
        guarantee = Guarantee.weakest(guarantee, result.guarantee)
    return work, aux_map, guarantee


def _route_term(work, mono, coeff, strategy, aux_map, guarantee):
    registry = work.registry
    domain = _term_domain(work, mono)
    if domain is None:
        raise NoApplicableGadget(
            "no gadget accepts monomials mixing variable domains"
        )
    degree = monomial_degree(mono)
    sign = 1 if coeff > 0 else -1
    if strategy.odd_split and sign > 0 and degree % 2 == 1 and domain is Domain.BOOLEAN:
        return _route_odd_split(work, mono, coeff, strategy, aux_map, guarantee)
    route = strategy.positive_route if sign > 0 else strategy.negative_route
    for name in route:
        if GADGETS[name].applies_to(sign, degree, domain):
            result = apply_gadget(name, coeff, mono, registry, strategy.max_states)
            work = work - Polynomial(registry, {mono: coeff})
            return _merge((work, aux_map, guarantee), result)
    raise NoApplicableGadget(
        f"no routed gadget accepts a degree-{degree} {domain.tag!r} term "
        f"with coefficient {coeff}"
    )


def _route_odd_split(work, mono, coeff, strategy, aux_map, guarantee):
    """b1..bk (odd k) = b1..b_{k-1} - b1..b_{k-1}*(1-bk): route the even head
    through the positive route and fold the negated-literal tail with the
    generalized single-aux negative reduction."""
    registry = work.registry
    vars = sorted(monomial_vars(mono))
    head_vars, last = vars[:-1], vars[-1]
    work = work - Polynomial(registry, {mono: coeff})
    head_mono = tuple((v, 1) for v in head_vars)
    if len(head_vars) >= 3:
        for name in strategy.positive_route:
            if GADGETS[name].applies_to(1, len(head_vars), Domain.BOOLEAN):
                result = apply_gadget(
                    name, coeff, head_mono, registry, strategy.max_states
                )
                break
        else:
            raise NoApplicableGadget(
                f"no routed gadget accepts the degree-{len(head_vars)} split head"
            )
        work, aux_map, guarantee = _merge((work, aux_map, guarantee), result)
    else:
        work = work + Polynomial(registry, {head_mono: coeff})
    tail = ntr_kzfd_literals(-coeff, head_vars, [last], registry)
    tail = replace(tail, trace=f"odd_split tail: {tail.trace}")
    return _merge((work, aux_map, guarantee), tail)


def quadratize(p: Polynomial, strategy: Strategy = DEFAULT_STRATEGY) -> QuadratizationResult:
    """Reduce p to degree <= 2, returning the output polynomial, the
    per-auxiliary trace, a cost report, and (with verify_after) the oracle's
    report; verification failure raises instead of returning."""
    _validate_strategy(strategy)
    aux_map: dict[int, str] = {}
    guarantee = Guarantee.POINTWISE_MIN
    work = p
    if strategy.multi_term:
        work, aux_map, guarantee = _apply_multi_term(work, aux_map, guarantee, strategy)
    guard = 0
    while True:
        high = [
            (mono, coeff)
            for mono, coeff in work.terms.items()
            if monomial_degree(mono) >= 3
        ]
        if not high:
            break
        guard += 1
        if guard > 10_000:
            raise RuntimeError("rewrite loop failed to terminate")
        high.sort(key=lambda mc: (-monomial_degree(mc[0]), mc[0]))
        mono, coeff = high[0]
        work, aux_map, guarantee = _route_term(
            work, mono, coeff, strategy, aux_map, guarantee
        )
    cost = cost_report(work, sorted(aux_map))
    report = None
    if strategy.verify_after:
        check = check_pointwise if guarantee == Guarantee.POINTWISE_MIN else check_groundstate
        report = check(p, work, sorted(aux_map), strategy.max_states)
        if not report.passed:
            raise VerificationFailed("quadratization failed verification", report)
    return QuadratizationResult(
        output=work, aux_map=aux_map, cost=cost, report=report, guarantee=guarantee
    )


@dataclass(frozen=True)
class StrategyOutcome:
    """One row of compare_strategies: failures recorded, never raised."""

    strategy: Strategy
    ok: bool
    cost: Optional[CostReport]
    guarantee: Optional[str]
    error: Optional[str]


def compare_strategies(p: Polynomial, strategies) -> list[StrategyOutcome]:
    """Run quadratize once per strategy and tabulate the cost trade-offs."""
    rows = []
    for strategy in strategies:
        try:
            result = quadratize(p, strategy)
        except Exception as error:
            rows.append(
                StrategyOutcome(strategy, False, None, None, f"{type(error).__name__}: {error}")
            )
        else:
            rows.append(
                StrategyOutcome(strategy, True, result.cost, result.guarantee, None)
            )
    return rows


def flip_to_submodular(p: Polynomial):
    """Greedy post-pass: repeatedly flip the single {0,1} variable whose
    negation most reduces the non-submodular quadratic count.

    Returns (flipped polynomial, flip mask); apply the mask to assignments
    recovered from the flipped problem.  Quadratic {0,1} inputs only.
    """
    current = p
    mask: frozenset = frozenset()
    while True:
        best_var = None
        best_count = current.quadratic_profile().non_submodular
        for var in current.variables():
            flipped, _ = current.flip([var])
            count = flipped.quadratic_profile().non_submodular
            if count < best_count:
                best_var, best_count = var, count
        if best_var is None:
            return current, mask
        current, _ = current.flip([best_var])
        mask = mask ^ frozenset([best_var])
