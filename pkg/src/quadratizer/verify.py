"""Exhaustive verification oracle.

Everything here is brute force by design: the point of the library is that
every gadget's claimed guarantee is *proved* at desk scale, not trusted.  The
assignment space is walked as a mixed-radix counter over variable-id order
(variable 0 fastest), which makes results deterministic.

For all-{0,1} polynomials the values over the full cube are computed with a
subset-sum (zeta) transform in O(2^n * n) integer additions instead of
evaluating term by term; coefficients are pre-scaled by the common denominator
so the inner loops run on plain ints.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

from .errors import EnumerationCapExceeded, VariableMismatch
from .poly import Domain, Polynomial, monomial_degree

DEFAULT_STATE_CAP = 1 << 20


class CheckMode:
    POINTWISE = "pointwise"
    GROUND_STATE = "groundstate"
    SPECTRUM = "spectrum"
    CONDITIONAL = "conditional"


@dataclass(frozen=True)
class CheckStats:
    states_enumerated: int
    min_original: Optional[Fraction]
    min_transformed: Optional[Fraction]


@dataclass(frozen=True)
class VerificationReport:
    """Oracle verdict for one guarantee level.

    A failed report always carries a re-checkable counterexample assignment
    over the original variables; a passed report never does.
    """

    mode: str
    passed: bool
    counterexample: Optional[dict]
    stats: CheckStats

    def __str__(self):
        verdict = "passed" if self.passed else "FAILED"
        extra = "" if self.passed else f" counterexample={self.counterexample}"
        return f"[{self.mode}] {verdict} ({self.stats.states_enumerated} states){extra}"


@dataclass(frozen=True)
class CostReport:
    """The trade-off axes gadget catalogs argue about, as plain data."""

    aux_count: int
    non_submodular: int
    max_abs_coefficient: Fraction
    term_count: int


# ---------------------------------------------------------------------------
# Dense evaluation over full assignment spaces


def _state_count(registry, vars: Sequence[int]) -> int:
    count = 1
    for var in vars:
        count *= len(registry.domain(var).values)
    return count


def _check_cap(n_states: int, max_states: int):
    if n_states > max_states:
        raise EnumerationCapExceeded(
            f"{n_states} states exceed the cap of {max_states}"
        )


def _scaled_terms(p: Polynomial, scale: int):
    return [(int(c * scale), mono) for mono, c in sorted(p.terms.items())]


def _common_scale(*polys: Polynomial) -> int:
    denominators = [c.denominator for p in polys for c in p.terms.values()]
    return lcm(*denominators) if denominators else 1


def _dense_values_boolean(terms, positions: dict, n: int) -> list:
    """Values of the polynomial on all 2^n states via the zeta transform.

    State s assigns variable at bit position i the value (s >> i) & 1; a
    monomial contributes exactly on supersets of its bitmask, so filling the
    masks and running a subset-sum transform evaluates every state at once.
    """
    values = [0] * (1 << n)
    for coeff, mono in terms:
        mask = 0
        for var, _ in mono:
            mask |= 1 << positions[var]
        values[mask] += coeff
    for i in range(n):
        bit = 1 << i
        step = bit << 1
        for base in range(0, 1 << n, step):
            lower = values[base : base + bit]
            upper = values[base + bit : base + step]
            values[base + bit : base + step] = [u + l for u, l in zip(upper, lower)]
    return values


def _dense_values_generic(terms, vars: Sequence[int], registry) -> list:
    """Values on the mixed-radix state space, variable vars[0] fastest."""
    domains = [registry.domain(v).values for v in vars]
    positions = {v: i for i, v in enumerate(vars)}
    compiled = [
        (coeff, [(positions[v], e) for v, e in mono]) for coeff, mono in terms
    ]
    values = []
    # itertools.product varies its *last* factor fastest, so feed domains in
    # reverse and index digits from the end.
    for state in itertools.product(*reversed(domains)):
        total = 0
        for coeff, factors in compiled:
            product = coeff
            for pos, exp in factors:
                value = state[-1 - pos]
                if value == 0:
                    product = 0
                    break
                if exp == 1:
                    product *= value
                else:
                    product *= value**exp
            total += product
        values.append(total)
    return values


def _dense_values(p: Polynomial, vars: Sequence[int], scale: int) -> list:
    terms = _scaled_terms(p, scale)
    if all(p.registry.domain(v) is Domain.BOOLEAN for v in vars):
        positions = {v: i for i, v in enumerate(vars)}
        return _dense_values_boolean(terms, positions, len(vars))
    return _dense_values_generic(terms, vars, p.registry)


def _state_assignment(registry, vars: Sequence[int], index: int) -> dict:
    assignment = {}
    for var in vars:
        values = registry.domain(var).values
        index, digit = divmod(index, len(values))
        assignment[var] = values[digit]
    return assignment


# ---------------------------------------------------------------------------
# Public oracle operations


def enumerate_min(p: Polynomial, max_states: int = DEFAULT_STATE_CAP):
    """Exact global minimum of p and ALL minimizers, in deterministic order."""
    vars = p.variables()
    n_states = _state_count(p.registry, vars)
    _check_cap(n_states, max_states)
    scale = _common_scale(p)
    values = _dense_values(p, vars, scale)
    best = min(values)
    minimizers = [
        _state_assignment(p.registry, vars, i)
        for i, v in enumerate(values)
        if v == best
    ]
    return Fraction(best, scale), minimizers


def _split_vars(original: Polynomial, transformed: Polynomial, aux: Sequence[int]):
    x_vars = original.variables()
    aux = sorted(aux)
    if set(aux) & set(x_vars):
        raise VariableMismatch("auxiliary variables overlap the original variables")
    allowed = set(x_vars) | set(aux)
    extra = [v for v in transformed.variables() if v not in allowed]
    if extra:
        raise VariableMismatch(
            f"transformed polynomial uses unexpected variables {extra}"
        )
    return x_vars, aux


def _folded_minima(transformed: Polynomial, x_vars, aux, scale: int) -> list:
    """min over auxiliary assignments of transformed, per original state.

    The enumeration order puts the auxiliaries after the original variables
    (they vary slowest), so the dense value vector consists of |aux-space|
    contiguous blocks that can be folded with elementwise min.
    """
    ordered = list(x_vars) + list(aux)
    values = _dense_values(transformed, ordered, scale)
    block = _state_count(transformed.registry, x_vars)
    folded = values[:block]
    for start in range(block, len(values), block):
        folded = [m if m <= v else v for m, v in zip(folded, values[start : start + block])]
    return folded


def check_pointwise(
    original: Polynomial,
    transformed: Polynomial,
    aux: Sequence[int],
    max_states: int = DEFAULT_STATE_CAP,
) -> VerificationReport:
    """Does min over auxiliaries of `transformed` equal `original` everywhere?

    This is the strongest guarantee: the transformed function reproduces the
    full spectrum of the original over every original assignment.
    """
    x_vars, aux = _split_vars(original, transformed, aux)
    registry = original.registry
    n_states = _state_count(registry, x_vars) * _state_count(registry, aux)
    _check_cap(n_states, max_states)
    scale = _common_scale(original, transformed)
    original_values = _dense_values(original, x_vars, scale)
    folded = _folded_minima(transformed, x_vars, aux, scale)
    counterexample = None
    for index, (want, got) in enumerate(zip(original_values, folded)):
        if want != got:
            counterexample = _state_assignment(registry, x_vars, index)
            break
    stats = CheckStats(
        states_enumerated=n_states,
        min_original=Fraction(min(original_values), scale),
        min_transformed=Fraction(min(folded), scale),
    )
    return VerificationReport(
        CheckMode.POINTWISE, counterexample is None, counterexample, stats
    )


def check_groundstate(
    original: Polynomial,
    transformed: Polynomial,
    aux: Sequence[int],
    max_states: int = DEFAULT_STATE_CAP,
) -> VerificationReport:
    """Does argmin(transformed), projected on the original variables, equal
    argmin(original) as a set?

    Minimum *values* are recorded in the stats but never compared: several
    gadgets shift or scale energies while preserving the ground manifold.
    """
    x_vars, aux = _split_vars(original, transformed, aux)
    registry = original.registry
    n_states = _state_count(registry, x_vars) * _state_count(registry, aux)
    _check_cap(n_states, max_states)
    scale = _common_scale(original, transformed)
    original_values = _dense_values(original, x_vars, scale)
    folded = _folded_minima(transformed, x_vars, aux, scale)
    best_original = min(original_values)
    best_transformed = min(folded)
    argmin_original = {i for i, v in enumerate(original_values) if v == best_original}
    argmin_transformed = {i for i, v in enumerate(folded) if v == best_transformed}
    counterexample = None
    difference = argmin_original ^ argmin_transformed
    if difference:
        counterexample = _state_assignment(registry, x_vars, min(difference))
    stats = CheckStats(
        states_enumerated=n_states,
        min_original=Fraction(best_original, scale),
        min_transformed=Fraction(best_transformed, scale),
    )
    return VerificationReport(
        CheckMode.GROUND_STATE, counterexample is None, counterexample, stats
    )


def check_spectrum(
    original: Polynomial,
    transformed: Polynomial,
    aux: Sequence[int],
    max_states: int = DEFAULT_STATE_CAP,
) -> VerificationReport:
    """Multiset of aux-minimized values vs the original's value multiset."""
    x_vars, aux = _split_vars(original, transformed, aux)
    registry = original.registry
    n_states = _state_count(registry, x_vars) * _state_count(registry, aux)
    _check_cap(n_states, max_states)
    scale = _common_scale(original, transformed)
    original_values = _dense_values(original, x_vars, scale)
    folded = _folded_minima(transformed, x_vars, aux, scale)
    counterexample = None
    if sorted(original_values) != sorted(folded):
        for index, (want, got) in enumerate(zip(original_values, folded)):
            if want != got:
                counterexample = _state_assignment(registry, x_vars, index)
                break
    stats = CheckStats(
        states_enumerated=n_states,
        min_original=Fraction(min(original_values), scale),
        min_transformed=Fraction(min(folded), scale),
    )
    return VerificationReport(
        CheckMode.SPECTRUM, counterexample is None, counterexample, stats
    )


def check_conditional(
    original: Polynomial,
    transformed: Polynomial,
    evidence=(),
    max_states: int = DEFAULT_STATE_CAP,
) -> VerificationReport:
    """Check a zero-auxiliary rewrite: equal minimum AND equal argmin set.

    `evidence` lists the Deduction / excludable-configuration facts the
    rewrite relied on; each is re-proved against the original's minimizers
    before the minima are compared, so a stale deduction surfaces as a failure
    with the violating minimizer as counterexample.
    """
    vars = sorted(set(original.variables()) | set(transformed.variables()))
    registry = original.registry
    n_states = _state_count(registry, vars)
    _check_cap(n_states, max_states)
    scale = _common_scale(original, transformed)
    original_values = _dense_values(original, vars, scale)
    transformed_values = _dense_values(transformed, vars, scale)
    best_original = min(original_values)
    best_transformed = min(transformed_values)
    argmin_original = {i for i, v in enumerate(original_values) if v == best_original}
    argmin_transformed = {
        i for i, v in enumerate(transformed_values) if v == best_transformed
    }

    counterexample = None
    for fact in evidence:
        for index in sorted(argmin_original):
            assignment = _state_assignment(registry, vars, index)
            if not _evidence_holds_at(fact, assignment):
                counterexample = assignment
                break
        if counterexample:
            break
    if counterexample is None and (
        best_original != best_transformed or argmin_original != argmin_transformed
    ):
        difference = argmin_original ^ argmin_transformed
        index = min(difference) if difference else min(argmin_original)
        counterexample = _state_assignment(registry, vars, index)

    stats = CheckStats(
        states_enumerated=n_states,
        min_original=Fraction(best_original, scale),
        min_transformed=Fraction(best_transformed, scale),
    )
    return VerificationReport(
        CheckMode.CONDITIONAL, counterexample is None, counterexample, stats
    )


def _evidence_holds_at(fact, assignment: dict) -> bool:
    """A Deduction must vanish at the minimizer; an ELC must not match it.

    Variables missing from the assignment are free, so a deduction cannot
    rely on them being 0 and an excludable configuration is extendable
    through them.
    """
    monomial = getattr(fact, "monomial", None)
    if monomial is not None:
        return any(assignment.get(v, 1) == 0 for v, _ in monomial)
    mapping = fact if isinstance(fact, dict) else fact.values
    return any(assignment.get(v, value) != value for v, value in mapping.items())


def cost_report(transformed: Polynomial, aux: Sequence[int]) -> CostReport:
    """Auxiliary count, non-submodular quadratic count ({0,1} parts only),
    largest absolute coefficient, and total stored terms."""
    non_submodular = 0
    for mono, coeff in transformed.terms.items():
        if monomial_degree(mono) != 2 or coeff <= 0:
            continue
        if all(
            transformed.registry.domain(v) is Domain.BOOLEAN for v, _ in mono
        ):
            non_submodular += 1
    return CostReport(
        aux_count=len(aux),
        non_submodular=non_submodular,
        max_abs_coefficient=max(
            (abs(c) for c in transformed.terms.values()), default=Fraction(0)
        ),
        term_count=len(transformed.terms),
    )
