"""Quadratization gadgets for a single monomial.

Negative-term reductions (ntr_*) rewrite one monomial with a negative
coefficient; positive-term reductions (ptr_*) handle positive coefficients.
Every formula below is stated for a unit coefficient and the whole output is
scaled by |coeff|, which is sound because min_a(s*g) = s*min_a(g) for s > 0.
Wrong-sign inputs raise WrongSign rather than being converted silently: sign
routing belongs to the pipeline.

Gadgets whose printed source formulas could not be confirmed in advance are
registered as experimental: applying one runs the exhaustive oracle on the
spot and the result is only returned when its claimed guarantee holds.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import (
    DomainViolation,
    InvalidParameter,
    UnknownGadget,
    VerificationFailed,
    WrongDegree,
    WrongSign,
)
from ..poly import Domain, Monomial, Polynomial, VariableRegistry, monomial_degree
from ..verify import DEFAULT_STATE_CAP, check_groundstate, check_pointwise
from .base import (
    EXPERIMENTAL,
    GADGETS,
    MUST_PASS,
    GadgetDescriptor,
    GadgetResult,
    Guarantee,
    register_gadget,
)


def _monomial_vars(mono: Monomial, registry: VariableRegistry, domain: Domain) -> list[int]:
    vars = []
    for var, exp in mono:
        if exp != 1:
            raise DomainViolation("gadget monomials use each variable once")
        if registry.domain(var) is not domain:
            raise DomainViolation(
                f"variable {var} is not in the {domain.tag!r} domain"
            )
        vars.append(var)
    return sorted(vars)


def _check_sign(coeff: Fraction, want: str) -> Fraction:
    coeff = Fraction(coeff)
    if want == "negative" and coeff >= 0:
        raise WrongSign(f"expected a negative coefficient, got {coeff}")
    if want == "positive" and coeff <= 0:
        raise WrongSign(f"expected a positive coefficient, got {coeff}")
    return coeff


def _check_degree(vars, low: int, high=None):
    k = len(vars)
    if k < low or (high is not None and k > high):
        bound = f">= {low}" if high is None else f"in [{low}, {high}]"
        raise WrongDegree(f"gadget needs degree {bound}, got {k}")
    return k


def _vp(registry: VariableRegistry, var: int) -> Polynomial:
    return Polynomial.variable(registry, var)


def _sum_vars(registry: VariableRegistry, vars) -> Polynomial:
    total = Polynomial.zero(registry)
    for var in vars:
        total = total + _vp(registry, var)
    return total


def _pair_sum(registry: VariableRegistry, vars) -> Polynomial:
    total = Polynomial.zero(registry)
    for i, u in enumerate(vars):
        for w in vars[i + 1 :]:
            total = total + Polynomial.product(registry, [u, w])
    return total


def _result(name, registry, output, aux, guarantee, coeff, vars) -> GadgetResult:
    labels = ",".join(registry.display_name(a) for a in aux)
    body = "".join(registry.display_name(v) for v in vars)
    trace = f"{name}({coeff}*{body})" + (f" aux={labels}" if labels else "")
    return GadgetResult(output=output, aux=tuple(aux), guarantee=guarantee, trace=trace)


# ---------------------------------------------------------------------------
# Negative term reductions


def ntr_kzfd(coeff, mono: Monomial, registry: VariableRegistry) -> GadgetResult:
    """-b1..bk -> (k-1)*ba - sum_i bi*ba, one auxiliary, full spectrum.

    Every quadratic term in the output has a negative coefficient, so the
    result is entirely submodular.  Valid for any k >= 1.
    """
    vars = _monomial_vars(mono, registry, Domain.BOOLEAN)
    coeff = _check_sign(coeff, "negative")
    k = _check_degree(vars, 1)
    ba = registry.add_auxiliary(Domain.BOOLEAN, "ntr_kzfd")
    a = _vp(registry, ba)
    out = (a * (k - 1) - _sum_vars(registry, vars) * a).scale(-coeff)
    return _result("ntr_kzfd", registry, out, [ba], Guarantee.POINTWISE_MIN, coeff, vars)


def ntr_abcg(coeff, mono: Monomial, registry: VariableRegistry) -> GadgetResult:
    """-b1..bk -> sum_{i<k} bi - sum_{i<k} bi*bk - sum_i bi*ba + (k-1)*bk*ba.

    One auxiliary; exactly one non-submodular quadratic term, (k-1)*bk*ba.
    The last variable of the monomial plays the asymmetric role.
    """
    vars = _monomial_vars(mono, registry, Domain.BOOLEAN)
    coeff = _check_sign(coeff, "negative")
    k = _check_degree(vars, 3)
    head, bk = vars[:-1], vars[-1]
    ba = registry.add_auxiliary(Domain.BOOLEAN, "ntr_abcg")
    a = _vp(registry, ba)
    z = _vp(registry, bk)
    out = (
        _sum_vars(registry, head)
        - _sum_vars(registry, head) * z
        - _sum_vars(registry, vars) * a
        + (z * a) * (k - 1)
    ).scale(-coeff)
    return _result("ntr_abcg", registry, out, [ba], Guarantee.POINTWISE_MIN, coeff, vars)


def ntr_abcg2(coeff, mono: Monomial, registry: VariableRegistry, scale_c=2) -> GadgetResult:
    """-b1..bk -> (C*k - 1)*ba - C*sum_i bi*ba for a constant C >= 1.

    The only non-submodular term is linear.  C = 1 reproduces ntr_kzfd
    exactly; the default C = 2 is the published form.
    """
    vars = _monomial_vars(mono, registry, Domain.BOOLEAN)
    coeff = _check_sign(coeff, "negative")
    k = _check_degree(vars, 3)
    scale_c = Fraction(scale_c)
    if scale_c < 1:
        raise InvalidParameter(f"C must be >= 1, got {scale_c}")
    ba = registry.add_auxiliary(Domain.BOOLEAN, "ntr_abcg2")
    a = _vp(registry, ba)
    out = (a * (scale_c * k - 1) - _sum_vars(registry, vars) * a * scale_c).scale(-coeff)
    return _result("ntr_abcg2", registry, out, [ba], Guarantee.POINTWISE_MIN, coeff, vars)


def ntr_gbp(coeff, mono: Monomial, registry: VariableRegistry, pivot: int = 1) -> GadgetResult:
    """Asymmetric cubic reduction: with pivot p and the other two q, r,

        -bp*bq*br -> ba*(-bp + bq + br) - bp*bq - bp*br + bp
    """
    vars = _monomial_vars(mono, registry, Domain.BOOLEAN)
    coeff = _check_sign(coeff, "negative")
    _check_degree(vars, 3, 3)
    if pivot not in (1, 2, 3):
        raise InvalidParameter("pivot must be 1, 2 or 3")
    p = vars[pivot - 1]
    q, r = (v for v in vars if v != p)
    ba = registry.add_auxiliary(Domain.BOOLEAN, "ntr_gbp")
    a = _vp(registry, ba)
    bp = _vp(registry, p)
    out = (
        a * (_vp(registry, q) + _vp(registry, r) - bp)
        - Polynomial.product(registry, [p, q])
        - Polynomial.product(registry, [p, r])
        + bp
    ).scale(-coeff)
    return _result("ntr_gbp", registry, out, [ba], Guarantee.POINTWISE_MIN, coeff, vars)


def ntr_rbl(coeff, mono: Monomial, registry: VariableRegistry) -> GadgetResult:
    """-z1*z2*z3 -> (1 + 4*ta + z1 + z2 + z3)^2 - 1 with a ternary auxiliary.

    Only the ground-state manifold is reproduced; excited energies shift.
    """
    vars = _monomial_vars(mono, registry, Domain.SPIN)
    coeff = _check_sign(coeff, "negative")
    _check_degree(vars, 3, 3)
    ta = registry.add_auxiliary(Domain.TERNARY, "ntr_rbl")
    inner = 1 + _vp(registry, ta) * 4 + _sum_vars(registry, vars)
    out = (inner * inner - 1).scale(-coeff)
    return _result("ntr_rbl", registry, out, [ta], Guarantee.GROUND_STATE, coeff, vars)


def ntr_kzfd_literals(coeff, pos_vars, neg_vars, registry: VariableRegistry) -> GadgetResult:
    """ntr_kzfd applied to a product of literals (some variables negated):

        -prod(bi, i in P) * prod(1-bj, j in N)
            -> (k-1)*ba - sum_P bi*ba - sum_N (1-bj)*ba,  k = |P| + |N|

    This is the generalized flipped form that keeps the output submodular in
    the flipped literals; the pipeline uses it for odd-degree split tails.
    """
    coeff = _check_sign(coeff, "negative")
    pos_vars, neg_vars = sorted(pos_vars), sorted(neg_vars)
    vars = pos_vars + neg_vars
    if len(set(vars)) != len(vars) or not vars:
        raise InvalidParameter("literal sets must be disjoint and nonempty")
    for var in vars:
        if registry.domain(var) is not Domain.BOOLEAN:
            raise DomainViolation(f"variable {var} is not a {{0,1}} variable")
    k = len(vars)
    ba = registry.add_auxiliary(Domain.BOOLEAN, "ntr_kzfd")
    a = _vp(registry, ba)
    total = a * (k - 1) - _sum_vars(registry, pos_vars) * a
    for var in neg_vars:
        total = total - (1 - _vp(registry, var)) * a
    out = total.scale(-coeff)
    return _result("ntr_kzfd~", registry, out, [ba], Guarantee.POINTWISE_MIN, coeff, vars)


# ---------------------------------------------------------------------------
# Positive term reductions


def ptr_bg(coeff, mono: Monomial, registry: VariableRegistry) -> GadgetResult:
    """b1..bk -> sum_{i=1}^{k-2} ba_i*(k-i-1 + bi - sum_{j>i} bj) + b_{k-1}*b_k."""
    vars = _monomial_vars(mono, registry, Domain.BOOLEAN)
    coeff = _check_sign(coeff, "positive")
    k = _check_degree(vars, 3)
    aux = [registry.add_auxiliary(Domain.BOOLEAN, "ptr_bg") for _ in range(k - 2)]
    total = Polynomial.product(registry, vars[-2:])
    for i, ba in enumerate(aux, start=1):
        inner = (
            Polynomial.constant(registry, k - i - 1)
            + _vp(registry, vars[i - 1])
            - _sum_vars(registry, vars[i:])
        )
        total = total + _vp(registry, ba) * inner
    out = total.scale(coeff)
    return _result("ptr_bg", registry, out, aux, Guarantee.POINTWISE_MIN, coeff, vars)


def ptr_ishikawa(coeff, mono: Monomial, registry: VariableRegistry) -> GadgetResult:
    """Symmetric-polynomial reduction of a positive monomial:

        b1..bk -> sum_{i=1}^{n_k} ba_i*(c_{i,k}*(-sum_j bj + 2i) - 1)
                  + sum_{i<j} bi*bj

    with n_k = floor((k-1)/2) auxiliaries and c_{i,k} = 1 when i = n_k and k
    is odd, else 2.  Reproduces the full spectrum; all k(k-1)/2 original-pair
    quadratics are non-submodular.
    """
    vars = _monomial_vars(mono, registry, Domain.BOOLEAN)
    coeff = _check_sign(coeff, "positive")
    k = _check_degree(vars, 3)
    n_k = (k - 1) // 2
    aux = [registry.add_auxiliary(Domain.BOOLEAN, "ptr_ishikawa") for _ in range(n_k)]
    body_sum = _sum_vars(registry, vars)
    total = _pair_sum(registry, vars)
    for i, ba in enumerate(aux, start=1):
        c_ik = 1 if (i == n_k and k % 2 == 1) else 2
        total = total + _vp(registry, ba) * ((body_sum * (-1) + 2 * i) * c_ik - 1)
    out = total.scale(coeff)
    return _result("ptr_ishikawa", registry, out, aux, Guarantee.POINTWISE_MIN, coeff, vars)


def _bcr3_m(k: int) -> int:
    # Smallest m whose auxiliary range [0, 2^m - 1] can represent
    # 2^m - k + sum(b) for every sum(b) in [0, k]; i.e. 2^m >= k.
    return max(1, (k - 1).bit_length())


def ptr_bcr3(coeff, mono: Monomial, registry: VariableRegistry) -> GadgetResult:
    """b1..bk -> (2^m - k + sum_i bi - sum_{i=1}^m 2^{i-1}*ba_i)^2.

    Binary-counter reduction with m = ceil(log2 k) auxiliaries: when any bi is
    0 the auxiliaries can cancel the bracket exactly, and when all are 1 the
    best bracket value is 1.
    """
    vars = _monomial_vars(mono, registry, Domain.BOOLEAN)
    coeff = _check_sign(coeff, "positive")
    k = _check_degree(vars, 3)
    m = _bcr3_m(k)
    aux = [registry.add_auxiliary(Domain.BOOLEAN, "ptr_bcr3") for _ in range(m)]
    bracket = Polynomial.constant(registry, 2**m - k) + _sum_vars(registry, vars)
    for i, ba in enumerate(aux, start=1):
        bracket = bracket - _vp(registry, ba) * 2 ** (i - 1)
    out = (bracket * bracket).scale(coeff)
    return _result("ptr_bcr3", registry, out, aux, Guarantee.POINTWISE_MIN, coeff, vars)


def _bcr4_m(k: int) -> int:
    # Smallest m with k <= 2^(m+1); equals ceil(log2 k) - 1 for k >= 3.
    m = 1
    while k > 2 ** (m + 1):
        m += 1
    return m


def ptr_bcr4(coeff, mono: Monomial, registry: VariableRegistry) -> GadgetResult:
    """b1..bk -> (1/2)*(N + X)*(N + X - 1) with N = 2^(m+1) - k and
    X = sum_i bi - sum_{i=1}^m 2^i*ba_i, for the smallest m with k <= 2^(m+1).

    ceil(log2 k) - 1 auxiliaries: one fewer than ptr_bcr3 because the product
    of consecutive integers vanishes on {0, 1}, not just on {0}.
    """
    vars = _monomial_vars(mono, registry, Domain.BOOLEAN)
    coeff = _check_sign(coeff, "positive")
    k = _check_degree(vars, 3)
    m = _bcr4_m(k)
    aux = [registry.add_auxiliary(Domain.BOOLEAN, "ptr_bcr4") for _ in range(m)]
    bracket = Polynomial.constant(registry, 2 ** (m + 1) - k) + _sum_vars(registry, vars)
    for i, ba in enumerate(aux, start=1):
        bracket = bracket - _vp(registry, ba) * 2**i
    out = (bracket * (bracket - 1)).scale(Fraction(1, 2)).scale(coeff)
    return _result("ptr_bcr4", registry, out, aux, Guarantee.POINTWISE_MIN, coeff, vars)


def ptr_kz(coeff, mono: Monomial, registry: VariableRegistry) -> GadgetResult:
    """Minimum-selection reduction of a positive cubic:

        b1*b2*b3 -> 1 - (ba + b1 + b2 + b3) + ba*(b1 + b2 + b3)
                    + b1*b2 + b1*b3 + b2*b3

    All six possible quadratic terms appear and all are non-submodular.
    Negative cubics are the NTR family's job, so they are rejected here.
    """
    vars = _monomial_vars(mono, registry, Domain.BOOLEAN)
    coeff = _check_sign(coeff, "positive")
    _check_degree(vars, 3, 3)
    ba = registry.add_auxiliary(Domain.BOOLEAN, "ptr_kz")
    a = _vp(registry, ba)
    body_sum = _sum_vars(registry, vars)
    out = (1 - (a + body_sum) + a * body_sum + _pair_sum(registry, vars)).scale(coeff)
    return _result("ptr_kz", registry, out, [ba], Guarantee.POINTWISE_MIN, coeff, vars)


def ptr_gbp(coeff, mono: Monomial, registry: VariableRegistry, pivot: int = 1) -> GadgetResult:
    """Asymmetric positive cubic reduction: with pivot p and the others q, r,

        bp*bq*br -> ba - bq*ba - br*ba + bp*ba + bq*br
    """
    vars = _monomial_vars(mono, registry, Domain.BOOLEAN)
    coeff = _check_sign(coeff, "positive")
    _check_degree(vars, 3, 3)
    if pivot not in (1, 2, 3):
        raise InvalidParameter("pivot must be 1, 2 or 3")
    p = vars[pivot - 1]
    q, r = (v for v in vars if v != p)
    ba = registry.add_auxiliary(Domain.BOOLEAN, "ptr_gbp")
    a = _vp(registry, ba)
    out = (
        a * (1 - _vp(registry, q) - _vp(registry, r) + _vp(registry, p))
        + Polynomial.product(registry, [q, r])
    ).scale(coeff)
    return _result("ptr_gbp", registry, out, [ba], Guarantee.POINTWISE_MIN, coeff, vars)


# ---------------------------------------------------------------------------
# Experimental gadgets (formulas as printed in the source; oracle-gated)


def _x_ptr_bcr1(coeff, mono, registry):
    vars = _monomial_vars(mono, registry, Domain.BOOLEAN)
    coeff = _check_sign(coeff, "positive")
    k = _check_degree(vars, 3)
    if k % 2 == 0:
        raise WrongDegree("ptr_bcr1 is stated for odd k only")
    aux = [registry.add_auxiliary(Domain.BOOLEAN, "ptr_bcr1") for _ in range((k - 1) // 2)]
    body_sum = _sum_vars(registry, vars)
    total = body_sum + _pair_sum(registry, vars)
    for i, ba in enumerate(aux, start=1):
        total = total + _vp(registry, ba) * (body_sum * (-1) + (4 * i - 3))
    out = total.scale(coeff)
    return _result("ptr_bcr1", registry, out, aux, Guarantee.POINTWISE_MIN, coeff, vars)


def _x_ptr_bcr2(coeff, mono, registry):
    vars = _monomial_vars(mono, registry, Domain.BOOLEAN)
    coeff = _check_sign(coeff, "positive")
    _check_degree(vars, 4, 4)
    ba = registry.add_auxiliary(Domain.BOOLEAN, "ptr_bcr2")
    bracket = _sum_vars(registry, vars) - _vp(registry, ba) * 2
    out = (bracket * (bracket - 1)).scale(Fraction(1, 2)).scale(coeff)
    return _result("ptr_bcr2", registry, out, [ba], Guarantee.POINTWISE_MIN, coeff, vars)


def _x_ptr_kz_z(coeff, mono, registry):
    vars = _monomial_vars(mono, registry, Domain.SPIN)
    coeff = Fraction(coeff)
    if coeff == 0:
        raise WrongSign("coefficient must be nonzero")
    _check_degree(vars, 3, 3)
    sign = 1 if coeff > 0 else -1
    za = registry.add_auxiliary(Domain.SPIN, "ptr_kz_z")
    body_sum = _sum_vars(registry, vars)
    out = (
        3
        + (body_sum + _vp(registry, za)) * sign
        + _vp(registry, za) * body_sum * 2
        + _pair_sum(registry, vars)
    ).scale(abs(coeff))
    return _result("ptr_kz_z", registry, out, [za], Guarantee.POINTWISE_MIN, coeff, vars)


def _x_ptr_rbl_3to2(coeff, mono, registry):
    vars = _monomial_vars(mono, registry, Domain.SPIN)
    coeff = _check_sign(coeff, "positive")
    _check_degree(vars, 3, 3)
    ta = registry.add_auxiliary(Domain.TERNARY, "ptr_rbl_3to2")
    inner = 1 + _vp(registry, ta) * 4 + _sum_vars(registry, vars)
    out = (inner * inner - 1).scale(coeff)
    return _result("ptr_rbl_3to2", registry, out, [ta], Guarantee.GROUND_STATE, coeff, vars)


def _rbl_quartic_z(registry, vars, ta):
    t = _vp(registry, ta)
    return (
        t * t * 16
        + t * _sum_vars(registry, vars) * 4
        + _pair_sum(registry, vars) * 2
        + 4
    )


def _x_ptr_rbl_4to2(coeff, mono, registry):
    vars = _monomial_vars(mono, registry, Domain.SPIN)
    coeff = _check_sign(coeff, "positive")
    _check_degree(vars, 4, 4)
    ta = registry.add_auxiliary(Domain.TERNARY, "ptr_rbl_4to2")
    out = _rbl_quartic_z(registry, vars, ta).scale(coeff)
    return _result("ptr_rbl_4to2", registry, out, [ta], Guarantee.GROUND_STATE, coeff, vars)


def _x_ntr_lhz(coeff, mono, registry):
    # The printed form couples a ternary auxiliary to the {0,1} images of the
    # spins, so the output lives over the boolean twins of the input.
    vars = _monomial_vars(mono, registry, Domain.SPIN)
    coeff = _check_sign(coeff, "negative")
    _check_degree(vars, 4, 4)
    twins = [registry.twin(v, Domain.BOOLEAN) for v in vars]
    ta = registry.add_auxiliary(Domain.TERNARY, "ntr_lhz")
    t = _vp(registry, ta)
    out = (
        t * t * 16
        + t * _sum_vars(registry, twins) * 8
        + _pair_sum(registry, twins) * 8
        + 16
    ).scale(-coeff)
    return _result("ntr_lhz", registry, out, [ta], Guarantee.GROUND_STATE, coeff, vars)


def _x_ntr_lhz_z(coeff, mono, registry):
    vars = _monomial_vars(mono, registry, Domain.SPIN)
    coeff = _check_sign(coeff, "negative")
    _check_degree(vars, 4, 4)
    ta = registry.add_auxiliary(Domain.TERNARY, "ntr_lhz_z")
    out = _rbl_quartic_z(registry, vars, ta).scale(-coeff)
    return _result("ntr_lhz_z", registry, out, [ta], Guarantee.GROUND_STATE, coeff, vars)


_EXPERIMENTAL_APPLIERS = {
    "ptr_bcr1": _x_ptr_bcr1,
    "ptr_bcr2": _x_ptr_bcr2,
    "ptr_kz_z": _x_ptr_kz_z,
    "ptr_rbl_3to2": _x_ptr_rbl_3to2,
    "ptr_rbl_4to2": _x_ptr_rbl_4to2,
    "ntr_lhz": _x_ntr_lhz,
    "ntr_lhz_z": _x_ntr_lhz_z,
}


def evaluate_experimental(
    name: str,
    coeff,
    mono: Monomial,
    registry: VariableRegistry,
    max_states: int = DEFAULT_STATE_CAP,
):
    """Build an experimental gadget and run its claimed-guarantee check.

    Returns (GadgetResult, VerificationReport) without raising on failure, so
    callers can record the verdict.
    """
    try:
        applier = _EXPERIMENTAL_APPLIERS[name]
    except KeyError:
        raise UnknownGadget(f"no experimental gadget named {name!r}") from None
    result = applier(coeff, mono, registry)
    target = Polynomial(registry, {mono: Fraction(coeff)})
    if name == "ntr_lhz":
        target = target.to_boolean()
    if result.guarantee == Guarantee.POINTWISE_MIN:
        report = check_pointwise(target, result.output, result.aux, max_states)
    else:
        report = check_groundstate(target, result.output, result.aux, max_states)
    return result, report


def experimental_single_term(
    name: str,
    coeff,
    mono: Monomial,
    registry: VariableRegistry,
    max_states: int = DEFAULT_STATE_CAP,
) -> GadgetResult:
    """Apply an experimental gadget, exposing the result only if the oracle
    confirms its claimed guarantee; otherwise VerificationFailed carries the
    counterexample report."""
    result, report = evaluate_experimental(name, coeff, mono, registry, max_states)
    if not report.passed:
        raise VerificationFailed(
            f"experimental gadget {name!r} failed its {report.mode} check", report
        )
    return result


# ---------------------------------------------------------------------------
# Catalog registration


def _log2_ceil(k: int) -> int:
    return max(1, (k - 1).bit_length())


def _register_all():
    B, Z = Domain.BOOLEAN, Domain.SPIN
    entries = [
        # name, sign, domain, k-range, aux(k), guarantee, status, applier, summary
        ("ntr_kzfd", "negative", B, 1, None, lambda k: 1, Guarantee.POINTWISE_MIN,
         MUST_PASS, ntr_kzfd, "single aux, fully submodular output"),
        ("ntr_abcg", "negative", B, 3, None, lambda k: 1, Guarantee.POINTWISE_MIN,
         MUST_PASS, ntr_abcg, "single aux, one non-submodular quadratic"),
        ("ntr_abcg2", "negative", B, 3, None, lambda k: 1, Guarantee.POINTWISE_MIN,
         MUST_PASS, ntr_abcg2, "single aux, non-submodular part is linear"),
        ("ntr_gbp", "negative", B, 3, 3, lambda k: 1, Guarantee.POINTWISE_MIN,
         MUST_PASS, ntr_gbp, "asymmetric cubic variant"),
        ("ntr_rbl", "negative", Z, 3, 3, lambda k: 1, Guarantee.GROUND_STATE,
         MUST_PASS, ntr_rbl, "spin cubic via one ternary aux"),
        ("ptr_bg", "positive", B, 3, None, lambda k: k - 2, Guarantee.POINTWISE_MIN,
         MUST_PASS, ptr_bg, "negated-literal recursion, k-2 aux"),
        ("ptr_ishikawa", "positive", B, 3, None, lambda k: (k - 1) // 2,
         Guarantee.POINTWISE_MIN, MUST_PASS, ptr_ishikawa,
         "symmetric-polynomial reduction, floor((k-1)/2) aux"),
        ("ptr_bcr3", "positive", B, 3, None, _log2_ceil, Guarantee.POINTWISE_MIN,
         MUST_PASS, ptr_bcr3, "squared binary counter, ceil(log2 k) aux"),
        ("ptr_bcr4", "positive", B, 3, None, lambda k: max(1, _log2_ceil(k) - 1),
         Guarantee.POINTWISE_MIN, MUST_PASS, ptr_bcr4,
         "halved product counter, ceil(log2 k)-1 aux"),
        ("ptr_kz", "positive", B, 3, 3, lambda k: 1, Guarantee.POINTWISE_MIN,
         MUST_PASS, ptr_kz, "minimum selection, all 6 quadratics"),
        ("ptr_gbp", "positive", B, 3, 3, lambda k: 1, Guarantee.POINTWISE_MIN,
         MUST_PASS, ptr_gbp, "asymmetric positive cubic"),
        ("ptr_bcr1", "positive", B, 3, None, lambda k: (k - 1) // 2,
         Guarantee.POINTWISE_MIN, EXPERIMENTAL, _x_ptr_bcr1,
         "odd-k counter variant as printed"),
        ("ptr_bcr2", "positive", B, 4, 4, lambda k: 1, Guarantee.POINTWISE_MIN,
         EXPERIMENTAL, _x_ptr_bcr2, "quartic single-aux instance"),
        ("ptr_kz_z", "any", Z, 3, 3, lambda k: 1, Guarantee.POINTWISE_MIN,
         EXPERIMENTAL, _x_ptr_kz_z, "spin form of minimum selection as printed"),
        ("ptr_rbl_3to2", "positive", Z, 3, 3, lambda k: 1, Guarantee.GROUND_STATE,
         EXPERIMENTAL, _x_ptr_rbl_3to2, "ternary-aux spin cubic as printed"),
        ("ptr_rbl_4to2", "positive", Z, 4, 4, lambda k: 1, Guarantee.GROUND_STATE,
         EXPERIMENTAL, _x_ptr_rbl_4to2, "ternary-aux spin quartic as printed"),
        ("ntr_lhz", "negative", Z, 4, 4, lambda k: 1, Guarantee.GROUND_STATE,
         EXPERIMENTAL, _x_ntr_lhz, "parity gadget, printed {0,1} form"),
        ("ntr_lhz_z", "negative", Z, 4, 4, lambda k: 1, Guarantee.GROUND_STATE,
         EXPERIMENTAL, _x_ntr_lhz_z, "parity gadget, printed spin form"),
    ]
    for name, sign, domain, lo, hi, aux, guarantee, status, applier, summary in entries:
        register_gadget(
            GadgetDescriptor(
                name=name,
                sign=sign,
                domain=domain,
                min_degree=lo,
                max_degree=hi,
                aux_count=aux,
                guarantee=guarantee,
                status=status,
                summary=summary,
            ),
            applier,
        )


_register_all()


def apply_gadget(
    name: str,
    coeff,
    mono: Monomial,
    registry: VariableRegistry,
    max_states: int = DEFAULT_STATE_CAP,
    **params,
) -> GadgetResult:
    """Apply a cataloged single-term gadget by name.

    Terms of degree <= 2 are returned unchanged with zero auxiliaries (the
    identity is the only safe rewrite there).  Experimental gadgets are
    oracle-gated on the spot.
    """
    if name not in GADGETS:
        raise UnknownGadget(f"no gadget named {name!r}")
    if monomial_degree(mono) <= 2:
        return GadgetResult(
            output=Polynomial(registry, {mono: Fraction(coeff)}),
            aux=(),
            guarantee=Guarantee.POINTWISE_MIN,
            trace=f"identity (degree {monomial_degree(mono)} <= 2)",
        )
    if GADGETS[name].status == EXPERIMENTAL:
        return experimental_single_term(name, coeff, mono, registry, max_states)
    return _MUST_PASS_APPLIERS[name](coeff, mono, registry, **params)


_MUST_PASS_APPLIERS = {
    "ntr_kzfd": ntr_kzfd,
    "ntr_abcg": ntr_abcg,
    "ntr_abcg2": ntr_abcg2,
    "ntr_gbp": ntr_gbp,
    "ntr_rbl": ntr_rbl,
    "ptr_bg": ptr_bg,
    "ptr_ishikawa": ptr_ishikawa,
    "ptr_bcr3": ptr_bcr3,
    "ptr_bcr4": ptr_bcr4,
    "ptr_kz": ptr_kz,
    "ptr_gbp": ptr_gbp,
}
