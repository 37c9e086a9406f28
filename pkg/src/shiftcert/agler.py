"""Certified subnormality of the rescaled sum T1 + T2.

For a contraction S, subnormality is equivalent to nonnegativity of every
alternating sum  P_n(v) = sum_l (-1)^l C(n,l) ||S^l v||^2.  Here
S = (T1 + T2)/2 for the parametric family of :mod:`.lubin`, v runs over
the bottom-row basis vectors e_{(k,0)}, and everything reduces to the
moment table:

    P_n(k, 0) = sum_l (-1)^l C(n,l) 4^{-l}
                sum_i C(l,i)^2 gamma_{(k+l-i, i)} / gamma_{(k, 0)},

because the images of e_{(k,0)} under distinct monomials in T1, T2 of the
same degree are orthogonal (:func:`p_n_bruteforce`).  Collapsing the inner
sum with the square-binomial convolution identity gives the closed form
(:func:`p_n_closed`): with

    I_n(c) = sum_l C(n,l) (-c)^l C(2l, l)
           = integral of (1 - c s)^n against the arcsine-type density
             (1/pi) / sqrt(4s - s^2) on [0, 4],

and for k >= 1,

    P_n(k,0) gamma_k = A_n(x) (1/4)^k + B_n(x) (1/2)^k + C_n,
    A_n = (2/11 - x)(15/16)^n + x I_n(1/16),
    B_n = (1/22 - x/4)(7/8)^n + (x/4) I_n(1/8),
    C_n = (1/44)(3/4)^n,

with an analogous affine-in-x expression at k = 0.  All coefficients are
exact rationals, so per-n positivity over all k is decidable: C_n > 0
dominates the tail in k, and the k = 0 form is affine in x.

The infinite family of n is closed off analytically: restricting the
integral to [1/3, 1/2] gives  I_n(c) >= (1/(6 pi sqrt(2))) (1 - c/2)^n,
and with the rational outer bounds pi < 22/7, sqrt(2) < 17/12 (so
6 pi sqrt(2) < 27 because 6 * 22/7 * 17/12 = 187/7 < 27), the exact
inequalities  I_n(1/16) >= (15/16)^n  and  I_n(1/8) >= (7/8)^n  hold for
all n past explicit stopping indices where (31/30)^n and (15/14)^n clear
27.  Past the stopping index, A_n and B_n are nonnegative for *every*
x > 0 and the k = 0 form only needs x <= 6/5.

The upshot is an exact certified bound ``certified_x_max`` strictly above
2/11: the rescaled sum is subnormal on (0, 2/11 + epsilon] with
``epsilon = certified_epsilon()`` a positive rational, even though the
pair itself stops being jointly subnormal at 2/11.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .certificate import Certificate
from .lubin import PAIR_THRESHOLD, moment2d, xi_a
from .measures import moment1
from .numerics import binomial

_P16 = Fraction(15, 16)
_P8 = Fraction(7, 8)
_P4 = Fraction(3, 4)
C_SIXTEENTH = Fraction(1, 16)
C_EIGHTH = Fraction(1, 8)
K0_CAP = Fraction(6, 5)  # the k = 0 tail constraint: 3/4 - (5x/8)(1 - (3/4)^n) >= 0

_SCAN_LIMIT = 100_000


@lru_cache(maxsize=None)
def integral_moment(c, n: int) -> Fraction:
    """I_n(c) = sum_l C(n,l) (-c)^l C(2l,l), computed over a common denominator."""
    c = Fraction(c)
    if not 0 < c < 1:
        raise ValueError(f"c must lie in (0, 1), got {c}")
    if n < 0:
        raise ValueError("n must be >= 0")
    p, q = c.numerator, c.denominator
    numerator = sum(
        binomial(n, ell) * binomial(2 * ell, ell) * (-p) ** ell * q ** (n - ell)
        for ell in range(n + 1)
    )
    return Fraction(numerator, q**n)


class IntegralMoments:
    """Cached I_n values at a fixed c."""

    def __init__(self, c):
        self.c = Fraction(c)
        if not 0 < self.c < 1:
            raise ValueError(f"c must lie in (0, 1), got {self.c}")

    def value(self, n: int) -> Fraction:
        return integral_moment(self.c, n)


@lru_cache(maxsize=None)
def _gamma_row(k: int) -> Fraction:
    return moment1(xi_a(), k)


def abc_coefficients(x, n: int) -> tuple[Fraction, Fraction, Fraction]:
    """The coefficients A_n(x), B_n(x), C_n of the k >= 1 closed form."""
    x = Fraction(x)
    if n < 1:
        raise ValueError("n must be >= 1")
    a = (PAIR_THRESHOLD - x) * _P16**n + x * integral_moment(C_SIXTEENTH, n)
    b = (Fraction(1, 22) - x / 4) * _P8**n + (x / 4) * integral_moment(C_EIGHTH, n)
    c = Fraction(1, 44) * _P4**n
    return a, b, c


def _k0_affine(n: int) -> tuple[Fraction, Fraction]:
    """P_n(0,0) = const + slope * x."""
    const = (
        Fraction(3, 4)
        + PAIR_THRESHOLD * _P16**n
        + Fraction(1, 22) * _P8**n
        + Fraction(1, 44) * _P4**n
    )
    slope = (
        integral_moment(C_SIXTEENTH, n)
        + integral_moment(C_EIGHTH, n) / 4
        + Fraction(5, 8) * _P4**n
        - Fraction(5, 8)
        - _P16**n
        - _P8**n / 4
    )
    return const, slope


def p_n_closed(x, k: int, n: int) -> Fraction:
    """P_n(k, 0) via the collapsed coefficients; exact rational."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("x must be positive")
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    if k == 0:
        const, slope = _k0_affine(n)
        return const + slope * x
    a, b, c = abc_coefficients(x, n)
    return (a * Fraction(1, 4) ** k + b * Fraction(1, 2) ** k + c) / _gamma_row(k)


def p_n_bruteforce(x, k: int, n: int) -> Fraction:
    """P_n(k, 0) straight from the moment table; the oracle for p_n_closed.

    Expands ||((T1+T2)/2)^l e_{(k,0)}||^2 by orthogonality of the images
    under distinct degree-l monomials, with multinomial weights C(l,i)^2
    and moment ratios off anti-diagonals of the table.
    """
    x = Fraction(x)
    if x <= 0:
        raise ValueError("x must be positive")
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    base = moment2d(k, 0, x)
    total = Fraction(0)
    for ell in range(n + 1):
        inner = sum(
            Fraction(binomial(ell, i) ** 2) * moment2d(k + ell - i, i, x)
            for i in range(ell + 1)
        )
        total += Fraction((-1) ** ell * binomial(n, ell), 4**ell) * inner / base
    return total


def per_n_affine_bounds(n: int) -> dict:
    """Per-n sufficient constraints, solved for x.

    Keys "a", "b", "k0" hold the largest x keeping A_n, B_n, and the
    k = 0 value nonnegative (``None`` when the slope is nonnegative, i.e.
    no constraint).  These are sufficient bounds: nonnegative A_n and B_n
    force positivity for every k >= 1 regardless of compensation.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    i16 = integral_moment(C_SIXTEENTH, n)
    i8 = integral_moment(C_EIGHTH, n)
    slope_a = i16 - _P16**n
    slope_b = (i8 - _P8**n) / 4
    const_a = PAIR_THRESHOLD * _P16**n
    const_b = Fraction(1, 22) * _P8**n
    k0_const, k0_slope = _k0_affine(n)
    return {
        "a": None if slope_a >= 0 else const_a / -slope_a,
        "b": None if slope_b >= 0 else const_b / -slope_b,
        "k0": None if k0_slope >= 0 else k0_const / -k0_slope,
    }


@lru_cache(maxsize=None)
def per_n_exact_sup(n: int) -> Fraction | None:
    """Largest x with P_n(k, 0) >= 0 for every k >= 0, or ``None`` if unconstrained.

    For each k >= 1 the value is affine in x with constant part
    cA (1/4)^k + cB (1/2)^k + C_n > 0, so each k contributes either no
    constraint (nonnegative slope) or a threshold x_k; the thresholds grow
    without bound in k because C_n > 0 dominates, so the scan below
    terminates once no later k can undercut the running minimum.  The
    k = 0 affine constraint joins at the end.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    i16 = integral_moment(C_SIXTEENTH, n)
    i8 = integral_moment(C_EIGHTH, n)
    slope_a = i16 - _P16**n
    slope_b = (i8 - _P8**n) / 4
    const_a = PAIR_THRESHOLD * _P16**n
    const_b = Fraction(1, 22) * _P8**n
    c_n = Fraction(1, 44) * _P4**n
    best: Fraction | None = None
    if slope_a < 0 or slope_b < 0:
        quarter, half = Fraction(1, 4), Fraction(1, 2)
        for k in range(1, _SCAN_LIMIT):
            wa, wb = quarter**k, half**k
            slope_k = slope_a * wa + slope_b * wb
            if slope_k < 0:
                threshold = -(const_a * wa + const_b * wb + c_n) / slope_k
                if best is None or threshold < best:
                    best = threshold
            if slope_b >= 0 and slope_k >= 0:
                break  # slope_k * 4^k = slope_a + slope_b 2^k is nondecreasing
            if best is not None and (abs(slope_a) * wa + abs(slope_b) * wb) * best < c_n:
                break  # later k cannot push the threshold below the running minimum
        else:
            raise ArithmeticError("per-n scan failed to terminate")
    k0_bound = per_n_affine_bounds(n)["k0"]
    if k0_bound is not None and (best is None or k0_bound < best):
        best = k0_bound
    return best


def positivity_over_all_k(x, n: int) -> Certificate:
    """Exact decision of P_n(k, 0) >= 0 for every k >= 0 at fixed n.

    Checks k = 0 directly; for k >= 1, nonnegative A_n and B_n settle the
    matter at once, otherwise the constant C_n > 0 bounds how far a
    negative coefficient can reach and the finitely many exposed k are
    evaluated exactly.
    """
    x = Fraction(x)
    if x <= 0:
        raise ValueError("x must be positive")
    if n < 1:
        raise ValueError("n must be >= 1")
    p0 = p_n_closed(x, 0, n)
    if p0 < 0:
        return Certificate(
            "positivity_over_all_k", False, {"n": n, "k": 0, "value": str(p0)}
        )
    a, b, c = abc_coefficients(x, n)
    if a >= 0 and b >= 0:
        return Certificate(
            "positivity_over_all_k", True, {"n": n, "mode": "coefficientwise"}
        )
    quarter, half = Fraction(1, 4), Fraction(1, 2)
    for k in range(1, _SCAN_LIMIT):
        wa, wb = quarter**k, half**k
        value = a * wa + b * wb + c
        if value < 0:
            return Certificate(
                "positivity_over_all_k",
                False,
                {"n": n, "k": k, "value": str(value / _gamma_row(k))},
            )
        if abs(a) * wa + abs(b) * wb <= c:
            return Certificate(
                "positivity_over_all_k",
                True,
                {"n": n, "mode": "tail-dominated", "k_checked": k},
            )
    raise ArithmeticError("positivity scan failed to terminate")


@dataclass(frozen=True)
class TailBound:
    """Analytic closure of the n-tail, with exact stopping indices."""

    n_star: int
    n_sixteenth: int
    n_eighth: int
    witness: str


@lru_cache(maxsize=1)
def tail_stopping_index() -> TailBound:
    """Smallest window past which both tail inequalities hold for all n.

    On [1/3, 1/2] the arcsine-type density exceeds 1/(pi sqrt(2 * 7/4)),
    so I_n(c) >= (1/(6 pi sqrt(2))) (1 - c/2)^n.  Exact rational chain:
    6 pi sqrt(2) < 6 * (22/7) * (17/12) = 187/7 < 27 (and 288 < 289
    witnesses sqrt(2) < 17/12), hence I_n(c) >= (1 - c/2)^n / 27.  The
    ratios against the targets are then (31/30)^n for c = 1/16 and
    (15/14)^n for c = 1/8, and each only needs to clear 27.
    """
    assert 2 * 12**2 < 17**2
    assert Fraction(6 * 22 * 17, 7 * 12) < 27
    n_sixteenth = _first_power_at_least(Fraction(31, 30), 27)
    n_eighth = _first_power_at_least(Fraction(15, 14), 27)
    n_star = max(n_sixteenth, n_eighth)
    witness = (
        "I_n(1/16) >= (31/32)^n / 27 and I_n(1/8) >= (15/16)^n / 27 from the "
        "[1/3, 1/2] window of the arcsine-type integral with 6*pi*sqrt(2) < 27; "
        f"(31/30)^n >= 27 from n = {n_sixteenth} and (15/14)^n >= 27 from "
        f"n = {n_eighth}, so for n > {n_star} the coefficients A_n, B_n are "
        "nonnegative for every x > 0 and the k = 0 value only requires x <= 6/5."
    )
    return TailBound(n_star=n_star, n_sixteenth=n_sixteenth, n_eighth=n_eighth, witness=witness)


def _first_power_at_least(ratio: Fraction, target: int) -> int:
    power = Fraction(1)
    n = 0
    while power < target:
        power *= ratio
        n += 1
        if n > _SCAN_LIMIT:
            raise ArithmeticError("ratio failed to clear the target")
    return n


def tail_inequalities_hold(n: int) -> tuple[bool, bool]:
    """Exact checks I_n(1/16) >= (15/16)^n and I_n(1/8) >= (7/8)^n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return (
        integral_moment(C_SIXTEENTH, n) >= _P16**n,
        integral_moment(C_EIGHTH, n) >= _P8**n,
    )


@lru_cache(maxsize=1)
def certified_x_max() -> Fraction:
    """Largest x certified here for subnormality of the rescaled sum."""
    tail = tail_stopping_index()
    best = K0_CAP
    for n in range(1, tail.n_star + 1):
        sup = per_n_exact_sup(n)
        if sup is not None and sup < best:
            best = sup
    assert best > PAIR_THRESHOLD, "the certified bound must clear 2/11 strictly"
    return best


def certified_epsilon() -> Fraction:
    """The certified gap past the joint-subnormality threshold; exact and > 0."""
    return certified_x_max() - PAIR_THRESHOLD


@dataclass(frozen=True)
class PerNRecord:
    n: int
    ok: bool
    x_max: Fraction | None
    tail_sixteenth: bool
    tail_eighth: bool

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "ok": self.ok,
            "x_max": None if self.x_max is None else str(self.x_max),
            "tail_sixteenth": self.tail_sixteenth,
            "tail_eighth": self.tail_eighth,
        }


@dataclass(frozen=True)
class AglerCertificate:
    """Complete finite-plus-tail certificate for the rescaled sum at x."""

    x: Fraction
    verdict: bool
    n_tail: int
    per_n: tuple[PerNRecord, ...]
    certified_x_max: Fraction
    epsilon: Fraction
    tail_witness: str
    witness: dict | None

    def __bool__(self) -> bool:
        return self.verdict

    def as_dict(self) -> dict:
        return {
            "check": "certify_sum",
            "x": str(self.x),
            "verdict": "pass" if self.verdict else "fail",
            "n_tail": self.n_tail,
            "certified_x_max": str(self.certified_x_max),
            "epsilon": str(self.epsilon),
            "tail_witness": self.tail_witness,
            "witness": self.witness,
            "per_n": [record.as_dict() for record in self.per_n],
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.as_dict(), indent=indent, sort_keys=True)


def certify_sum(x) -> AglerCertificate:
    """Decide subnormality of (T1 + T2)/2 at parameter x, with certificate.

    Exact per-n positivity for every n up to the analytic stopping index,
    the exact tail inequalities recorded per n, and the k = 0 cap x <= 6/5
    covering all larger n.  The verdict is equivalent to
    x <= certified_x_max(), which the construction re-asserts.
    """
    x = Fraction(x)
    if x <= 0:
        raise ValueError("x must be positive")
    tail = tail_stopping_index()
    records = []
    first_violation = None
    for n in range(1, tail.n_star + 1):
        decision = positivity_over_all_k(x, n)
        t16, t8 = tail_inequalities_hold(n)
        records.append(
            PerNRecord(n=n, ok=decision.ok, x_max=per_n_exact_sup(n), tail_sixteenth=t16, tail_eighth=t8)
        )
        if not decision.ok and first_violation is None:
            first_violation = dict(decision.witness)
    cap_ok = x <= K0_CAP
    verdict = cap_ok and all(record.ok for record in records)
    x_max = certified_x_max()
    assert verdict == (x <= x_max), "per-n decisions must match the certified bound"
    witness = None
    if not verdict:
        witness = first_violation or {
            "reason": f"x exceeds the k = 0 tail cap {K0_CAP} for the analytic region"
        }
    return AglerCertificate(
        x=x,
        verdict=verdict,
        n_tail=tail.n_star,
        per_n=tuple(records),
        certified_x_max=x_max,
        epsilon=x_max - PAIR_THRESHOLD,
        tail_witness=tail.witness,
        witness=witness,
    )
