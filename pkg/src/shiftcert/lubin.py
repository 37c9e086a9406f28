"""The parametric two-variable shift family with a subnormality gap.

One rational parameter x > 0 drives the family.  Three atomic probability
measures on [0, 1] generate everything:

    xi_a      = 3/4 d(0) + 2/11 d(1/4) + 1/22 d(1/2) + 1/44 d(1)
    xi_b(x)   = (1 - 15x/8) d(0) + x d(1/4) + x/4 d(1/2) + 5x/8 d(1)
    xi_c      = 1/2 d(1/4) + 1/2 d(1/2)

Row 0 of the weight diagram is the shift of xi_a, column 0 the shift of
xi_b(x), and every deeper slice restricts the shift of xi_c.  The moments
are given in closed form by :func:`moment2d`; the weight rules stay
well-defined for every x > 0 even though xi_b itself only exists as a
positive measure for x <= 8/15.

Certified thresholds (all decided in exact rational arithmetic):

* T1 is subnormal for every x > 0 (the backward-extension margin along
  every row is the constant 5);
* T2 is subnormal iff x <= 8/33 (the infimum over columns of the
  backward-extension bounds, attained at the first column);
* the pair (T1, T2) is jointly subnormal iff x <= 2/11 (a two-step planar
  backward extension whose final domination constraint has atomwise
  mass ratios {6/5, 2/11, 2/11});
* the rescaled sum T1 + T2 stays subnormal strictly past 2/11, with an
  explicit certified margin; see :mod:`.agler`.

A weight-formula quirk, adopted deliberately: the closed form

    (10*4^n + 2^n + 1) / (10*4^n + 2^{n+1} + 4)

reproduces the measure-derived squared b-weight at index n+1, not n.  The
measure xi_b is canonical here, so the squared weight at lattice point
(0, 2) is 43/48; the surd sqrt(44/48) sometimes quoted for that slot is
inconsistent with the moments of xi_b (see the tests for the off-by-one
identity).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .certificate import Certificate
from .errors import NegativeMassError
from .measures import (
    AtomicMeasure1D,
    AtomicMeasure2D,
    domination_scale_bound,
    extremal,
    marginal,
    moment1,
    reciprocal_norm,
    restrict_density,
)
from .shift1d import WeightSequence1D, backward_extension_1d
from .shift2d import (
    MomentTable2D,
    WeightDiagram,
    backward_extension_2d,
    check_berger_2d,
    weights_from_moments2d,
)

_HALF = Fraction(1, 2)
_QUARTER = Fraction(1, 4)

T2_THRESHOLD = Fraction(8, 33)
PAIR_THRESHOLD = Fraction(2, 11)
XI_B_MASS_CAP = Fraction(8, 15)  # xi_b exists as a positive measure iff x <= 8/15


@lru_cache(maxsize=1)
def xi_a() -> AtomicMeasure1D:
    return AtomicMeasure1D(
        [
            (Fraction(0), Fraction(3, 4)),
            (Fraction(1, 4), Fraction(2, 11)),
            (Fraction(1, 2), Fraction(1, 22)),
            (Fraction(1), Fraction(1, 44)),
        ]
    )


def xi_b(x) -> AtomicMeasure1D:
    """x d(1/4) + x/4 d(1/2) + 5x/8 d(1), padded to mass 1 by an atom at 0."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("x must be positive")
    if x > XI_B_MASS_CAP:
        raise NegativeMassError(f"xi_b needs mass 1 - 15x/8 >= 0 at 0, so x <= 8/15; got {x}")
    atoms = [
        (Fraction(1, 4), x),
        (Fraction(1, 2), x / 4),
        (Fraction(1), 5 * x / 8),
    ]
    pad = 1 - Fraction(15, 8) * x
    if pad > 0:
        atoms.append((Fraction(0), pad))
    return AtomicMeasure1D(atoms)


@lru_cache(maxsize=1)
def xi_c() -> AtomicMeasure1D:
    return AtomicMeasure1D([(Fraction(1, 4), _HALF), (Fraction(1, 2), _HALF)])


@lru_cache(maxsize=1)
def xi_a_level1() -> AtomicMeasure1D:
    """restrict_density(xi_a, 1) = 1/2 d(1/4) + 1/4 d(1/2) + 1/4 d(1)."""
    return restrict_density(xi_a(), 1)


@lru_cache(maxsize=1)
def xi_b_level1() -> AtomicMeasure1D:
    """restrict_density(xi_b(x), 1); the parameter cancels, so any legal x works."""
    return restrict_density(xi_b(Fraction(1, 5)), 1)


@lru_cache(maxsize=None)
def weight_a(n: int) -> Fraction:
    """Squared weight of the xi_a shift: 1/11, 1/2, 11/16, ..."""
    return moment1(xi_a(), n + 1) / moment1(xi_a(), n)


def weight_b(n: int, x) -> Fraction:
    """Squared weight of the column-0 shift; x only enters at n == 0.

    Derived from the moment rule gamma_0 = 1,
    gamma_k = x ((1/4)^k + 1/4 (1/2)^k + 5/8), which is well-defined for
    every x > 0 (no positivity of xi_b required).
    """
    x = Fraction(x)
    if x <= 0:
        raise ValueError("x must be positive")
    if n == 0:
        return x
    return _b_moment_core(n + 1) / _b_moment_core(n)


@lru_cache(maxsize=None)
def _b_moment_core(k: int) -> Fraction:
    # gamma_k(xi_b) / x for k >= 1
    return _QUARTER**k + _QUARTER * _HALF**k + Fraction(5, 8)


@lru_cache(maxsize=None)
def weight_c(n: int) -> Fraction:
    """Squared weight of the xi_c shift: 3/8, 5/12, 9/20, ..."""
    return moment1(xi_c(), n + 1) / moment1(xi_c(), n)


def weight_a_closed(n: int) -> Fraction:
    """(4^n + 2^n + 2) / (4^n + 2^{n+1} + 8), valid for n >= 1."""
    if n < 1:
        raise ValueError("closed form is stated for n >= 1")
    return Fraction(4**n + 2**n + 2, 4**n + 2 ** (n + 1) + 8)


def weight_b_closed(n: int) -> Fraction:
    """(5*4^n + 2^n + 2) / (5*4^n + 2^{n+1} + 8): the measure-consistent form, n >= 1."""
    if n < 1:
        raise ValueError("closed form is stated for n >= 1")
    return Fraction(5 * 4**n + 2**n + 2, 5 * 4**n + 2 ** (n + 1) + 8)


def weight_b_closed_shifted(n: int) -> Fraction:
    """(10*4^n + 2^n + 1) / (10*4^n + 2^{n+1} + 4): reproduces weight_b at n+1, n >= 0."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return Fraction(10 * 4**n + 2**n + 1, 10 * 4**n + 2 ** (n + 1) + 4)


def weight_c_closed(n: int) -> Fraction:
    """(2^{n+1} + 1) / (2^{n+2} + 4), valid for all n >= 0."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return Fraction(2 ** (n + 1) + 1, 2 ** (n + 2) + 4)


@lru_cache(maxsize=1)
def mu_m_cap_n() -> AtomicMeasure2D:
    """Berger measure of the pair restricted to both deep subspaces:
    1/2 d(1/4,1/4) + 1/2 d(1/2,1/2)."""
    return AtomicMeasure2D(
        [((Fraction(1, 4), Fraction(1, 4)), _HALF), ((Fraction(1, 2), Fraction(1, 2)), _HALF)]
    )


@lru_cache(maxsize=1)
def mu_m() -> AtomicMeasure2D:
    """Berger measure of the pair restricted past the first row:
    1/4 d(1/4,1/4) + 1/8 d(1/2,1/2) + 5/8 d(0,1)."""
    return AtomicMeasure2D(
        [
            ((Fraction(1, 4), Fraction(1, 4)), Fraction(1, 4)),
            ((Fraction(1, 2), Fraction(1, 2)), Fraction(1, 8)),
            ((Fraction(0), Fraction(1)), Fraction(5, 8)),
        ]
    )


@lru_cache(maxsize=None)
def moment2d(k1: int, k2: int, x) -> Fraction:
    """Closed-form moment table of the family at parameter x.

    Row 0 carries the xi_a moments, column 0 the xi_b(x) moment rule, and
    the interior is x/8 times moments of mu_{M int N} shifted one step:
    gamma_{(k1,k2)} = (x/8) (1/2 (1/4)^{k1+k2-2} + 1/2 (1/2)^{k1+k2-2}).
    """
    x = Fraction(x)
    if x <= 0:
        raise ValueError("x must be positive")
    if k1 < 0 or k2 < 0:
        raise ValueError("lattice indices must be >= 0")
    if k2 == 0:
        return moment1(xi_a(), k1)
    if k1 == 0:
        return x * _b_moment_core(k2)
    power = k1 + k2 - 2
    return (x / 8) * (_HALF * _QUARTER**power + _HALF * _HALF**power)


class LubinFamily:
    """The family at a fixed rational parameter x > 0."""

    def __init__(self, x):
        self.x = Fraction(x)
        if self.x <= 0:
            raise ValueError("x must be positive")
        self._table: MomentTable2D | None = None
        self._diagram: WeightDiagram | None = None

    def moment_table(self) -> MomentTable2D:
        if self._table is None:
            x = self.x
            self._table = MomentTable2D(lambda k1, k2: moment2d(k1, k2, x), name=f"family(x={x})")
        return self._table

    def diagram(self) -> WeightDiagram:
        if self._diagram is None:
            self._diagram = weights_from_moments2d(self.moment_table())
        return self._diagram

    def alpha_sq(self, k1: int, k2: int) -> Fraction:
        return self.diagram().alpha_sq(k1, k2)

    def beta_sq(self, k1: int, k2: int) -> Fraction:
        return self.diagram().beta_sq(k1, k2)

    def row_shift(self) -> WeightSequence1D:
        return WeightSequence1D.from_measure(xi_a(), name="row0")

    def column_shift(self) -> WeightSequence1D:
        x = self.x
        return WeightSequence1D(lambda n: weight_b(n, x), max(Fraction(1), x), name="column0")


def t2_column_bound(n: int) -> Fraction:
    """Largest x for which column n+1 extends backward:
    8 gamma_n(xi_a restricted) / (11 (2 (1/4)^n + (1/2)^n))."""
    if n < 0:
        raise ValueError("n must be >= 0")
    numerator = 8 * moment1(xi_a_level1(), n)
    denominator = 11 * (2 * _QUARTER**n + _HALF**n)
    return numerator / denominator


def threshold_t1(m_max: int = 64) -> Certificate:
    """T1 is subnormal for every x > 0.

    Row m+1 is the backward extension of the xi_c shift restricted m steps,
    and the prepended squared weight alpha_{(0,m+1)}^2 is x-free.  The
    margin of the extension test is the constant 5:

        8 gamma_m(xi_b restricted) - (2 (1/4)^m + (1/2)^m) == 5,

    verified exactly for every m <= m_max alongside the extension test
    itself; row 0 is the xi_a shift, subnormal outright.
    """
    if m_max < 0:
        raise ValueError("m_max must be >= 0")
    for m in range(m_max + 1):
        numerator = moment1(xi_c(), m)
        denominator = 8 * moment1(xi_b_level1(), m)
        alpha0_sq = numerator / denominator  # x cancels in gamma_(1,m+1)/gamma_(0,m+1)
        cert = backward_extension_1d(alpha0_sq, restrict_density(xi_c(), m))
        identity = 8 * moment1(xi_b_level1(), m) - (2 * _QUARTER**m + _HALF**m)
        if not cert.ok or identity != 5:
            return Certificate(
                "threshold_t1",
                False,
                {"m": m, "extension": cert, "margin_identity": str(identity)},
            )
    return Certificate(
        "threshold_t1",
        True,
        {
            "m_max": m_max,
            "constant_margin": "5",
            "conclusion": "row extensions pass for every parameter value",
        },
    )


def threshold_t2(n_max: int = 64) -> Fraction:
    """Exact T2 threshold 8/33: infimum over columns of the extension bounds.

    Verifies on the window that the per-column bounds increase and that the
    minimum sits at n == 0, then certifies the global claim by the
    polynomial identity 3 - u - 2u^2 == 2 (1 - u) (u + 3/2) >= 0 for
    u = (1/2)^n in (0, 1].
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    bounds = [t2_column_bound(n) for n in range(n_max + 1)]
    for earlier, later in zip(bounds, bounds[1:]):
        if not earlier < later:
            raise ArithmeticError("column bounds failed to increase on the window")
    minimum = bounds[0]
    if minimum != T2_THRESHOLD:
        raise ArithmeticError(f"expected the first column bound to be 8/33, got {minimum}")
    for n in range(n_max + 1):
        u = _HALF**n
        lhs = 3 - u - 2 * u**2
        if lhs != 2 * (1 - u) * (u + Fraction(3, 2)) or lhs < 0:
            raise ArithmeticError("global minimality identity failed")
    return minimum


def threshold_pair() -> Fraction:
    """Exact joint threshold 2/11, composed from the two extension steps.

    Step one extends mu_{M int N} horizontally through the column-0 slice
    (passes for every x; the first-step weight 1/8 is x-free) and yields
    mu_M.  Step two extends mu_M vertically through the row-0 slice with
    first-step weight x; its conditions cap x at

        min( 1 / ||1/t||_{mu_M},  atomwise mass ratios of xi_a against
             x * ||1/t|| * (mu_M extremal marginal) )
      = min( 8/15, 6/5, 2/11, 2/11 ) = 2/11.
    """
    step_one = backward_extension_2d(Fraction(1, 8), mu_m_cap_n(), xi_b_level1(), "horizontal")
    if not step_one.passed or step_one.new_measure != mu_m():
        raise ArithmeticError("the horizontal extension step failed to rebuild mu_M")
    norm = reciprocal_norm(mu_m(), "t")
    per_unit_x = marginal(extremal(mu_m(), "t"), "x").scaled(norm)
    ratio_bound = domination_scale_bound(per_unit_x, xi_a())
    return min(ratio_bound, 1 / norm)


def is_t1_subnormal(x=None) -> Certificate:
    """T1 is subnormal regardless of the parameter; ``x`` is recorded only."""
    cert = threshold_t1()
    witness = dict(cert.witness)
    if x is not None:
        witness["x"] = str(Fraction(x))
    return Certificate("is_t1_subnormal", cert.ok, witness)


def is_t2_subnormal(x) -> Certificate:
    """T2 is subnormal iff x <= 8/33; the binding column is the first one."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("x must be positive")
    threshold = threshold_t2()
    column0 = backward_extension_1d(Fraction(11, 8) * x, xi_c())
    ok = x <= threshold
    assert column0.ok == ok, "first-column extension must match the threshold comparison"
    return Certificate(
        "is_t2_subnormal",
        ok,
        {
            "x": str(x),
            "threshold": str(threshold),
            "binding_column": 1,
            "column_extension": column0,
            "xi_b_mass_cap": str(XI_B_MASS_CAP),
        },
    )


def is_pair_subnormal(x) -> Certificate:
    """The pair is jointly subnormal iff x <= 2/11.

    Runs the full pipeline at the given x: component subnormality, the
    Berger check of the deep restriction, the horizontal extension to
    mu_M, and the final vertical extension with first step x.
    """
    x = Fraction(x)
    if x <= 0:
        raise ValueError("x must be positive")
    t2 = is_t2_subnormal(x)
    family = LubinFamily(x)
    deep = check_berger_2d(family.diagram().restricted(1, 1), mu_m_cap_n(), (6, 6))
    step_one = backward_extension_2d(Fraction(1, 8), mu_m_cap_n(), xi_b_level1(), "horizontal")
    step_two = backward_extension_2d(x, mu_m(), xi_a(), "vertical")
    ok = t2.ok and deep.ok and step_one.passed and step_two.passed
    assert ok == (x <= PAIR_THRESHOLD), "pipeline must agree with the threshold"
    return Certificate(
        "is_pair_subnormal",
        ok,
        {
            "x": str(x),
            "threshold": str(PAIR_THRESHOLD),
            "t2": t2,
            "deep_restriction": deep,
            "extension_to_mu_m": step_one,
            "final_extension": step_two,
        },
    )


def family_report(x) -> dict:
    """JSON-ready summary of the family's verdicts at parameter x."""
    x = Fraction(x)
    t1 = is_t1_subnormal(x)
    t2 = is_t2_subnormal(x)
    pair = is_pair_subnormal(x)
    return {
        "x": str(x),
        "thresholds": {
            "t1": "every x > 0",
            "t2": str(T2_THRESHOLD),
            "pair": str(PAIR_THRESHOLD),
        },
        "verdicts": {
            "t1_subnormal": t1.ok,
            "t2_subnormal": t2.ok,
            "pair_subnormal": pair.ok,
        },
        "certificates": {
            "t1": t1.as_dict(),
            "t2": t2.as_dict(),
            "pair": pair.as_dict(),
        },
    }
