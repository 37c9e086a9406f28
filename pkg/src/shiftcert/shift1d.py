"""One-variable weighted shifts: moments, fits, and subnormality tests.

A weighted shift is represented by its *squared* weight sequence
``n -> alpha_n^2`` (rationals), cached lazily, together with a declared
bound on the squared weights.  The moments are the running products

    gamma_0 = 1,   gamma_n = alpha_0^2 * ... * alpha_{n-1}^2,

and a shift is subnormal exactly when its moment sequence is the moment
sequence of a positive measure on [0, ||shift||^2] (its Berger measure).
For finitely atomic measures everything here is decidable in rational
arithmetic:

* ``subnormal_necessary`` -- both Hankel matrices [gamma_{i+j}] and
  [gamma_{i+j+1}] must be positive semidefinite (necessary at every
  order, sufficient in the limit);
* ``agler_sums_1d`` -- for a contraction, all alternating binomial sums
  sum_l (-1)^l C(n,l) gamma_{k+l} / gamma_k must be nonnegative;
* ``backward_extension_1d`` -- a subnormal shift with measure xi extends
  one step backward by a weight alpha_0 iff 1/s is xi-integrable and
  alpha_0^2 <= 1 / ||1/s||;
* ``berger_fit`` -- exact recovery of the unique atomic measure behind a
  moment list (minimal linear recurrence, rational roots, Vandermonde).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Sequence

from .certificate import Certificate
from .errors import (
    InconsistentMomentsError,
    NoRationalAtomsError,
    RankExceededError,
    ZeroMomentError,
)
from .measures import AtomicMeasure1D, is_infinite, moment1, reciprocal_norm
from .numerics import SymmetricExactMatrix, binomial, is_psd, rref, solve_linear_system


class WeightSequence1D:
    """Lazy squared-weight sequence with a declared norm bound."""

    def __init__(self, squared_rule: Callable[[int], Fraction], norm_bound_sq, name: str | None = None):
        self._rule = squared_rule
        self.norm_bound_sq = Fraction(norm_bound_sq)
        if self.norm_bound_sq <= 0:
            raise ValueError("norm bound must be positive")
        self.name = name
        self._weights: dict[int, Fraction] = {}
        self._moments: list[Fraction] = [Fraction(1)]

    def squared_weight(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("weight index must be >= 0")
        if n not in self._weights:
            w = Fraction(self._rule(n))
            if w <= 0:
                raise ValueError(f"squared weight at {n} must be positive, got {w}")
            if w > self.norm_bound_sq:
                raise ValueError(
                    f"squared weight {w} at {n} exceeds the declared bound {self.norm_bound_sq}"
                )
            self._weights[n] = w
        return self._weights[n]

    def moment(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("moment order must be >= 0")
        while len(self._moments) <= n:
            k = len(self._moments)
            self._moments.append(self._moments[-1] * self.squared_weight(k - 1))
        return self._moments[n]

    @classmethod
    def from_measure(cls, xi: AtomicMeasure1D, name: str | None = None) -> "WeightSequence1D":
        if not xi.is_probability():
            raise ValueError("Berger measures are probability measures")
        bound = max(p for p, _ in xi.atoms)
        return cls(lambda n: weights_from_measure(xi, n), bound, name=name)

    @classmethod
    def from_prefix(
        cls,
        squared_prefix: Sequence,
        tail: str = "repeat_last",
        norm_bound_sq=None,
        name: str | None = None,
    ) -> "WeightSequence1D":
        prefix = [Fraction(v) for v in squared_prefix]
        if not prefix:
            raise ValueError("prefix must be nonempty")
        if tail != "repeat_last":
            raise ValueError(f"unknown tail rule {tail!r}")
        bound = Fraction(norm_bound_sq) if norm_bound_sq is not None else max(prefix)
        rule = lambda n: prefix[n] if n < len(prefix) else prefix[-1]
        return cls(rule, bound, name=name)

    @classmethod
    def constant(cls, squared_value, name: str | None = None) -> "WeightSequence1D":
        c = Fraction(squared_value)
        return cls(lambda n: c, c, name=name)

    def __repr__(self) -> str:
        label = self.name or "anonymous"
        return f"WeightSequence1D({label}, bound_sq={self.norm_bound_sq})"


class MomentSequence:
    """Cached moment sequence gamma with gamma_0 == 1 and gamma_n > 0."""

    def __init__(self, rule: Callable[[int], Fraction]):
        self._rule = rule
        self._cache: dict[int, Fraction] = {}
        if self.value(0) != 1:
            raise ValueError("gamma_0 must equal 1")

    @classmethod
    def from_weights(cls, w: WeightSequence1D) -> "MomentSequence":
        return cls(w.moment)

    def value(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("moment order must be >= 0")
        if n not in self._cache:
            v = Fraction(self._rule(n))
            if v <= 0:
                raise ValueError(f"moment of order {n} must be positive, got {v}")
            self._cache[n] = v
        return self._cache[n]

    def prefix(self, count: int) -> list[Fraction]:
        return [self.value(n) for n in range(count)]


def moments_from_weights(w: WeightSequence1D, n: int) -> Fraction:
    """gamma_n as the running product of squared weights."""
    return w.moment(n)


def weights_from_measure(xi: AtomicMeasure1D, n: int) -> Fraction:
    """Squared weight gamma_{n+1}(xi) / gamma_n(xi) of the shift with measure xi."""
    if all(p == 0 for p, _ in xi.atoms):
        raise ZeroMomentError("measure has no atom away from 0; weights vanish")
    denom = moment1(xi, n)
    if denom == 0:
        raise ZeroMomentError(f"moment of order {n} vanishes")
    return moment1(xi, n + 1) / denom


def restrict(w: WeightSequence1D, i: int) -> WeightSequence1D:
    """The shift on the invariant subspace of indices >= i (weights shifted by i)."""
    if i < 0:
        raise ValueError("restriction index must be >= 0")
    if i == 0:
        return w
    name = f"{w.name}|L{i}" if w.name else None
    return WeightSequence1D(lambda n: w.squared_weight(n + i), w.norm_bound_sq, name=name)


def subnormal_necessary(w: WeightSequence1D, order: int) -> Certificate:
    """Exact PSD test of [gamma_{i+j}] and [gamma_{i+j+1}], 0 <= i, j <= order."""
    if order < 0:
        raise ValueError("order must be >= 0")
    gammas = [w.moment(i) for i in range(2 * order + 2)]
    plain = is_psd(SymmetricExactMatrix.hankel(gammas[: 2 * order + 1], order + 1))
    shifted = is_psd(SymmetricExactMatrix.hankel(gammas[1 : 2 * order + 2], order + 1))
    return Certificate(
        "subnormal_necessary",
        plain.ok and shifted.ok,
        {"order": order, "hankel": plain, "shifted_hankel": shifted},
    )


def agler_sums_1d(w: WeightSequence1D, n_max: int, k_max: int) -> Certificate:
    """Nonnegativity of all alternating binomial moment sums on a grid.

    The test applies to contractions; when the declared squared-weight
    bound B exceeds 1 the shift is rescaled first (gamma_k -> gamma_k/B^k),
    which preserves subnormality.
    """
    if n_max < 1 or k_max < 0:
        raise ValueError("need n_max >= 1 and k_max >= 0")
    bound = w.norm_bound_sq
    scale = bound if bound > 1 else Fraction(1)
    gammas = [w.moment(i) / scale**i for i in range(n_max + k_max + 1)]
    for n in range(1, n_max + 1):
        for k in range(k_max + 1):
            total = sum(
                Fraction((-1) ** ell * binomial(n, ell)) * gammas[k + ell] / gammas[k]
                for ell in range(n + 1)
            )
            if total < 0:
                return Certificate(
                    "agler_sums_1d",
                    False,
                    {"n": n, "k": k, "value": str(total), "rescaled_by": str(scale)},
                )
    return Certificate(
        "agler_sums_1d",
        True,
        {"n_max": n_max, "k_max": k_max, "rescaled_by": str(scale)},
    )


def backward_extension_1d(alpha0_sq, xi: AtomicMeasure1D) -> Certificate:
    """One-step backward extension test for a subnormal shift with measure xi.

    Passes iff 1/s is integrable (no atom at 0) and the prepended squared
    weight does not exceed 1 / ||1/s||.
    """
    a0 = Fraction(alpha0_sq)
    if a0 <= 0:
        raise ValueError("the prepended squared weight must be positive")
    norm = reciprocal_norm(xi)
    if is_infinite(norm):
        return Certificate(
            "backward_extension_1d",
            False,
            {"reciprocal_norm": "infinite", "first_weight_sq": str(a0)},
        )
    bound = 1 / norm
    return Certificate(
        "backward_extension_1d",
        a0 <= bound,
        {
            "reciprocal_norm": str(norm),
            "bound": str(bound),
            "first_weight_sq": str(a0),
            "margin": str(bound - a0),
        },
    )


def berger_fit(moments: Sequence, max_atoms: int) -> AtomicMeasure1D:
    """Recover the unique finitely atomic measure behind a moment list.

    Exact pipeline: find the minimal-order linear recurrence the moments
    satisfy (Hankel kernel over the rationals), read atom locations off the
    recurrence polynomial as rational roots, solve the Vandermonde system
    for the masses, then re-verify every supplied moment.

    Raises :class:`RankExceededError` when no recurrence of order up to
    ``max_atoms`` exists, :class:`NoRationalAtomsError` when the recurrence
    polynomial does not split into distinct rational roots, and
    :class:`InconsistentMomentsError` when the formal fit is not a positive
    measure on [0, inf) reproducing the data.
    """
    ms = [Fraction(m) for m in moments]
    if max_atoms < 1:
        raise ValueError("max_atoms must be >= 1")
    if not ms or ms[0] != 1:
        raise ValueError("moments[0] must equal 1")
    if len(ms) < 2 * max_atoms + 1:
        raise ValueError("need at least 2*max_atoms + 1 moments")
    for order in range(1, max_atoms + 1):
        coeffs = _recurrence_polynomial(ms, order)
        if coeffs is None:
            continue
        points = _rational_roots(coeffs)
        if any(p < 0 for p in points):
            raise InconsistentMomentsError("recurrence has a root at a negative location")
        masses = solve_linear_system(
            [[p**j for p in points] for j in range(len(points))], ms[: len(points)]
        )
        if masses is None:  # distinct points: cannot happen
            raise InconsistentMomentsError("Vandermonde system is singular")
        if any(m <= 0 for m in masses):
            raise InconsistentMomentsError("fit requires a nonpositive mass")
        candidate = AtomicMeasure1D(zip(points, masses))
        for j, target in enumerate(ms):
            if moment1(candidate, j) != target:
                raise InconsistentMomentsError(f"fit fails to reproduce moment {j}")
        return candidate
    raise RankExceededError(f"no linear recurrence of order <= {max_atoms} fits the moments")


def _recurrence_polynomial(ms: list[Fraction], order: int) -> list[Fraction] | None:
    """Monic coefficients c with sum_i c_i * ms[j+i] == 0 for every window j."""
    rows = [ms[j : j + order + 1] for j in range(len(ms) - order)]
    reduced, pivot_cols = rref(rows)
    if order in pivot_cols:
        return None  # every kernel vector has leading coefficient 0
    coeffs = [Fraction(0)] * (order + 1)
    coeffs[order] = Fraction(1)
    for row_index, col in enumerate(pivot_cols):
        coeffs[col] = -reduced[row_index][order]
    return coeffs


_FACTOR_CAP = 10**12


def _divisors(n: int) -> list[int]:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            out.append(n // i)
        i += 1
    return out


def _rational_roots(coeffs: list[Fraction]) -> list[Fraction]:
    """All roots of a polynomial known to split into distinct rational roots."""
    den = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    g = math.gcd(*ints)
    if g:
        ints = [v // g for v in ints]
    degree = len(ints) - 1
    roots: list[Fraction] = []
    if ints[0] == 0:
        if len(ints) > 1 and ints[1] == 0:
            raise InconsistentMomentsError("recurrence polynomial has a repeated root at 0")
        roots.append(Fraction(0))
        ints = ints[1:]
    if len(ints) > 1:
        low, high = abs(ints[0]), abs(ints[-1])
        if low > _FACTOR_CAP or high > _FACTOR_CAP:
            raise NoRationalAtomsError("coefficients too large for a rational root search")
        seen = set()
        for p in _divisors(low):
            for q in _divisors(high):
                for candidate in (Fraction(p, q), Fraction(-p, q)):
                    if candidate in seen:
                        continue
                    seen.add(candidate)
                    if sum(ints[i] * candidate**i for i in range(len(ints))) == 0:
                        roots.append(candidate)
    if len(roots) != degree:
        raise NoRationalAtomsError(
            f"recurrence polynomial of degree {degree} has only "
            f"{len(roots)} distinct rational roots"
        )
    return sorted(roots)
