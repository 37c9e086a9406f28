"""Two-variable weighted shifts on the quarter-plane lattice.

A commuting pair (T1, T2) of weighted shifts acts on the basis e_k,
k = (k1, k2) in the lattice quadrant, by

    T1 e_k = alpha_k e_{k + (1,0)},     T2 e_k = beta_k e_{k + (0,1)},

and is determined by its *weight diagram* (alpha^2, beta^2).  The pair
commutes iff  beta_{k+(1,0)} alpha_k == alpha_{k+(0,1)} beta_k  for all k,
in which case the moments

    gamma_k = product of squared weights along any monotone lattice path
              from (0,0) to k

are path-independent.  The pair is (jointly) subnormal iff gamma is the
moment sequence of a positive measure on a closed square (its Berger
measure); this module provides the exact finite machinery around that
characterization:

* diagram <-> moment-table conversions and lattice restrictions,
* commutativity and path-independence checks with witnesses,
* verification of a candidate planar Berger measure on a window,
* the one-step backward extension of a subnormal pair, including the
  explicit new Berger measure when the test passes,
* a float-only windowed joint hyponormality check (compressed
  self-commutator matrix, eigenvalues with an explicit tolerance).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .certificate import Certificate
from .measures import (
    AtomicMeasure1D,
    AtomicMeasure2D,
    INFINITE,
    dominates,
    extremal,
    is_infinite,
    marginal,
    moment2,
    reciprocal_norm,
)
from .shift1d import WeightSequence1D


def _check_window(window) -> tuple[int, int]:
    w, h = window
    if w < 1 or h < 1:
        raise ValueError("window sides must be >= 1")
    return int(w), int(h)


class MomentTable2D:
    """Lazy table of planar moments gamma_{(k1, k2)} with gamma_{(0,0)} == 1."""

    def __init__(self, rule: Callable[[int, int], Fraction], name: str | None = None):
        self._rule = rule
        self.name = name
        self._cache: dict[tuple[int, int], Fraction] = {}
        if self.value(0, 0) != 1:
            raise ValueError("gamma_(0,0) must equal 1")

    def value(self, k1: int, k2: int) -> Fraction:
        if k1 < 0 or k2 < 0:
            raise ValueError("lattice indices must be >= 0")
        key = (k1, k2)
        if key not in self._cache:
            v = Fraction(self._rule(k1, k2))
            if v <= 0:
                raise ValueError(f"gamma_{key} must be positive, got {v}")
            self._cache[key] = v
        return self._cache[key]


class WeightDiagram:
    """Squared weights (alpha^2, beta^2) indexed by lattice points."""

    def __init__(
        self,
        alpha_sq_rule: Callable[[int, int], Fraction],
        beta_sq_rule: Callable[[int, int], Fraction],
        name: str | None = None,
    ):
        self._alpha_rule = alpha_sq_rule
        self._beta_rule = beta_sq_rule
        self.name = name
        self._alpha: dict[tuple[int, int], Fraction] = {}
        self._beta: dict[tuple[int, int], Fraction] = {}
        self._moments: dict[tuple[int, int], Fraction] = {(0, 0): Fraction(1)}

    def alpha_sq(self, k1: int, k2: int) -> Fraction:
        key = (k1, k2)
        if key not in self._alpha:
            v = Fraction(self._alpha_rule(k1, k2))
            if v <= 0:
                raise ValueError(f"alpha^2 at {key} must be positive, got {v}")
            self._alpha[key] = v
        return self._alpha[key]

    def beta_sq(self, k1: int, k2: int) -> Fraction:
        key = (k1, k2)
        if key not in self._beta:
            v = Fraction(self._beta_rule(k1, k2))
            if v <= 0:
                raise ValueError(f"beta^2 at {key} must be positive, got {v}")
            self._beta[key] = v
        return self._beta[key]

    def moment(self, k1: int, k2: int) -> Fraction:
        """gamma_k along the canonical path: row 0 first, then up column k1."""
        if k1 < 0 or k2 < 0:
            raise ValueError("lattice indices must be >= 0")
        key = (k1, k2)
        if key not in self._moments:
            if k2 == 0:
                self._moments[key] = self.moment(k1 - 1, 0) * self.alpha_sq(k1 - 1, 0)
            else:
                self._moments[key] = self.moment(k1, k2 - 1) * self.beta_sq(k1, k2 - 1)
        return self._moments[key]

    def restricted(self, i: int, j: int) -> "WeightDiagram":
        """The diagram seen from base point (i, j): weights translated."""
        if i < 0 or j < 0:
            raise ValueError("base point must be in the quadrant")
        if i == 0 and j == 0:
            return self
        name = f"{self.name}|({i},{j})" if self.name else None
        return WeightDiagram(
            lambda k1, k2: self.alpha_sq(k1 + i, k2 + j),
            lambda k1, k2: self.beta_sq(k1 + i, k2 + j),
            name=name,
        )


def weights_from_moments2d(table: MomentTable2D, name: str | None = None) -> WeightDiagram:
    """Diagram with alpha_k^2 = gamma_{k+(1,0)} / gamma_k, beta_k^2 = gamma_{k+(0,1)} / gamma_k."""
    return WeightDiagram(
        lambda k1, k2: table.value(k1 + 1, k2) / table.value(k1, k2),
        lambda k1, k2: table.value(k1, k2 + 1) / table.value(k1, k2),
        name=name or table.name,
    )


def tensor_diagram(row: WeightSequence1D, column: WeightSequence1D, name: str | None = None) -> WeightDiagram:
    """Diagram of the tensor product of two one-variable shifts."""
    return WeightDiagram(
        lambda k1, k2: row.squared_weight(k1),
        lambda k1, k2: column.squared_weight(k2),
        name=name,
    )


def commutativity_check(diagram: WeightDiagram, window) -> Certificate:
    """beta_{k+(1,0)}^2 alpha_k^2 == alpha_{k+(0,1)}^2 beta_k^2 on the window."""
    w, h = _check_window(window)
    for k2 in range(h):
        for k1 in range(w):
            lhs = diagram.beta_sq(k1 + 1, k2) * diagram.alpha_sq(k1, k2)
            rhs = diagram.alpha_sq(k1, k2 + 1) * diagram.beta_sq(k1, k2)
            if lhs != rhs:
                return Certificate(
                    "commutativity_check",
                    False,
                    {"k": [k1, k2], "lhs": str(lhs), "rhs": str(rhs)},
                )
    return Certificate("commutativity_check", True, {"window": [w, h]})


def path_independence_check(
    diagram: WeightDiagram, point, n_random: int = 10, seed: int = 0
) -> Certificate:
    """gamma at ``point`` along all-horizontal-first, all-vertical-first, and
    random monotone paths; exact equality required."""
    k1, k2 = point
    if k1 < 0 or k2 < 0:
        raise ValueError("lattice point must be in the quadrant")
    reference = diagram.moment(k1, k2)

    def product_along(steps: list[str]) -> Fraction:
        x = y = 0
        total = Fraction(1)
        for step in steps:
            if step == "R":
                total *= diagram.alpha_sq(x, y)
                x += 1
            else:
                total *= diagram.beta_sq(x, y)
                y += 1
        return total

    paths = [["U"] * k2 + ["R"] * k1]
    rng = random.Random(seed)
    for _ in range(n_random):
        steps = ["R"] * k1 + ["U"] * k2
        rng.shuffle(steps)
        paths.append(steps)
    for steps in paths:
        value = product_along(steps)
        if value != reference:
            return Certificate(
                "path_independence_check",
                False,
                {
                    "point": [k1, k2],
                    "path": "".join(steps),
                    "value": str(value),
                    "reference": str(reference),
                },
            )
    return Certificate(
        "path_independence_check",
        True,
        {"point": [k1, k2], "paths_checked": len(paths) + 1, "value": str(reference)},
    )


def check_berger_2d(diagram: WeightDiagram, mu: AtomicMeasure2D, window) -> Certificate:
    """Exact equality of diagram moments and measure moments on the window."""
    w, h = _check_window(window)
    for k2 in range(h):
        for k1 in range(w):
            lhs = diagram.moment(k1, k2)
            rhs = moment2(mu, k1, k2)
            if lhs != rhs:
                return Certificate(
                    "check_berger_2d",
                    False,
                    {"k": [k1, k2], "diagram": str(lhs), "measure": str(rhs)},
                )
    return Certificate("check_berger_2d", True, {"window": [w, h]})


@dataclass(frozen=True)
class BackwardExtensionReport:
    """Outcome of a one-step planar backward extension.

    ``passed`` summarizes three conditions along the extension coordinate:
    (i) 1/coordinate integrable, (ii) the prepended squared weight at most
    1/||1/coordinate||, (iii) the rescaled extremal marginal dominated by
    the prescribed slice measure.  When all three hold, ``new_measure``
    is the Berger measure of the extended pair.
    """

    direction: str
    passed: bool
    reciprocal_norm: object  # Fraction or INFINITE
    bound: Fraction | None
    first_step_sq: Fraction
    weight_ok: bool
    domination: Certificate | None
    new_measure: AtomicMeasure2D | None

    def as_dict(self) -> dict:
        from .measures import measure_to_dict  # local import avoids cycle at module load

        return {
            "check": "backward_extension_2d",
            "direction": self.direction,
            "verdict": "pass" if self.passed else "fail",
            "reciprocal_norm": "infinite" if is_infinite(self.reciprocal_norm) else str(self.reciprocal_norm),
            "bound": None if self.bound is None else str(self.bound),
            "first_step_sq": str(self.first_step_sq),
            "weight_ok": self.weight_ok,
            "domination": None if self.domination is None else self.domination.as_dict(),
            "new_measure": None if self.new_measure is None else measure_to_dict(self.new_measure),
        }

    def __bool__(self) -> bool:
        return self.passed


def backward_extension_2d(first_step_sq, mu_sub: AtomicMeasure2D, xi0: AtomicMeasure1D, direction: str) -> BackwardExtensionReport:
    """One-step backward extension of a subnormal pair.

    ``mu_sub`` is the Berger measure of the pair restricted past the first
    row (direction "vertical", new index along t) or the first column
    (direction "horizontal", along s); ``xi0`` is the Berger measure of
    the slice being extended through; ``first_step_sq`` is the squared
    weight prepended along the extension coordinate.

    On success the new Berger measure is

        c * mu_ext  +  (xi0 - c * (mu_ext marginal)) x delta_0,

    with c = first_step_sq * ||1/coordinate|| and the leftover placed on
    the coordinate axis.  The horizontal case runs the vertical case on
    the swapped measure; there is one audited code path.
    """
    if direction not in ("vertical", "horizontal"):
        raise ValueError("direction must be 'vertical' or 'horizontal'")
    if direction == "horizontal":
        report = backward_extension_2d(first_step_sq, mu_sub.swapped(), xi0, "vertical")
        return BackwardExtensionReport(
            direction="horizontal",
            passed=report.passed,
            reciprocal_norm=report.reciprocal_norm,
            bound=report.bound,
            first_step_sq=report.first_step_sq,
            weight_ok=report.weight_ok,
            domination=report.domination,
            new_measure=None if report.new_measure is None else report.new_measure.swapped(),
        )

    beta0 = Fraction(first_step_sq)
    if beta0 <= 0:
        raise ValueError("the prepended squared weight must be positive")
    norm = reciprocal_norm(mu_sub, "t")
    if is_infinite(norm):
        return BackwardExtensionReport(
            direction="vertical",
            passed=False,
            reciprocal_norm=INFINITE,
            bound=None,
            first_step_sq=beta0,
            weight_ok=False,
            domination=None,
            new_measure=None,
        )
    bound = 1 / norm
    weight_ok = beta0 <= bound
    scale = beta0 * norm  # total mass moved off the axis
    ext = extremal(mu_sub, "t")
    shadow = marginal(ext, "x").scaled(scale)
    dom = dominates(shadow, xi0)
    passed = weight_ok and dom.ok
    new_measure = None
    if passed:
        lifted = ext.scaled(scale)
        leftover = xi0.minus(shadow)
        axis_part = AtomicMeasure2D(((p, Fraction(0)), m) for p, m in leftover.atoms)
        # no collision: condition (i) rules out mu_sub atoms with t == 0
        new_measure = lifted.plus(axis_part) if leftover.atoms else lifted
    return BackwardExtensionReport(
        direction="vertical",
        passed=passed,
        reciprocal_norm=norm,
        bound=bound,
        first_step_sq=beta0,
        weight_ok=weight_ok,
        domination=dom,
        new_measure=new_measure,
    )


def joint_hyponormality_window(diagram: WeightDiagram, window, tolerance: float = 1e-9) -> Certificate:
    """Float eigenvalue check of the compressed self-commutator matrix.

    Builds the compression of [[ [T1*,T1], [T2*,T1] ], [ [T1*,T2], [T2*,T2] ]]
    to the window's basis vectors in both components and tests its smallest
    eigenvalue against ``-tolerance``.  This is the one deliberately
    numerical check in the package: it screens windows quickly, while the
    exact verdicts come from the measure-theoretic tests.
    """
    w, h = _check_window(window)
    if tolerance < 0:
        raise ValueError("tolerance must be >= 0")
    points = [(k1, k2) for k2 in range(h) for k1 in range(w)]
    index = {k: i for i, k in enumerate(points)}
    n = len(points)

    def alpha(k1: int, k2: int) -> Fraction:
        if k1 < 0 or k2 < 0:
            return Fraction(0)
        return diagram.alpha_sq(k1, k2)

    def beta(k1: int, k2: int) -> Fraction:
        if k1 < 0 or k2 < 0:
            return Fraction(0)
        return diagram.beta_sq(k1, k2)

    matrix = np.zeros((2 * n, 2 * n))
    for (k1, k2), i in index.items():
        # diagonal blocks: [Ti*, Ti] are diagonal in the basis
        matrix[i, i] = float(alpha(k1, k2) - alpha(k1 - 1, k2))
        matrix[n + i, n + i] = float(beta(k1, k2) - beta(k1, k2 - 1))
        # [T2*, T1] e_k lands on e_{k + (1,-1)} (zero when k2 == 0)
        if k2 >= 1:
            target = (k1 + 1, k2 - 1)
            if target in index:
                value = math.sqrt(float(alpha(k1, k2) * beta(k1 + 1, k2 - 1))) - math.sqrt(
                    float(alpha(k1, k2 - 1) * beta(k1, k2 - 1))
                )
                j = index[target]
                matrix[j, n + i] = value  # row block 1 ([T2*,T1]), column block 2
                matrix[n + i, j] = value
    matrix = (matrix + matrix.T) / 2.0
    eigenvalues = np.linalg.eigvalsh(matrix)
    smallest = float(eigenvalues[0])
    return Certificate(
        "joint_hyponormality_window",
        smallest >= -tolerance,
        {
            "window": [w, h],
            "matrix_order": 2 * n,
            "min_eigenvalue": smallest,
            "tolerance": tolerance,
        },
    )
