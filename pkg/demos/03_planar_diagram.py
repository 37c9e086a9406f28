"""The parametric planar diagram and its exact consistency checks.

The family's moment table determines a two-variable weight diagram.
Commutativity, path independence, and the Berger checks of its
restrictions are all decided exactly, with replayable witnesses.
"""

from fractions import Fraction as F

from shiftcert import (
    LubinFamily,
    check_berger_2d,
    commutativity_check,
    joint_hyponormality_window,
    path_independence_check,
)
from shiftcert.lubin import mu_m, mu_m_cap_n

x = F(1, 5)
fam = LubinFamily(x)
d = fam.diagram()

print(f"family at x = {x}")
print("alpha^2 along row 0:", [str(d.alpha_sq(k, 0)) for k in range(3)])
print("beta^2 along row 0: ", [str(d.beta_sq(k, 0)) for k in range(3)])
print("beta^2 up column 0: ", [str(d.beta_sq(0, k)) for k in range(3)])

print("\ncommutativity on 10x10:", commutativity_check(d, (10, 10)).verdict)
print("path independence at (6, 5):", path_independence_check(d, (6, 5)).verdict)

# the deep restriction (both indices >= 1) carries an explicit two-atom
# measure; one level down the column, three atoms
deep = d.restricted(1, 1)
print("\ndeep restriction vs", mu_m_cap_n())
print(" ", check_berger_2d(deep, mu_m_cap_n(), (8, 8)).verdict)
column = d.restricted(0, 1)
print("column restriction vs", mu_m())
print(" ", check_berger_2d(column, mu_m(), (8, 8)).verdict)

# a float eigenvalue screen over a finite window; exact entries first,
# one numerical diagonalization at the end
for parameter in (F(1, 5), F(1, 2)):
    window = joint_hyponormality_window(LubinFamily(parameter).diagram(), (4, 4))
    print(
        f"\njoint hyponormality window at x = {parameter}:",
        window.verdict,
        "min eigenvalue",
        f"{window.witness['min_eigenvalue']:.3g}",
    )
