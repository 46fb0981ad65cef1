"""polycalm: exact polyhedral variational analysis.

Tangent, normal and critical cones of polyhedral unions, graphical
derivatives and coderivatives of polyhedral set-valued maps, two-sided
calmness certificates, forward calculus rules with certified hypotheses,
and generalized derivatives of normal-cone mappings to constraint systems
``g(x) in D`` — all over exact rational arithmetic, with definition-based
sampling oracles for independent verification.
"""

__version__ = "0.1.0"
