"""
Direct sums keep the absence of Darboux polynomials
===================================================

Two copies of the three-variable Jouanolou derivation on disjoint
variables.  Low degrees are decided exactly; degree 2 is closed by a
modular obstruction (no cofactor works even modulo a small prime).
"""

from cyclodarboux import direct_sum, gen_jouanolou, search_up_to
from cyclodarboux.dsl import print_spec

d = direct_sum(gen_jouanolou(3, 2, names=("x1", "x2", "x3")),
               gen_jouanolou(3, 2, names=("y1", "y2", "y3")))
print(print_spec(d))
print(search_up_to(d, 2).summary())
