"""
Darboux polynomials of Jouanolou derivations
============================================

d(x_i) = x_{i+1}^s cyclically.  Two variables with s = 2 already carry
Darboux polynomials in every low degree; three variables carry none.
"""

from cyclodarboux import gen_jouanolou, search_up_to

# two variables, s = 2
d = gen_jouanolou(2, 2, names="xy")
print(search_up_to(d, 3).summary())
print()

# three variables: every degree up to 3 closes with no solution
d = gen_jouanolou(3, 2)
report = search_up_to(d, 3)
print(report.summary())
