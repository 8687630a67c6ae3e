"""
Cyclotomic certificate for d(x)=w^2, d(y)=zw, d(z)=y^2, d(w)=xy
================================================================

The variables split into {x, y} -> {z, w} -> {x, y}, so k = 2, s = 2 and
N = 3.  The certificate checks sigma^-1 d sigma = zeta d and the vanishing
of every Lambda sum.  The degree-2 search then turns up xz - yw, which d
kills outright, so its orbit product is a nontrivial constant.
"""

import json

from cyclodarboux import gen_four_variable_example, theorem_pipeline
from cyclodarboux.certfile import certificate_document, dumps, recheck

d = gen_four_variable_example()
cert = theorem_pipeline(d, 2)
st = cert.structure
print(d)
print(f"k = {st.k}, s = {st.s}, N = {st.N}, q = {st.q}")
print("conjugation holds:", cert.conjugation.holds)
for row in cert.lambda_cert.rows:
    print(f"  beta = {row.beta}  delta = {row.delta}  sum = {row.geometric}")

for r in cert.search.degrees:
    print(f"degree {r.degree}: {r.status.value}")
if cert.witness:
    pair, F = cert.witness
    print("witness:", pair)
    print("orbit product:", F)

# the JSON certificate re-verifies from its own contents
doc = json.loads(dumps(certificate_document(cert)))
print("recheck problems:", recheck(doc))
