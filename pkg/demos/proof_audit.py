"""
Auditing the inequality through its GNS-side identity
=====================================================

The gap of the uncertainty inequality is not just nonnegative, it is a
sum of manifestly nonnegative terms.  Writing G for the gap expressed
through sesquilinear forms on the GNS space (inner product
<X, Y> = Tr(rho X* Y), modular operator Delta X = rho X rho^-1) and H
for the double integral of

    ((s+1) - ftilde(s)) ftilde(t) + ((t+1) - ftilde(t)) ftilde(s)

against a nonnegative spectral measure mu, the identity G = H holds
exactly.  This script evaluates both sides independently and inspects
the measure.
"""

import numpy as np

from skewcal.gns import (
    GnsModel,
    audit_G_equals_H,
    build_mu,
    cov_via_form,
    corr_via_form,
    form_E1,
    form_F,
    pair_integrand,
)
from skewcal.linalg import random_density, random_hermitian
from skewcal.monotone import from_key
from skewcal.qinfo import centered, evaluate_inequalities

rho = random_density(4, seed=7)
a = random_hermitian(4, seed=8)
b = random_hermitian(4, seed=9)
f = from_key("wyd:0.3")

model = GnsModel(rho)
print("modular spectrum has", len(model.spectrum().atoms), "atoms for dim", model.dim)

# The forms reproduce the trace-formula scalars.
report = evaluate_inequalities(rho, f, a.matrix, b.matrix)
print("cov via form :", cov_via_form(model, a.matrix, b.matrix), " trace route:", report.cov_ab)
print("corr via form:", corr_via_form(model, f, a.matrix, b.matrix), " trace route:", report.corr_ab)

# E1 and F sandwich every mixed term: F is the ftilde(Delta) form, E1
# the f-independent envelope (Delta + 1), and F <= E1 / 2 entrywise in
# any orthogonal decomposition.
xa = centered(rho, a.matrix)
print("E1(a,a) / 2  :", 0.5 * form_E1(model, xa, xa).real)
print("F(a,a)       :", form_F(model, f, xa, xa).real, " (= var - info)")

# The audit: G from the report scalars, H from the spectral measure.
audit = audit_G_equals_H(model, f, a.matrix, b.matrix)
print("\nG        =", audit.g_value)
print("H        =", audit.h_value)
print("residual =", audit.residual)
print("flags    =", audit.flags)

# mu is built from three rank-one pieces per atom pair and is
# nonnegative by a Cauchy-Schwarz argument; min over atoms:
mu = build_mu(model, xa, centered(rho, b.matrix))
print("smallest mu atom:", float(mu.weights.min()))

# The integrand against mu is nonnegative too, and at the fixed point
# s = t = 1 of the modular spectrum it equals 2 for every admissible f.
print("pair integrand at (1, 1):", pair_integrand(f, 1.0, 1.0))
s, t = 3.0, 0.25
print(f"pair integrand at ({s}, {t}):", pair_integrand(f, s, t))

# Nonnegative measure times nonnegative integrand: H >= 0, hence the gap
# is nonnegative, which is the inequality.  The audit checks this chain
# on every instance; sweep it over a few random draws.
worst = 0.0
for i in range(50):
    rho_i = random_density(3 + i % 4, seed=100 + i)
    a_i = random_hermitian(rho_i.dim, seed=200 + i)
    b_i = random_hermitian(rho_i.dim, seed=300 + i)
    r = audit_G_equals_H(GnsModel(rho_i), f, a_i.matrix, b_i.matrix)
    assert not r.flags
    worst = max(worst, r.residual)
print("\n50 random audits, worst |G - H| residual:", worst)
