"""Two coordinates under a generalized weight.

A weight assigns each digit-budget unit h to one coordinate; the weight
induced by a real vector r tracks r_s * h within strict deviation bounds.
The construction, certificate, and constant evaluation all carry over.
"""

from __future__ import annotations

from fractions import Fraction

from ffba import (Field, c_depth_weighted, compare_constants, gamma_prefix,
                  induced_weight, parse_series, qexp, verify_certificate,
                  weight_eval)
from ffba.weights import deviation_range

f = Field(2)
r = [Fraction(1, 3), Fraction(2, 3)]
w = induced_weight(r)

print("weight induced by r =", [str(x) for x in r])
print("h :", list(range(1, 13)))
print("to:", [w.assign(h) for h in range(1, 13)], "(coordinate fed at h)")
print("g(12) =", weight_eval(w, 12))

lo, hi = deviation_range(r, 100)
print(f"deviation r_s*h - g_s(h) over h <= 100: [{lo}, {hi}]")
print("within the guaranteed band [-(1 - 1/d), (d-1)(1 - 1/d)] = [-1/2, 1/2]:",
      -Fraction(1, 2) <= lo and hi <= Fraction(1, 2))

# ---------------------------------------------------------------------------
# a certified two-coordinate target
# ---------------------------------------------------------------------------

theta = (parse_series("frac=periodic:[0,1]|[0]", f),
         parse_series("frac=periodic:[0,0,1]|[0]", f))
cert = gamma_prefix(theta, weight=w, ell=1)
print("\nstage extents:", cert.stage_extents())
print("gamma digits per coordinate:", cert.gamma_digits)
print("verified:", verify_certificate(cert).ok)

rep = c_depth_weighted(theta, cert.gamma_series(), w, 6)
print("weighted constant over deg N <= 6:", rep.value,
      ">= q^-2:", rep.value >= qexp(-2))

# ---------------------------------------------------------------------------
# real weight vs. its induced integer weight
# ---------------------------------------------------------------------------

gamma = (parse_series("frac=periodic:[1]|[1]", f),
         parse_series("frac=periodic:[1,1]|[1]", f))
real_val, induced_val = compare_constants(theta, gamma, r, max_deg=4)
print("\nreal-weight value:   ", real_val)
print("induced-weight value:", induced_val)
print("the two differ by at most the factor q^d =", qexp(2))
