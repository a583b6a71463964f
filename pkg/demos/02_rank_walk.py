"""Rank walks, rationality detection, and the sparse liminf series.

The square invertibility spectrum of a series controls both: a permanent
rank plateau certifies a rational tail, while alternation between singular
and invertible square blocks drives the liminf behaviour of the constant.
"""

from __future__ import annotations

from ffba import (Field, Poly, c_liminf_depth, expand_rational,
                  indices_sequence, liminf_structure, m0_structure,
                  make_liminf_theta, rationality_probe,
                  square_invertibility_spectrum)

f = Field(2)

# ---------------------------------------------------------------------------
# rational tails plateau
# ---------------------------------------------------------------------------

rational = expand_rational(Poly(f, [1]), Poly(f, [1, 1, 1]))  # 1/(t^2+t+1)
print("theta =", rational.to_text())
verdict = rationality_probe(rational, ell=1)
print("verdict:", verdict.kind, "after", verdict.stages_found, "stages")
for st in verdict.trace.stages:
    print(f"  m={st.m}  i={st.i}  j={st.j}  {st.status.value}")

# ---------------------------------------------------------------------------
# the m0 structure: invertible below a threshold, singular above
# ---------------------------------------------------------------------------

theta = expand_rational(Poly(f, [1]), Poly(f, [0, 1]))        # 1/t
rep = m0_structure(theta, 8)
print("\n1/t spectrum:", "".join("I" if x else "." for x in rep.spectrum))
print("m0 =", rep.m0, " pattern consistent:", rep.pattern_consistent)

bad = make_liminf_theta(f)
rep = m0_structure(bad, 8)
print("liminf-series spectrum:",
      "".join("I" if x else "." for x in rep.spectrum))
print("m0 =", rep.m0, " violation:", rep.violation,
      " (threshold pattern fails -> constant cannot exceed q^-2)")

# ---------------------------------------------------------------------------
# the sparse series: ones exactly at 2, 6, 14, 30, ...
# ---------------------------------------------------------------------------

ones = [i for i in range(1, 31) if bad.frac.coefficient(i)]
print("\nliminf series ones at:", ones)
spec = square_invertibility_spectrum(bad, 15)
print("sizes 1..15:", "".join("I" if x else "." for x in spec))
info = liminf_structure(bad, 16, k=4)
print("alternations:", info.alternations[:4], "... count", info.count,
      " meets k=4:", info.meets_k)

# windowed constants along doubling degree ranges
gamma = make_liminf_theta(f)           # homogeneous-like window scan vs 0
zero = expand_rational(Poly.zero(f), Poly(f, [1]))
for k in (1, 2, 3):
    lo, hi = 2 ** k, 2 ** (k + 1)
    print(f"inf over {lo} <= deg N <= {hi}:",
          c_liminf_depth(bad, zero, lo, hi))
