"""Surviving cylinders, measure decay, and dimension lower bounds.

Each construction stage removes a hyperplane's worth of digit extensions:
of the q^gap continuations of a surviving cylinder, exactly q^(gap-1) are
excluded. Tracking the survivors gives an exactly computable Cantor-type
set: zero measure, but dimension bounded below.
"""

from __future__ import annotations

from fractions import Fraction

from ffba import (ConstructionSchedule, Field, dimension_lower_bound,
                  extension_counts, gamma_prefix, make_liminf_theta,
                  measure_after_stages, schedule_from_certificate,
                  survivor_cylinders, validate_tree_like, verify_certificate)

f = Field(2)
theta = make_liminf_theta(f)

# ell = 2 makes every stage remove half of four extensions
cert = gamma_prefix(theta, ell=2, stage_budget=3)
print("stage extents:", cert.stage_extents())
print("verified:", verify_certificate(cert).ok)

for m, st in enumerate(cert.stages):
    counts = extension_counts(cert, m)
    print(f"  stage {m}: {counts.excluded} of {counts.total} extensions removed")

# ---------------------------------------------------------------------------
# exhaustive survivors vs. the closed-form measure
# ---------------------------------------------------------------------------

stages = survivor_cylinders(cert)
sched = schedule_from_certificate(cert)
print("\nsurvivors per stage:")
for m, cyl in enumerate(stages):
    closed = measure_after_stages(sched, m, 2)
    print(f"  extent {cyl.ell}: {len(cyl.blocks):2d} cylinders,"
          f" measure {cyl.measure(2)} (closed form {closed})")
print("strongly tree-like:", validate_tree_like(stages).ok)

# the constant (2,1) schedule: measure halves every stage, forever
sched = ConstructionSchedule.constant(2, 1)
print("\nconstant (ell=2, ellp=1) schedule at q=2:")
print("  measure after 10 stages:", measure_after_stages(sched, 10, 2),
      "== 1/1024:", measure_after_stages(sched, 10, 2) == Fraction(1, 1024))
print("  limit measure is zero:", sched.measure_limit_zero())

# ---------------------------------------------------------------------------
# dimension lower bounds
# ---------------------------------------------------------------------------

print("\ndimension lower bounds (d = 1):")
for q in (2, 3, 4):
    row = [f"ell={ell}: {dimension_lower_bound(ConstructionSchedule.constant(ell), q=q):.6f}"
           for ell in (1, 2, 4, 8)]
    print(f"  q={q}: ", "  ".join(row))
print("the q=2, ell=2 bound is exactly one half:",
      dimension_lower_bound(ConstructionSchedule.constant(2), q=2))
