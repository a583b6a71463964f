"""Construction of badly approximable targets, with replayable certificates.

Each completed walk stage m (extent i_m, next threshold j_{m+1}) yields a
nonzero vector b_m annihilating every column of the i_m-row matrix below
j_{m+1}; any target digit vector with b_m . pi(gamma) != 0 then blocks all
small-denominator solutions at that extent.  The construction fixes target
digits stage by stage, always choosing inside the allowed set (exactly
q^{gap-1} of the q^{gap} extensions are excluded per stage), and records
everything needed for independent re-verification in a Certificate.

Policies: "lexmin" picks the lexicographically smallest valid extension
(unconstrained digits default to 0); a seeded policy draws uniformly from
the valid extensions and is reproducible from the seed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import NamedTuple

from .cantor import ConstructionSchedule, CylinderSet, as_schedule
from .errors import BudgetExhaustedError, TooLargeToEnumerateError
from .field import Field
from .hankel import HankelView, default_weight, left_null_vector
from .indices import (DEFAULT_J_CUTOFF, IndicesTrace, Stage, StageStatus,
                      indices_sequence)
from .linalg import RankEngine
from .series import LaurentSeries, as_vector, series_from_json
from .weights import GeneralizedWeight

__all__ = ["CertStage", "Certificate", "gamma_prefix",
           "verify_certificate", "CertificateReport", "extension_counts",
           "ExtensionCount", "survivor_cylinders", "schedule_from_certificate"]

ENUM_CAP = 1 << 16


# ---------------------------------------------------------------------------
# Certificate data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CertStage:
    """One constraint stage.  i is the row extent; j_next the column
    threshold of the following stage (None when the walk ended here);
    width the largest column index the annihilation claim covers;
    b the annihilating vector in stacked order; new_digits the target
    digits fixed at this stage, per coordinate."""

    m: int
    i: int
    j_next: int | None
    status: str                     # found | infinite | cutoff
    width: int
    b: tuple[int, ...]
    new_digits: tuple[tuple[int, ...], ...]

    def to_json(self, flat: bool) -> dict:
        digits = list(self.new_digits[0]) if flat \
            else [list(d) for d in self.new_digits]
        return {"m": self.m, "i": self.i, "j": self.j_next,
                "status": self.status, "width": self.width,
                "b": list(self.b), "gamma_digits": digits}


@dataclass
class Certificate:
    field: Field
    d: int
    ell: int
    weight: GeneralizedWeight
    theta: tuple[LaurentSeries, ...]
    stages: list[CertStage]
    gamma_digits: tuple[tuple[int, ...], ...]
    truncated: bool
    policy: str                     # "lexmin" or "seeded-random:<n>"

    def stage_extents(self) -> list[int]:
        return [st.i for st in self.stages]

    def gamma_series(self) -> tuple[LaurentSeries, ...]:
        """The canonical target: fixed digits then zero tail, as declared
        exact series."""
        return tuple(LaurentSeries.from_frac_coeffs(self.field, digits, tail="zero")
                     for digits in self.gamma_digits)

    def gamma_stacked(self, i: int) -> list[int]:
        """pi_{g(i)}(gamma) in stacked order (digits beyond the fixed
        prefix are zero by the canonical extension)."""
        g = self.weight.eval(i)
        out: list[int] = []
        for s in range(self.d):
            digits = self.gamma_digits[s]
            for idx in range(g[s]):
                out.append(digits[idx] if idx < len(digits) else 0)
        return out

    def to_json(self) -> dict:
        flat = self.d == 1
        obj: dict = {"q": self.field.q}
        if self.field.k > 1:
            obj["modulus"] = list(self.field.modulus)
        obj.update({
            "d": self.d,
            "ell": self.ell,
            "weight": self.weight.to_json(),
            "theta": [t.to_json() for t in self.theta],
            "policy": self.policy,
            "stages": [st.to_json(flat) for st in self.stages],
            "gamma_prefix": list(self.gamma_digits[0]) if flat
            else [list(d) for d in self.gamma_digits],
            "truncated": self.truncated,
        })
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "Certificate":
        field = Field.of_order(int(obj["q"]), obj.get("modulus"))
        d = int(obj["d"])
        weight = GeneralizedWeight.from_json(obj["weight"])
        theta = tuple(series_from_json(t, field) for t in obj["theta"])

        def unflatten(x) -> tuple[tuple[int, ...], ...]:
            if d == 1 and (not x or not isinstance(x[0], list)):
                return (tuple(x),)
            return tuple(tuple(c) for c in x)

        stages = [CertStage(m=st["m"], i=st["i"], j_next=st["j"],
                            status=st["status"], width=st["width"],
                            b=tuple(st["b"]),
                            new_digits=unflatten(st["gamma_digits"]))
                  for st in obj["stages"]]
        return cls(field=field, d=d, ell=int(obj["ell"]), weight=weight,
                   theta=theta, stages=stages,
                   gamma_digits=unflatten(obj["gamma_prefix"]),
                   truncated=bool(obj["truncated"]),
                   policy=obj.get("policy", "lexmin"))


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def _pick_extension(field: Field, b: tuple[int, ...], known: list[int],
                    new_positions: list[int], policy: str,
                    rng: random.Random | None) -> list[int]:
    """Digits u for the new stacked positions with b . (known + u) != 0.

    known holds the stacked vector with zeros at the new positions.
    Lexmin: if the fixed part already hits, all-zero u is minimal;
    otherwise a single 1 at the last new position where b is nonzero
    (zeros anywhere later contribute nothing, so this is minimal).
    """
    f = field
    fixed = 0
    for pos, x in enumerate(known):
        if x and b[pos]:
            fixed = f.add(fixed, f.mul(b[pos], x))
    support = [pos for pos in new_positions if b[pos] != 0]
    if not support:
        raise AssertionError("annihilator has no support on the new rows")
    if rng is None:
        if fixed != 0:
            return [0] * len(new_positions)
        u = [0] * len(new_positions)
        u[new_positions.index(support[-1])] = 1
        return u
    while True:
        u = [rng.randrange(f.q) for _ in new_positions]
        acc = fixed
        for pos, x in zip(new_positions, u):
            if x and b[pos]:
                acc = f.add(acc, f.mul(b[pos], x))
        if acc != 0:
            return u


def gamma_prefix(theta, weight: GeneralizedWeight | None = None,
                 ell: int = 1, stage_budget: int = 8,
                 j_cutoff: int = DEFAULT_J_CUTOFF,
                 policy: str = "lexmin", seed: int | None = None,
                 trace: IndicesTrace | None = None) -> Certificate:
    """Fix a target digit prefix that blocks small-denominator solutions.

    Runs the rank walk (or reuses a supplied trace), derives one
    annihilating vector per completed stage, and extends the target digits
    so every stage constraint holds.  The certificate is marked truncated
    when data or budgets ended the walk before a permanent plateau."""
    vec = as_vector(theta)
    w = default_weight(vec, weight)
    field = vec[0].field
    if trace is None:
        trace = indices_sequence(vec, w, ell, stage_budget, j_cutoff)
    recs: list[Stage] = trace.stages
    if len(recs) < 2:
        raise BudgetExhaustedError(
            "stage budget ended before the first constraint stage")
    if policy == "lexmin":
        if seed is not None:
            raise ValueError("the lexmin policy takes no seed")
        rng = None
    elif policy == "seeded-random":
        seed = 0 if seed is None else seed
        rng = random.Random(seed)
        policy = f"seeded-random:{seed}"
    else:
        raise ValueError(f"unknown digit policy {policy!r}")
    digits: list[list[int]] = [[] for _ in range(w.d)]
    stages: list[CertStage] = []
    truncated = False
    prev_i = 0
    for m in range(len(recs) - 1):
        cur = recs[m]
        nxt = recs[m + 1]
        if cur.i is None:
            break
        if nxt.j is not None:
            width = nxt.j - 1
            status = "found"
        elif nxt.status is StageStatus.INFINITE_CERTIFIED:
            width = nxt.scan_width
            status = "infinite"
        else:
            width = nxt.scan_width
            status = "cutoff"
        i_m = cur.i
        b = left_null_vector(vec, w, i_m, width)
        assert b is not None, "rank below extent must leave an annihilator"
        g_now = w.eval(i_m)
        g_prev = w.eval(prev_i)
        offs = []
        acc = 0
        for s in range(w.d):
            offs.append(acc)
            acc += g_now[s]
        known = [0] * i_m
        new_positions: list[int] = []
        for s in range(w.d):
            for idx in range(g_now[s]):
                pos = offs[s] + idx
                if idx < g_prev[s]:
                    known[pos] = digits[s][idx]
                else:
                    new_positions.append(pos)
        u = _pick_extension(field, b, known, new_positions, policy, rng)
        by_pos = dict(zip(new_positions, u))
        new_digits = []
        for s in range(w.d):
            add = [by_pos[offs[s] + idx] for idx in range(g_prev[s], g_now[s])]
            digits[s].extend(add)
            new_digits.append(tuple(add))
        stages.append(CertStage(m=m, i=i_m, j_next=nxt.j, status=status,
                                width=width, b=b,
                                new_digits=tuple(new_digits)))
        prev_i = i_m
        if status != "found" or nxt.i is None:
            truncated = status == "cutoff" or nxt.i is None
            break
    if not stages:
        raise BudgetExhaustedError(
            "no constraint stage could be completed")
    return Certificate(field=field, d=w.d, ell=ell, weight=w, theta=vec,
                       stages=stages,
                       gamma_digits=tuple(tuple(ds) for ds in digits),
                       truncated=truncated, policy=policy)


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------

@dataclass
class CertificateReport:
    ok: bool
    checks: list[tuple[str, bool, str]]

    def failed(self) -> list[tuple[str, bool, str]]:
        return [c for c in self.checks if not c[1]]


def verify_certificate(cert: Certificate, j_cap: int | None = None) -> CertificateReport:
    """Re-verify a certificate from theta and the recorded data alone.

    Beyond replaying the annihilation identities, the solvability claims
    are checked directly: for every stage and every covered column count
    j, the linear system M[i_m, j] n = pi(gamma) must have no solution.
    Nothing from the construction run is trusted."""
    checks: list[tuple[str, bool, str]] = []

    def add(name: str, ok: bool, detail: str = "") -> None:
        checks.append((name, ok, detail))

    vec = cert.theta
    w = cert.weight
    field = cert.field
    prev_i = 0
    prev_ext = [0] * cert.d
    for st in cert.stages:
        tag = f"stage{st.m}"
        add(f"{tag}_b_nonzero", any(st.b), "")
        add(f"{tag}_i_step", st.i >= prev_i + cert.ell,
            f"i={st.i}, previous {prev_i}, ell={cert.ell}")
        g_now = w.eval(st.i)
        add(f"{tag}_digit_shape",
            all(len(st.new_digits[s]) == g_now[s] - prev_ext[s]
                for s in range(cert.d)),
            f"extents {prev_ext} -> {g_now}")
        shape_ok = (len(st.b) == st.i
                    and all(len(cert.gamma_digits[s]) >= g_now[s]
                            for s in range(cert.d)))
        add(f"{tag}_row_shape", shape_ok,
            f"{len(st.b)} annihilator entries for row extent {st.i}")
        if not shape_ok:
            # the remaining checks index by the claimed extent; skip them
            # rather than crash on malformed data
            prev_i = st.i
            prev_ext = list(g_now)
            continue
        if st.j_next is not None:
            add(f"{tag}_width_matches_j", st.width == st.j_next - 1,
                f"width {st.width}, j_next {st.j_next}")
        # annihilation across the full covered width
        view = HankelView.of(vec, w, st.i, st.width)
        rows = view.stacked_rows() if st.width > 0 else []
        ann_ok = True
        for c in range(st.width):
            acc = 0
            for r in range(st.i):
                if st.b[r] and rows[r][c]:
                    acc = field.add(acc, field.mul(st.b[r], rows[r][c]))
            if acc != 0:
                ann_ok = False
                break
        add(f"{tag}_annihilates", ann_ok, f"width {st.width}")
        # target digits must hit the annihilator
        pi = cert.gamma_stacked(st.i)
        acc = 0
        for r in range(st.i):
            if st.b[r] and pi[r]:
                acc = field.add(acc, field.mul(st.b[r], pi[r]))
        add(f"{tag}_digits_hit", acc != 0, "b . pi(gamma) must be nonzero")
        # b must touch the rows added at this stage
        offs = view.weight.eval(st.i)
        starts = []
        base = 0
        for s in range(cert.d):
            starts.append(base)
            base += offs[s]
        new_support = any(
            st.b[starts[s] + idx]
            for s in range(cert.d)
            for idx in range(prev_ext[s], offs[s]))
        add(f"{tag}_new_row_support", new_support,
            "annihilator must involve the new rows")
        # direct non-solvability of every covered system
        cap = st.width if j_cap is None else min(st.width, j_cap)
        engine = RankEngine(field)
        solvable_at = None
        for c in range(1, cap + 1):
            engine.add([rows[r][c - 1] for r in range(st.i)])
            if engine.contains(pi):
                solvable_at = c
                break
        add(f"{tag}_no_solution", solvable_at is None,
            "" if solvable_at is None else f"solvable at j={c}")
        if st.status == "infinite":
            cert_ok = True
            pre = 0
            per = 1
            for s_series in vec:
                info = s_series.frac.period_info()
                if info is None:
                    cert_ok = False
                    break
                pre = max(pre, info[0])
                per = per * info[1] // math.gcd(per, info[1])
            add(f"{tag}_plateau_certified",
                cert_ok and st.width >= pre + per,
                f"width {st.width} vs certification bound")
        prev_i = st.i
        prev_ext = list(g_now)
    # prefix consistency
    rebuilt = [[] for _ in range(cert.d)]
    for st in cert.stages:
        for s in range(cert.d):
            rebuilt[s].extend(st.new_digits[s])
    add("prefix_matches_stages",
        tuple(tuple(x) for x in rebuilt) == cert.gamma_digits, "")
    return CertificateReport(all(c[1] for c in checks), checks)


# ---------------------------------------------------------------------------
# Counting and explicit cylinder families
# ---------------------------------------------------------------------------

class ExtensionCount(NamedTuple):
    total: int
    excluded: int


def extension_counts(cert: Certificate, m: int,
                     enum_cap: int = ENUM_CAP) -> ExtensionCount:
    """Extension counts at stage m: q^gap total, q^{gap-1} excluded.

    When q^gap fits under enum_cap the exclusion count is also re-derived
    by brute-force enumeration over all extensions of the certificate's
    own earlier digits (the hyperplane b . pi(gamma) = 0 meets exactly
    q^{gap-1} of the q^gap extensions)."""
    st = cert.stages[m]
    q = cert.field.q
    prev_i = cert.stages[m - 1].i if m > 0 else 0
    gap = st.i - prev_i
    total = q ** gap
    excluded = q ** (gap - 1)
    if total <= enum_cap:
        f = cert.field
        w = cert.weight
        g_now = w.eval(st.i)
        g_prev = w.eval(prev_i)
        offs = []
        acc = 0
        for s in range(cert.d):
            offs.append(acc)
            acc += g_now[s]
        known = [0] * st.i
        new_positions = []
        for s in range(cert.d):
            for idx in range(g_now[s]):
                pos = offs[s] + idx
                if idx < g_prev[s]:
                    known[pos] = cert.gamma_digits[s][idx]
                else:
                    new_positions.append(pos)
        fixed = 0
        for pos, x in enumerate(known):
            if x and st.b[pos]:
                fixed = f.add(fixed, f.mul(st.b[pos], x))
        count = 0
        u = [0] * gap
        while True:
            acc2 = fixed
            for pos, x in zip(new_positions, u):
                if x and st.b[pos]:
                    acc2 = f.add(acc2, f.mul(st.b[pos], x))
            if acc2 == 0:
                count += 1
            k = gap - 1
            while k >= 0 and u[k] == q - 1:
                u[k] = 0
                k -= 1
            if k < 0:
                break
            u[k] += 1
        if count != excluded:
            raise AssertionError(
                f"stage {m}: enumeration found {count} excluded extensions, "
                f"expected {excluded}")
    return ExtensionCount(total, excluded)


def schedule_from_certificate(cert: Certificate) -> ConstructionSchedule:
    """The explicit construction schedule realized by the certificate:
    stage lengths g(i_m) - g(i_{m-1}), removal exponent gap - 1."""
    return as_schedule(cert)


def survivor_cylinders(cert: Certificate, stage_count: int | None = None,
                       enum_cap: int = ENUM_CAP) -> list[CylinderSet]:
    """Exhaustive survivor families [stage 0, ..., stage M] of the
    certificate's constraints, as stacked cylinder sets."""
    n = len(cert.stages) if stage_count is None else stage_count
    if n > len(cert.stages):
        raise ValueError("certificate has fewer stages than requested")
    q = cert.field.q
    f = cert.field
    w = cert.weight
    out = [CylinderSet((0,) * cert.d, frozenset({()}))]
    blocks: list[tuple[tuple[int, ...], ...]] = [((),) * cert.d]
    prev_i = 0
    for m in range(n):
        st = cert.stages[m]
        if q ** st.i > enum_cap:
            raise TooLargeToEnumerateError(
                f"stage extent {st.i} exceeds the enumeration cap")
        g_now = w.eval(st.i)
        g_prev = w.eval(prev_i)
        gaps = [g_now[s] - g_prev[s] for s in range(cert.d)]
        new_blocks = []
        for blk in blocks:
            exts = [blk]
            for s in range(cert.d):
                widened = []
                for partial in exts:
                    stem = partial[s]
                    tails = [()]
                    for _ in range(gaps[s]):
                        tails = [t + (c,) for t in tails for c in range(q)]
                    for t in tails:
                        nxt = list(partial)
                        nxt[s] = stem + t
                        widened.append(tuple(nxt))
                exts = widened
            for cand in exts:
                stacked = [c for s in range(cert.d) for c in cand[s]]
                acc = 0
                for pos, x in enumerate(stacked):
                    if x and st.b[pos]:
                        acc = f.add(acc, f.mul(st.b[pos], x))
                if acc != 0:
                    new_blocks.append(cand)
        blocks = new_blocks
        out.append(CylinderSet(tuple(g_now),
                               frozenset(tuple(c for s in range(cert.d)
                                               for c in blk[s])
                                         for blk in blocks)))
        prev_i = st.i
    return out
