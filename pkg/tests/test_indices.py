"""Indices walk: worked traces, growth laws, rationality verdicts."""

from __future__ import annotations

import json
import random

import pytest

from ffba import (Field, GeneralizedWeight, Poly, expand_rational,
                  indices_sequence, parse_series, rationality_probe)
from ffba.indices import StageStatus

from oracles import OracleField, dense_rank


def _series(f, digits):
    return parse_series("frac=[%s]" % ",".join(map(str, digits)), f)


# ---------------------------------------------------------------------------
# worked traces
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("q", [2, 3, 4])
def test_walk_of_t_minus_2(q):
    f = Field.of_order(q)
    th = parse_series("frac=periodic:[0,1]|[0]", f)
    tr = indices_sequence(th, ell=1, stage_budget=8)
    got = [(st.m, st.i, st.j, st.status) for st in tr.stages]
    assert got == [
        (0, 1, 0, StageStatus.FOUND),
        (1, 3, 2, StageStatus.FOUND),
        (2, 3, None, StageStatus.INFINITE_CERTIFIED),
    ]
    assert tr.certified_rational
    assert not tr.exhausted


def test_walk_of_one_over_t():
    f = Field(2)
    th = expand_rational(Poly(f, [1]), Poly(f, [0, 1]))
    tr = indices_sequence(th, ell=1, stage_budget=8)
    got = [(st.m, st.i, st.j) for st in tr.stages]
    assert got == [(0, 1, 0), (1, 2, 1), (2, 2, None)]
    assert tr.stages[-1].status is StageStatus.INFINITE_CERTIFIED
    assert rationality_probe(th, trace=tr).kind == "rational_certified"


def test_walk_of_sparse_rule_series():
    f = Field(2)
    th = parse_series("frac=rule:liminf", f)
    tr = indices_sequence(th, ell=1, stage_budget=5)
    found = [(st.i, st.j) for st in tr.stages]
    assert found == [(1, 0), (3, 2), (5, 4), (7, 6), (9, 8), (11, 10)]
    assert all(st.status is StageStatus.FOUND for st in tr.stages)
    assert not tr.certified_rational


# ---------------------------------------------------------------------------
# growth laws on random inputs
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("q,ell", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)])
def test_growth_bounds_random(q, ell):
    f = Field.of_order(q)
    rng = random.Random(1000 * q + ell)
    for _ in range(60):
        th = _series(f, [rng.randrange(q) for _ in range(60)])
        tr = indices_sequence(th, ell=ell, stage_budget=4)
        stages = tr.stages
        assert stages[0].m == 0 and stages[0].j == 0
        prev = None
        for st in stages:
            if st.status is not StageStatus.FOUND:
                assert st.m == stages[-1].m       # only the last can stop
                assert st.j is None
                continue
            if prev is not None:
                assert st.j >= prev.i             # columns pass the last row extent
                assert st.i <= st.j + ell         # the walk's gap law
                assert st.i > prev.i
            prev = st


def test_growth_bounds_two_dimensional():
    f = Field(2)
    rng = random.Random(77)
    w = GeneralizedWeight.equal(2)
    for _ in range(25):
        vec = tuple(_series(f, [rng.randrange(2) for _ in range(50)])
                    for _ in range(2))
        tr = indices_sequence(vec, weight=w, ell=2, stage_budget=3)
        prev = None
        for st in tr.stages:
            if st.status is not StageStatus.FOUND:
                continue
            if prev is not None:
                assert prev.i <= st.j and st.i <= st.j + 2
            prev = st


def _all_invertible_digits(q, count):
    """Greedy digit choice keeping every square block invertible."""
    of = OracleField(2) if q == 2 else OracleField(q)
    digits: list[int] = []

    def block_ok(ds, m):
        rows = [[ds[r + c] if r + c < len(ds) else 0 for c in range(m)]
                for r in range(m)]
        return dense_rank(of, rows) == m

    for pos in range(1, count + 1):
        if pos % 2 == 1:
            m = (pos + 1) // 2
            choice = next(v for v in range(q)
                          if block_ok(digits + [v], m))
        else:
            choice = 0
        digits.append(choice)
    return digits


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("ell", [1, 2, 3])
def test_all_invertible_walk_identity(q, ell):
    f = Field.of_order(q)
    digits = _all_invertible_digits(q, 41)
    th = _series(f, digits)
    tr = indices_sequence(th, ell=ell, stage_budget=4)
    for st in tr.stages:
        if st.status is StageStatus.FOUND:
            assert st.i == (st.m + 1) * ell
            assert st.j == st.m * ell


# ---------------------------------------------------------------------------
# verdicts, cutoffs, serialization
# ---------------------------------------------------------------------------

def test_cutoff_marks_exhausted():
    f = Field(2)
    th = parse_series("frac=rule:liminf", f)
    tr = indices_sequence(th, ell=1, stage_budget=3, j_cutoff=2)
    assert tr.exhausted
    last = tr.stages[-1]
    assert last.status is StageStatus.EXHAUSTED and last.j is None
    assert rationality_probe(th, trace=tr).kind == "irrational_witnessed"


def test_verdict_unknown_before_first_stage():
    f = Field(2)
    th = parse_series("frac=periodic:[0,1]|[0]", f)
    tr = indices_sequence(th, ell=1, stage_budget=8, j_cutoff=1)
    v = rationality_probe(th, trace=tr)
    assert v.kind == "unknown" and v.stages_found == 0


def test_probe_reuses_supplied_trace():
    f = Field(2)
    th = parse_series("frac=periodic:[0,1]|[0]", f)
    tr = indices_sequence(th, ell=1)
    v = rationality_probe(th, trace=tr)
    assert v.trace is tr


def test_trace_serializes():
    f = Field(3)
    th = parse_series("frac=periodic:[0,1]|[0]", f)
    tr = indices_sequence(th, ell=1)
    blob = json.dumps(tr.to_json())
    back = json.loads(blob)
    assert back["ell"] == 1
    assert [s["i"] for s in back["stages"]] == [1, 3, 3]
    assert [s["j"] for s in back["stages"]] == [0, 2, None]


def test_stage_budget_caps_found_stages():
    f = Field(2)
    th = parse_series("frac=rule:liminf", f)
    for budget in (1, 2, 4):
        tr = indices_sequence(th, ell=1, stage_budget=budget)
        assert len(tr.stages) <= budget + 1
