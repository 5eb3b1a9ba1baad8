import json

import pytest

from cayley_doubling.census import (GuardError, SweepSpec, census, dump_census, sweep,
                                    verify_census_json)
from cayley_doubling.morphisms import normalize_sigma4
from cayley_doubling.structure import YES, division_square_test


@pytest.fixture(scope="module")
def gf9_sweep():
    return sweep(SweepSpec(3, 1, 2))


@pytest.fixture(scope="module")
def gf9_census_full():
    return census(SweepSpec(3, 1, 2), "full")


def test_gf9_sweep_counts(gf9_sweep):
    assert len(gf9_sweep) == 128
    assert sum(division_square_test(e.algebra) == YES for e in gf9_sweep) == 64
    assert sum(e.report.is_division == YES for e in gf9_sweep) == 68


def test_sweep_order_canonical(gf9_sweep):
    t = gf9_sweep[0].algebra.ring.tower
    keys = [(t.log[e.c], e.sigma) for e in gf9_sweep]
    assert keys == sorted(keys)
    assert gf9_sweep[0].c == 1


def test_trivial_tower_sweep():
    es = sweep(SweepSpec(3, 1, 1))
    assert [(e.c, e.sigma) for e in es] == [(1, (0, 0, 0, 0)), (2, (0, 0, 0, 0))]
    assert [e.report.is_division for e in es] == ["no", "yes"]


def test_empty_c_list():
    assert sweep(SweepSpec(3, 1, 2, c_values=[])) == []


def test_guards():
    with pytest.raises(GuardError):
        sweep(SweepSpec(3, 1, 4))
    with pytest.raises(GuardError):
        SweepSpec.from_json({"p": 3, "s": 1, "r": 2, "bogus": 1})


def test_deterministic_across_jobs():
    spec = SweepSpec(3, 1, 2, c_values=["1+1*w", "0+1*w", "2"])
    assert dump_census(census(spec, jobs=1)) == dump_census(census(spec, jobs=2))


def test_division_only_anchor():
    rep = census(SweepSpec(3, 1, 2, division_only=True), "full")
    assert len(rep.entries) == 68
    assert len(rep.classes) == 9


def test_partition_and_invariants(gf9_census_full):
    rep = gf9_census_full
    seen = sorted(i for cl in rep.classes for i in cl)
    assert seen == list(range(len(rep.entries)))
    for cl in rep.classes:
        assert len({rep.entries[i].report.is_division for i in cl}) == 1
        assert cl[0] == min(cl)


def test_restricted_refines_full(gf9_census_full):
    restricted = census(SweepSpec(3, 1, 2), "restricted")
    full_class = {i: k for k, cl in enumerate(gf9_census_full.classes) for i in cl}
    for cl in restricted.classes:
        assert len({full_class[i] for i in cl}) == 1
    assert len(restricted.classes) >= len(gf9_census_full.classes)


def test_normalized_pairs_share_class(gf9_census_full):
    rep = gf9_census_full
    index = {e.algebra: i for i, e in enumerate(rep.entries)}
    for e in rep.entries:
        B, _ = normalize_sigma4(e.algebra)
        assert rep.class_of(index[e.algebra]) == rep.class_of(index[B])


def test_witnesses_reverify_on_load(gf9_census_full):
    data = json.loads(dump_census(gf9_census_full))
    assert data["schema"] == 1
    assert verify_census_json(data) == []
    cls = next(c for c in data["classes"] if c["members"])
    m = cls["members"][0]
    if m["witness"]["kind"] == "restricted":
        m["witness"]["b"] = "0+1*w" if m["witness"]["b"] != "0+1*w" else "1+1*w"
    else:
        m["witness"]["images"][0][0] = (m["witness"]["images"][0][0] + 1) % 3
    assert verify_census_json(data)


def test_csv_export(gf9_census_full):
    lines = gf9_census_full.to_csv().strip().split("\n")
    assert lines[0].startswith("c,s1,s2,s3,s4,division")
    assert len(lines) == 129


def test_census_reports_division_disagreements(gf9_census_full):
    bad = json.loads(dump_census(gf9_census_full))["disagreements"]
    assert sorted((d["c"], tuple(d["sigma"])) for d in bad) == [
        ("0+1*w", (0, 1, 0, 1)), ("0+1*w", (1, 0, 1, 0)), ("0+2*w", (0, 1, 0, 1)), ("0+2*w", (1, 0, 1, 0))]
    assert all(d["flags"] == ["division"] for d in bad)
