import json

import pytest

import orbitsolve

FORK = {"vars": ["x1", "x2", "x3"], "constraints": [["<", ["x1", "x2"]], ["<", ["x1", "x3"]]]}
CYCLE = {
    "vars": ["x1", "x2", "x3"],
    "constraints": [["<", ["x1", "x2"]], ["<", ["x2", "x3"]], ["<", ["x3", "x1"]]],
}


def fubini(n):
    # ordered set partitions: a(n) = sum_k C(n,k) a(n-k)
    from math import comb

    a = [1]
    for m in range(1, n + 1):
        a.append(sum(comb(m, k) * a[m - k] for k in range(1, m + 1)))
    return a[n]


def test_orbit_counts_match_ordered_partitions():
    for n in range(1, 5):
        assert orbitsolve.orbit_count("q-order", n) == fubini(n)
    listed = orbitsolve.orbits("q-order", 3)
    assert len(listed) == 13
    assert listed[0]["label"] == "3:O0"


def test_oracle_and_solve(tmp_path):
    verdict = orbitsolve.oracle("q-order", FORK)
    assert verdict["sat"] and verdict["count"] == 3
    assert orbitsolve.oracle("q-order", FORK, weak_order=True)["count"] == 3
    assert not orbitsolve.oracle("q-order", CYCLE)["sat"]

    path = tmp_path / "fork.json"
    path.write_text(json.dumps(FORK))
    solved = orbitsolve.solve("q-order", path)
    assert solved["status"] == "SAT" and "witnessOrbit" in solved
    assert orbitsolve.solve("q-order", CYCLE)["status"] == "UNSAT"


def test_minimality_and_reduce():
    result = orbitsolve.minimality("q-order", CYCLE)
    assert result["status"] == "refuted"
    fixed = orbitsolve.minimality("q-order", FORK, domains=True)
    assert fixed["status"] == "fixpoint"
    assert orbitsolve.reduce("q-order", FORK)["windowSize"] == 3


def test_finite_template():
    triangle = {"vars": ["a", "b", "c"], "constraints": [["neq", ["a", "b"]], ["neq", ["b", "c"]], ["neq", ["a", "c"]]]}
    out = orbitsolve.solve("three-coloring", triangle)
    assert out["status"] == "SAT"
    assert len(set(out["assignment"].values())) == 3


def test_catalog_and_suite():
    ids = {e["id"] for e in orbitsolve.catalog_list()}
    assert {"q-order", "betweenness", "three-coloring"} <= ids
    assert len(orbitsolve.catalog_export("q-order")["bounds"]) == 3
    assert "fork-instance" in orbitsolve.suite_names()
    report = orbitsolve.run_suite("orbit-counts")
    assert report["passed"]


def test_errors():
    with pytest.raises(orbitsolve.InputError):
        orbitsolve.orbit_count("no-such-template", 2)
    with pytest.raises(ValueError):
        orbitsolve.minimality("q-order", FORK, a=3, b=2)
    with pytest.raises(orbitsolve.CapacityError):
        orbitsolve.orbit_count("q-order", 5, capacity=3)
