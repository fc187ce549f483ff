# SPDX-License-Identifier: Apache-2.0
"""Smoke tests for the python bindings."""

import numpy as np
import pytest

import setopt


def test_cone_basics():
    cone = setopt.Cone.orthant(2)
    assert cone.scalarize(np.array([3.0, -1.0])) == pytest.approx(3.0)
    assert cone.contains(np.array([1.0, 0.0]))
    assert not cone.strictly_contains(np.array([1.0, 0.0]))
    assert cone.leq(np.zeros(2), np.ones(2))

    wedge = setopt.Cone.validated(np.array([[1.0, 1.0], [1.0, -1.0]]), np.array([1.0, 0.0]))
    assert wedge.scalarize(np.array([0.0, 2.0])) == pytest.approx(2.0)

    with pytest.raises(setopt.InvalidConeError):
        setopt.Cone.validated(np.array([[1.0, 0.0]]), np.array([1.0, 1.0]))


def test_minimal_elements():
    cone = setopt.Cone.orthant(2)
    pts = [np.array([1.0, 2.0]), np.array([2.0, 1.0]), np.array([3.0, 3.0])]
    s = setopt.FiniteVectorSet(pts)
    assert setopt.minimal_naive(s, cone) == [0, 1]
    assert sorted(setopt.minimal_presort(s, cone)) == [0, 1]
    assert setopt.domination_check(s, cone)
    assert setopt.lower_less(setopt.FiniteVectorSet([np.zeros(2)]), s, cone)


def test_instances_and_decomposition():
    inst = setopt.builtin_instance("test1")
    assert inst.p == 5 and inst.n == 1 and inst.m == 2
    assert setopt.fd_check(inst, np.array([0.3]), 1e-5) <= 1e-6

    cone = setopt.Cone.orthant(2)
    d = setopt.decompose(inst, cone, np.array([0.0]))
    assert d.omega == 1
    assert d.partition_size == 5
    assert setopt.partition_tuples(d)[0] == [0]


def test_min_norm_point():
    r = setopt.min_norm_point([np.array([1.0, 1.0]), np.array([1.0, -1.0])])
    assert np.allclose(r.point, [1.0, 0.0])
    assert np.allclose(r.weights, [0.5, 0.5])


def test_solve_and_batch(tmp_path):
    inst = setopt.builtin_instance("test2")
    cone = setopt.Cone.orthant(3)
    trace = setopt.solve(inst, cone, np.array([25.0, 25.0]))
    assert trace.status == setopt.TerminationStatus.StrongStationaryDeclared
    assert trace.iteration_count <= 5
    assert trace.final_error < 1e-4
    assert len(trace.certificate) >= 1
    assert setopt.descent_inequality_check(trace, cone)

    res = setopt.run_batch(inst, cone, runs=5, seed=7)
    assert res.stats.runs == 5
    assert res.stats.solved == 5

    csv_path = tmp_path / "stats.csv"
    setopt.export_stats_csv(res.stats, str(csv_path))
    assert csv_path.read_text().startswith("kind,")

    svg_path = tmp_path / "solutions.svg"
    setopt.export_solutions_plot(res.stats, inst, str(svg_path))
    assert svg_path.read_text().startswith("<svg")


def test_errors_surface_as_python_exceptions():
    inst = setopt.builtin_instance("test1")
    cone = setopt.Cone.orthant(2)
    r = setopt.best_direction(inst, cone, np.array([3.0]))
    if np.linalg.norm(r.u) > 1e-4:
        with pytest.raises(setopt.NotStationaryError):
            setopt.stationarity_certificate(r, cone)
    else:
        assert len(setopt.stationarity_certificate(r, cone)) >= 1
