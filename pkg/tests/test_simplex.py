from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

from stabcut.simplex import LpResult, lp_solve


def vertex_enumeration_optimum(n, rows, objective, tol=1e-7):
    """Independent oracle: the optimum of a nonempty bounded polytope sits at
    a vertex, and every vertex fixes n active constraints, so try them all."""
    m = len(rows)
    A = np.zeros((m, n))
    b = np.zeros(m)
    for i, (coeffs, rhs) in enumerate(rows):
        for v, coef in coeffs.items():
            A[i, v] = coef
        b[i] = rhs
    c = np.array(objective, dtype=float)
    best = None
    for k in range(0, n + 1):
        for rows_on in itertools.combinations(range(m), k):
            for free in itertools.combinations(range(n), k):
                if k:
                    sub = A[np.ix_(rows_on, free)]
                    if abs(np.linalg.det(sub)) < 1e-10:
                        continue
                    inv = np.linalg.inv(sub)
                fixed = [j for j in range(n) if j not in free]
                for assignment in itertools.product((0.0, 1.0), repeat=len(fixed)):
                    x = np.zeros(n)
                    for j, val in zip(fixed, assignment):
                        x[j] = val
                    if k:
                        rhs = b[list(rows_on)] - A[np.ix_(rows_on, fixed)] @ np.array(assignment)
                        x[list(free)] = inv @ rhs
                    if ((x < -tol) | (x > 1 + tol)).any():
                        continue
                    if (A @ x > b + tol).any():
                        continue
                    val = float(c @ x)
                    if best is None or val > best:
                        best = val
    return best


def c5_rows():
    return [({0: 1, 1: 1}, 1), ({1: 1, 2: 1}, 1), ({2: 1, 3: 1}, 1),
            ({3: 1, 4: 1}, 1), ({0: 1, 4: 1}, 1)]


def test_c5_edge_relaxation_is_five_halves():
    res = lp_solve(5, c5_rows())
    assert res.status == "optimal"
    assert abs(res.value - 2.5) <= 1e-9
    for (coeffs, rhs) in c5_rows():
        assert sum(res.x[v] for v in coeffs) <= rhs + 1e-9


def test_no_rows_shortcut():
    res = lp_solve(4, [], objective=[2.0, -1.0, 0.0, 0.5])
    assert res.status == "optimal"
    assert res.value == 2.5
    assert res.x == [1.0, 0.0, 0.0, 1.0]
    assert res.iterations == 0


def test_simple_cases():
    res = lp_solve(2, [({0: 1, 1: 1}, 1)])
    assert abs(res.value - 1.0) <= 1e-9
    res = lp_solve(2, [({0: 1, 1: 1}, 5)], objective=[3.0, 2.0])
    assert abs(res.value - 5.0) <= 1e-9
    assert res.x == [1.0, 1.0]
    res = lp_solve(3, [({0: 1, 1: 1}, 1), ({1: 1, 2: 1}, 1), ({0: 1, 2: 1}, 1)])
    assert abs(res.value - 1.5) <= 1e-9
    res = lp_solve(2, [({0: 1}, 0.25)], objective=[0.0, 0.0])
    assert res.value == 0.0


def test_input_validation():
    with pytest.raises(ValueError):
        lp_solve(2, [({0: 1}, -1)])
    with pytest.raises(ValueError):
        lp_solve(2, [({5: 1}, 1)])
    with pytest.raises(ValueError):
        lp_solve(3, [], objective=[1.0])


def test_degenerate_rows_still_solve():
    rows = [({0: 1, 1: 1}, 1)] * 6 + [({0: 1}, 1), ({1: 1}, 1)]
    res = lp_solve(2, rows, objective=[1.0, 0.9])
    assert res.status == "optimal"
    assert abs(res.value - 1.0) <= 1e-9


def test_stalled_status_on_tiny_iteration_cap():
    res = lp_solve(5, c5_rows(), max_iterations=1)
    assert res.status == "stalled"


def test_negative_coefficients_are_fine():
    # max x0 with x0 - x1 <= 0 forces x0 <= x1
    res = lp_solve(2, [({0: 1, 1: -1}, 0)], objective=[1.0, -0.5])
    assert abs(res.value - 0.5) <= 1e-9
    assert abs(res.x[0] - 1.0) <= 1e-9 and abs(res.x[1] - 1.0) <= 1e-9


def test_matches_vertex_enumeration_oracle():
    rng = random.Random(314)
    for trial in range(60):
        n = rng.randint(2, 5)
        m = rng.randint(1, 8)
        rows = []
        for _ in range(m):
            coeffs = {v: round(rng.uniform(-1.0, 2.0), 3)
                      for v in range(n) if rng.random() < 0.8}
            rows.append((coeffs, round(rng.uniform(0.0, 2.5), 3)))
        objective = [round(rng.uniform(-1.0, 2.0), 3) for _ in range(n)]
        res = lp_solve(n, rows, objective=objective)
        assert res.status == "optimal"
        expect = vertex_enumeration_optimum(n, rows, objective)
        assert expect is not None
        assert abs(res.value - expect) <= 1e-8, (n, rows, objective)
        # returned point is feasible
        for coeffs, rhs in rows:
            assert sum(coeffs[v] * res.x[v] for v in coeffs) <= rhs + 1e-8
