"""The simplex solver against a vertex-enumeration oracle."""

import numpy as np
import pytest

from featsel.core import DataError
from featsel.numerics import LPProblem, solve_lp
from oracles import enumerate_vertices

INF = np.inf


class TestSolveLp:
    def test_single_variable_maximum(self):
        sol = solve_lp(LPProblem(c=[-1.0], a_ub=[[1.0]], b_ub=[5.0], bounds=[(0.0, INF)]))
        assert sol.status == "optimal"
        assert sol.x[0] == pytest.approx(5.0, abs=1e-9)
        assert sol.objective == pytest.approx(-5.0, abs=1e-9)

    def test_infeasible(self):
        sol = solve_lp(LPProblem(c=[1.0], a_ub=[[1.0], [-1.0]], b_ub=[0.0, -1.0],
                                 bounds=[(-INF, INF)]))
        assert sol.status == "infeasible"
        assert sol.x is None

    def test_unbounded(self):
        sol = solve_lp(LPProblem(c=[-1.0], a_ub=np.zeros((0, 1)), b_ub=[],
                                 bounds=[(0.0, INF)]))
        assert sol.status == "unbounded"

    def test_simplex_vertex(self):
        p = LPProblem(c=[-1.0, -1.0], a_ub=[[1.0, 1.0]], b_ub=[1.0],
                      bounds=[(0.0, INF), (0.0, INF)])
        sol = solve_lp(p)
        assert sol.status == "optimal"
        assert sol.objective == pytest.approx(
            enumerate_vertices(p.c, p.a_ub, p.b_ub, p.bounds), abs=1e-8)

    def test_free_variable(self):
        # minimize x with x >= -3 expressed through a row, x itself free
        p = LPProblem(c=[1.0], a_ub=[[-1.0]], b_ub=[3.0], bounds=[(-INF, INF)])
        sol = solve_lp(p)
        assert sol.status == "optimal"
        assert sol.x[0] == pytest.approx(-3.0, abs=1e-9)

    def test_mirrored_variable(self):
        # minimize -x with x <= 2 via bounds only
        p = LPProblem(c=[-1.0], a_ub=np.zeros((0, 1)), b_ub=[], bounds=[(-INF, 2.0)])
        sol = solve_lp(p)
        assert sol.status == "optimal"
        assert sol.x[0] == pytest.approx(2.0, abs=1e-9)

    def test_random_lps_match_vertex_enumeration(self):
        rng = np.random.default_rng(2024)
        solved = 0
        for _ in range(60):
            d = int(rng.integers(2, 4))
            m = int(rng.integers(1, 5))
            a = rng.normal(size=(m, d))
            b = rng.normal(size=m) + 1.0
            c = rng.normal(size=d)
            bounds = [(-5.0, 5.0)] * d
            p = LPProblem(c=c, a_ub=a, b_ub=b, bounds=bounds)
            sol = solve_lp(p)
            best = enumerate_vertices(c, a, b, bounds)
            if best is None:
                assert sol.status == "infeasible"
            else:
                assert sol.status == "optimal"
                assert sol.objective == pytest.approx(best, abs=1e-8)
                assert np.max(a @ sol.x - b) <= 1e-8
                solved += 1
        assert solved > 30  # the sweep actually exercised optimal cases

    def test_constraints_hold_with_mixed_bounds(self):
        rng = np.random.default_rng(77)
        for _ in range(20):
            a = rng.normal(size=(3, 3))
            b = rng.normal(size=3) + 2.0
            c = rng.normal(size=3)
            bounds = [(0.0, INF), (-2.0, 3.0), (-INF, 4.0)]
            sol = solve_lp(LPProblem(c=c, a_ub=a, b_ub=b, bounds=bounds))
            if sol.status != "optimal":
                continue
            x = sol.x
            assert np.max(a @ x - b) <= 1e-8
            assert x[0] >= -1e-8
            assert -2.0 - 1e-8 <= x[1] <= 3.0 + 1e-8
            assert x[2] <= 4.0 + 1e-8

    def test_dimension_mismatch_raises(self):
        with pytest.raises(DataError):
            LPProblem(c=[1.0, 2.0], a_ub=[[1.0]], b_ub=[1.0], bounds=[(0, 1), (0, 1)])

    def test_deterministic(self):
        p = LPProblem(c=[-1.0, -2.0, 0.5], a_ub=[[1.0, 1.0, 1.0], [2.0, -1.0, 0.0]],
                      b_ub=[4.0, 3.0], bounds=[(0.0, 10.0)] * 3)
        a = solve_lp(p)
        b = solve_lp(p)
        assert a.status == b.status == "optimal"
        assert np.array_equal(a.x, b.x)
