from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import exact
from walkgeom.graph import DisconnectedGraphError, complete_graph, cycle_graph, from_edges, path_graph, random_connected
from walkgeom.spectral import eigh
from walkgeom.walk import (
    LazyWalk,
    detailed_balance_violation,
    evolve,
    laziness_vector,
    stationary_distribution,
    symmetrize,
    transition_matrix,
)

EDGE = path_graph(2)


class TestTransition:
    def test_path3(self):
        T = transition_matrix(path_graph(3), 1.0)
        np.testing.assert_array_equal(T, [[0, 1, 0], [0.5, 0, 0.5], [0, 1, 0]])

    def test_lazy_edge(self):
        np.testing.assert_array_equal(transition_matrix(EDGE, 0.5), [[0.5, 0.5], [0.5, 0.5]])

    def test_complete3(self):
        T = transition_matrix(complete_graph(3), 1.0)
        np.testing.assert_array_equal(T, (np.ones((3, 3)) - np.eye(3)) / 2)

    def test_weighted_rows(self):
        g = from_edges(3, [(0, 1, 3.0), (0, 2, 1.0)])
        T = transition_matrix(g, [0.5, 1.0, 1.0])
        np.testing.assert_allclose(T[0], [0.5, 0.375, 0.125])

    @pytest.mark.parametrize("bad", [0.0, -0.1, 1.5, float("nan")])
    def test_laziness_range(self, bad):
        with pytest.raises(ValueError, match=r"\(0, 1\]"):
            laziness_vector(bad, 3)

    def test_laziness_shape(self):
        with pytest.raises(ValueError, match="shape"):
            laziness_vector([1.0, 1.0], 3)


class TestStationary:
    def test_path3(self):
        np.testing.assert_array_equal(stationary_distribution(path_graph(3)), [0.25, 0.5, 0.25])

    @pytest.mark.parametrize("beta", [1.0, 0.7, 0.2])
    def test_complete_uniform(self, beta):
        np.testing.assert_allclose(stationary_distribution(complete_graph(6), beta), np.full(6, 1 / 6), rtol=0, atol=1e-15)

    def test_nonuniform_beta(self):
        pi = stationary_distribution(path_graph(3), [1.0, 0.5, 1.0])
        np.testing.assert_allclose(pi, [1 / 6, 4 / 6, 1 / 6], rtol=0, atol=1e-15)
        # exact pi T = pi
        T = exact.kernel([[0, 1, 0], [1, 0, 1], [0, 1, 0]], [1, Fraction(1, 2), 1])
        p = [Fraction(1, 6), Fraction(4, 6), Fraction(1, 6)]
        assert exact.vecmat(p, T) == p


class TestSymmetrize:
    def test_edge(self):
        w = LazyWalk.build(EDGE)
        np.testing.assert_array_equal(w.T_hat, [[0, 1], [1, 0]])

    def test_path3_entry(self):
        w = LazyWalk.build(path_graph(3))
        assert w.T_hat[0, 1] == pytest.approx(np.sqrt(0.5), abs=1e-15)
        assert w.T_hat[1, 0] == w.T_hat[0, 1]

    def test_uniform_pi_is_average(self):
        rng = np.random.default_rng(3)
        T = rng.random((5, 5))
        T /= T.sum(axis=1, keepdims=True)
        np.testing.assert_allclose(symmetrize(T, np.full(5, 0.2)), (T + T.T) / 2, atol=1e-15)

    def test_nonpositive_pi(self):
        with pytest.raises(ValueError):
            symmetrize(np.eye(2), [1.0, 0.0])

    def test_conjugation_already_symmetric(self):
        w = LazyWalk.build(random_connected(40, 0.15, seed=2, weighted=True), 0.7)
        r = np.sqrt(w.pi)
        C = r[:, None] * w.T / r[None, :]
        assert np.max(np.abs(C - C.T)) <= 1e-12
        assert np.max(np.abs(C - w.T_hat)) <= 1e-12


class TestEvolve:
    def test_fixed_point(self):
        w = LazyWalk.build(path_graph(5), 0.5)
        np.testing.assert_allclose(evolve(w.pi, w, 17), w.pi, atol=1e-15)

    def test_edge_one_step(self):
        w = LazyWalk.build(EDGE)
        np.testing.assert_array_equal(evolve([1.0, 0.0], w, 1), [0.0, 1.0])

    def test_complete3_two_steps(self):
        w = LazyWalk.build(complete_graph(3))
        T = exact.kernel([[0, 1, 1], [1, 0, 1], [1, 1, 0]], [1, 1, 1])
        s = exact.vecmat(exact.vecmat([1, 0, 0], T), T)
        assert s == [Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)]
        np.testing.assert_allclose(evolve([1, 0, 0], w, 2), [float(v) for v in s], atol=1e-15)

    def test_converges_when_aperiodic(self):
        w = LazyWalk.build(cycle_graph(8), 0.5)
        sigma = np.eye(8)[0]
        gaps = [np.abs(evolve(sigma, w, n) - w.pi).sum() for n in range(0, 400, 20)]
        assert all(b <= a + 1e-15 for a, b in zip(gaps, gaps[1:]))
        assert gaps[-1] < 1e-10

    def test_bipartite_oscillates(self):
        w = LazyWalk.build(cycle_graph(8), 1.0)
        sigma = np.eye(8)[0]
        a, b = evolve(sigma, w, 200), evolve(sigma, w, 201)
        assert np.abs(a - b).sum() > 1.0

    def test_rejects_non_distribution(self):
        w = LazyWalk.build(EDGE)
        with pytest.raises(ValueError):
            evolve([0.5, 0.6], w, 1)


class TestDetailedBalance:
    def test_edge_exact(self):
        assert detailed_balance_violation(LazyWalk.build(EDGE)) == 0.0

    def test_nonuniform_beta(self):
        assert detailed_balance_violation(LazyWalk.build(path_graph(3), [1.0, 0.5, 1.0])) <= 1e-12

    def test_degree_pi_fails_for_nonuniform_beta(self):
        # deg/vol is not stationary once laziness varies by node
        g = path_graph(3)
        T = transition_matrix(g, [1.0, 0.5, 1.0])
        pi = np.array([0.25, 0.5, 0.25])
        assert np.max(np.abs(pi @ T - pi)) > 0.1


def test_build_requires_connected():
    with pytest.raises(DisconnectedGraphError):
        LazyWalk.build(from_edges(4, [(0, 1), (2, 3)]))


@settings(max_examples=25, deadline=None)
@given(
    n=st.integers(2, 200),
    seed=st.integers(0, 10**6),
    weighted=st.booleans(),
    beta=st.one_of(st.floats(0.05, 1.0), st.just(1.0)),
    per_node=st.booleans(),
)
def test_walk_invariants(n, seed, weighted, beta, per_node):
    g = random_connected(n, min(1.0, 2.0 * np.log(n) / n + 0.05), seed=seed, weighted=weighted)
    b = np.random.default_rng(seed).uniform(0.05, 1.0, n) if per_node else beta
    w = LazyWalk.build(g, b)
    assert np.max(np.abs(w.T.sum(axis=1) - 1)) <= 1e-12
    assert np.all(w.pi > 0) and abs(w.pi.sum() - 1) <= 1e-12
    assert np.max(np.abs(w.pi @ w.T - w.pi)) <= 1e-12
    assert detailed_balance_violation(w) <= 1e-12
    assert np.max(np.abs(w.T_hat - w.T_hat.T)) <= 1e-12


@pytest.mark.parametrize("b", [0.8, 0.5, 0.25])
def test_uniform_laziness_spectral_map(b):
    g = random_connected(30, 0.2, seed=11, weighted=True)
    one, lazy = LazyWalk.build(g, 1.0), LazyWalk.build(g, b)
    np.testing.assert_allclose(lazy.T_hat, (1 - b) * np.eye(g.n) + b * one.T_hat, atol=1e-15)
    mu1, mub = eigh(one.T_hat).mu, eigh(lazy.T_hat).mu
    assert np.max(np.abs(mub - (1 - b * (1 - mu1)))) <= 1e-10
