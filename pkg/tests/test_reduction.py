import warnings

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netentangle import (
    Bipartition,
    Graph,
    NotPositiveDefiniteError,
    SchmidtClampWarning,
    entropy,
    entropy_from_d,
    entropy_oracle,
    make_family,
    potential_matrix,
    schmidt_probabilities,
    schmidt_spectrum_direct,
    single_node_entropy,
)
from netentangle.schur import theorem1_d
from netentangle.reduction import single_node_mu, spectrum_from_d
from netentangle.verification import random_four_block_graph

from .conftest import couplings, graph_and_part

# -sum p_n log p_n summed to convergence in 40-digit arithmetic
S_HALF = 0.27823866770789254
S_HALF_BITS = 0.40141354608572873


def _mp_entropy(d):
    d = mpmath.mpf(d)
    nu = 1 / mpmath.sqrt(1 - d**2)
    return float((nu + 1) / 2 * mpmath.log((nu + 1) / 2) - (nu - 1) / 2 * mpmath.log((nu - 1) / 2))


def test_k2_spectrum():
    # V = [[2, -1], [-1, 2]]: A = C = 2, B = -1, whitened B = -1/2
    spec = schmidt_spectrum_direct(potential_matrix(make_family("complete", 2), 0.5), [0])
    np.testing.assert_allclose(spec.d, [0.5], rtol=0, atol=1e-15)
    np.testing.assert_allclose(spec.nu, [2 / np.sqrt(3)], rtol=1e-15)


def test_k2_entropy_value():
    res = entropy(potential_matrix(make_family("complete", 2), 0.5), [0])
    assert res.total == pytest.approx(S_HALF, abs=1e-14)
    assert res.method == "direct"
    assert res.log_base == "e"


@pytest.mark.parametrize("family, params", [("kite", ()), ("lollipop", (4, 3)), ("cycle", (7,))])
def test_zero_coupling_gives_zero(family, params):
    graph = make_family(family, *params)
    res = entropy(potential_matrix(graph, 0.0), [0, 1])
    assert res.total == 0.0
    assert not np.any(res.spectrum.d)


def test_disconnected_cut_gives_zero():
    graph = Graph.from_edges(5, [(0, 1), (2, 3), (3, 4)])
    res = entropy(potential_matrix(graph, 3.0), [0, 1])
    assert res.total == 0.0
    assert len(res.spectrum) == 2


def test_spectrum_length_is_smaller_side():
    v = potential_matrix(make_family("complete", 7), 1.0)
    assert len(entropy(v, [0, 1]).spectrum) == 2
    assert len(entropy(v, [0, 1, 2, 3, 4]).spectrum) == 2


def test_entropy_from_d_values():
    assert entropy_from_d(0.0) == 0.0
    assert entropy_from_d(0.5) == pytest.approx(S_HALF, abs=1e-15)
    assert entropy_from_d(0.5, log_base=2) == pytest.approx(S_HALF_BITS, abs=1e-15)


@pytest.mark.parametrize("d", [1e-7, 1e-4, 0.3, 0.9, 0.999, 1 - 1e-9])
def test_entropy_from_d_precision(d):
    with mpmath.workdps(50):
        expected = _mp_entropy(d)
    assert entropy_from_d(d) == pytest.approx(expected, rel=1e-9, abs=1e-300)


def test_entropy_grows_without_bound_near_one():
    ds = 1 - np.logspace(-1, -14, 14)
    s = [entropy_from_d(d) for d in ds]
    assert all(b > a for a, b in zip(s[:-1], s[1:]))
    assert s[-1] > 15


@pytest.mark.parametrize("d", [1.0, 1.5, -0.1, float("nan")])
def test_entropy_from_d_domain(d):
    with pytest.raises(ValueError):
        entropy_from_d(d)


def test_probabilities_product_mode():
    np.testing.assert_array_equal(schmidt_probabilities(0.0, 3), [1, 0, 0, 0])


def test_probabilities_half():
    p = schmidt_probabilities(0.5, 5)
    assert p[0] == pytest.approx(0.92820323027550917, rel=1e-15)
    assert np.all(np.diff(p) < 0)


def test_probabilities_reproduce_entropy():
    p = schmidt_probabilities(0.5, 200)
    assert -np.sum(p * np.log(p)) == pytest.approx(S_HALF, abs=1e-14)


def test_probabilities_reject_bad_input():
    with pytest.raises(ValueError):
        schmidt_probabilities(1.0, 3)
    with pytest.raises(ValueError):
        schmidt_probabilities(0.2, -1)


@settings(max_examples=80, deadline=None)
@given(st.floats(0.0, 0.999), st.integers(0, 40))
def test_probability_tail_bound(d, n_max):
    p = schmidt_probabilities(d, n_max)
    nu = 1 / np.sqrt(1 - d * d)
    ratio = (nu - 1) / (nu + 1)
    assert abs(1 - p.sum()) <= ratio ** (n_max + 1) + 1e-14


@settings(max_examples=60, deadline=None)
@given(graph_and_part(max_n=10), couplings)
def test_total_is_sum_of_modes(gp, g):
    graph, part = gp
    res = entropy(potential_matrix(graph, g), part)
    assert res.total == pytest.approx(res.spectrum.mode_entropy.sum(), rel=1e-12, abs=0)
    assert np.all(res.spectrum.d >= 0) and np.all(res.spectrum.d < 1)
    assert np.all(np.diff(res.spectrum.d) <= 0)
    assert np.all(res.spectrum.nu >= 1)
    zero = res.spectrum.d == 0
    assert np.all(res.spectrum.nu[zero] == 1) and np.all(res.spectrum.mode_entropy[zero] == 0)


@settings(max_examples=80, deadline=None)
@given(graph_and_part(max_n=10), couplings)
def test_complement_symmetry(gp, g):
    graph, part = gp
    v = potential_matrix(graph, g)
    p = Bipartition(graph.n, part)
    assert entropy(v, p).total == pytest.approx(entropy(v, p.complement()).total, abs=1e-10)


@settings(max_examples=80, deadline=None)
@given(graph_and_part(max_n=10, connected=True), couplings)
def test_oracle_agrees(gp, g):
    graph, part = gp
    v = potential_matrix(graph, g)
    direct, oracle = entropy(v, part), entropy_oracle(v, part)
    assert abs(direct.total - oracle.total) < 1e-8
    np.testing.assert_allclose(direct.spectrum.d, oracle.spectrum.d, atol=1e-7)


def test_oracle_vacuum():
    res = entropy_oracle(potential_matrix(make_family("kite"), 0.0), [0, 1])
    assert res.total == 0.0
    np.testing.assert_array_equal(res.spectrum.nu, [1.0, 1.0])


def test_oracle_k2():
    v = potential_matrix(make_family("complete", 2), 0.5)
    assert abs(entropy_oracle(v, [0]).total - entropy(v, [0]).total) < 1e-10


def test_oracle_sqrt_kernel_is_a_different_state():
    # ground state of (p^2 + x^T V x)/2 for V = [[2,-1],[-1,2]]: mu^2 = (V^1/2)_00 (V^-1/2)_00 / 4
    v = potential_matrix(make_family("complete", 2), 0.5)
    mu = np.sqrt(0.25 * (1 + np.sqrt(3)) / 2 * (1 + 1 / np.sqrt(3)) / 2)
    expected = (mu + 0.5) * np.log(mu + 0.5) - (mu - 0.5) * np.log(mu - 0.5)
    res = entropy_oracle(v, [0], kernel="sqrt")
    assert res.total == pytest.approx(expected, rel=1e-12)
    assert res.total < entropy(v, [0]).total


@settings(max_examples=60, deadline=None)
@given(graph_and_part(max_n=10), couplings)
def test_rank_bound(gp, g):
    graph, part = gp
    v = potential_matrix(graph, g)
    p = Bipartition(graph.n, part)
    cut = graph.adjacency[np.ix_(p.part_a, p.part_b)]
    n_cut = int(cut.sum())
    rank = entropy(v, p).spectrum.rank
    assert rank <= np.linalg.matrix_rank(cut) <= n_cut


@settings(max_examples=60, deadline=None)
@given(graph_and_part(max_n=9), couplings, st.randoms(use_true_random=False))
def test_local_relabeling_invariance(gp, g, rnd):
    graph, part = gp
    p = Bipartition(graph.n, part)
    a, b = list(p.part_a), list(p.part_b)
    perm = list(range(graph.n))
    for side in (a, b):
        shuffled = side[:]
        rnd.shuffle(shuffled)
        for src, dst in zip(side, shuffled):
            perm[src] = dst
    relabeled = graph.relabel(perm)
    d0 = entropy(potential_matrix(graph, g), p).spectrum.d
    d1 = entropy(potential_matrix(relabeled, g), p).spectrum.d
    np.testing.assert_allclose(d0, d1, atol=1e-10)


def test_growing_boundary_pushes_d_to_one():
    ds = [
        entropy(potential_matrix(make_family("complete_bipartite", k, k), 1.0), range(k)).spectrum.d[0]
        for k in range(1, 9)
    ]
    assert all(b > a for a, b in zip(ds[:-1], ds[1:]))


def test_growing_interior_pushes_d_to_zero(rng):
    ds = []
    for k in range(0, 9):
        graph, part = random_four_block_graph(rng, (k, 1, 1, k), p_intra=0.0, shuffle=False)
        ds.append(entropy(potential_matrix(graph, 1.0), part).spectrum.d[0])
    assert all(b < a for a, b in zip(ds[:-1], ds[1:]))
    assert theorem1_d(10_000, 1, 1, 10_000, 1.0) < 1e-3


def test_not_positive_definite():
    with pytest.raises(NotPositiveDefiniteError):
        entropy(np.array([[1.0, 2.0], [2.0, 1.0]]), [0])
    with pytest.raises(NotPositiveDefiniteError):
        entropy(np.diag([-1.0, 1.0, 1.0]), [0, 1])
    with pytest.raises(NotPositiveDefiniteError):
        entropy_oracle(np.array([[1.0, 2.0], [2.0, 1.0]]), [0])


def test_clamp_just_above_one():
    c = 1.0 + 5e-10
    with pytest.warns(SchmidtClampWarning):
        res = entropy(np.array([[1.0, c], [c, 1.0]]), [0])
    assert res.spectrum.d[0] == 1.0 - 1e-12
    assert np.isfinite(res.total)


def test_tiny_coefficients_are_zeroed():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        spec = spectrum_from_d([1e-13, 0.2])
    np.testing.assert_array_equal(spec.d, [0.2, 0.0])
    assert spec.mode_entropy[1] == 0.0


def test_log_base_two_scales():
    v = potential_matrix(make_family("kite"), 1.0)
    nat, bits = entropy(v, [0, 1]), entropy(v, [0, 1], log_base=2)
    assert bits.total == pytest.approx(nat.total / np.log(2), rel=1e-14)
    assert bits.log_base == 2
    with pytest.raises(ValueError):
        entropy(v, [0], log_base=10)


def test_single_node_vacuum():
    res = single_node_entropy(potential_matrix(make_family("star", 5), 0.0), 0)
    assert res.total == 0.0


def test_single_node_k2():
    v = potential_matrix(make_family("complete", 2), 0.5)
    assert single_node_mu(v, 0) ** 2 == pytest.approx(1 / 3, rel=1e-15)
    res = single_node_entropy(v, 0)
    assert res.spectrum.nu[0] == pytest.approx(2 / np.sqrt(3), rel=1e-14)


@settings(max_examples=60, deadline=None)
@given(graph_and_part(max_n=12), st.sampled_from([0.1, 0.5, 2.0, 10.0]), st.data())
def test_single_node_matches_direct(gp, g, data):
    graph, _ = gp
    node = data.draw(st.integers(0, graph.n - 1))
    v = potential_matrix(graph, g)
    assert single_node_entropy(v, node).total == pytest.approx(entropy(v, [node]).total, abs=1e-10)


@settings(max_examples=40, deadline=None)
@given(graph_and_part(max_n=8), couplings, st.data())
def test_single_node_matches_oracle(gp, g, data):
    graph, _ = gp
    node = data.draw(st.integers(0, graph.n - 1))
    v = potential_matrix(graph, g)
    assert single_node_entropy(v, node).total == pytest.approx(entropy_oracle(v, [node]).total, abs=1e-10)
