import numpy as np
import pytest

from netentangle import (
    chebyshev_q,
    closed_form_d,
    closed_form_entropy,
    corollary1_d,
    entropy,
    entropy_from_d,
    large_coupling_entropy,
    large_coupling_report,
    lollipop_d,
    make_family,
    path_d,
    path_d_polynomial,
    potential_matrix,
    star_partition_d,
    theorem1_d,
)
from netentangle.closed_forms import lollipop_v22, path_chain_value, path_d_u_ratio

# Q_49/Q_50 from the recurrence in 40-digit arithmetic
Q_RATIO_50 = {0.1: 0.14589803375031546, 1.0: 0.5, 10.0: 0.80000000007333330}


def test_path_base_case():
    assert path_d(1, 0.5) == pytest.approx(0.5, rel=1e-15)
    assert path_d(1, 0.7) == pytest.approx(corollary1_d(1, 1, 0.7), rel=1e-15)


def test_path_one_step():
    assert path_d(2, 1.0) == pytest.approx(6 / 11, rel=1e-15)


@pytest.mark.parametrize("g", [0.1, 1.0, 10.0])
def test_path_against_extended_precision(g):
    assert path_d(50, g) == pytest.approx(Q_RATIO_50[g], rel=1e-13)


@pytest.mark.parametrize("g", [0.1, 1.0, 10.0])
@pytest.mark.parametrize("n", [1, 2, 3, 7, 20, 50])
def test_path_matches_numeric(n, g):
    res = entropy(potential_matrix(make_family("path", 2 * n), g), range(n))
    assert res.spectrum.rank == 1
    assert path_d(n, g) == pytest.approx(res.spectrum.d[0], abs=1e-8)


@pytest.mark.parametrize("g", [0.1, 1.0, 10.0])
def test_path_polynomial_forms(g):
    q = chebyshev_q(2 + 1 / (2 * g), 50).q
    for n in range(1, 51):
        cf = path_d(n, g)
        assert q[n - 1] / q[n] == pytest.approx(cf, abs=1e-12)
        assert path_d_polynomial(n, g) == pytest.approx(cf, abs=1e-10)


def test_uncorrected_u_ratio_disagrees():
    # U_0/U_1 = 1/(2 + 1/(2g)) while the chain gives 2g/(1 + 2g)
    assert path_d_u_ratio(1, 0.5) == pytest.approx(1 / 3, rel=1e-14)
    assert abs(path_d_u_ratio(1, 0.5) - path_d(1, 0.5)) > 0.1


def test_chebyshev_recurrence_holds():
    ev = chebyshev_q(3.0, 10)
    assert ev.q[0] == 1.0 and ev.q[1] == 2.0
    np.testing.assert_allclose(ev.q[2:], 3.0 * ev.q[1:-1] - ev.q[:-2], rtol=1e-15)


def test_path_monotonicity():
    for n in (1, 3, 10):
        ds = [path_d(n, g) for g in (0.01, 0.1, 1.0, 10.0, 100.0)]
        assert all(b > a for a, b in zip(ds[:-1], ds[1:]))
    for g in (0.1, 1.0, 10.0):
        ds = [path_d(n, g) for n in range(1, 30)]
        assert all(b <= a for a, b in zip(ds[:-1], ds[1:]))
        assert ds[1] < ds[0]


def test_path_chain_value_base():
    assert path_chain_value(1, 0.3) == pytest.approx(1.6, rel=1e-15)


def test_lollipop_v22_simplifies():
    for m in (2, 3, 5, 9):
        for g in (0.1, 1.0, 10.0):
            simple = 1 + 2 * g * m - 4 * g**2 * (m - 1) / (1 + 2 * g)
            assert lollipop_v22(m, g) == pytest.approx(simple, rel=1e-13)


@pytest.mark.parametrize("m, n", [(5, 4), (3, 1), (2, 2), (4, 6)])
@pytest.mark.parametrize("g", [0.1, 1.0, 10.0])
def test_lollipop_matches_numeric(m, n, g):
    res = entropy(potential_matrix(make_family("lollipop", m, n), g), range(m))
    assert lollipop_d(m, n, g) == pytest.approx(res.spectrum.d[0], abs=1e-8)


def test_lollipop_single_node_path():
    g = 1.0
    assert lollipop_d(4, 1, g) == pytest.approx(2 * g / np.sqrt((1 + 2 * g) * lollipop_v22(4, g)), rel=1e-15)


@pytest.mark.parametrize("g", [0.1, 1.0, 10.0])
def test_star_path_matches_lollipop(g):
    a = entropy(potential_matrix(make_family("lollipop", 5, 4), g), range(5)).total
    b = entropy(potential_matrix(make_family("star_path", 5, 4), g), range(5)).total
    assert abs(a - b) < 1e-9


@pytest.mark.parametrize("N", range(4, 9))
def test_star_partition(N):
    for g in (0.1, 1.0, 10.0):
        v = potential_matrix(make_family("star", N), g)
        for i in range(1, N - 1):
            assert star_partition_d(N, i, g) == pytest.approx(theorem1_d(0, i, 1, N - i - 1, g), rel=1e-13)
            assert star_partition_d(N, i, g) == pytest.approx(
                entropy(v, range(1, i + 1)).spectrum.d[0], abs=1e-8
            )


def test_star_partition_ordering():
    # star S_4: hub alone > hub with one leaf > one leaf alone
    v = potential_matrix(make_family("star", 4), 1.0)
    s_hub = entropy(v, [0]).total
    s_two = entropy_from_d(star_partition_d(4, 2, 1.0))
    s_one = entropy_from_d(star_partition_d(4, 1, 1.0))
    assert s_hub > s_two > s_one


def test_star_partition_bounds():
    with pytest.raises(ValueError):
        star_partition_d(4, 3, 1.0)
    with pytest.raises(ValueError):
        star_partition_d(2, 1, 1.0)


def test_large_coupling_k2():
    g = 1e6
    exact = entropy_from_d(2 * g / (1 + 2 * g))
    assert large_coupling_entropy(0, 1, 1, 0, g) == pytest.approx(exact, rel=5e-4)


def test_large_coupling_converges():
    rows = large_coupling_report((2, 3, 3, 2), gs=(1e2, 1e3, 1e4))
    errs = [r["sum_rel_error"] for r in rows]
    assert all(b < a for a, b in zip(errs[:-1], errs[1:]))
    assert errs[-1] < 0.01
    # the N/(4 g m2 n2) form carries a constant log(2)/2 offset
    for r in rows:
        assert r["collapsed"] - r["sum"] == pytest.approx(np.log(2) / 2, rel=1e-12)


def test_large_coupling_slope():
    sizes = (2, 3, 3, 2)
    offsets = [entropy_from_d(theorem1_d(*sizes, g)) - 0.5 * np.log(g) for g in (1e3, 1e4, 1e5, 1e6)]
    steps = np.abs(np.diff(offsets))
    assert np.all(np.diff(steps) < 0) and steps[-1] < 1e-5


def test_large_coupling_bad_variant():
    with pytest.raises(ValueError):
        large_coupling_entropy(1, 1, 1, 1, 10.0, variant="other")


@pytest.mark.parametrize(
    "family, params, part_a",
    [
        ("complete", (6,), [0, 1, 2]),
        ("star", (6,), [1, 2]),
        ("star", (6,), [0]),
        ("barbell", (3, 4), [0, 1, 2]),
        ("star_coalescence", (4, 2), [0, 1, 2, 3]),
        ("lollipop", (5, 4), [0, 1, 2, 3, 4]),
        ("star_path", (4, 3), [0, 1, 2, 3]),
        ("path", (8,), [0, 1, 2, 3]),
        ("path", (7,), [0, 1]),
        ("complete_bipartite", (2, 3), [0, 1]),
    ],
)
def test_closed_form_dispatch(family, params, part_a):
    graph = make_family(family, *params)
    for g in (0.1, 1.0, 10.0):
        res = closed_form_entropy(graph, part_a, g)
        assert res is not None and res.method == "closed_form"
        direct = entropy(potential_matrix(graph, g), part_a)
        assert res.total == pytest.approx(direct.total, abs=1e-9)
        assert len(res.spectrum) == len(direct.spectrum)


def test_closed_form_unavailable():
    assert closed_form_d(make_family("cycle", 6), [0, 1, 2], 1.0) is None
    assert closed_form_entropy(make_family("kite"), [0, 2], 1.0) is None


def test_closed_form_zero_cases():
    from netentangle import Graph

    assert closed_form_d(Graph.from_edges(4, [(0, 1), (2, 3)]), [0, 1], 1.0) == 0.0
    assert closed_form_d(make_family("path", 4), [0, 1], 0.0) == 0.0
