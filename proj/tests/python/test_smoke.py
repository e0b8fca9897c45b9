import math

import pytest

import zeta_cover as zc

LOOP = "v 1\ne 0 0 1\n"
DOUBLE_EDGE = "v 2\ne 0 1 0\ne 0 1 1\n"


def test_cover_of_double_edge():
    g = zc.load_graph(DOUBLE_EDGE)
    assert g.vertex_count == 2
    assert g.surjective
    assert zc.cover_spectrum(g, 2) == pytest.approx([0.0, 2.0, 2.0, 4.0], abs=1e-12)
    assert zc.cover_spectrum(g, 6) == pytest.approx(zc.cover_spectrum(g, 6, direct=True), abs=1e-9)


def test_loop_density_and_limit():
    g = zc.load_graph(LOOP)
    for n in (4, 16, 64):
        assert zc.cover_density(g, n) == pytest.approx(math.log(n * n) / n, rel=1e-12)
    value, _ = zc.theta_integral_limit(g)
    assert abs(value) <= 1e-8
    series = zc.convergence_series(g, [4, 16])
    assert [e["N"] for e in series["entries"]] == [4, 16]


def test_spanning_trees():
    c5 = [(i, (i + 1) % 5) for i in range(5)]
    assert zc.spanning_tree_count(5, c5) == 5
    k4 = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    assert zc.spanning_tree_count(4, k4) == 16
    assert zc.brute_force_spanning_trees(4, k4) == 16


def test_torus():
    assert abs(zc.dedekind_eta(1j) - 0.768225) < 1e-6
    det = zc.torus_det_zeta(1j)
    zp, _ = zc.torus_zeta_prime_mellin(1j)
    assert math.exp(-zp) == pytest.approx(det, abs=1e-6)
    series = zc.torus_limit_series(1.0, [10, 100])
    assert series["limit"] == pytest.approx(-math.pi / 3, abs=1e-12)


def test_constants_and_scans():
    assert zc.mckay_constant(4) == 3.375
    alpha, _ = zc.lattice2d_limit()
    assert abs(alpha - 1.166244) < 1e-6
    gap = zc.gap_scan(zc.load_graph(DOUBLE_EDGE))
    assert gap["p"] == 1
    zeros = zc.monodromy_zero_locus(zc.load_graph(LOOP), [0.0, math.pi / 2])
    assert zeros == pytest.approx([0.0, 1.5 * math.pi], abs=1e-8)
    assert zc.deck_sum_residual(zc.load_graph(LOOP), 3, 1.0) < 1e-8


def test_errors_carry_kind_and_detail():
    with pytest.raises(zc.ZetaCoverError) as info:
        zc.load_graph("v 1\ne 0 0 2\n")
    assert info.value.kind == "NonSurjective"
    assert info.value.detail == 2
    with pytest.raises(zc.ZetaCoverError) as info:
        zc.load_graph("v 2\ne 0 1 x\n")
    assert info.value.kind == "ParseError"
    with pytest.raises(zc.ZetaCoverError):
        zc.monodromy_zero_locus(zc.load_graph(LOOP), [0.3, 0.3])
