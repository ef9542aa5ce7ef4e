import math

import pytest

import subgroup_lab as sl


def test_subgroup_and_cosets():
    A = sl.subgroup(7, 3)
    assert A.elements == [1, 2, 4]
    assert len(A) == 3 and 2 in A and 3 not in A
    assert sl.coset_reps(A) == [1, 3]
    assert sl.primitive_root(13) == 2
    with pytest.raises(sl.InvalidOrder):
        sl.subgroup(7, 4)
    with pytest.raises(ValueError):
        sl.subgroup(9, 2)


def test_sets():
    a = sl.ZpSet(7, [1, 2, 4])
    assert sl.sumset(a, a) == sl.ZpSet.units(7)
    assert len(sl.fold_sumset(a, 3)) == 7
    assert sl.shift_intersect(a, 1).elements == [2]
    assert sl.dilate(a, 3).elements == [3, 5, 6]
    assert str(a) == "7:{1,2,4}"
    assert sl.ZpSet.parse("7:{1,2,4}") == a
    with pytest.raises(sl.InvalidArgument):
        sl.fold_sumset(a, 0)


def test_energy_and_spectrum():
    A = sl.subgroup(7, 3)
    a = sl.ZpSet.of(A)
    assert sl.convolve_counts(a, a) == [0, 1, 1, 2, 1, 2, 2]
    assert sl.cyclic_convolution_exact([1] * 5, [1] * 5, 5) == [5] * 5
    assert sl.additive_energy(a, a) == 15
    assert sl.energy_moment(a, 1.5) == pytest.approx(11.19615242, rel=1e-9)
    assert sl.ssc_ratio_sum(A) == pytest.approx(2.7)
    assert sl.sumset_ratio_sum(A) == pytest.approx(3.5)
    mags, phi, argmax = sl.dft_magnitudes(a)
    assert mags[0] == 3 and phi == pytest.approx(math.sqrt(2))
    assert sl.phi_subgroup(A)[0] == pytest.approx(math.sqrt(2), rel=1e-12)
    assert sl.coset_profile(A) == [(1, 1), (3, 1)]
    rep = sl.energy_report(A)
    assert (rep.E, rep.E3, rep.twoA_size) == (15, 33, 6)
    assert sl.invariant_convolution_sum(A, [1], False, [1], False, [3], False) == 6


def test_verifier():
    A = sl.subgroup(7, 3)
    c = sl.check_bound("hk_energy", A)
    assert c.lhs == 15 and c.ratio == pytest.approx(0.9622504486)
    with pytest.raises(sl.CatalogError):
        sl.check_bound("foo", A)
    assert len(sl.bound_catalog()) == 16
    assert sl.covering_index(A) == 2
    assert sl.covering_index(sl.subgroup(7, 1)) is None
    assert sl.check_six_fold(A)
    assert sl.count_solutions_N(A, 1) == 138
    assert sl.count_solutions_N(sl.subgroup(7, 1), 6) == 1
    assert sl.positivity_condition(A)
    with pytest.raises(sl.HeavyOperationDisabled):
        sl.count_solutions_N(sl.subgroup(4099, 2), 1)
    fit = sl.exponent_fit([(x, x**3) for x in (1.0, 2.0, 5.0, 11.0)])
    assert fit.slope == pytest.approx(3.0) and fit.n_points == 4
    with pytest.raises(sl.InsufficientData):
        sl.exponent_fit([(1.0, 1.0)])


def test_sweep_and_verify():
    rows = sl.sweep(7, 7, checks=["hk_energy"])
    assert [r["d"] for r in rows] == [1, 2, 3, 6]
    assert rows[2]["E"] == 15 and rows[2]["covering_k"] == 2
    assert rows[2]["checks"]["hk_energy"].ratio == pytest.approx(0.9622504486)
    assert sl.sweep(3, 200, checks=["all"], threads=4) == sl.sweep(3, 200, checks=["all"])
    ok, cases, msg = sl.verify_all(31)
    assert ok and cases > 0 and msg == ""
