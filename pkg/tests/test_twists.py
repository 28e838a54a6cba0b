"""Twist compatibility: transport of induced modules along automorphisms,
the dual-line involution, and the pairing with the product of dual twists."""

import json
from fractions import Fraction

import pytest

from hecke_kit.coxeter import get_system, one_line, symmetric_group_system
from hecke_kit.hecke import chi, omega, phi, theta
from hecke_kit.linalg import RatMat
from hecke_kit.repmod import iso_test, random_conjugate, regular, scalar
from hecke_kit.scalars import DEFAULT_PARAM_BATTERY, ParamSpec
from hecke_kit.twists import (
    build_pairing,
    gamma_prime,
    gamma_prime_line,
    kron_swap,
    thm44_part2_map,
    thm48_part1_map,
    transport_induction_twist,
    verify_pairing_equivariance,
    verify_thm44,
    verify_thm48,
)

P10 = ParamSpec.parse("1,0")
P23 = ParamSpec.parse("2,3")
P00 = ParamSpec.parse("0,0")
PM11 = ParamSpec.parse("-1,1")

S1 = symmetric_group_system(1)
S2 = symmetric_group_system(2)
S3 = symmetric_group_system(3)

# a scalar satisfying the quadratic at each battery point, when one exists
LAM = {"1,0": 1, "2,3": 3, "0,0": 0, "-1,1": None}


def trivial(params):
    return scalar(S1, frozenset(), 1, params)


def full_regular(sys, params):
    return regular(sys, sys.full_subset, params)


def all_names(rep):
    return [c.name for c in rep.checks]


def failing(rep):
    return [c.name for c in rep.checks if not c.ok]


# -- dual-line involution ----------------------------------------------------


def test_gamma_prime_line_reverses_and_complements():
    assert gamma_prime_line(2, 2, (1, 3, 2, 4)) == (2, 4, 1, 3)
    assert gamma_prime_line(2, 2, (2, 4, 1, 3)) == (1, 3, 2, 4)
    assert gamma_prime_line(2, 2, (1, 2, 3, 4)) == (3, 4, 1, 2)
    assert gamma_prime_line(3, 1, (1, 2, 3, 4)) == (2, 3, 4, 1)


def test_gamma_prime_one_one_swaps_the_two_lines():
    table = gamma_prime(S2, 1, 1)
    e, s1 = 0, S2.gens[0]
    assert table == {e: s1, s1: e}


def test_gamma_prime_two_one_table():
    table = gamma_prime(S3, 2, 1)
    lines = {one_line(S3, g): one_line(S3, img) for g, img in table.items()}
    assert lines == {
        (1, 2, 3): (2, 3, 1),
        (1, 3, 2): (1, 3, 2),
        (2, 3, 1): (1, 2, 3),
    }


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1),
                                 (1, 3), (3, 2), (2, 3), (4, 1), (3, 3)])
def test_gamma_prime_involution_exhaustive(m, n):
    # the builder itself raises if the image leaves the transversal or the
    # map fails to be an involution
    big = symmetric_group_system(m + n)
    table = gamma_prime(big, m, n)
    from math import comb
    assert len(table) == comb(m + n, m)


def test_gamma_prime_rank_mismatch():
    with pytest.raises(ValueError):
        gamma_prime(S3, 2, 2)


# -- transport along automorphisms -------------------------------------------


def test_kron_swap_permutes_tensor_indices():
    sw = kron_swap(2, 3)
    for p in range(2):
        for q in range(3):
            assert sw.cols[p * 3 + q] == {q * 2 + p: Fraction(1)}


def test_transport_flip_smallest_case_frozen():
    # one coset line per group element; the image of the nontrivial line is
    # a*identity minus the generator action, giving an upper triangular map
    K = scalar(S2, frozenset(), 1, P10)
    fm = transport_induction_twist(theta(S2), K)
    assert fm.matrix == RatMat.from_rows([[1, 1], [0, -1]])
    assert fm.check() and fm.matrix.is_invertible()
    K23 = scalar(S2, frozenset(), 1, P23)
    fm23 = transport_induction_twist(theta(S2), K23)
    assert fm23.matrix == RatMat.from_rows([[1, 2], [0, -1]])
    assert fm23.check()


@pytest.mark.parametrize("name,subset", [
    ("B3", {0, 1}),
    ("A3", {0, 2}),
    ("I2(5)", {0}),
])
@pytest.mark.parametrize("builder", [phi, theta, omega])
def test_transport_any_system(name, subset, builder):
    sys = get_system(name)
    K = regular(sys, subset, P23)
    fm = transport_induction_twist(builder(sys), K)
    assert fm.source.dim == sys.size // len(sys.parabolic_elements(subset)) * K.dim
    assert fm.check()
    assert fm.matrix.is_invertible()


def test_transport_relabels_the_parabolic():
    # conjugation by the longest element of I2(5) swaps the two generators,
    # so inducing from {0} on the twisted side uses the subset {1}
    sys = get_system("I2(5)")
    K = regular(sys, {0}, P10)
    fm = transport_induction_twist(phi(sys), K)
    assert fm.source.subset == sys.full_subset
    assert fm.source.induced.source.subset == frozenset({1})
    assert fm.target.subset == sys.full_subset


def test_transport_rejects_anti_morphisms():
    K = regular(S2, {0}, P10)
    with pytest.raises(ValueError):
        transport_induction_twist(chi(S2), K)


# -- product and restriction compatibility ------------------------------------


def pick_factors(ptxt):
    params = ParamSpec.parse(ptxt)
    lam = LAM[ptxt]
    other = (scalar(S2, S2.full_subset, lam, params) if lam is not None
             else random_conjugate(full_regular(S2, params), seed=7))
    return params, other


@pytest.mark.parametrize("ptxt", [str(p) for p in DEFAULT_PARAM_BATTERY])
def test_thm44_shapes_across_params(ptxt):
    params, other = pick_factors(ptxt)
    cases = [
        (trivial(params), trivial(params)),
        (full_regular(S2, params), trivial(params)),
        (trivial(params), full_regular(S2, params)),
        (other, full_regular(S2, params)),
    ]
    for M, N in cases:
        rep = verify_thm44(M, N)
        assert not failing(rep), failing(rep)


def test_thm44_part2_map_frozen_small():
    fm = thm44_part2_map(trivial(P10), trivial(P10))
    assert fm.matrix == RatMat.from_rows([[1, 1], [0, -1]])


def test_thm44_reversed_product_shape():
    # part 1 induces the swapped factors from the parabolic with block
    # sizes reversed
    M = full_regular(S2, P10)
    N = trivial(P10)
    rep = verify_thm44(M, N)
    assert not failing(rep)
    from hecke_kit.twists import thm44_part1_map
    fm = thm44_part1_map(M, N)
    big = fm.source.system
    assert fm.source.induced.source.subset == big.full_subset - {0}
    assert fm.target.subset == big.full_subset


def test_thm44_custom_restriction_module():
    M, N = trivial(P23), trivial(P23)
    L = full_regular(S2, P23)
    rep = verify_thm44(M, N, L=L)
    assert not failing(rep)


def test_thm44_rejects_foreign_restriction_module():
    M, N = trivial(P10), trivial(P10)
    with pytest.raises(ValueError):
        verify_thm44(M, N, L=regular(S3, S3.full_subset, P10))
    with pytest.raises(ValueError):
        verify_thm44(M, N, L=regular(S2, {0} - {0}, P10))


def test_thm44_cross_check_flag():
    M, N = trivial(P10), trivial(P10)
    with_iso = verify_thm44(M, N, cross_check=True)
    without = verify_thm44(M, N, cross_check=False)
    assert any("isomorphism search" in nm for nm in all_names(with_iso))
    assert not any("isomorphism search" in nm for nm in all_names(without))


def test_thm44_larger_shape_regular_factors():
    rep = verify_thm44(full_regular(S3, P23), full_regular(S2, P23))
    assert not failing(rep)


# -- the pairing --------------------------------------------------------------


def test_pairing_one_one_frozen():
    data = build_pairing(trivial(P23), trivial(P23))
    assert data.matrix == RatMat.from_rows([[0, 1], [1, 0]])
    assert data.change == RatMat.from_rows([[1, -2], [0, 1]])
    rep = verify_pairing_equivariance(trivial(P23), trivial(P23))
    assert not failing(rep)
    main = next(c for c in rep.checks if "partner generator" in c.name)
    assert main.detail["A"] == {"A1": 0, "A2": 0, "A3": 1, "A4": 1}
    assert main.detail["B"] == {"B1": 0, "B2": 0, "B3": 1, "B4": 1}
    assert main.detail["nonzero pairs"] == {"A3|B3": 1, "A4|B3": 1, "A4|B4": 1}


def test_pairing_one_one_degenerate_params():
    # with both parameters zero the diagonal branch contributes nothing and
    # only the swap blocks survive
    rep = verify_pairing_equivariance(trivial(P00), trivial(P00))
    assert not failing(rep)
    main = next(c for c in rep.checks if "partner generator" in c.name)
    assert main.detail["nonzero pairs"] == {"A3|B3": 1}


def test_pairing_two_one_fires_first_block_branch():
    rep = verify_pairing_equivariance(full_regular(S2, P10), trivial(P10))
    assert not failing(rep)
    main = next(c for c in rep.checks if "partner generator" in c.name)
    assert main.detail["A"]["A1"] > 0
    assert main.detail["A"]["A2"] == 0
    rep_swapped = verify_pairing_equivariance(trivial(P10), full_regular(S2, P10))
    main_swapped = next(c for c in rep_swapped.checks if "partner generator" in c.name)
    assert main_swapped.detail["A"]["A2"] > 0
    assert main_swapped.detail["A"]["A1"] == 0


def test_pairing_two_two_covers_all_branches():
    rep = verify_pairing_equivariance(full_regular(S2, P23), full_regular(S2, P23))
    assert not failing(rep)
    main = next(c for c in rep.checks if "partner generator" in c.name)
    assert all(v > 0 for v in main.detail["A"].values())
    assert all(v > 0 for v in main.detail["B"].values())


@pytest.mark.parametrize("ptxt", [str(p) for p in DEFAULT_PARAM_BATTERY])
def test_pairing_across_params(ptxt):
    params, other = pick_factors(ptxt)
    rep = verify_pairing_equivariance(other, full_regular(S2, params))
    assert not failing(rep)


# -- the four dual statements -------------------------------------------------


def test_thm48_part1_map_frozen_small():
    fm = thm48_part1_map(trivial(P10), trivial(P10))
    assert fm.matrix == RatMat.from_rows([[0, 1], [1, 1]])
    assert fm.check() and fm.matrix.is_invertible()


def test_thm48_one_one_both_scalars():
    for lam in (0, 1):
        M = scalar(S1, frozenset(), lam, P10)
        rep = verify_thm48(M, M)
        assert not failing(rep), failing(rep)


@pytest.mark.parametrize("ptxt", [str(p) for p in DEFAULT_PARAM_BATTERY])
def test_thm48_two_one_across_params(ptxt):
    params, _ = pick_factors(ptxt)
    rep = verify_thm48(full_regular(S2, params), trivial(params))
    assert not failing(rep), failing(rep)


def test_thm48_two_two_regulars():
    rep = verify_thm48(full_regular(S2, P10), full_regular(S2, P10))
    assert not failing(rep)
    fired = {c.name: c.detail["fired"] for c in rep.checks
             if c.name.startswith("case rule")}
    assert all(v > 0 for v in fired.values())


def test_thm48_report_is_json_serializable():
    rep = verify_thm48(trivial(P23), trivial(P23))
    obj = json.loads(rep.to_json())
    assert obj["passed"] is True
    assert any(c["name"].startswith("part 4") for c in obj["checks"])


def test_twist_reports_name_every_statement():
    rep44 = verify_thm44(trivial(P10), trivial(P10))
    names44 = " ".join(all_names(rep44))
    for k in range(1, 7):
        assert f"part {k} " in names44
    rep48 = verify_thm48(trivial(P10), trivial(P10))
    names48 = " ".join(all_names(rep48))
    for k in range(1, 5):
        assert f"part {k} " in names48


def test_transport_agrees_with_independent_search():
    # the explicit transport and the generic intertwiner search must both
    # certify the same pair of modules
    fm = thm44_part2_map(full_regular(S2, P23), trivial(P23))
    assert fm.check()
    found = iso_test(fm.source, fm.target, seed=3)
    assert found is not None
