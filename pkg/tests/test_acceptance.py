"""Acceptance suite: one test per criterion, every identity exact (zero
tolerance), with the stated runtime budgets asserted on measured wall time.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
pass lines.
"""

import random
import time
from fractions import Fraction

import pytest

from superyang.scalars import Poly, RationalFunction
from superyang.superspace import build_space, check_ybe
from superyang.linalg import solve_in_span
from superyang.reps import (central_series, check_defrel, check_rtt,
                            compute_vplus, fundamental_rep, gl_check,
                            osp_embed, reduce_rep, sample_index_tuples,
                            shift_rep, tensor_rep, vector_rep)
from superyang.highest import (annihilation_holds, check_consistency,
                               complete_weights, drinfeld_of_weights,
                               extract_weights, hw_tensor_product_check,
                               solve_shift_quotient, xi_vector)

U = Poly.u()
FUNDAMENTALS = [(n, k) for n in (1, 2, 3) for k in range(1, n + 1)]


def rf(num, den=1):
    return RationalFunction(num, den)


@pytest.fixture(scope="module")
def ctx():
    "Shared modules and lazily computed weight data."
    data = {"space": {n: build_space(n) for n in (1, 2, 3)}}
    data["vector"] = {n: vector_rep(data["space"][n]) for n in (1, 2, 3)}
    data["fund"] = {(n, k): fundamental_rep(data["space"][n], k)
                    for (n, k) in FUNDAMENTALS}
    data["hw"] = {}
    data["central"] = {}
    return data


def hw_of(ctx, n, k):
    if (n, k) not in ctx["hw"]:
        sp = ctx["space"][n]
        ctx["hw"][(n, k)] = extract_weights(ctx["fund"][(n, k)], xi_vector(sp, k))
    return ctx["hw"][(n, k)]


def central_of(ctx, n, k):
    if (n, k) not in ctx["central"]:
        c, rep = central_series(ctx["fund"][(n, k)])
        assert rep["status"] == "pass", rep
        ctx["central"][(n, k)] = c
    return ctx["central"][(n, k)]


def test_criterion_01_yang_baxter(ctx):
    for n in (1, 2):
        t0 = time.time()
        rep = check_ybe(ctx["space"][n], grid_size=8)
        dt = time.time() - t0
        assert rep["status"] == "pass", rep
        assert dt < 10.0, "YBE n=%d took %.1fs" % (n, dt)
    print("ACCEPTANCE 1 (Yang-Baxter, n=1,2, 8x8 grid): PASS")


def test_criterion_02_rtt(ctx):
    t0 = time.time()
    for n in (1, 2, 3):
        rep = check_rtt(ctx["vector"][n])
        assert rep["status"] == "pass", rep
    for (n, k) in FUNDAMENTALS:
        rep = check_rtt(ctx["fund"][(n, k)])
        assert rep["status"] == "pass", rep
    total = time.time() - t0
    assert total < 300.0, "RTT suite took %.1fs" % total
    print("ACCEPTANCE 2 (RTT, vector n<=3 and fundamentals k<=n<=3, "
          "%.1fs total): PASS" % total)


def test_criterion_03_defrel(ctx):
    rep1 = check_defrel(ctx["vector"][1])
    assert rep1["status"] == "pass" and rep1["tuples"] == 81
    tuples = sample_index_tuples(ctx["space"][2], 50)
    rep2 = check_defrel(ctx["vector"][2], tuples=tuples, seed=20240801)
    assert rep2["status"] == "pass" and rep2["tuples"] == 50
    print("ACCEPTANCE 3 (defining relations: 81 tuples n=1, 50 tuples n=2): PASS")


def test_criterion_04_central_series(ctx):
    expect = rf(U * U - 1, U * U)
    for n in (1, 2, 3):
        c, rep = central_series(ctx["vector"][n])
        assert rep["status"] == "pass", rep
        assert c == expect, "vector n=%d: c = %r" % (n, c)
    for (n, k) in FUNDAMENTALS:
        c = central_of(ctx, n, k)
        hw = hw_of(ctx, n, k)
        sp = ctx["space"][n]
        prop = hw.component(1) * hw.component(sp.prime(1)).shift(Fraction(2 * n + 1, 2))
        assert c == prop, (n, k)
    print("ACCEPTANCE 4 (central series scalar; c=(u^2-1)/u^2 on vector reps; "
          "c = lambda_1 lambda_1'(u+n+1/2) on all fundamentals): PASS")


def test_criterion_05_fundamental_eigenvalues(ctx):
    for (n, k) in FUNDAMENTALS:
        sp = ctx["space"][n]
        hw = hw_of(ctx, n, k)
        lam_k = rf(U - k, U - k + 1)
        for i in range(1, n + 2):
            if i <= k:
                assert hw.component(i) == lam_k, (n, k, i)
            else:
                assert hw.component(i).is_one(), (n, k, i)
        pairs = [(i, j) for i in range(1, n + 2) for j in range(i + 1, n + 2)]
        assert annihilation_holds(ctx["fund"][(n, k)], xi_vector(sp, k), pairs) is None
    print("ACCEPTANCE 5 (xi_k eigenvalues (u-k)/(u-k+1) and annihilation, "
          "all k<=n<=3): PASS")


def test_criterion_06_drinfeld(ctx):
    for (n, k) in FUNDAMENTALS:
        tup, fail = drinfeld_of_weights(hw_of(ctx, n, k))
        assert fail is None
        for i, p in enumerate(tup.polys, start=1):
            assert p == (U - k if i == k else Poly.const(1)), (n, k, i, p)
    rng = random.Random(97)
    for _ in range(30):
        deg = rng.randint(1, 4)
        p = Poly([Fraction(rng.randint(-4, 4)) for _ in range(deg)] + [Fraction(1)])
        ratio = RationalFunction(p.shift(1), p)
        assert solve_shift_quotient(ratio.num.monic(), ratio.den.monic()) == p.monic()
    print("ACCEPTANCE 6 (Drinfeld data P_k = u-k on fundamentals; "
          "shift-quotient round trips): PASS")


def test_criterion_07_consistency(ctx):
    for (n, k) in FUNDAMENTALS:
        hw = hw_of(ctx, n, k)
        rep = check_consistency(hw, c_series=central_of(ctx, n, k))
        assert rep["status"] == "pass" and rep["central_crosscheck"] == "pass"
        assert complete_weights(hw.lam[:n + 1], ctx["space"][n]) == hw
    print("ACCEPTANCE 7 (consistency conditions and complete_weights "
          "reproduction on every extracted weight): PASS")


def test_criterion_08_reduction(ctx):
    basis = compute_vplus(ctx["vector"][2])
    assert len(basis) == 1
    assert basis[0][0] == 1 and not any(basis[0][1:])
    for n in (2, 3):
        reduced, rep = reduce_rep(ctx["vector"][n])
        assert rep["status"] == "pass", rep
        assert reduced.space.n == n - 1
    print("ACCEPTANCE 8 (V+(vector, n=2) = span{e1}; reductions pass RTT "
          "for n=2,3): PASS")


def test_criterion_09_embeddings(ctx):
    for n in (1, 2):
        _, rep = osp_embed(ctx["vector"][n])
        assert rep["status"] == "pass", rep
    for n in (1, 2, 3):
        assert gl_check(ctx["vector"][n])["status"] == "pass"
    for (n, k) in FUNDAMENTALS:
        assert gl_check(ctx["fund"][(n, k)])["status"] == "pass", (n, k)
    print("ACCEPTANCE 9 (osp brackets on vector n<=2; gl relations on vector "
          "and fundamental modules n<=3): PASS")


def test_criterion_10_multiplicativity(ctx):
    sp = ctx["space"][2]
    f1 = ctx["fund"][(2, 1)]
    rep = hw_tensor_product_check(f1, f1)
    assert rep["status"] == "pass", rep
    shifted = shift_rep(f1, Fraction(3, 2))
    rep = hw_tensor_product_check(f1, shifted)
    assert rep["status"] == "pass", rep
    tens = tensor_rep([f1, shifted], [0, 0])
    xi = [x * y for x in xi_vector(sp, 1) for y in xi_vector(sp, 1)]
    hw = extract_weights(tens, xi)
    assert hw.component(1) == rf(U - 1, U) * rf(U + Fraction(1, 2), U + Fraction(3, 2))
    tup, _ = drinfeld_of_weights(hw)
    assert tup.polys[0] == ((U - 1) * (U + Fraction(1, 2))).monic()
    print("ACCEPTANCE 10 (tensor multiplicativity of weights and Drinfeld "
          "data at n=2, plain and shifted): PASS")


def test_criterion_11_mutation_sensitivity(ctx):
    # wrap sign: RTT must fail with a located witness
    rep = check_rtt(ctx["vector"][1], mutate_wrap=True)
    assert rep["status"] == "fail" and rep["witness"]["u"]
    # theta table: all three sign-sensitive checks break
    sp_bad = build_space(1, mutate_theta=True)
    ybe_bad = check_ybe(sp_bad)
    rtt_bad = check_rtt(vector_rep(sp_bad))
    defrel_bad = check_defrel(vector_rep(sp_bad))
    assert "fail" in {ybe_bad["status"], rtt_bad["status"], defrel_bad["status"]}
    assert ybe_bad["witness"] or rtt_bad["witness"] or defrel_bad["witness"]
    # Q sign: Yang-Baxter must fail with a located witness
    rep = check_ybe(ctx["space"][1], mutate_q=True)
    assert rep["status"] == "fail" and rep["witness"]["entry"]
    print("ACCEPTANCE 11 (wrap/theta/Q-sign mutations each caught with a "
          "located witness): PASS")
