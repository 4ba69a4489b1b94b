import random
from fractions import Fraction

import pytest

from superyang.gridcheck import IntMat, products_equal, products_equal_exact
from superyang.scalars import RationalFunction
from superyang.superspace import (Mat, build_P_Q_R, build_space, check_ybe,
                                  embed_pair, p_terms, q_terms,
                                  r_unitarity_scalar, super_transpose)


def test_build_space_n1():
    sp = build_space(1)
    assert sp.dim == 3
    assert [sp.parity(i) for i in (1, 2, 3)] == [1, 0, 1]
    assert [sp.prime(i) for i in (1, 2, 3)] == [3, 2, 1]
    assert [sp.theta(i) for i in (1, 2, 3)] == [1, 1, -1]
    assert sp.kappa == Fraction(-3, 2)


def test_build_space_n2():
    sp = build_space(2)
    assert sp.dim == 5
    assert [sp.parity(i) for i in range(1, 6)] == [1, 1, 0, 1, 1]
    assert sp.kappa == Fraction(-5, 2)


def test_prime_is_involution():
    for n in range(1, 5):
        sp = build_space(n)
        for i in range(1, sp.dim + 1):
            assert sp.prime(sp.prime(i)) == i


def test_build_space_rejects_bad_n():
    with pytest.raises(ValueError):
        build_space(0)


def random_mat(rng, size):
    m = Mat(size, size)
    for _ in range(size * 2):
        m[rng.randrange(size), rng.randrange(size)] = Fraction(rng.randint(-3, 3))
    return m


def test_super_transpose_fixes_identity():
    for n in (1, 2):
        sp = build_space(n)
        ident = Mat.eye(sp.dim)
        assert super_transpose(sp, ident) == ident


def test_super_transpose_involutive():
    rng = random.Random(5)
    for n in (1, 2):
        sp = build_space(n)
        for _ in range(10):
            m = random_mat(rng, sp.dim)
            assert super_transpose(sp, super_transpose(sp, m)) == m


def test_super_transpose_unit_sign():
    # n=1: e_12 |-> e_23 * (-1)^{1*0+1} * theta_1 theta_2 = -e_23
    sp = build_space(1)
    e12 = Mat(3, 3, {(0, 1): Fraction(1)})
    assert super_transpose(sp, e12) == Mat(3, 3, {(1, 2): Fraction(-1)})


def test_super_transpose_gram():
    # t exchanges the Gram matrix with its plain transpose (they differ by the
    # theta asymmetry of the form); applying t twice returns G.
    for n in (1, 2, 3):
        sp = build_space(n)
        g = sp.gram()
        gt = Mat(sp.dim, sp.dim, {(c, r): v for (r, c), v in g.items()})
        assert super_transpose(sp, g) == gt
        assert super_transpose(sp, gt) == g


def test_p_is_super_swap():
    for n in (1, 2):
        sp = build_space(n)
        P = embed_pair(sp, p_terms(sp), 0, 1, 2)
        d = sp.dim
        expect = Mat(d * d, d * d)
        for i in range(d):
            for j in range(d):
                expect[j * d + i, i * d + j] = (-1) ** (sp.par0(i) * sp.par0(j))
        assert P == expect


def test_p_squared_is_identity():
    for n in (1, 2):
        sp = build_space(n)
        P, _, _ = build_P_Q_R(sp)
        assert P @ P == Mat.eye(sp.dim ** 2, 1)


def test_q_squared_is_superdimension_times_q():
    for n in (1, 2):
        sp = build_space(n)
        _, Q, _ = build_P_Q_R(sp)
        assert Q @ Q == Q * (1 - 2 * n)


def test_q_is_partial_super_transpose_of_p():
    for n in (1, 2):
        sp = build_space(n)
        P, Q, _ = build_P_Q_R(sp)
        pars = sp.parities()
        # t on the first leg: the second V is the "module"
        assert super_transpose(sp, P, module_parities=pars) == Q
        # t on the second leg: conjugate by the leg swap (plain, with Koszul)
        d = sp.dim

        def swap_legs(m):
            out = Mat(d * d, d * d)
            for (r, c), v in m.items():
                r1, r2 = divmod(r, d)
                c1, c2 = divmod(c, d)
                sign = (-1) ** (sp.par0(r1) * sp.par0(r2) + sp.par0(c1) * sp.par0(c2))
                out[r2 * d + r1, c2 * d + c1] = v * sign
            return out

        assert swap_legs(super_transpose(sp, swap_legs(P), module_parities=pars)) == Q


def test_r_times_flipped_r_is_scalar():
    for n in (1, 2):
        sp = build_space(n)
        s = r_unitarity_scalar(sp)
        assert isinstance(s, RationalFunction)
        assert s.at_infinity() == 1


def test_ybe_passes_n1_n2():
    for n in (1, 2):
        rep = check_ybe(build_space(n), grid_size=8)
        assert rep["status"] == "pass", rep
        assert rep["witness"] is None


def test_ybe_catches_q_mutation():
    rep = check_ybe(build_space(1), grid_size=8, mutate_q=True)
    assert rep["status"] == "fail"
    w = rep["witness"]
    assert w is not None and "entry" in w and "u" in w and "v" in w


def test_ybe_rejects_small_grid():
    with pytest.raises(ValueError):
        check_ybe(build_space(1), grid_size=4)


def test_engines_agree_on_ybe_instances():
    sp = build_space(1)
    from superyang.superspace import _ybe_side_intmats
    P12 = embed_pair(sp, p_terms(sp), 0, 1, 3)
    Q12 = embed_pair(sp, q_terms(sp), 0, 1, 3)
    P13 = embed_pair(sp, p_terms(sp), 0, 2, 3)
    Q13 = embed_pair(sp, q_terms(sp), 0, 2, 3)
    P23 = embed_pair(sp, p_terms(sp), 1, 2, 3)
    Q23 = embed_pair(sp, q_terms(sp), 1, 2, 3)
    for (u, v) in ((1, 1), (2, 5), (7, 3)):
        left, right = _ybe_side_intmats(sp, P12, Q12, P13, Q13, P23, Q23, u, v)
        assert products_equal(left, right) == products_equal_exact(left, right) is None
    # corrupt one side and confirm both engines catch it at the same entry
    left, right = _ybe_side_intmats(sp, P12, Q12, P13, Q13, P23, Q23, 2, 5)
    bad = IntMat.from_dict(27, 27, {(0, 0): 1, (5, 7): 3})
    witness_fast = products_equal(left + [bad], right)
    witness_slow = products_equal_exact(left + [bad], right)
    assert witness_fast == witness_slow is not None
