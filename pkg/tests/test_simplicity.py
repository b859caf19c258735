import numpy as np
import pytest

from helpers import rand_nonsingular, rand_unimodular, seeded
from qsimp.chain import DENSE, NOT_DENSE, decide_density
from qsimp.errors import NotTriangular, SingularMatrix
from qsimp.intmat import IntMatrix
from qsimp.simplicity import (
    NOT_SIMPLE,
    SIMPLE,
    UNKNOWN,
    check_hypotheses,
    condition_L,
    decide,
    is_dilation,
    normalize,
    reduce_left,
    reduce_right,
    triangular_criterion,
)


def m1(x):
    return IntMatrix([[x]])


def test_check_hypotheses_examples():
    h = check_hypotheses(IntMatrix.diagonal([2, 3]), IntMatrix.identity(2))
    assert (h.ker_f_size, h.ker_g_size) == (6, 1)
    assert not h.both_automorphisms
    h = check_hypotheses(IntMatrix.identity(2), IntMatrix.identity(2))
    assert h.both_automorphisms
    h = check_hypotheses(IntMatrix([[0, 1], [1, 0]]), IntMatrix.diagonal([2, 1]))
    assert (h.ker_f_size, h.ker_g_size) == (1, 2)


def test_check_hypotheses_zero_det_reported():
    h = check_hypotheses(IntMatrix([[0]]), IntMatrix([[2]]))
    assert h.det_f == 0 and h.ker_f_size is None and h.condition_L is None
    assert not h.f_surjective and h.g_surjective
    assert not h.f_injective and not h.g_injective


def test_condition_L():
    assert condition_L(m1(2), m1(3)) is True
    assert condition_L(m1(2), m1(1)) is True
    assert condition_L(m1(1), m1(1)) is None
    with pytest.raises(SingularMatrix):
        condition_L(m1(0), m1(1))


def test_is_dilation_examples():
    assert is_dilation(IntMatrix.diagonal([2, 3]))
    assert not is_dilation(IntMatrix.identity(2))
    assert is_dilation(IntMatrix([[2, 1], [0, 2]]))


def test_is_dilation_boundary_cases():
    assert not is_dilation(IntMatrix([[0, 1], [1, 0]]))  # eigenvalues +-1
    assert not is_dilation(IntMatrix([[0, 1], [-1, 0]]))  # +-i on the circle
    assert is_dilation(IntMatrix([[1, 1], [-1, 1]]))  # 1 +- i
    assert is_dilation(IntMatrix([[0, 2], [1, 0]]))  # +-sqrt(2)
    assert not is_dilation(IntMatrix([[0, 1], [1, 1]]))  # golden ratio pair
    assert not is_dilation(IntMatrix([[0]]))


def test_is_dilation_against_numpy_eigenvalues():
    rng = seeded(53)
    checked = 0
    while checked < 300:
        d = rng.randint(1, 4)
        m = rand_nonsingular(rng, d, -5, 5)
        moduli = np.abs(np.linalg.eigvals(np.array(m.rows, dtype=float)))
        # skip near-circle cases the float oracle cannot referee
        if np.any(np.abs(moduli - 1.0) < 1e-6):
            continue
        checked += 1
        assert is_dilation(m) == bool(np.all(moduli > 1.0))


def test_triangular_criterion():
    assert triangular_criterion(2, IntMatrix.diagonal([3, 5]))
    assert not triangular_criterion(2, IntMatrix([[2, 7], [0, 3]]))
    assert triangular_criterion(3, IntMatrix([[2, 1], [0, 4]]))
    with pytest.raises(NotTriangular):
        triangular_criterion(2, IntMatrix([[1, 2], [3, 4]]))


def test_reduce_examples():
    f, g = m1(2), m1(3)
    assert reduce_right(f, g, IntMatrix.identity(1)) == (f, g)
    assert reduce_right(m1(2), m1(3), m1(5)) == (m1(10), m1(15))
    assert decide(m1(10), m1(15)).status == decide(m1(2), m1(3)).status
    assert reduce_left(m1(2), m1(3), m1(7)) == (m1(14), m1(21))
    assert decide(m1(14), m1(21)).status == decide(m1(2), m1(3)).status
    with pytest.raises(SingularMatrix):
        reduce_right(f, g, m1(0))


def test_reduce_by_adjugate_matches_normal_form():
    rng = seeded(59)
    from qsimp.intmat import adjugate, det

    for _ in range(20):
        d = rng.randint(1, 3)
        f = rand_nonsingular(rng, d, -3, 3)
        g = rand_nonsingular(rng, d, -3, 3)
        fr, gr = reduce_right(f, g, adjugate(f))
        assert fr == IntMatrix.scalar(d, det(f))
        fl, gl = reduce_left(f, g, adjugate(f))
        assert fl == IntMatrix.scalar(d, det(f))


def test_normalize_examples():
    n, t, _ = normalize(m1(2), m1(3))
    assert (n, t) == (2, m1(3))
    n, t, _ = normalize(IntMatrix.diagonal([2, 2]), IntMatrix.identity(2))
    assert n == 4
    assert t == IntMatrix.diagonal([2, 2])
    f = IntMatrix([[1, 1], [0, 1]])
    g = IntMatrix([[3, 1], [1, 2]])
    n, t, _ = normalize(f, g)
    assert n == 1
    from qsimp.intmat import adjugate, det, snf

    u, dd, v = snf(adjugate(f) @ g)
    assert t == dd @ v @ u


def test_decide_examples():
    v = decide(m1(2), m1(3))
    assert v.status == SIMPLE
    assert v.kirchberg_flag
    v = decide(IntMatrix.identity(2), IntMatrix.identity(2))
    assert v.status == NOT_SIMPLE
    assert v.rules_fired[0][0] == "R1-automorphisms"
    assert not v.kirchberg_flag
    v = decide(IntMatrix.diagonal([2, 2]), IntMatrix.identity(2))
    assert v.status == SIMPLE
    assert any(r[0] == "R3-dilation" for r in v.rules_fired)


def test_decide_triangular_swapped_orientation():
    # scalar matrix on the right; the symmetric pair obeys the same test
    v = decide(IntMatrix([[3, 1], [0, 5]]), IntMatrix.scalar(2, 2))
    assert v.status == SIMPLE
    assert v.rules_fired[-1][0] == "R4-triangular"


def test_decide_zero_det_unknown():
    v = decide(IntMatrix([[0]]), m1(2))
    assert v.status == UNKNOWN
    assert v.rules_fired[0][0] == "R0-scope"


def test_decide_not_simple_attaches_witness():
    v = decide(m1(2), m1(2))
    assert v.status == NOT_SIMPLE
    assert v.witness == (2,)
    assert v.density is not None and v.density.status == NOT_DENSE


def test_simple_implies_condition_L_or_fast_path():
    rng = seeded(61)
    for _ in range(25):
        d = rng.randint(1, 2)
        f = rand_nonsingular(rng, d, -3, 3)
        g = rand_nonsingular(rng, d, -3, 3)
        v = decide(f, g, max_depth=12)
        if v.status == SIMPLE:
            assert v.hypotheses.condition_L is True
            assert v.kirchberg_flag == (
                abs(v.hypotheses.det_f) != 1 or abs(v.hypotheses.det_g) != 1
            )


def test_symmetry_of_decide():
    rng = seeded(67)
    for _ in range(20):
        d = rng.randint(1, 2)
        f = rand_nonsingular(rng, d, -3, 3)
        g = rand_nonsingular(rng, d, -3, 3)
        a = decide(f, g, max_depth=12).status
        b = decide(g, f, max_depth=12).status
        if UNKNOWN not in (a, b):
            assert a == b


def test_triangular_vs_chain_no_contradiction():
    rng = seeded(71)
    for n in (2, 3):
        for _ in range(10):
            diag = [rng.choice([x for x in range(-5, 6) if x and abs(x) != n]) for _ in range(2)]
            g = IntMatrix([[diag[0], rng.randint(-5, 5)], [0, diag[1]]])
            assert triangular_criterion(n, g)
            v = decide(IntMatrix.scalar(2, n), g)
            assert v.status == SIMPLE
            dv = decide_density(IntMatrix.scalar(2, n), g)
            assert dv.status != NOT_DENSE


def test_unimodular_pairs_not_simple():
    rng = seeded(73)
    for _ in range(20):
        d = rng.randint(1, 3)
        f = rand_unimodular(rng, d)
        g = rand_unimodular(rng, d)
        assert decide(f, g).status == NOT_SIMPLE


def test_reduction_invariance_smoke():
    rng = seeded(79)
    for _ in range(15):
        d = rng.randint(1, 2)
        f = rand_nonsingular(rng, d, -3, 3)
        g = rand_nonsingular(rng, d, -3, 3)
        h = rand_nonsingular(rng, d, -3, 3)
        base = decide(f, g, max_depth=12).status
        for fa, ga in (reduce_right(f, g, h), reduce_left(f, g, h)):
            other = decide(fa, ga, max_depth=12).status
            if UNKNOWN not in (base, other):
                assert base == other
        n, t, _ = normalize(f, g)
        norm_status = decide(IntMatrix.scalar(d, n), t, max_depth=12).status
        if UNKNOWN not in (base, norm_status):
            assert base == norm_status
