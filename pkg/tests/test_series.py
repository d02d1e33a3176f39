"""Window series, recurrences, and the banded window cohomology."""

import random
from fractions import Fraction

import pytest

from artinfib.domains import GF, QQ, ZZ
from artinfib.errors import (NonInvertibleExtremes, SeedTooShort,
                             UnsupportedDomain, WindowTooSmall)
from artinfib.laurent import LaurentPoly, parse_poly
from artinfib.series import (WindowSeries, kernel_of_scalar_mul,
                             m_cohomology_dim_window, poly_window_product,
                             recurrence_extend, solve_scalar_mul)
from artinfib.complexes import (build_generic_complex, build_salvetti_complex,
                                koszul_family)
from artinfib.coxeter import finite_type_system


def test_window_series_basics():
    w = WindowSeries(QQ, -2, (1, 0, 3))
    assert w.hi == 0 and len(w) == 3
    assert w.coeff(-2) == QQ.one and w.coeff(-1) == QQ.zero
    with pytest.raises(IndexError):
        w.coeff(1)
    assert w.restrict(-1, 0).coeffs == (QQ.zero, QQ.normalize(3))
    with pytest.raises(IndexError):
        w.restrict(-3, 0)
    assert not w.is_zero()
    assert WindowSeries(QQ, 4, (0, 0)).is_zero()


def test_recurrence_geometric():
    # q - 2 forces a_k = a_{k-1} / 2 going right
    p = parse_poly("q - 2", QQ)
    ext = recurrence_extend(WindowSeries(QQ, 0, (1,)), p, "right", 4)
    assert ext.coeffs == tuple(QQ.normalize(Fraction(1, 2 ** i))
                               for i in range(5))
    # and a_k = 2 a_{k+1} going left
    ext = recurrence_extend(WindowSeries(QQ, 0, (1,)), p, "left", 3)
    assert ext.lo == -3
    assert ext.coeffs == tuple(QQ.normalize(c) for c in (8, 4, 2, 1))


def test_recurrence_period_six():
    p = parse_poly("1 - q + q^2", QQ)
    ext = recurrence_extend(WindowSeries(QQ, 0, (1, 1)), p, "right", 10)
    pattern = [1, 1, 0, -1, -1, 0]
    assert [int(c) for c in ext.coeffs] == [pattern[i % 6]
                                            for i in range(12)]
    back = recurrence_extend(ext, p, "left", 6)
    assert back.lo == -6
    assert [int(c) for c in back.coeffs[:6]] == pattern


def test_recurrence_contract_errors():
    p = parse_poly("1 - q + q^2", QQ)
    with pytest.raises(SeedTooShort):
        recurrence_extend(WindowSeries(QQ, 0, (1,)), p, "right", 1)
    with pytest.raises(NonInvertibleExtremes):
        recurrence_extend(WindowSeries(ZZ, 0, (1, 1)),
                          parse_poly("2 - q", ZZ), "right", 1)
    with pytest.raises(ValueError):
        recurrence_extend(WindowSeries(QQ, 0, (1, 1)), p, "up", 1)
    # integer coefficients are fine when the extremes are units
    ext = recurrence_extend(WindowSeries(ZZ, 0, (1, 1)),
                            parse_poly("1 - q + q^2", ZZ), "right", 4)
    assert [int(c) for c in ext.coeffs] == [1, 1, 0, -1, -1, 0]


def test_kernel_dimension_and_annihilation():
    rng = random.Random(5)
    for _ in range(40):
        span = rng.randint(1, 6)
        coeffs = [rng.choice((-1, 1, 2, 3))] + \
            [rng.randint(-3, 3) for _ in range(span - 1)] + \
            [rng.choice((-2, -1, 1))]
        p = LaurentPoly(QQ, rng.randint(-3, 3), tuple(coeffs))
        ker = kernel_of_scalar_mul(p)
        assert ker.dim == p.span == span
        for basis in ker.basis_on_window(-12, 12):
            assert poly_window_product(p, basis).is_zero()
    with pytest.raises(NonInvertibleExtremes):
        kernel_of_scalar_mul(LaurentPoly.zero(QQ))


def test_window_product_modes():
    p = parse_poly("1 + q", QQ)
    x = WindowSeries(QQ, 0, (1, 1, 1))
    cons = poly_window_product(p, x, conservative=True)
    assert cons.lo == 1 and cons.hi == 2
    assert [int(c) for c in cons.coeffs] == [2, 2]
    full = poly_window_product(p, x, conservative=False)
    assert full.lo == 0 and full.hi == 3
    assert [int(c) for c in full.coeffs] == [1, 2, 2, 1]
    # conservative window can be empty when the input is narrow
    narrow = poly_window_product(parse_poly("1 + q^5", QQ),
                                 WindowSeries(QQ, 0, (1, 1)))
    assert len(narrow) == 0


def test_solve_round_trip_seeded():
    rng = random.Random(19)
    for dom in (QQ, GF(3)):
        for _ in range(60):
            span = rng.randint(1, 5)
            coeffs = [rng.choice((-1, 1, 2))] + \
                [rng.randint(-3, 3) for _ in range(span - 1)] + \
                [rng.choice((-1, 1))]
            p = LaurentPoly(dom, rng.randint(-3, 3), tuple(coeffs))
            rhs = WindowSeries(dom, rng.randint(-7, 1),
                               [rng.randint(-5, 5)
                                for _ in range(rng.randint(1, 10))])
            x = solve_scalar_mul(p, rhs)
            assert x.lo == rhs.lo - p.degree and x.hi == rhs.hi - p.val
            back = poly_window_product(p, x, conservative=True)
            assert back.lo == rhs.lo and back.hi == rhs.hi
            assert back.coeffs == rhs.coeffs
    with pytest.raises(WindowTooSmall):
        solve_scalar_mul(parse_poly("1 - q", QQ), WindowSeries(QQ, 0, ()))


def test_window_dims_a2():
    C = build_salvetti_complex(finite_type_system("A2"))
    for k, expect in ((0, 1), (1, 2), (2, 0)):
        dim, stable = m_cohomology_dim_window(C, k)
        assert stable and dim == expect
    # out-of-range degrees carry no module
    assert m_cohomology_dim_window(C, -1) == (0, True)
    assert m_cohomology_dim_window(C, 3) == (0, True)


def test_window_dims_koszul():
    fam = koszul_family((1, 2), [parse_poly("1 - q", QQ)] * 2, QQ)
    C = build_generic_complex(fam)
    assert m_cohomology_dim_window(C, 0) == (1, True)
    assert m_cohomology_dim_window(C, 1) == (1, True)
    assert m_cohomology_dim_window(C, 2) == (0, True)


def test_window_dims_with_free_quotient():
    # one Koszul scalar equal to zero: kernel and image both have
    # infinite dimension but the quotient stays finite
    fam = koszul_family((1, 2), [parse_poly("1 - q", QQ),
                                 LaurentPoly.zero(QQ)], QQ)
    C = build_generic_complex(fam)
    assert m_cohomology_dim_window(C, 0) == (1, True)
    assert m_cohomology_dim_window(C, 1) == (1, True)


def test_window_rejects_bad_input():
    C = build_salvetti_complex(finite_type_system("A2"), ZZ)
    with pytest.raises(UnsupportedDomain):
        m_cohomology_dim_window(C, 1)
    CQ = build_salvetti_complex(finite_type_system("A2"))
    with pytest.raises(WindowTooSmall):
        m_cohomology_dim_window(CQ, 1, radius=3)
