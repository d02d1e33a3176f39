"""Smith normal form, cohomology over R, and the degree-shift check."""

import random

import pytest

from artinfib.complexes import (CochainComplex, build_generic_complex,
                                build_salvetti_complex, koszul_family,
                                random_koszul_family, transpose_complex)
from artinfib.coxeter import finite_type_system
from artinfib.domains import GF, QQ, ZZ
from artinfib.errors import (NotWellFiltered, RankMismatch,
                             UnsupportedDomain)
from artinfib.homology import (WindowPolicy, cohomology, homology,
                               monodromy_char_poly, smith_normal_form,
                               verify_shift_theorem)
from artinfib.laurent import LaurentPoly, format_poly, parse_poly
from artinfib.rmatrix import mat_eq, mat_identity, mat_mul


def P(text, dom=QQ):
    return parse_poly(text, dom)


def check_decomposition(A, dec, dom):
    m, n = dec.shape
    if m and n:
        assert mat_eq(mat_mul(dec.U, mat_mul(A, dec.V, dom), dom), dec.D)
    if m:
        assert mat_eq(mat_mul(dec.U, dec.Uinv, dom), mat_identity(m, dom))
    if n:
        assert mat_eq(mat_mul(dec.V, dec.Vinv, dom), mat_identity(n, dom))
    diag = dec.diagonal
    for a, b in zip(diag, diag[1:]):
        if not b.is_zero():
            assert not a.is_zero()
            b.divexact(a)
    for d in diag:
        if not d.is_zero():
            assert d.val == 0 and d.coeffs[-1] == dom.one


def test_snf_frozen_examples():
    A = ((P("1 - q^2"), P("0")), (P("0"), P("1 - q")))
    dec = smith_normal_form(A, QQ)
    assert [format_poly(d) for d in dec.diagonal] == ["q - 1", "q^2 - 1"]
    check_decomposition(A, dec, QQ)

    dec = smith_normal_form(((P("q^5"),),), QQ)
    assert [format_poly(d) for d in dec.diagonal] == ["1"]
    assert dec.rank == 1
    assert [format_poly(f) for f in dec.invariant_factors] == ["1"]

    dec = smith_normal_form(((P("0"),),), QQ)
    assert dec.rank == 0


def test_snf_zero_dimensions():
    dec = smith_normal_form((), QQ, shape=(0, 5))
    assert dec.shape == (0, 5) and dec.rank == 0
    dec = smith_normal_form(((), (), ()), QQ, shape=(3, 0))
    assert dec.shape == (3, 0) and dec.diagonal == ()
    with pytest.raises(RankMismatch):
        smith_normal_form(((P("1"),),), QQ, shape=(2, 1))


def test_snf_rejects_integer_coefficients():
    with pytest.raises(UnsupportedDomain):
        smith_normal_form(((parse_poly("2", ZZ),),), ZZ)


def random_matrix(rng, dom, m, n, span_bound=4):
    out = []
    for _ in range(m):
        row = []
        for _ in range(n):
            if rng.random() < 0.3:
                row.append(LaurentPoly.zero(dom))
                continue
            span = rng.randint(0, span_bound)
            coeffs = [rng.randint(-3, 3) for _ in range(span + 1)]
            if all(c == 0 for c in coeffs):
                coeffs[0] = 1
            while coeffs[-1] == 0:
                coeffs[-1] = rng.randint(-3, 3)
            row.append(LaurentPoly(dom, rng.randint(-2, 2), tuple(coeffs)))
        out.append(tuple(row))
    return tuple(out)


def test_snf_random_property():
    rng = random.Random(11)
    for trial in range(150):
        dom = (QQ, GF(2), GF(5))[trial % 3]
        m, n = rng.randint(0, 5), rng.randint(0, 5)
        A = random_matrix(rng, dom, m, n)
        dec = smith_normal_form(A, dom, shape=(m, n))
        check_decomposition(A, dec, dom)


def co_strings(C):
    return [str(g) for g in cohomology(C)]


def test_cohomology_salvetti_frozen():
    assert co_strings(build_salvetti_complex(finite_type_system("A1"))) == \
        ["0", "R/(q - 1)"]
    assert co_strings(build_salvetti_complex(finite_type_system("A2"))) == \
        ["0", "R/(q - 1)", "R/(q^2 - q + 1)"]
    assert co_strings(build_salvetti_complex(finite_type_system("B2"))) == \
        ["0", "R/(q - 1)", "R/(q^3 - q^2 + q - 1)"]
    # dihedral top degree carries the sign-twisted quotient polynomial
    assert co_strings(build_salvetti_complex(finite_type_system("I2(5)"))) \
        == ["0", "R/(q - 1)", "R/(q^4 - q^3 + q^2 - q + 1)"]


def test_cohomology_modular_frozen():
    A2 = finite_type_system("A2")
    assert co_strings(build_salvetti_complex(A2, GF(2))) == \
        ["0", "R/(q + 1)", "R/(q^2 + q + 1)"]
    assert co_strings(build_salvetti_complex(A2, GF(3))) == \
        ["0", "R/(q + 2)", "R/(q^2 + 2*q + 1)"]


def test_cohomology_koszul_and_free_parts():
    f = P("1 - q")
    K = build_generic_complex(koszul_family((1, 2), [f, f], QQ))
    assert co_strings(K) == ["0", "R/(q - 1)", "R/(q - 1)"]
    # a zero scalar leaves free summands behind
    K0 = build_generic_complex(koszul_family((1, 2),
                                             [f, LaurentPoly.zero(QQ)], QQ))
    groups = cohomology(K0)
    assert str(groups[1]) == "R/(q - 1)"
    assert groups[2].free_rank == 0 and str(groups[2]) == "R/(q - 1)"
    Kz = build_generic_complex(koszul_family((1,), [LaurentPoly.zero(QQ)],
                                             QQ))
    assert co_strings(Kz) == ["R", "R"]


def test_cohomology_rejects_non_complex():
    one = LaurentPoly.one(QQ)
    C = CochainComplex(QQ, (1, 1, 1), (((one,),), ((one,),)))
    with pytest.raises(RankMismatch):
        cohomology(C)


def test_homology_frozen_and_duality():
    A2 = build_salvetti_complex(finite_type_system("A2"))
    assert [str(g) for g in homology(A2)] == \
        ["R/(q - 1)", "R/(q^2 - q + 1)", "0"]
    A1 = build_salvetti_complex(finite_type_system("A1"))
    assert [str(g) for g in homology(A1)] == ["R/(q - 1)", "0"]
    # torsion of H_k matches torsion of H^(k+1) degree by degree here
    for name in ("A3", "B3", "I2(8)"):
        C = build_salvetti_complex(finite_type_system(name))
        hom = homology(C)
        co = cohomology(C)
        for k in range(C.top_degree):
            assert hom[k].torsion_dim == co[k + 1].torsion_dim, (name, k)


def test_shift_theorem_frozen_dims():
    C = build_salvetti_complex(finite_type_system("A3"))
    report = verify_shift_theorem(C)
    assert report.ok
    assert tuple(d.m_dim for d in report.degrees) == (1, 2, 2, 0)
    B3 = verify_shift_theorem(
        build_salvetti_complex(finite_type_system("B3")))
    assert B3.ok
    assert tuple(d.m_dim for d in B3.degrees) == (1, 1, 3, 0)


def test_shift_theorem_policy_and_progress():
    C = build_salvetti_complex(finite_type_system("A2"))
    seen = []
    report = verify_shift_theorem(C, WindowPolicy(initial_radius=40),
                                  progress=seen.append)
    assert report.ok
    assert [d.degree for d in seen] == [0, 1, 2]
    assert all(d.radius == 40 for d in report.degrees)


def test_shift_theorem_rejects_bad_complexes():
    f = parse_poly("2 - 2*q", ZZ)
    C = build_generic_complex(koszul_family((1, 2), [f, f], ZZ))
    with pytest.raises(NotWellFiltered) as info:
        verify_shift_theorem(C)
    assert info.value.trace.condition == "c"
    assert "condition (c)" in str(info.value)
    # well filtered over Z, but the window side needs a field
    g = parse_poly("1 - q", ZZ)
    wf_but_integral = build_generic_complex(koszul_family((1, 2), [g, g],
                                                          ZZ))
    with pytest.raises(UnsupportedDomain):
        verify_shift_theorem(wf_but_integral)


def test_shift_theorem_modular():
    report = verify_shift_theorem(
        build_salvetti_complex(finite_type_system("I2(9)"), GF(3)))
    assert report.ok
    assert report.degrees[1].m_dim == 8


def test_monodromy_frozen():
    A2 = build_salvetti_complex(finite_type_system("A2"))
    out = monodromy_char_poly(cohomology(A2))
    assert [format_poly(d.charpoly) for d in out] == \
        ["q - 1", "q^2 - q + 1"]
    assert out[0].cyclotomic == ((1, 1),)
    assert out[1].cyclotomic == ((6, 1),)
    assert out[0].non_cyclotomic is None

    I12 = build_salvetti_complex(finite_type_system("I2(12)"))
    out = monodromy_char_poly(cohomology(I12))
    assert out[1].cyclotomic == ((1, 1), (3, 1), (4, 1), (6, 1), (12, 1))

    A1 = build_salvetti_complex(finite_type_system("A1"))
    out = monodromy_char_poly(cohomology(A1))
    assert len(out) == 1 and out[0].cyclotomic == ((1, 1),)


def test_monodromy_modular_and_trivial():
    A2 = build_salvetti_complex(finite_type_system("A2"), GF(3))
    out = monodromy_char_poly(cohomology(A2))
    assert out[1].cyclotomic is None and out[1].non_cyclotomic is None
    assert format_poly(out[1].charpoly) == "q^2 + 2*q + 1"

    # no torsion above: constant characteristic polynomial
    Kz = build_generic_complex(koszul_family((1,), [LaurentPoly.zero(QQ)],
                                             QQ))
    out = monodromy_char_poly(cohomology(Kz))
    assert format_poly(out[0].charpoly) == "1"
    assert out[0].cyclotomic == ()


def test_random_koszul_shift():
    rng = random.Random(3)
    for _ in range(10):
        fam = random_koszul_family(rng.randint(1, 3), rng.randint(0, 10**6))
        report = verify_shift_theorem(build_generic_complex(fam))
        assert report.ok
