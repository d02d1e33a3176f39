"""Smith normal form over k[q, q^-1] and the invariants built on it.

Over a field k the Laurent ring is a Euclidean domain (size = span,
units = c q^j), so any matrix has a diagonal form U A V = D with unit
transforms and a divisibility chain on the diagonal.  Cohomology of a
complex of free modules falls out of two such decompositions per
degree; homology is cohomology of the transposed complex.

``verify_shift_theorem`` compares, degree by degree, the windowed
series-module cohomology dimension with the torsion A-dimension of the
next cohomology group up, which is the computable content of the
degree-shift isomorphism for well filtered complexes.
"""

from __future__ import annotations

import dataclasses
from typing import Optional

from .complexes import CochainComplex, is_well_filtered, transpose_complex
from .domains import Domain
from .errors import (NotStabilized, NotWellFiltered, RankMismatch,
                     UnsupportedDomain)
from .laurent import (LaurentPoly, factor_cyclotomic, format_poly)
from .rmatrix import mat_identity, mat_mul, mat_shape
from .series import default_window_radius, m_cohomology_dim_window


@dataclasses.dataclass(frozen=True)
class SmithDecomposition:
    """U A V = D with D diagonal and a divisibility chain.

    U and V are square with unit determinant; Uinv and Vinv are their
    exact inverses.  Nonzero diagonal entries are normalized to monic
    valuation 0 and occupy the leading positions.
    """

    domain: Domain
    shape: tuple
    U: tuple
    Uinv: tuple
    V: tuple
    Vinv: tuple
    D: tuple

    @property
    def diagonal(self) -> tuple:
        m, n = self.shape
        return tuple(self.D[t][t] for t in range(min(m, n)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if not d.is_zero())

    @property
    def invariant_factors(self) -> tuple:
        return tuple(d for d in self.diagonal if not d.is_zero())


def smith_normal_form(A, domain: Domain,
                      shape: Optional[tuple] = None) -> SmithDecomposition:
    """Diagonalize a matrix over k[q, q^-1] by Euclidean reduction.

    Pivots are chosen with minimal span (ties by position), which keeps
    coefficient growth tame in exact arithmetic.  Only field
    coefficients are supported; the integer Laurent ring has no Smith
    form in general.  A row-free matrix cannot carry its own column
    count, so pass ``shape`` explicitly when either dimension is zero.
    """
    if not domain.is_field:
        raise UnsupportedDomain(
            f"Smith normal form needs field coefficients, not {domain}")
    A = tuple(tuple(row) for row in A)
    m, n = mat_shape(A) if shape is None else shape
    if len(A) != m or any(len(row) != n for row in A):
        raise RankMismatch(f"matrix does not have shape {m}x{n}")
    D = [list(row) for row in A]
    U = [list(r) for r in mat_identity(m, domain)]
    Uinv = [list(r) for r in mat_identity(m, domain)]
    V = [list(r) for r in mat_identity(n, domain)]
    Vinv = [list(r) for r in mat_identity(n, domain)]

    def row_swap(i, j):
        if i == j:
            return
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for r in Uinv:
            r[i], r[j] = r[j], r[i]

    def row_addmul(i, j, c):
        # row i += c * row j; inverse is a column op on Uinv
        D[i] = [a + c * b for a, b in zip(D[i], D[j])]
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
        for r in Uinv:
            r[j] = r[j] - c * r[i]

    def col_swap(i, j):
        if i == j:
            return
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def col_addmul(i, j, c):
        # col i += c * col j
        for r in D:
            r[i] = r[i] + c * r[j]
        for r in V:
            r[i] = r[i] + c * r[j]
        Vinv[j] = [a - c * b for a, b in zip(Vinv[j], Vinv[i])]

    def col_scale(i, u):
        uinv = u.inverse()
        for r in D:
            r[i] = r[i] * u
        for r in V:
            r[i] = r[i] * u
        Vinv[i] = [a * uinv for a in Vinv[i]]

    def row_scale(i, u):
        uinv = u.inverse()
        D[i] = [a * u for a in D[i]]
        U[i] = [a * u for a in U[i]]
        for r in Uinv:
            r[i] = r[i] * uinv

    # scalars are units here, so stripping rational content after each
    # update keeps coefficient bit growth polynomial (primitive-sequence
    # style); without it the quotient chains swell exponentially
    def shrink_row(i):
        s = domain.content_unit(c for e in D[i] for c in e.coeffs)
        if s is not None:
            row_scale(i, LaurentPoly(domain, 0, (s,)))

    def shrink_col(j):
        s = domain.content_unit(c for r in D for c in r[j].coeffs)
        if s is not None:
            col_scale(j, LaurentPoly(domain, 0, (s,)))

    def best_in_block(t):
        best = None
        best_span = None
        for i in range(t, m):
            for j in range(t, n):
                e = D[i][j]
                if not e.is_zero() and (best is None or e.span < best_span):
                    best, best_span = (i, j), e.span
        return best

    t = 0
    while t < min(m, n):
        pos = best_in_block(t)
        if pos is None:
            break
        row_swap(t, pos[0])
        col_swap(t, pos[1])
        while True:
            # clear column t by Euclidean steps, swapping in any smaller
            # remainder as the new pivot
            for i in range(m):
                if i != t and not D[i][t].is_zero():
                    quo, _ = D[i][t].divrem(D[t][t])
                    row_addmul(i, t, -quo)
                    shrink_row(i)
            left = [i for i in range(m) if i != t and not D[i][t].is_zero()]
            if left:
                row_swap(t, min(left, key=lambda i: D[i][t].span))
                continue
            for j in range(n):
                if j != t and not D[t][j].is_zero():
                    quo, _ = D[t][j].divrem(D[t][t])
                    col_addmul(j, t, -quo)
                    shrink_col(j)
            left = [j for j in range(n) if j != t and not D[t][j].is_zero()]
            if left:
                col_swap(t, min(left, key=lambda j: D[t][j].span))
                continue
            # divisibility repair: haul a bad entry into the pivot row
            pivot = D[t][t]
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    e = D[i][j]
                    if not e.is_zero():
                        _, rem = e.divrem(pivot)
                        if not rem.is_zero():
                            bad = i
                            break
                if bad is not None:
                    break
            if bad is None:
                break
            row_addmul(t, bad, LaurentPoly.one(domain))
            shrink_row(t)
        t += 1

    for t in range(min(m, n)):
        d = D[t][t]
        if not d.is_zero():
            unit, _ = d.normalized()
            col_scale(t, unit.inverse())

    freeze = lambda mat: tuple(tuple(r) for r in mat)
    return SmithDecomposition(domain=domain, shape=(m, n), U=freeze(U),
                              Uinv=freeze(Uinv), V=freeze(V),
                              Vinv=freeze(Vinv), D=freeze(D))


@dataclasses.dataclass(frozen=True)
class InvariantFactors:
    """H^degree = R^free_rank + sum of R/(f) over the torsion chain.

    Torsion factors are normalized (monic, valuation 0), nonconstant,
    and each divides the next.  The A-dimension of the torsion part is
    the sum of the spans.
    """

    degree: int
    free_rank: int
    torsion: tuple

    @property
    def torsion_dim(self) -> int:
        return sum(f.span for f in self.torsion)

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        if self.free_rank == 1:
            parts.append("R")
        elif self.free_rank:
            parts.append(f"R^{self.free_rank}")
        parts.extend(f"R/({format_poly(f)})" for f in self.torsion)
        return " + ".join(parts)


def _zero_rows_or_raise(B, count, what):
    for i in range(count):
        if any(not e.is_zero() for e in B[i]):
            raise RankMismatch(
                f"{what}: image does not lie in the kernel, d^2 != 0")


def cohomology(C: CochainComplex) -> tuple:
    """Invariant factors of every H^k = ker d^k / im d^(k-1).

    The kernel of d^k is read off the Smith form of d^k (the trailing
    columns of V); the incoming differential is rewritten in that basis
    with Vinv and its restriction to the kernel coordinates is
    diagonalized again.  Its nonunit invariant factors are the torsion
    of H^k and the corank is the free rank.
    """
    if not C.domain.is_field:
        raise UnsupportedDomain(
            f"cohomology needs field coefficients, not {C.domain}")
    dom = C.domain
    top = C.top_degree
    out = []
    snf_out = {}
    for k in range(top + 1):
        if k < top and C.ranks[k + 1] > 0 and C.ranks[k] > 0:
            snf = snf_out.get(k)
            if snf is None:
                snf = smith_normal_form(C.diffs[k], dom,
                                        shape=(C.ranks[k + 1], C.ranks[k]))
                snf_out[k] = snf
            rank_out = snf.rank
        else:
            snf = None
            rank_out = 0
        kappa = C.ranks[k] - rank_out
        if k == 0 or C.ranks[k - 1] == 0 or C.ranks[k] == 0:
            out.append(InvariantFactors(degree=k, free_rank=kappa,
                                        torsion=()))
            continue
        d_in = C.diffs[k - 1]
        if snf is None:
            b_hat = d_in
        else:
            B = mat_mul(snf.Vinv, d_in, dom)
            _zero_rows_or_raise(B, rank_out, f"degree {k}")
            b_hat = B[rank_out:]
        if kappa == 0:
            out.append(InvariantFactors(degree=k, free_rank=0, torsion=()))
            continue
        snf_in = smith_normal_form(b_hat, dom,
                                   shape=(kappa, C.ranks[k - 1]))
        torsion = tuple(f for f in snf_in.invariant_factors if f.span > 0)
        out.append(InvariantFactors(degree=k,
                                    free_rank=kappa - snf_in.rank,
                                    torsion=torsion))
    return tuple(out)


def homology(C: CochainComplex) -> tuple:
    """H_k of the complex, via cohomology of the transpose.

    Returned in homological degrees 0..top, so entry k describes H_k.
    """
    top = C.top_degree
    co = cohomology(transpose_complex(C))
    return tuple(
        InvariantFactors(degree=k, free_rank=co[top - k].free_rank,
                         torsion=co[top - k].torsion)
        for k in range(top + 1))


@dataclasses.dataclass(frozen=True)
class WindowPolicy:
    """Radius schedule for the series-window side.

    ``initial_radius`` of None means 8x the largest entry reach; on a
    non-stabilized answer the radius doubles, at most ``doublings``
    times, before giving up.
    """

    initial_radius: Optional[int] = None
    doublings: int = 3


@dataclasses.dataclass(frozen=True)
class DegreeShift:
    """One degree of the shift comparison.

    ``m_dim`` is the windowed dimension of H^degree of the series-module
    complex; ``shifted_torsion_dim`` is the torsion A-dimension of
    H^(degree+1) of the Laurent complex.  ``match`` needs the dimensions
    equal and both free ranks zero, since a free summand on either side
    would make the module infinite-dimensional over A.
    """

    degree: int
    m_dim: int
    shifted_torsion_dim: int
    free_rank_here: int
    free_rank_above: int
    radius: int
    match: bool


@dataclasses.dataclass(frozen=True)
class ShiftReport:
    degrees: tuple

    @property
    def ok(self) -> bool:
        return all(d.match for d in self.degrees)


def verify_shift_theorem(C: CochainComplex,
                         policy: WindowPolicy = WindowPolicy(),
                         progress=None) -> ShiftReport:
    """Certify H^k(series side) = H^(k+1)(Laurent side) in each degree.

    Raises NotWellFiltered (with the failing trace attached) when the
    complex does not satisfy the filtration conditions the shift
    argument needs, and NotStabilized when the window dimensions keep
    changing after the allowed doublings.  ``progress``, if given, is
    called with each DegreeShift as soon as it is known, so long runs
    can stream results.
    """
    wf = is_well_filtered(C)
    if not wf.ok:
        raise NotWellFiltered(
            f"complex is not well filtered: condition ({wf.condition}) "
            f"at path {list(wf.path)}: {wf.message}", trace=wf)
    co = cohomology(C)
    top = C.top_degree
    degrees = []
    for k in range(top + 1):
        radius = policy.initial_radius
        if radius is None:
            radius = default_window_radius(C)
        dim = None
        for _ in range(policy.doublings + 1):
            dim, stable = m_cohomology_dim_window(C, k, radius)
            if stable:
                break
            radius *= 2
        else:
            raise NotStabilized(
                f"window dimension for degree {k} still moving at radius "
                f"{radius}", radius=radius)
        above = co[k + 1] if k + 1 <= top else None
        shifted = above.torsion_dim if above else 0
        free_above = above.free_rank if above else 0
        record = DegreeShift(
            degree=k, m_dim=dim, shifted_torsion_dim=shifted,
            free_rank_here=co[k].free_rank, free_rank_above=free_above,
            radius=radius,
            match=(dim == shifted and free_above == 0
                   and co[k].free_rank == 0))
        if progress is not None:
            progress(record)
        degrees.append(record)
    return ShiftReport(degrees=tuple(degrees))


@dataclasses.dataclass(frozen=True)
class MonodromyDegree:
    """q-action on one degree of the finite-dimensional quotient.

    ``charpoly`` is the characteristic polynomial of multiplication by
    q on the torsion A-module (the product of the normalized invariant
    factors, via their companion matrices).  Over the rationals it is
    split into cyclotomic factors (order, multiplicity) plus whatever
    non-cyclotomic part remains; over other fields both factor fields
    are None.
    """

    degree: int
    charpoly: LaurentPoly
    cyclotomic: Optional[tuple]
    non_cyclotomic: Optional[LaurentPoly]


def monodromy_char_poly(H, domain: Optional[Domain] = None) -> tuple:
    """Per-degree monodromy data from a cohomology sequence.

    Entry k of the result describes degree k of the space whose
    cohomology is the input shifted up one degree, so it is built from
    H[k+1]; the last input degree has no successor and is dropped.
    Empty torsion gives the constant characteristic polynomial 1.
    """
    factors = list(H)
    if domain is None:
        for g in factors:
            if g.torsion:
                domain = g.torsion[0].domain
                break
        else:
            from .domains import QQ
            domain = QQ
    one = LaurentPoly.one(domain)
    rational = domain.is_field and domain.characteristic == 0
    out = []
    for k in range(len(factors) - 1):
        char = one
        for f in factors[k + 1].torsion:
            char = char * f
        if rational:
            # char is monic with valuation 0, so the unit part is 1
            _, cyc, rest = factor_cyclotomic(char)
            cyc = tuple(cyc)
            rest = None if rest == one else rest
        else:
            cyc, rest = None, None
        out.append(MonodromyDegree(degree=k, charpoly=char,
                                   cyclotomic=cyc, non_cyclotomic=rest))
    return tuple(out)
