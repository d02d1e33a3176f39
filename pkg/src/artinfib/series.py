"""Bi-infinite Laurent series, truncated to windows.

An element of the module A[[q, q^-1]] of formal series with coefficients
in both directions is never stored whole; computations work on a window
[lo, hi] of coefficients plus the recurrences that extend them.  For a
polynomial p with invertible extreme coefficients, multiplication by p on
the series module is surjective with kernel of dimension span(p); the
window side of that statement is what ``kernel_of_scalar_mul`` and
``solve_scalar_mul`` compute, and ``m_cohomology_dim_window`` does the
same for a full complex of series modules via banded linear algebra.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction

from .domains import Domain
from .errors import (
    NonInvertibleExtremes,
    SeedTooShort,
    UnsupportedDomain,
    WindowTooSmall,
)
from .laurent import LaurentPoly, extremes_invertible
from .linalg import projected_kernel_dim, sparse_rank


@dataclasses.dataclass(frozen=True)
class WindowSeries:
    """Known coefficients of a series on the exponent window [lo, hi].

    Unlike a polynomial, trailing zeros are meaningful: they assert the
    coefficient is zero there, whereas outside the window nothing is
    claimed.  ``coeffs[i]`` is the coefficient of q^(lo+i).
    """

    domain: Domain
    lo: int
    coeffs: tuple

    def __init__(self, domain, lo, coeffs):
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "lo", int(lo))
        object.__setattr__(
            self, "coeffs",
            tuple(domain.normalize(c) if isinstance(c, (int, Fraction))
                  else c for c in coeffs))

    @property
    def hi(self) -> int:
        return self.lo + len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def coeff(self, e: int):
        i = e - self.lo
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        raise IndexError(f"exponent {e} outside window [{self.lo},{self.hi}]")

    def restrict(self, lo: int, hi: int) -> "WindowSeries":
        if lo < self.lo or hi > self.hi:
            raise IndexError("restriction exceeds the known window")
        return WindowSeries(self.domain, lo,
                            self.coeffs[lo - self.lo:hi - self.lo + 1])

    def is_zero(self) -> bool:
        return all(self.domain.is_zero(c) for c in self.coeffs)

    def __str__(self):
        dom = self.domain
        body = ", ".join(dom.to_str(c) for c in self.coeffs)
        return f"[q^{self.lo}..q^{self.hi}: {body}]"


def _extremes(p: LaurentPoly):
    if not extremes_invertible(p):
        raise NonInvertibleExtremes(
            f"({p}) needs invertible extreme coefficients over {p.domain}")
    return p.val, p.degree, p.coeffs[0], p.coeffs[-1]


def recurrence_extend(seed: WindowSeries, p: LaurentPoly, direction: str,
                      steps: int) -> WindowSeries:
    """Extend a seed window by the coefficients forced by p*m = 0.

    Writing p = sum b_i q^i for i in [s, t], the relation pins

        a_k = -b_s^{-1} * sum_{i=1..t-s} b_{s+i} a_{k-i}   (rightward)
        a_k = -b_t^{-1} * sum_{i=1..t-s} b_{t-i} a_{k+i}   (leftward)

    so each new coefficient needs the previous span(p) ones.
    """
    if direction not in ("left", "right"):
        raise ValueError(f"direction must be 'left' or 'right': {direction}")
    if steps < 0:
        raise ValueError("steps must be >= 0")
    s, t, b_s, b_t = _extremes(p)
    d = t - s
    if len(seed) < d:
        raise SeedTooShort(f"seed of length {len(seed)} < span {d}")
    dom = seed.domain
    buf = list(seed.coeffs)
    if direction == "right":
        c = dom.neg(dom.inv(b_s))
        for _ in range(steps):
            acc = dom.zero
            for i in range(1, d + 1):
                acc = dom.add(acc, dom.mul(p.coeffs[i], buf[-i]))
            buf.append(dom.mul(c, acc))
        return WindowSeries(dom, seed.lo, buf)
    c = dom.neg(dom.inv(b_t))
    for _ in range(steps):
        acc = dom.zero
        for i in range(1, d + 1):
            acc = dom.add(acc, dom.mul(p.coeffs[d - i], buf[i - 1]))
        buf.insert(0, dom.mul(c, acc))
    return WindowSeries(dom, seed.lo - steps, buf)


@dataclasses.dataclass(frozen=True)
class RecurrenceKernel:
    """Basis of {m : p*m = 0}, each element held as a unit seed window.

    The kernel has dimension span(p); seed j is the window on [0, span-1]
    with a 1 in slot j, extendable to any window by ``recurrence_extend``.
    """

    p: LaurentPoly
    seeds: tuple

    @property
    def dim(self) -> int:
        return len(self.seeds)

    def basis_on_window(self, lo: int, hi: int):
        """Materialize each basis element on [lo, hi]."""
        out = []
        for seed in self.seeds:
            ext = seed
            if lo < ext.lo:
                ext = recurrence_extend(ext, self.p, "left", ext.lo - lo)
            if hi > ext.hi:
                ext = recurrence_extend(ext, self.p, "right", hi - ext.hi)
            out.append(ext.restrict(lo, hi))
        return out


def kernel_of_scalar_mul(p: LaurentPoly) -> RecurrenceKernel:
    """Kernel of multiplication by p on the bi-infinite series module."""
    _extremes(p)
    d = p.span
    dom = p.domain
    seeds = tuple(
        WindowSeries(dom, 0, [dom.one if i == j else dom.zero
                              for i in range(d)])
        for j in range(d))
    return RecurrenceKernel(p, seeds)


def poly_window_product(p: LaurentPoly, x: WindowSeries,
                        conservative: bool = True) -> WindowSeries:
    """Coefficients of p*x.

    With ``conservative`` (default) only coefficients fully determined by
    the window are returned, i.e. exponents [x.lo + deg p, x.hi + val p];
    otherwise x is treated as identically zero outside its window and the
    full support [x.lo + val p, x.hi + deg p] comes back.
    """
    dom = x.domain
    if p.is_zero():
        return WindowSeries(dom, x.lo, [dom.zero] * len(x))
    s, t = p.val, p.degree
    if conservative:
        lo, hi = x.lo + t, x.hi + s
    else:
        lo, hi = x.lo + s, x.hi + t
    out = []
    for u in range(lo, hi + 1):
        acc = dom.zero
        for e, c in p.items():
            v = u - e
            if x.lo <= v <= x.hi:
                acc = dom.add(acc, dom.mul(c, x.coeffs[v - x.lo]))
        out.append(acc)
    return WindowSeries(dom, lo, out) if hi >= lo else \
        WindowSeries(dom, 0, ())


def solve_scalar_mul(p: LaurentPoly, rhs: WindowSeries) -> WindowSeries:
    """A preimage x with p*x = rhs on the whole rhs window.

    Splits rhs at exponent 0 and applies the two one-sided inverse series
    of p (lower extreme for the nonnegative part, upper extreme for the
    negative part); x comes back on [rhs.lo - deg p, rhs.hi - val p] and
    the conservative product p*x reproduces rhs exactly on its window.
    """
    if len(rhs) == 0:
        raise WindowTooSmall("empty right-hand side window")
    s, t, b_s, b_t = _extremes(p)
    d = t - s
    dom = rhs.domain
    x_lo, x_hi = rhs.lo - t, rhs.hi - s

    # alpha: p * q^-s / b_s, a polynomial with constant term 1
    inv_bs = dom.inv(b_s)
    alpha = [dom.mul(inv_bs, c) for c in p.coeffs]
    # beta: p * q^-t / b_t, exponents -d..0, constant term 1
    inv_bt = dom.inv(b_t)
    beta = [dom.mul(inv_bt, c) for c in p.coeffs]

    plus_hi = rhs.hi
    c_series = []
    if plus_hi >= 0:
        # inverse of alpha as a power series: C_0 = 1, recurrence below
        c_series = [dom.one]
        for u in range(1, plus_hi + 1):
            acc = dom.zero
            for i in range(1, min(u, d) + 1):
                acc = dom.add(acc, dom.mul(alpha[i], c_series[u - i]))
            c_series.append(dom.neg(acc))

    minus_lo = rhs.lo
    d_series = []
    if minus_lo < 0:
        depth = -minus_lo  # need D_0 .. D_{minus_lo+1}; one spare is fine
        d_series = [dom.one]  # d_series[u] holds D_{-u}
        for u in range(1, depth + 1):
            acc = dom.zero
            for i in range(1, min(u, d) + 1):
                acc = dom.add(acc, dom.mul(beta[d - i], d_series[u - i]))
            d_series.append(dom.neg(acc))

    out = []
    for w in range(x_lo, x_hi + 1):
        acc = dom.zero
        # x_plus: sum over rhs exponents v >= 0 with C index w - v + s >= 0
        for v in range(max(rhs.lo, 0), rhs.hi + 1):
            idx = w - v + s
            if 0 <= idx < len(c_series):
                acc = dom.add(acc, dom.mul(
                    dom.mul(inv_bs, c_series[idx]), rhs.coeffs[v - rhs.lo]))
        # x_minus: rhs exponents v < 0 with D index w - v + t <= 0
        for v in range(rhs.lo, min(rhs.hi, -1) + 1):
            idx = v - w - t  # = -(w - v + t)
            if 0 <= idx < len(d_series):
                acc = dom.add(acc, dom.mul(
                    dom.mul(inv_bt, d_series[idx]), rhs.coeffs[v - rhs.lo]))
        out.append(acc)
    return WindowSeries(dom, x_lo, out)


# -- windowed complexes of series modules ------------------------------


def _entry_reach(entry: LaurentPoly) -> int:
    if entry.is_zero():
        return 0
    return max(abs(entry.val), abs(entry.degree))


def matrix_reach(matrix) -> int:
    """Largest |exponent| appearing in any entry of a polynomial matrix."""
    r = 0
    for row in matrix:
        for e in row:
            r = max(r, _entry_reach(e))
    return r


def matrix_max_span(matrix) -> int:
    s = 0
    for row in matrix:
        for e in row:
            if not e.is_zero():
                s = max(s, e.span)
    return s


class WindowOperator:
    """A polynomial matrix acting on windowed coefficient vectors.

    Source vectors lay out block j at exponent v as column index
    ``(v + N) * src_rank + j`` for v in [-N, N].  The operator rows are
    banded: the output coefficient at (i, u) involves inputs within the
    entry exponent range around u.
    """

    def __init__(self, entries, radius: int, domain: Domain):
        self.entries = entries
        self.radius = int(radius)
        self.domain = domain
        self.dst_rank = len(entries)
        self.src_rank = len(entries[0]) if entries else 0
        self.reach = matrix_reach(entries)

    def src_index(self, j: int, v: int) -> int:
        return (v + self.radius) * self.src_rank + j

    def equation_rows(self):
        """Sparse rows, one per fully determined output coefficient.

        Output (i, u) is usable only when every contributing input
        exponent lies inside [-N, N]; the valid u range is computed per
        output block from the entry exponent extremes.
        """
        N = self.radius
        for i in range(self.dst_rank):
            row_entries = [(j, e) for j, e in enumerate(self.entries[i])
                           if not e.is_zero()]
            if not row_entries:
                continue
            u_lo = -N + max(e.degree for _, e in row_entries)
            u_hi = N + min(e.val for _, e in row_entries)
            for u in range(u_lo, u_hi + 1):
                row = {}
                for j, e in row_entries:
                    for exp, c in e.items():
                        if self.domain.is_zero(c):
                            continue
                        idx = self.src_index(j, u - exp)
                        if idx in row:
                            row[idx] = self.domain.add(row[idx], c)
                        else:
                            row[idx] = c
                yield row

    def image_rows(self, interior_lo: int, interior_hi: int):
        """Images of the window unit vectors, restricted to the interior.

        Row coordinates are flattened as (u - interior_lo) * dst_rank + i.
        Rows with empty restriction are skipped.
        """
        N = self.radius
        for v in range(-N, N + 1):
            for j in range(self.src_rank):
                row = {}
                for i in range(self.dst_rank):
                    e = self.entries[i][j]
                    if e.is_zero():
                        continue
                    for exp, c in e.items():
                        u = v + exp
                        if interior_lo <= u <= interior_hi and \
                                not self.domain.is_zero(c):
                            # (i, u) pairs are distinct within a column
                            row[(u - interior_lo) * self.dst_rank + i] = c
                if row:
                    yield row


def default_window_radius(complex_) -> int:
    """Default truncation radius: 8x the largest entry reach."""
    reach = 1
    for mat in complex_.diffs:
        reach = max(reach, matrix_reach(mat))
    return 8 * reach


def m_cohomology_dim_window(complex_, k: int, radius: int | None = None):
    """A-dimension of H^k of the complex tensored with the series module.

    Truncates every series to [-N, N], takes the solutions of all fully
    visible kernel equations of d^k, subtracts the image of windowed
    vectors under d^(k-1), and measures both only on the stable interior
    (3x the band reach discarded at each end).  The computation runs at N
    and N + 2*reach; ``stabilized`` reports whether the two agree, and the
    dimension at the larger radius is returned.
    """
    dom = complex_.domain
    if not dom.is_field:
        raise UnsupportedDomain(
            f"series window computations need a field, not {dom}")
    ranks = complex_.ranks
    top = len(ranks) - 1
    if top < 0 or k < 0 or k > top or ranks[k] == 0:
        return 0, True

    d_out = complex_.diff(k) if k < top else None
    d_in = complex_.diff(k - 1) if k > 0 else None
    reach = 1
    for mat in (d_out, d_in):
        if mat is not None:
            reach = max(reach, matrix_reach(mat))
    discard = 3 * reach
    if radius is None:
        radius = default_window_radius(complex_)
    if radius < discard + 1:
        raise WindowTooSmall(
            f"radius {radius} leaves no interior beyond the {discard} "
            f"discarded boundary coefficients")

    def dim_at(N: int) -> int:
        r_k = ranks[k]
        i_lo, i_hi = -N + discard, N - discard
        keep = [(v + N) * r_k + j
                for v in range(i_lo, i_hi + 1) for j in range(r_k)]
        if d_out is not None and len(d_out) > 0:
            op = WindowOperator(d_out, N, dom)
            dim_kernel = projected_kernel_dim(op.equation_rows, dom, keep)
        else:
            dim_kernel = len(keep)
        dim_image = 0
        if d_in is not None and d_in and len(d_in[0]) > 0:
            op_in = WindowOperator(d_in, N, dom)
            dim_image = sparse_rank(op_in.image_rows(i_lo, i_hi), dom)
        return dim_kernel - dim_image

    d1 = dim_at(radius)
    d2 = dim_at(radius + 2 * reach)
    return d2, d1 == d2
