"""Sparse exact Gaussian elimination over a coefficient field.

Rows are dicts {column index: nonzero element}.  Elimination proceeds by
increasing column, always clearing the current minimum column, so banded
inputs (the window operators in this package) stay banded and the cost is
rows x band^2 rather than cubic.  Everything is exact; no floats.
"""

from __future__ import annotations

import heapq

from .errors import UnsupportedDomain


def echelon(rows, domain):
    """Reduce an iterable of sparse rows; returns {pivot column: row}.

    Rows are consumed destructively.  Pivot rows are normalized to pivot
    coefficient 1.  The number of pivots is the rank.
    """
    if not domain.is_field:
        raise UnsupportedDomain(f"elimination needs a field, not {domain}")
    is_zero = domain.is_zero
    mul = domain.mul
    sub = domain.sub
    neg = domain.neg
    inv = domain.inv

    buckets: dict[int, list[dict]] = {}
    heap: list[int] = []

    def push(row):
        if row:
            c = min(row)
            if c not in buckets:
                buckets[c] = []
                heapq.heappush(heap, c)
            buckets[c].append(row)

    for row in rows:
        push({k: v for k, v in row.items() if not is_zero(v)})

    pivots: dict[int, dict] = {}
    while heap:
        c = heapq.heappop(heap)
        group = buckets.pop(c, None)
        if not group:
            continue
        group.sort(key=len)
        piv = group[0]
        pinv = inv(piv[c])
        if pinv != domain.one:
            piv = {k: mul(pinv, v) for k, v in piv.items()}
        pivots[c] = piv
        for row in group[1:]:
            f = row.pop(c)
            for k, v in piv.items():
                if k == c:
                    continue
                cur = row.get(k)
                nxt = sub(cur, mul(f, v)) if cur is not None else \
                    neg(mul(f, v))
                if is_zero(nxt):
                    row.pop(k, None)
                else:
                    row[k] = nxt
            push(row)
    return pivots


def sparse_rank(rows, domain) -> int:
    """Rank of the span of the given sparse rows."""
    return len(echelon(rows, domain))


def projected_kernel_dim(row_maker, domain, keep_cols) -> int:
    """dim of the kernel of A projected onto the ``keep_cols`` coordinates.

    ``row_maker()`` must yield the sparse rows of A afresh on each call
    (elimination is destructive).  Uses

        dim proj(ker A) = |keep| - rank(A) + rank(A with kept cols deleted)

    which follows from ker(A restricted to vanishing on keep) being the
    kernel of the column-deleted matrix.
    """
    keep = set(keep_cols)
    rank_full = sparse_rank(row_maker(), domain)
    pruned = ({k: v for k, v in row.items() if k not in keep}
              for row in row_maker())
    rank_pruned = sparse_rank(pruned, domain)
    return len(keep) - rank_full + rank_pruned
