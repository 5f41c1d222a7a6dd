"""Pure-Python implementations of the exact-arithmetic inner loops.

Semantically identical to the compiled versions in ``_speedups.pyx``;
these are the fallback selected by :mod:`lfbounds.lp.kernels` when the
extension is not built.  Entries are exact rationals (gmpy2.mpq or
Fraction); zero tests rely on rationals being falsy at 0.
"""

from __future__ import annotations


def pivot_dense(rows, pr, pc):
    """In-place Gauss-Jordan pivot of a dense tableau at (pr, pc).

    ``rows`` is a list of equal-length lists of exact rationals.  The
    pivot entry must be nonzero.  After the call the pivot column is the
    pr-th unit vector and row pr is scaled so its pivot entry is 1.
    """
    prow = rows[pr]
    piv = prow[pc]
    if piv != 1:
        inv = 1 / piv
        for j, v in enumerate(prow):
            if v:
                prow[j] = v * inv
    ncol = len(prow)
    for i, row in enumerate(rows):
        if i == pr:
            continue
        f = row[pc]
        if f:
            for j in range(ncol):
                pv = prow[j]
                if pv:
                    row[j] = row[j] - f * pv


def axpy_sparse(dst, src, f):
    """dst -= f * src on dict-of-column sparse rows; exact zeros removed."""
    for j, v in src.items():
        cur = dst.get(j)
        if cur is None:
            dst[j] = -f * v
        else:
            new = cur - f * v
            if new:
                dst[j] = new
            else:
                del dst[j]


def dot_sparse(dense, sparse):
    """Exact dot product of a dense list with a dict-of-index vector."""
    total = 0
    for j, v in sparse.items():
        dj = dense[j]
        if dj:
            total = total + dj * v
    return total
