# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled inner loops for exact simplex pivoting and sparse elimination.

These mirror lfbounds.lp._pure exactly.  Arithmetic stays on Python
number objects (gmpy2.mpq or fractions.Fraction), so results are
bit-identical to the fallback; the win is doing the loop bookkeeping,
indexing and zero tests at C speed.
"""


def pivot_dense(list rows, Py_ssize_t pr, Py_ssize_t pc):
    """In-place Gauss-Jordan pivot of a dense tableau at (pr, pc)."""
    cdef list prow = <list>rows[pr]
    cdef Py_ssize_t ncol = len(prow)
    cdef Py_ssize_t nrow = len(rows)
    cdef Py_ssize_t i, j
    cdef list row
    piv = prow[pc]
    if piv != 1:
        inv = 1 / piv
        for j in range(ncol):
            v = prow[j]
            if v:
                prow[j] = v * inv
    for i in range(nrow):
        if i == pr:
            continue
        row = <list>rows[i]
        f = row[pc]
        if f:
            for j in range(ncol):
                pv = prow[j]
                if pv:
                    row[j] = row[j] - f * pv


def axpy_sparse(dict dst, dict src, f):
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


def dot_sparse(list dense, dict sparse):
    """Exact dot product of a dense list with a dict-of-index vector."""
    total = 0
    for j, v in sparse.items():
        dj = dense[<Py_ssize_t>j]
        if dj:
            total = total + dj * v
    return total
