# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled sparse elimination kernels over prime fields.

rank_fp performs incremental row echelon reduction on CSR input;
spmm_is_zero_fp checks that a product of two CSC matrices vanishes.
Both are exact modular arithmetic (int64, p small).
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memset


cdef long inv_mod(long a, long p):
    cdef long t = 0, newt = 1, r = p, newr = a % p, q, tmp
    while newr != 0:
        q = r / newr
        tmp = t - q * newt; t = newt; newt = tmp
        tmp = r - q * newr; r = newr; newr = tmp
    if t < 0:
        t += p
    return t


def rank_fp(int nrows, int ncols,
            int[::1] indptr, int[::1] indices, long[::1] data, long p):
    """Rank of a CSR matrix over F_p."""
    cdef int cap = nrows if nrows < ncols else ncols
    cdef int* pivot_of = <int*> malloc(ncols * sizeof(int))
    cdef int** pcols = <int**> malloc(cap * sizeof(int*))
    cdef long** pvals = <long**> malloc(cap * sizeof(long*))
    cdef int* plen = <int*> malloc(cap * sizeof(int))
    cdef int* cur_c = <int*> malloc(ncols * sizeof(int))
    cdef long* cur_v = <long*> malloc(ncols * sizeof(long))
    cdef int* sc = <int*> malloc(ncols * sizeof(int))
    cdef long* sv = <long*> malloc(ncols * sizeof(long))
    cdef int* tmp_c
    cdef long* tmp_v
    cdef int rank = 0, r, k, n, i, j, m, pi, a, b, pln
    cdef long v, f, linv
    if pivot_of == NULL or pcols == NULL or pvals == NULL or plen == NULL \
            or cur_c == NULL or cur_v == NULL or sc == NULL or sv == NULL:
        raise MemoryError()
    for j in range(ncols):
        pivot_of[j] = -1
    try:
        for r in range(nrows):
            n = 0
            for k in range(indptr[r], indptr[r + 1]):
                v = data[k] % p
                if v < 0:
                    v += p
                if v != 0:
                    cur_c[n] = indices[k]
                    cur_v[n] = v
                    n += 1
            while n > 0:
                j = cur_c[0]
                pi = pivot_of[j]
                if pi < 0:
                    # new pivot: normalize and store
                    linv = inv_mod(cur_v[0], p)
                    tmp_c = <int*> malloc(n * sizeof(int))
                    tmp_v = <long*> malloc(n * sizeof(long))
                    if tmp_c == NULL or tmp_v == NULL:
                        raise MemoryError()
                    for i in range(n):
                        tmp_c[i] = cur_c[i]
                        tmp_v[i] = (cur_v[i] * linv) % p
                    pcols[rank] = tmp_c
                    pvals[rank] = tmp_v
                    plen[rank] = n
                    pivot_of[j] = rank
                    rank += 1
                    break
                # eliminate leading entry against pivot row pi
                f = p - cur_v[0]  # coefficient of pivot row to add
                pln = plen[pi]
                tmp_c = pcols[pi]
                tmp_v = pvals[pi]
                a = 0; b = 0; m = 0
                while a < n and b < pln:
                    if cur_c[a] < tmp_c[b]:
                        sc[m] = cur_c[a]; sv[m] = cur_v[a]
                        a += 1; m += 1
                    elif cur_c[a] > tmp_c[b]:
                        v = (f * tmp_v[b]) % p
                        if v != 0:
                            sc[m] = tmp_c[b]; sv[m] = v; m += 1
                        b += 1
                    else:
                        v = (cur_v[a] + f * tmp_v[b]) % p
                        if v != 0:
                            sc[m] = cur_c[a]; sv[m] = v; m += 1
                        a += 1; b += 1
                while a < n:
                    sc[m] = cur_c[a]; sv[m] = cur_v[a]
                    a += 1; m += 1
                while b < pln:
                    v = (f * tmp_v[b]) % p
                    if v != 0:
                        sc[m] = tmp_c[b]; sv[m] = v; m += 1
                    b += 1
                for i in range(m):
                    cur_c[i] = sc[i]
                    cur_v[i] = sv[i]
                n = m
        return rank
    finally:
        for i in range(rank):
            free(pcols[i]); free(pvals[i])
        free(pivot_of); free(pcols); free(pvals); free(plen)
        free(cur_c); free(cur_v); free(sc); free(sv)


def spmm_is_zero_fp(int a_nrows,
                    int[::1] a_indptr, int[::1] a_indices, long[::1] a_data,
                    int[::1] b_indptr, int[::1] b_indices, long[::1] b_data,
                    long p):
    """True iff A @ B == 0 over F_p; A and B are given in CSC layout
    (a column of B selects columns of A)."""
    cdef long* acc = <long*> malloc(a_nrows * sizeof(long))
    cdef int* touched = <int*> malloc(a_nrows * sizeof(int))
    cdef char* seen = <char*> malloc(a_nrows * sizeof(char))
    cdef int ncols_b = b_indptr.shape[0] - 1
    cdef int jb, k, kk, col, row, nt, i
    cdef long coef
    if acc == NULL or touched == NULL or seen == NULL:
        raise MemoryError()
    memset(acc, 0, a_nrows * sizeof(long))
    memset(seen, 0, a_nrows * sizeof(char))
    try:
        for jb in range(ncols_b):
            nt = 0
            for k in range(b_indptr[jb], b_indptr[jb + 1]):
                col = b_indices[k]
                coef = b_data[k]
                for kk in range(a_indptr[col], a_indptr[col + 1]):
                    row = a_indices[kk]
                    if not seen[row]:
                        seen[row] = 1
                        touched[nt] = row
                        nt += 1
                    acc[row] = (acc[row] + coef * a_data[kk]) % p
            for i in range(nt):
                row = touched[i]
                if acc[row] % p != 0:
                    return False
                acc[row] = 0
                seen[row] = 0
        return True
    finally:
        free(acc)
        free(touched)
        free(seen)
