# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled elimination kernel over 64-bit integers.

Same pivot rule and work accounting as ``_kernel_py.diagonal_entries``, but
the matrix is a dense C array. Every multiply and subtract is checked, and an
``OverflowError`` is raised the moment an entry leaves int64 range so the
caller can redo the block with Python integers.
"""

from libc.stdlib cimport malloc, calloc, free

from toruskt._kernel_py import BudgetExhausted

ctypedef long long i64

cdef extern from *:
    """
    static inline int tk_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int tk_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int tk_mul_ovf(i64 a, i64 b, i64 *r) nogil
    int tk_sub_ovf(i64 a, i64 b, i64 *r) nogil

# the most negative value is refused so negation and |x| stay in range
cdef i64 I64_FLOOR = -9223372036854775807


cdef inline i64 iabs(i64 x) nogil:
    return -x if x < 0 else x


cdef inline i64 near_q(i64 a, i64 p) nogil:
    # C division truncates toward zero; push to the nearest integer
    cdef i64 q = a / p
    cdef i64 r = a - q * p
    if r != 0 and 2 * iabs(r) > iabs(p):
        if (a < 0) == (p < 0):
            q += 1
        else:
            q -= 1
    return q


cdef class _Dense:
    cdef i64 *a
    cdef int n, m
    cdef int *rnz
    cdef int *cnz
    cdef char *rdead
    cdef char *cdead
    cdef int *buf
    cdef long long work

    def __cinit__(self, int n, int m):
        self.n = n
        self.m = m
        self.a = <i64 *> calloc(max(n * m, 1), sizeof(i64))
        self.rnz = <int *> calloc(max(n, 1), sizeof(int))
        self.cnz = <int *> calloc(max(m, 1), sizeof(int))
        self.rdead = <char *> calloc(max(n, 1), 1)
        self.cdead = <char *> calloc(max(m, 1), 1)
        self.buf = <int *> malloc(max(n, m, 1) * sizeof(int))
        self.work = 0
        if not (self.a and self.rnz and self.cnz and self.rdead and self.cdead and self.buf):
            raise MemoryError()

    def __dealloc__(self):
        free(self.a)
        free(self.rnz)
        free(self.cnz)
        free(self.rdead)
        free(self.cdead)
        free(self.buf)

    cdef inline void setv(self, int i, int j, i64 v):
        cdef i64 old = self.a[i * self.m + j]
        if old == 0 and v != 0:
            self.rnz[i] += 1
            self.cnz[j] += 1
        elif old != 0 and v == 0:
            self.rnz[i] -= 1
            self.cnz[j] -= 1
        self.a[i * self.m + j] = v

    cdef int row_sub(self, int k, int i, i64 q) except -1:
        # row_k -= q * row_i
        cdef int c, t, cnt = 0
        cdef i64 prod, out
        cdef i64 *ri = self.a + i * self.m
        cdef i64 *rk = self.a + k * self.m
        for c in range(self.m):
            if ri[c] != 0:
                self.buf[cnt] = c
                cnt += 1
        for t in range(cnt):
            c = self.buf[t]
            if tk_mul_ovf(q, ri[c], &prod) or tk_sub_ovf(rk[c], prod, &out):
                raise OverflowError("entry exceeds 64 bits")
            if out < I64_FLOOR:
                raise OverflowError("entry exceeds 64 bits")
            self.setv(k, c, out)
        self.work += cnt
        return 0

    cdef int col_sub(self, int k, int j, i64 q) except -1:
        # col_k -= q * col_j
        cdef int r, t, cnt = 0
        cdef int m = self.m
        cdef i64 prod, out
        for r in range(self.n):
            if self.a[r * m + j] != 0:
                self.buf[cnt] = r
                cnt += 1
        for t in range(cnt):
            r = self.buf[t]
            if tk_mul_ovf(q, self.a[r * m + j], &prod) or tk_sub_ovf(self.a[r * m + k], prod, &out):
                raise OverflowError("entry exceeds 64 bits")
            if out < I64_FLOOR:
                raise OverflowError("entry exceeds 64 bits")
            self.setv(r, k, out)
        self.work += cnt
        return 0


def diagonal_entries(rows, budget=None):
    """Compiled twin of ``_kernel_py.diagonal_entries``."""
    cdef int n = len(rows)
    cdef int m = len(rows[0]) if n else 0
    cdef _Dense d = _Dense(n, m)
    cdef int i, j, k, bi, bj
    cdef i64 v, p, av, bv
    cdef long long bmark, mk
    cdef long long limit = -1 if budget is None else budget
    cdef bint done
    for i in range(n):
        row = rows[i]
        for j in range(m):
            v = row[j]
            if v < I64_FLOOR:
                raise OverflowError("entry exceeds 64 bits")
            if v != 0:
                d.setv(i, j, v)

    pivots = []
    while True:
        # pivot: least |v|, then Markowitz cost, then row-major position
        bi = -1
        bv = 0
        bmark = 0
        done = False
        for i in range(n):
            if d.rdead[i] or d.rnz[i] == 0:
                continue
            for j in range(m):
                v = d.a[i * m + j]
                if v == 0:
                    continue
                av = iabs(v)
                mk = <long long> (d.rnz[i] - 1) * (d.cnz[j] - 1)
                if bi < 0 or av < bv or (av == bv and mk < bmark):
                    bi = i
                    bj = j
                    bv = av
                    bmark = mk
                    if av == 1 and mk == 0:
                        done = True
                        break
            if done:
                break
        if bi < 0:
            break
        i = bi
        j = bj

        while True:
            p = d.a[i * m + j]
            for k in range(n):
                if k != i and d.a[k * m + j] != 0:
                    d.row_sub(k, i, near_q(d.a[k * m + j], p))
            for k in range(m):
                if k != j and d.a[i * m + k] != 0:
                    d.col_sub(k, j, near_q(d.a[i * m + k], p))
            if 0 <= limit < d.work:
                raise BudgetExhausted(d.work)
            if d.cnz[j] == 1 and d.rnz[i] == 1:
                break
            # continue from the smallest remainder in the pivot column or row
            bi = -1
            for k in range(n):
                if k != i and d.a[k * m + j] != 0:
                    av = iabs(d.a[k * m + j])
                    if bi < 0 or av < bv:
                        bi = k
                        bj = j
                        bv = av
            for k in range(m):
                if k != j and d.a[i * m + k] != 0:
                    av = iabs(d.a[i * m + k])
                    if bi < 0 or av < bv:
                        bi = i
                        bj = k
                        bv = av
            i = bi
            j = bj

        pivots.append(iabs(d.a[i * m + j]))
        d.setv(i, j, 0)
        d.rdead[i] = 1
        d.cdead[j] = 1
    return pivots, d.work
