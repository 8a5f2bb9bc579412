# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Howell-form kernel; see ``_pykernels.py`` for the reference."""

from libc.stdlib cimport malloc, free

cdef enum:
    MAXN = 62

# largest modulus for which q*q fits in a signed 64-bit product
MAX_MODULUS = 3037000499


cdef inline int _val(long long x, long long p, int n) nogil:
    cdef int v = 0
    if x == 0:
        return n
    while x % p == 0:
        x //= p
        v += 1
    return v


cdef inline long long _tp_add(long long a, long long b, long long p, int n) nogil:
    cdef long long r = 0, pw = 1
    cdef int i
    for i in range(n):
        r += ((a % p + b % p) % p) * pw
        a //= p
        b //= p
        pw *= p
    return r


cdef inline long long _tp_neg(long long a, long long p, int n) nogil:
    cdef long long r = 0, pw = 1, d
    cdef int i
    for i in range(n):
        d = a % p
        if d:
            r += (p - d) * pw
        a //= p
        pw *= p
    return r


cdef inline long long _tp_mul(long long a, long long b, long long p, int n) nogil:
    cdef long long da[MAXN]
    cdef long long db[MAXN]
    cdef long long acc[MAXN]
    cdef int i, j
    cdef long long r = 0
    for i in range(n):
        da[i] = a % p
        db[i] = b % p
        acc[i] = 0
        a //= p
        b //= p
    for i in range(n):
        if da[i]:
            for j in range(n - i):
                acc[i + j] = (acc[i + j] + da[i] * db[j]) % p
    for i in range(n - 1, -1, -1):
        r = r * p + acc[i]
    return r


cdef inline long long _add(long long a, long long b, long long p, int n, long long q, int kind) nogil:
    if kind == 0:
        return (a + b) % q
    return _tp_add(a, b, p, n)


cdef inline long long _sub(long long a, long long b, long long p, int n, long long q, int kind) nogil:
    if kind == 0:
        return ((a - b) % q + q) % q
    return _tp_add(a, _tp_neg(b, p, n), p, n)


cdef inline long long _mul(long long a, long long b, long long p, int n, long long q, int kind) nogil:
    if kind == 0:
        return (a * b) % q
    return _tp_mul(a, b, p, n)


cdef long long _inverse(long long a, long long p, int n, long long q, int kind) nogil:
    cdef long long c0, c0inv, t, acc, term, x, y
    cdef int i
    # inverse of the constant term mod p by search (p is small)
    c0 = a % p
    c0inv = 1
    while (c0 * c0inv) % p != 1:
        c0inv += 1
    if kind == 0:
        # Hensel lifting by Newton iteration
        x = c0inv
        for i in range(n + 1):
            y = (a * x) % q
            x = (x * (((2 - y) % q + q) % q)) % q
        return x
    t = _tp_neg(_sub(_mul(c0inv, a, p, n, q, kind), 1, p, n, q, kind), p, n)
    acc = 1
    term = 1
    for i in range(n - 1):
        term = _tp_mul(term, t, p, n)
        acc = _tp_add(acc, term, p, n)
    return _tp_mul(c0inv, acc, p, n)


def howell_form(rows, int ncols, long long p, int n, int kind):
    """Same contract as ``_pykernels.howell_form``."""
    cdef long long q = 1
    cdef int i, k, c, best, bv, v, nrows, cap, npool, nout, j
    cdef long long x, f, pv, u, ui, s
    cdef long long *m
    cdef int *alive
    cdef int *order
    cdef long long *pivval
    cdef int *pivcol
    for i in range(n):
        q *= p
    if q > MAX_MODULUS or n > MAXN:
        raise OverflowError("modulus too large for the compiled kernel")
    nrows = len(rows)
    cap = nrows + ncols + 1
    m = <long long *> malloc(cap * (ncols + 1) * sizeof(long long))
    alive = <int *> malloc(cap * sizeof(int))
    order = <int *> malloc((ncols + 1) * sizeof(int))
    pivval = <long long *> malloc((ncols + 1) * sizeof(long long))
    pivcol = <int *> malloc((ncols + 1) * sizeof(int))
    try:
        npool = 0
        for r in rows:
            for k in range(ncols):
                m[npool * ncols + k] = r[k]
            alive[npool] = 1
            npool += 1
        nout = 0
        for c in range(ncols):
            best = -1
            bv = n
            for i in range(npool):
                if alive[i]:
                    x = m[i * ncols + c]
                    if x:
                        v = _val(x, p, n)
                        if v < bv:
                            best = i
                            bv = v
                            if v == 0:
                                break
            if best < 0:
                continue
            alive[best] = 0
            pv = 1
            for i in range(bv):
                pv *= p
            u = m[best * ncols + c] // pv
            if u != 1:
                ui = _inverse(u, p, n, q, kind)
                for k in range(c, ncols):
                    x = m[best * ncols + k]
                    if x:
                        m[best * ncols + k] = _mul(ui, x, p, n, q, kind)
            for i in range(npool):
                if alive[i]:
                    x = m[i * ncols + c]
                    if x:
                        f = x // pv
                        for k in range(c, ncols):
                            x = m[best * ncols + k]
                            if x:
                                m[i * ncols + k] = _sub(m[i * ncols + k], _mul(f, x, p, n, q, kind), p, n, q, kind)
            if bv:
                s = q // pv
                j = 0
                for k in range(ncols):
                    x = (m[best * ncols + k] * s) % q
                    m[npool * ncols + k] = x
                    if x:
                        j = 1
                if j:
                    alive[npool] = 1
                    npool += 1
            # drop rows that became zero
            for i in range(npool):
                if alive[i]:
                    j = 0
                    for k in range(c, ncols):
                        if m[i * ncols + k]:
                            j = 1
                            break
                    if not j:
                        alive[i] = 0
            order[nout] = best
            pivcol[nout] = c
            pivval[nout] = pv
            nout += 1
        for j in range(nout):
            for i in range(j + 1, nout):
                c = pivcol[i]
                pv = pivval[i]
                x = m[order[j] * ncols + c]
                if x >= pv:
                    f = x // pv
                    for k in range(c, ncols):
                        x = m[order[i] * ncols + k]
                        if x:
                            m[order[j] * ncols + k] = _sub(m[order[j] * ncols + k], _mul(f, x, p, n, q, kind), p, n, q, kind)
        out = []
        for j in range(nout):
            out.append(tuple([m[order[j] * ncols + k] for k in range(ncols)]))
        return out
    finally:
        free(m)
        free(alive)
        free(order)
        free(pivval)
        free(pivcol)
