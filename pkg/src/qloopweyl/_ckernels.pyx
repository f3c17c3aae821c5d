# cython: boundscheck=False, wraparound=False, cdivision=True
"""Integer polynomial kernels, compiled.

Same contract as ``_pykernels``. Each kernel first tries a 64-bit path with
overflow detection and falls back to Python integers on overflow.
"""
from libc.stdlib cimport malloc, calloc, free

cdef extern from *:
    bint add_ovf "__builtin_saddll_overflow"(long long, long long, long long *)
    bint mul_ovf "__builtin_smulll_overflow"(long long, long long, long long *)
    bint sub_ovf "__builtin_ssubll_overflow"(long long, long long, long long *)

cdef long long LIM = 4611686018427387903  # 2**62 - 1


cdef bint _fits(list a):
    cdef object c
    for c in a:
        if c > LIM or c < -LIM:
            return False
    return True


cdef list _mul_obj(list a, list b):
    cdef Py_ssize_t i, j, na = len(a), nb = len(b)
    cdef list out = [0] * (na + nb - 1)
    cdef object bj
    for j in range(nb):
        bj = b[j]
        if bj:
            for i in range(na):
                out[i + j] += a[i] * bj
    while out and not out[len(out) - 1]:
        out.pop()
    return out


def mul(list a, list b):
    cdef Py_ssize_t na = len(a), nb = len(b), i, j, n
    cdef long long *x
    cdef long long *y
    cdef long long *z
    cdef long long t
    cdef bint bad = False
    if na == 0 or nb == 0:
        return []
    if not (_fits(a) and _fits(b)):
        return _mul_obj(a, b)
    n = na + nb - 1
    x = <long long *> malloc(na * sizeof(long long))
    y = <long long *> malloc(nb * sizeof(long long))
    z = <long long *> calloc(n, sizeof(long long))
    try:
        for i in range(na):
            x[i] = a[i]
        for j in range(nb):
            y[j] = b[j]
        for j in range(nb):
            if y[j] == 0:
                continue
            for i in range(na):
                if mul_ovf(x[i], y[j], &t) or add_ovf(z[i + j], t, &z[i + j]):
                    bad = True
                    break
            if bad:
                break
        if bad:
            return _mul_obj(a, b)
        while n > 0 and z[n - 1] == 0:
            n -= 1
        return [z[i] for i in range(n)]
    finally:
        free(x)
        free(y)
        free(z)


cdef object _divexact_obj(list a, list b):
    cdef Py_ssize_t n = len(a), m = len(b), k, i
    cdef list rem = list(a)
    cdef list quo = [0] * (n - m + 1)
    cdef object lc = b[m - 1], c, qk, r
    for k in range(n - m, -1, -1):
        c = rem[k + m - 1]
        if c:
            qk, r = divmod(c, lc)
            if r:
                return None
            quo[k] = qk
            for i in range(m):
                rem[k + i] -= qk * b[i]
    for i in range(m - 1):
        if rem[i]:
            return None
    return quo


cdef list _trim(list a):
    cdef Py_ssize_t n = len(a)
    while n and not a[n - 1]:
        n -= 1
    return a[:n] if n < len(a) else a


def divexact(list a, list b):
    """Quotient a / b over Z, or None when b does not divide a."""
    a, b = _trim(a), _trim(b)
    cdef Py_ssize_t n = len(a), m = len(b), k, i
    cdef long long *r
    cdef long long *y
    cdef long long lc, c, qk, t
    cdef list quo
    if m == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if n == 0:
        return []
    if n < m:
        return None
    if not (_fits(a) and _fits(b)):
        return _divexact_obj(a, b)
    r = <long long *> malloc(n * sizeof(long long))
    y = <long long *> malloc(m * sizeof(long long))
    quo = [0] * (n - m + 1)
    try:
        for i in range(n):
            r[i] = a[i]
        for i in range(m):
            y[i] = b[i]
        lc = y[m - 1]
        for k in range(n - m, -1, -1):
            c = r[k + m - 1]
            if c:
                if c % lc:
                    return None
                qk = c // lc
                quo[k] = qk
                for i in range(m):
                    if mul_ovf(qk, y[i], &t) or sub_ovf(r[k + i], t, &r[k + i]):
                        return _divexact_obj(a, b)
        for i in range(m - 1):
            if r[i]:
                return None
        return quo
    finally:
        free(r)
        free(y)


def evalint(list a, object x):
    cdef object acc = 0
    cdef Py_ssize_t i
    for i in range(len(a) - 1, -1, -1):
        acc = acc * x + a[i]
    return acc
