"""Integer polynomial kernels, pure Python.

Polynomials are lists of ints, lowest degree first, with no trailing zeros.
The compiled module ``_ckernels`` exposes the same functions.
"""


def _trim(a):
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    return a[:n] if n < len(a) else a


def mul(a, b):
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj:
            for i, ai in enumerate(a):
                out[i + j] += ai * bj
    while out and not out[-1]:
        out.pop()
    return out


def divexact(a, b):
    """Quotient a / b over Z, or None when b does not divide a."""
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    n, m = len(a), len(b)
    if n < m:
        return None
    rem = list(a)
    lc = b[-1]
    quo = [0] * (n - m + 1)
    for k in range(n - m, -1, -1):
        c = rem[k + m - 1]
        if c:
            qk, r = divmod(c, lc)
            if r:
                return None
            quo[k] = qk
            for i in range(m):
                rem[k + i] -= qk * b[i]
    for c in rem[:m - 1]:
        if c:
            return None
    return quo


def evalint(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc
