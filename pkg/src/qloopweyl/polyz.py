"""Dense univariate polynomials over Z: content, gcd.

Polynomials are lists of ints, lowest degree first, no trailing zeros.
The gcd is the heuristic one (evaluate at a large integer, take the integer
gcd, read the polynomial back from balanced base-x digits, confirm by exact
division), with a primitive PRS as the fallback.
"""
from math import gcd, isqrt

from .kernels import divexact, evalint, mul


def trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    while out and not out[-1]:
        out.pop()
    return out


def sub(a, b):
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    while out and not out[-1]:
        out.pop()
    return out


def scale(a, c):
    if not c:
        return []
    return [x * c for x in a]


def content(a):
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def primitive(a):
    """(content, primitive part) with positive leading coefficient."""
    if not a:
        return 0, []
    c = content(a)
    if a[-1] < 0:
        c = -c
    if c == 1:
        return 1, list(a)
    return c, [x // c for x in a]


def _maxnorm(a):
    return max(abs(c) for c in a)


def _digits(h, x):
    out = []
    half = x // 2
    while h:
        g = h % x
        if g > half:
            g -= x
        out.append(g)
        h = (h - g) // x
    return out


def _heugcd(f, g):
    # f, g primitive, positive leading coefficients, deg >= 1
    nf, ng = _maxnorm(f), _maxnorm(g)
    b = 2 * min(nf, ng) + 29
    x = max(min(b, 99 * isqrt(b)), 2 * min(nf // abs(f[-1]), ng // abs(g[-1])) + 2)
    for _ in range(6):
        ff, gg = evalint(f, x), evalint(g, x)
        if ff and gg:
            h = gcd(ff, gg)
            cand = primitive(_digits(h, x))[1]
            if cand and divexact(f, cand) is not None and divexact(g, cand) is not None:
                return cand
            for big, other in ((ff, f), (gg, g)):
                cof = primitive(_digits(big // h, x))[1]
                if cof:
                    c = divexact(other, cof)
                    if c is not None:
                        c = primitive(c)[1]
                        if divexact(f, c) is not None and divexact(g, c) is not None:
                            return c
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    return None


def _prem(a, b):
    # pseudo-remainder of a by b
    r = list(a)
    m = len(b)
    lc = b[-1]
    while len(r) >= m and r:
        c = r[-1]
        k = len(r) - m
        r = [x * lc for x in r]
        for i in range(m):
            r[k + i] -= c * b[i]
        r = trim(r)
    return r


def _prsgcd(f, g):
    a, b = f, g
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, primitive(r)[1]
    return primitive(a)[1]


def pgcd(f, g):
    """Primitive gcd of f and g with positive leading coefficient.

    The integer content is not included: pgcd(2, 4q) == [1].
    """
    if not f:
        return primitive(g)[1] if g else []
    if not g:
        return primitive(f)[1]
    f = primitive(f)[1]
    g = primitive(g)[1]
    if len(f) == 1 or len(g) == 1:
        return [1]
    h = _heugcd(f, g)
    if h is None:
        h = _prsgcd(f, g)
    return h


__all__ = ["trim", "add", "sub", "scale", "content", "primitive", "pgcd", "mul", "divexact", "evalint"]
