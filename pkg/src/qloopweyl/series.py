"""Rational functions in z over an exact field, truncated Laurent series at
z = 0 or z = infinity, Pade reconstruction and anchored limits.

Polynomials in z are tuples of field elements, lowest degree first, with no
trailing zeros. A ``RatFunZ`` is kept reduced with a monic denominator, so
equality is structural.

A ``LaurentSeries`` at anchor "inf" stores coefficients of z^offset,
z^(offset-1), ...; at anchor "0" of z^offset, z^(offset+1), ... Coefficients
may be field elements or matrices.
"""
from .matrix import Matrix
from .scalar import SYMBOLIC


class ReconstructionError(ValueError):
    pass


class PoleError(ValueError):
    pass


# ---------------------------------------------------------------- z-polys

def ztrim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def zadd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        if c:
            out[i] = out[i] + c
    return ztrim(out)


def zneg(a):
    return tuple(-c for c in a)


def zsub(a, b):
    return zadd(a, zneg(b))


def zmul(a, b, zero):
    if not a or not b:
        return ()
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return ztrim(out)


def zscale(a, c):
    if not c:
        return ()
    return ztrim(x * c if x else x for x in a)


def zdivmod(a, b, field):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv = field.one / b[-1]
    m = len(b)
    if len(a) < m:
        return (), tuple(a)
    quo = [field.zero] * (len(a) - m + 1)
    for k in range(len(a) - m, -1, -1):
        c = a[k + m - 1]
        if c:
            f = c * inv
            quo[k] = f
            for i, y in enumerate(b):
                if y:
                    a[k + i] = a[k + i] - f * y
    return ztrim(quo), ztrim(a[: m - 1])


def zmonic(a, field):
    if not a or a[-1] == field.one:
        return tuple(a)
    inv = field.one / a[-1]
    return tuple(x * inv if x else x for x in a)


def zgcd(a, b, field):
    while b:
        a, b = b, zdivmod(a, b, field)[1]
    return zmonic(a, field)


def zeval(p, x, zero):
    acc = zero
    for c in reversed(p):
        acc = acc * x + c
    return acc


def zval(p):
    i = 0
    while i < len(p) and not p[i]:
        i += 1
    return i


# ---------------------------------------------------------------- RatFunZ

class RatFunZ:
    """Element of K(z) for an exact field K (default Q(q))."""

    __slots__ = ("num", "den", "field")

    def __init__(self, num, den=None, field=SYMBOLIC, _reduced=False):
        self.field = field
        if den is None:
            den = (field.one,)
        if _reduced:
            self.num, self.den = num, den
            return
        num = ztrim(field(c) for c in num)
        den = ztrim(field(c) for c in den)
        if not den:
            raise ZeroDivisionError("RatFunZ with zero denominator")
        if not num:
            self.num, self.den = (), (field.one,)
            return
        if len(den) > 1:
            g = zgcd(num, den, field)
            if len(g) > 1:
                num = zdivmod(num, g, field)[0]
                den = zdivmod(den, g, field)[0]
        lc = den[-1]
        if lc != field.one:
            inv = field.one / lc
            num = tuple(x * inv if x else x for x in num)
            den = tuple(x * inv if x else x for x in den)
        self.num, self.den = tuple(num), tuple(den)

    @classmethod
    def z(cls, field=SYMBOLIC):
        return cls((field.zero, field.one), (field.one,), field, True)

    @classmethod
    def const(cls, c, field=SYMBOLIC):
        c = field(c)
        return cls((c,) if c else (), (field.one,), field, True)

    @classmethod
    def laurent(cls, terms, field=SYMBOLIC):
        """From {exponent: coefficient} with possibly negative exponents."""
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return cls((), None, field)
        lo = min(min(terms), 0)
        hi = max(terms)
        num = [field.zero] * (hi - lo + 1)
        for e, c in terms.items():
            num[e - lo] = c
        den = [field.zero] * (-lo) + [field.one]
        return cls(num, den, field)

    def _coerce(self, other):
        if isinstance(other, RatFunZ):
            return other
        return RatFunZ.const(other, self.field)

    def __bool__(self):
        return bool(self.num)

    def complexity(self):
        return len(self.num) + 2 * len(self.den)

    def is_polynomial(self):
        return len(self.den) == 1

    def __eq__(self, other):
        if not isinstance(other, RatFunZ):
            try:
                other = self._coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return RatFunZ(zneg(self.num), self.den, self.field, True)

    def __add__(self, other):
        other = self._coerce(other)
        if not other.num:
            return self
        if not self.num:
            return other
        f = self.field
        if self.den == other.den:
            return RatFunZ(zadd(self.num, other.num), self.den, f)
        if len(self.den) == 1 and len(other.den) == 1:
            return RatFunZ(zadd(self.num, other.num), self.den, f, True)
        g = zgcd(self.den, other.den, f)
        if len(g) == 1:
            num = zadd(zmul(self.num, other.den, f.zero), zmul(other.num, self.den, f.zero))
            return RatFunZ(num, zmul(self.den, other.den, f.zero), f, True) if num else RatFunZ((), None, f)
        b1 = zdivmod(self.den, g, f)[0]
        d1 = zdivmod(other.den, g, f)[0]
        num = zadd(zmul(self.num, d1, f.zero), zmul(other.num, b1, f.zero))
        return RatFunZ(num, zmul(self.den, d1, f.zero), f)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return NotImplemented
        other = self._coerce(other)
        f = self.field
        if not self.num or not other.num:
            return RatFunZ((), None, f, True)
        a, b, c, d = self.num, self.den, other.num, other.den
        if len(d) > 1:
            g = zgcd(a, d, f)
            if len(g) > 1:
                a, d = zdivmod(a, g, f)[0], zdivmod(d, g, f)[0]
        if len(b) > 1:
            g = zgcd(c, b, f)
            if len(g) > 1:
                c, b = zdivmod(c, g, f)[0], zdivmod(b, g, f)[0]
        return RatFunZ(zmul(a, c, f.zero), zmul(b, d, f.zero), f, True)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("RatFunZ division by zero")
        f = self.field
        inv = f.one / self.num[-1]
        return RatFunZ(
            tuple(x * inv if x else x for x in self.den),
            tuple(x * inv if x else x for x in self.num),
            f,
            True,
        )

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        out = RatFunZ.const(self.field.one, self.field)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    # substitutions
    def scale_var(self, c):
        """f(c z)."""
        f = self.field
        if not self.num:
            return self
        pw = [f.one]
        for _ in range(max(len(self.num), len(self.den))):
            pw.append(pw[-1] * c)
        num = tuple(x * pw[i] if x else x for i, x in enumerate(self.num))
        den = tuple(x * pw[i] if x else x for i, x in enumerate(self.den))
        inv = f.one / den[-1]
        return RatFunZ(
            tuple(x * inv if x else x for x in num), tuple(x * inv if x else x for x in den), f, True
        )

    def invert_var(self):
        """f(1/z)."""
        f = self.field
        if not self.num:
            return self
        dn, dd = len(self.num) - 1, len(self.den) - 1
        num = tuple(reversed(self.num))
        den = tuple(reversed(self.den))
        if dd > dn:
            num = (f.zero,) * (dd - dn) + num
        elif dn > dd:
            den = (f.zero,) * (dn - dd) + den
        return RatFunZ(num, den, f)

    def value(self, x):
        f = self.field
        d = zeval(self.den, x, f.zero)
        if not d:
            raise PoleError(f"pole at z = {x}")
        return zeval(self.num, x, f.zero) / d

    def map_coeffs(self, fn, field):
        return RatFunZ(tuple(fn(c) for c in self.num), tuple(fn(c) for c in self.den), field)

    def expand(self, anchor, order):
        return expand(self, anchor, order)

    def limit(self, anchor, k=0):
        return limit_with_prefactor(self, anchor, k)

    def to_json(self):
        fs = self.field.to_str
        return {
            "num": [[e, fs(c)] for e in range(len(self.num) - 1, -1, -1) if (c := self.num[e])],
            "den": [[e, fs(c)] for e in range(len(self.den) - 1, -1, -1) if (c := self.den[e])],
        }

    @classmethod
    def from_json(cls, obj, field=SYMBOLIC):
        def poly(terms):
            if not terms:
                return ()
            hi = max(e for e, _ in terms)
            if min(e for e, _ in terms) < 0:
                raise ValueError("negative z-exponent in RatFunZ JSON")
            out = [field.zero] * (hi + 1)
            for e, c in terms:
                out[e] = out[e] + field.parse(c)
            return tuple(out)

        return cls(poly(obj["num"]), poly(obj["den"]) or None, field)

    def pretty(self):
        pr = self.field.pretty

        def poly(p):
            parts = []
            for e in range(len(p) - 1, -1, -1):
                c = p[e]
                if not c:
                    continue
                s = pr(c)
                if e == 0:
                    parts.append(s if "+" not in s[1:] and "-" not in s[1:] else f"({s})")
                    continue
                zz = "z" if e == 1 else f"z^{e}"
                if s == "1":
                    parts.append(zz)
                elif s == "-1":
                    parts.append(f"-{zz}")
                else:
                    parts.append(f"({s})*{zz}")
            return " + ".join(parts) if parts else "0"

        if self.den == (self.field.one,):
            return poly(self.num)
        return f"[{poly(self.num)}] / [{poly(self.den)}]"

    def __repr__(self):
        return f"RatFunZ({self.pretty()})"


class RatFunField:
    """K(z) as a field object, so that Matrix can hold rational functions."""

    def __init__(self, base=SYMBOLIC):
        self.base = base
        self.zero = RatFunZ((), None, base, True)
        self.one = RatFunZ((base.one,), None, base, True)
        self.z = RatFunZ.z(base)

    def __call__(self, x):
        if isinstance(x, RatFunZ):
            return x
        return RatFunZ.const(x, self.base)

    def to_str(self, x):
        return x.pretty()

    pretty = to_str

    def __eq__(self, other):
        return isinstance(other, RatFunField) and other.base == self.base

    def __hash__(self):
        return hash(("ratfun", self.base))


# ---------------------------------------------------------------- series

class LaurentSeries:
    __slots__ = ("anchor", "offset", "coeffs")

    def __init__(self, anchor, offset, coeffs):
        if anchor not in ("inf", "0"):
            raise ValueError(f"anchor must be 'inf' or '0', got {anchor!r}")
        self.anchor = anchor
        self.offset = offset
        self.coeffs = list(coeffs)

    @property
    def order(self):
        return len(self.coeffs)

    def exponent(self, i):
        return self.offset - i if self.anchor == "inf" else self.offset + i

    def coeff(self, e, zero):
        i = self.offset - e if self.anchor == "inf" else e - self.offset
        if i < 0:
            return zero
        if i >= len(self.coeffs):
            raise IndexError(f"exponent {e} is beyond the truncation order")
        return self.coeffs[i]

    def map(self, fn):
        return LaurentSeries(self.anchor, self.offset, [fn(c) for c in self.coeffs])

    def entry(self, i, j):
        return self.map(lambda m: m.rows[i][j])

    def __eq__(self, other):
        return (
            isinstance(other, LaurentSeries)
            and (self.anchor, self.offset, self.coeffs) == (other.anchor, other.offset, other.coeffs)
        )

    def to_json(self, fmt):
        return {"anchor": self.anchor, "offset": self.offset, "coeffs": [fmt(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj, parse):
        return cls(obj["anchor"], int(obj["offset"]), [parse(c) for c in obj["coeffs"]])

    def __repr__(self):
        return f"LaurentSeries({self.anchor}, offset={self.offset}, order={self.order})"


def _pdiv_series(n, d, order, field):
    # power series n/d with d[0] != 0, first `order` coefficients
    inv = field.one / d[0]
    out = []
    for k in range(order):
        acc = n[k] if k < len(n) else field.zero
        for j in range(1, min(k, len(d) - 1) + 1):
            if d[j] and out[k - j]:
                acc = acc - d[j] * out[k - j]
        out.append(acc * inv if acc else field.zero)
    return out


def expand(f, anchor, order):
    """First `order` coefficients of f at z = infinity (in z^-1) or z = 0."""
    field = f.field
    if not f.num:
        return LaurentSeries(anchor, 0, [field.zero] * order)
    if anchor == "inf":
        n, d = f.num[::-1], f.den[::-1]
        return LaurentSeries("inf", len(f.num) - len(f.den), _pdiv_series(n, d, order, field))
    if anchor == "0":
        vn, vd = zval(f.num), zval(f.den)
        return LaurentSeries("0", vn - vd, _pdiv_series(f.num[vn:], f.den[vd:], order, field))
    raise ValueError(f"anchor must be 'inf' or '0', got {anchor!r}")


def limit_with_prefactor(f, anchor, k):
    """Value of z^k f(z) at the anchor; PoleError if it diverges."""
    field = f.field
    if not f.num:
        return field.zero
    if anchor == "0":
        vn, vd = zval(f.num), zval(f.den)
        o = k + vn - vd
        if o > 0:
            return field.zero
        if o < 0:
            raise PoleError(f"pole remains: z^{k} f has order {o} at z = 0")
        return f.num[vn] / f.den[vd]
    if anchor == "inf":
        o = k + len(f.num) - len(f.den)
        if o < 0:
            return field.zero
        if o > 0:
            raise PoleError(f"pole remains: z^{k} f grows like z^{o} at z = infinity")
        return f.num[-1] / f.den[-1]
    raise ValueError(f"anchor must be 'inf' or '0', got {anchor!r}")


def _from_w(p, qd, offset, anchor, field):
    # rational function of w = z^-1 (inf) or w = z (0), times z^offset
    if anchor == "inf":
        dd = max(len(p), len(qd)) - 1
        num = tuple(p[dd - i] if dd - i < len(p) else field.zero for i in range(dd + 1))
        den = tuple(qd[dd - i] if dd - i < len(qd) else field.zero for i in range(dd + 1))
    else:
        num, den = tuple(p), tuple(qd)
    if offset > 0:
        num = (field.zero,) * offset + num
    elif offset < 0:
        den = (field.zero,) * (-offset) + den
    return RatFunZ(num, den, field)


def _matches(f, s, field):
    if not f.num:
        return not any(s.coeffs)
    try:
        e = expand(f, s.anchor, 1)
    except ZeroDivisionError:
        return False
    lead = e.offset
    if (s.anchor == "inf" and lead > s.offset) or (s.anchor == "0" and lead < s.offset):
        return False
    shift = abs(lead - s.offset)
    if shift >= s.order:
        return not any(s.coeffs)
    got = expand(f, s.anchor, s.order - shift).coeffs
    want = s.coeffs
    return all(not x for x in want[:shift]) and got == want[shift:]


def _pade_fit(c, d, field):
    # Q_0..Q_d with sum_j Q_j c_{k-j} = 0 for k = d+1..2d
    rows = []
    for k in range(d + 1, 2 * d + 1):
        rows.append([c[k - j] if 0 <= k - j < len(c) else field.zero for j in range(d + 1)])
    ker = Matrix(rows, field).nullspace()
    if not ker:
        return None
    qd = ztrim(ker[0])
    p = []
    for k in range(d + 1):
        acc = field.zero
        for j in range(min(k, len(qd) - 1) + 1):
            if qd[j] and c[k - j]:
                acc = acc + qd[j] * c[k - j]
        p.append(acc)
    return ztrim(p), qd


def pade_reconstruct(s, guard=8, field=SYMBOLIC):
    """Minimal-degree rational function whose expansion reproduces all of s.

    Tries denominator degrees 1, 2, 4, ... while 2d + 1 + guard coefficients
    are available, then the largest affordable d. Every candidate is
    re-expanded and compared with every supplied coefficient.
    """
    c = s.coeffs
    n = len(c)
    if not any(c):
        return RatFunZ((), None, field)
    last = max(i for i, x in enumerate(c) if x)
    if n - 1 - last >= guard:
        return _from_w(ztrim(c[: last + 1]), (field.one,), s.offset, s.anchor, field)
    dmax = (n - 1 - guard) // 2
    tried = []
    d = 1
    while d <= dmax:
        tried.append(d)
        d *= 2
    if dmax >= 1 and dmax not in tried:
        tried.append(dmax)
    for d in tried:
        fit = _pade_fit(c, d, field)
        if fit is None:
            continue
        p, qd = fit
        if not qd or not qd[0]:
            continue
        try:
            f = _from_w(p, qd, s.offset, s.anchor, field)
        except ZeroDivisionError:
            continue
        if _matches(f, s, field):
            return f
    raise ReconstructionError(
        f"no rational function within degree budget {max(dmax, 0)} "
        f"({n} coefficients, guard {guard})"
    )


# ---------------------------------------------------------------- series algebra

def smul(a, b, order, zero):
    out = []
    for k in range(order):
        acc = zero
        for i in range(min(k, len(a) - 1) + 1):
            j = k - i
            if j < len(b) and a[i] and b[j]:
                acc = acc + a[i] * b[j]
        out.append(acc)
    return out


def sinv(a, order, one, inv0=None):
    """Inverse of a power series with invertible constant term."""
    if inv0 is None:
        inv0 = a[0].inverse() if isinstance(a[0], Matrix) else one / a[0]
    out = [inv0]
    for n in range(1, order):
        acc = None
        for k in range(1, min(n, len(a) - 1) + 1):
            if a[k]:
                t = a[k] * out[n - k]
                acc = t if acc is None else acc + t
        out.append(-(inv0 * acc) if acc is not None else inv0 * 0)
    return out


def sexp(g, order, one, field):
    """exp of a power series with zero constant term and commuting coefficients."""
    out = [one]
    for n in range(1, order):
        acc = None
        for k in range(1, min(n, len(g) - 1) + 1):
            if g[k]:
                t = g[k] * out[n - k] * k
                acc = t if acc is None else acc + t
        out.append(acc * (field.one / n) if acc is not None else one * 0)
    return out


def slog(f, order, field):
    """log of a power series with constant term one and commuting coefficients."""
    zero = f[0] * 0
    g = [zero]
    for n in range(1, order):
        acc = f[n] * n if n < len(f) else zero
        for k in range(1, n):
            if g[k] and n - k < len(f) and f[n - k]:
                acc = acc - g[k] * f[n - k] * k
        g.append(acc * (field.one / n))
    return g


# ---------------------------------------------------------------- matrices

def matrix_expand(M, anchor, order, offset=None):
    """Expand a matrix of RatFunZ entrywise to a series with matrix coefficients.

    All entries are aligned to a common leading exponent (the given offset, or
    the largest pole order present)."""
    base = M.field.base
    ents = [[e.expand(anchor, 1).offset if e else None for e in r] for r in M.rows]
    offs = [o for r in ents for o in r if o is not None]
    if offset is None:
        if not offs:
            offset = 0
        else:
            offset = max(offs) if anchor == "inf" else min(offs)
    coeffs = [Matrix.zeros(M.n, M.m, base) for _ in range(order)]
    for i, r in enumerate(M.rows):
        for j, e in enumerate(r):
            if not e:
                continue
            s = e.expand(anchor, order)
            shift = abs(s.offset - offset)
            if (anchor == "inf" and s.offset > offset) or (anchor == "0" and s.offset < offset):
                raise ValueError("entry has a higher pole than the requested offset")
            for k in range(order - shift):
                coeffs[k + shift].rows[i][j] = s.coeffs[k]
    return LaurentSeries(anchor, offset, coeffs)


def matrix_pade(s, guard=8):
    """Entrywise reconstruction of a matrix-valued series."""
    c0 = s.coeffs[0]
    base = c0.field
    rf = RatFunField(base)
    rows = []
    for i in range(c0.n):
        row = []
        for j in range(c0.m):
            row.append(pade_reconstruct(s.entry(i, j), guard, base))
        rows.append(row)
    return Matrix(rows, rf)


def matrix_limit(M, anchor, prefactors=None):
    """Entrywise limit at the anchor of diag(z^k_i) M."""
    base = M.field.base
    rows = []
    for i, r in enumerate(M.rows):
        k = prefactors[i] if prefactors else 0
        rows.append([limit_with_prefactor(e, anchor, k) for e in r])
    return Matrix(rows, base)


def const_matrix(M):
    """Lift a constant matrix to a matrix of RatFunZ."""
    rf = RatFunField(M.field)
    return M.map(lambda x: RatFunZ.const(x, M.field), rf)


def matrix_scale_var(M, c):
    return M.map(lambda e: e.scale_var(c))


def matrix_invert_var(M):
    return M.map(lambda e: e.invert_var())
