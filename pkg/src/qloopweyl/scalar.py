"""Exact scalars: the field Q(q) and the numeric specialisation q = q0.

``ScalarQ`` is a rational function in q stored as a reduced pair of integer
polynomials (lowest degree first). Canonical form: numerator and denominator
coprime in Q[q], the integer coefficients of both together have gcd 1, and
the leading coefficient of the denominator is positive. Equality is
structural on that form.

All higher layers take a *field* object (``SymbolicField`` or
``RationalField``) so the same code runs with generic q or a fixed rational
value of q.
"""
import re
import warnings
from fractions import Fraction
from math import gcd

from . import polyz
from .kernels import divexact, mul


def _strip_low(a):
    i = 0
    while i < len(a) and not a[i]:
        i += 1
    return i


def _normalize(num, den):
    num = polyz.trim(num)
    den = polyz.trim(den)
    if not den:
        raise ZeroDivisionError("ScalarQ division by zero")
    if not num:
        return (), (1,)
    v = min(_strip_low(num), _strip_low(den))
    if v:
        num = num[v:]
        den = den[v:]
    dlow = _strip_low(den)
    if dlow == len(den) - 1:
        # monomial denominator c*q^k: only integer content can cancel
        c = den[-1]
        g = gcd(polyz.content(num), c)
        if c < 0:
            g = -g
        if g != 1:
            num = [x // g for x in num]
            den = [x // g for x in den]
        return tuple(num), tuple(den)
    if len(num) > 1:
        h = polyz.pgcd(num, den)
        if len(h) > 1:
            num = divexact(num, h)
            den = divexact(den, h)
    g = gcd(polyz.content(num), polyz.content(den))
    if den[-1] < 0:
        g = -g
    if g != 1:
        num = [x // g for x in num]
        den = [x // g for x in den]
    return tuple(num), tuple(den)


def _const(c):
    if isinstance(c, Fraction):
        return (c.numerator,), (c.denominator,)
    return ((c,) if c else ()), (1,)


class ScalarQ:
    """Element of Q(q)."""

    __slots__ = ("num", "den")

    def __init__(self, num=(), den=(1,), _reduced=False):
        if _reduced:
            self.num, self.den = num, den
        else:
            self.num, self.den = _normalize(list(num), list(den))

    # constructors
    @classmethod
    def gen(cls):
        return cls((0, 1), (1,), True)

    @classmethod
    def monomial(cls, c, e):
        """c * q^e for an int or Fraction c."""
        if isinstance(c, Fraction):
            n, d = c.numerator, c.denominator
        else:
            n, d = int(c), 1
        if not n:
            return ZERO
        if e >= 0:
            return cls((0,) * e + (n,), (d,), True)
        return cls((n,), (0,) * (-e) + (d,), True)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, ScalarQ):
            return x
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, (int, Fraction)):
            n, d = _const(x)
            return cls(n, d, True)
        if isinstance(x, str):
            return parse_scalar(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to ScalarQ")

    # predicates
    def __bool__(self):
        return bool(self.num)

    def is_constant(self):
        return len(self.num) <= 1 and len(self.den) == 1

    def is_laurent(self):
        """True when the denominator is a monomial c*q^k."""
        return _strip_low(self.den) == len(self.den) - 1

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return Fraction(self.num[0] if self.num else 0, self.den[0])

    # arithmetic
    def __neg__(self):
        return ScalarQ(tuple(-c for c in self.num), self.den, True)

    def __pos__(self):
        return self

    def __add__(self, other):
        if not isinstance(other, ScalarQ):
            if isinstance(other, (int, Fraction)):
                other = ScalarQ.coerce(other)
            else:
                return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return ScalarQ(polyz.add(self.num, other.num), self.den)
        a = mul(list(self.num), list(other.den))
        b = mul(list(other.num), list(self.den))
        return ScalarQ(polyz.add(a, b), mul(list(self.den), list(other.den)))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, ScalarQ):
            if isinstance(other, (int, Fraction)):
                other = ScalarQ.coerce(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ScalarQ):
            if isinstance(other, int) and not isinstance(other, bool):
                if not other or not self.num:
                    return ZERO
                return ScalarQ([c * other for c in self.num], self.den)
            if isinstance(other, Fraction):
                other = ScalarQ.coerce(other)
            else:
                return NotImplemented
        if not self.num or not other.num:
            return ZERO
        return ScalarQ(mul(list(self.num), list(other.num)), mul(list(self.den), list(other.den)))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("ScalarQ division by zero")
        num, den = self.den, self.num
        if den[-1] < 0:
            num = tuple(-c for c in num)
            den = tuple(-c for c in den)
        return ScalarQ(num, den, True)

    def __truediv__(self, other):
        if not isinstance(other, ScalarQ):
            if isinstance(other, (int, Fraction)):
                other = ScalarQ.coerce(other)
            else:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        if len(self.num) - _strip_low(self.num) == 1 and self.is_laurent():
            # monomial: c q^k / d q^j
            i, j = _strip_low(self.num), _strip_low(self.den)
            c = Fraction(self.num[i], self.den[j]) ** e
            return ScalarQ.monomial(c, (i - j) * e)
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # comparison
    def __eq__(self, other):
        if isinstance(other, ScalarQ):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            n, d = _const(other)
            return self.num == n and self.den == d
        return NotImplemented

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.num, self.den))

    # evaluation
    def subs(self, q0):
        """Value at q = q0 (Fraction); ZeroDivisionError at a pole."""
        q0 = Fraction(q0)
        d = _feval(self.den, q0)
        if not d:
            raise ZeroDivisionError(f"{self} has a pole at q = {q0}")
        return _feval(self.num, q0) / d

    def bar(self):
        """Image under q -> q^-1."""
        n, d = len(self.num), len(self.den)
        m = max(n, d) - 1
        num = (0,) * (m - n + 1) + tuple(reversed(self.num))
        den = (0,) * (m - d + 1) + tuple(reversed(self.den))
        return ScalarQ(num, den)

    # text
    def __str__(self):
        return f"{_poly_str(self.num)}/{_poly_str(self.den)}"

    def __repr__(self):
        return f"ScalarQ('{self}')"

    def pretty(self):
        n = _poly_pretty(self.num)
        if self.den == (1,):
            return n
        d = _poly_pretty(self.den)
        if len([c for c in self.num if c]) > 1:
            n = f"({n})"
        if len([c for c in self.den if c]) > 1:
            d = f"({d})"
        return f"{n}/{d}"


def _feval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _poly_str(p):
    if not p:
        return "0*q^0"
    return "+".join(f"{p[e]}*q^{e}" for e in range(len(p) - 1, -1, -1) if p[e])


def _poly_pretty(p):
    if not p:
        return "0"
    out = []
    for e in range(len(p) - 1, -1, -1):
        c = p[e]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if e == 0:
            body = str(c)
        else:
            mono = "q" if e == 1 else f"q^{e}"
            body = mono if c == 1 else f"{c}*{mono}"
        out.append((sign, body))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        s += f"{sign}{body}"
    return s


ZERO = ScalarQ((), (1,), True)
ONE = ScalarQ((1,), (1,), True)


# ---------------------------------------------------------------- parsing

_TERM = r"-?\d+\*q\^-?\d+"
_CANON = re.compile(rf"^\s*({_TERM}(?:\+{_TERM})*)\s*/\s*({_TERM}(?:\+{_TERM})*)\s*$")
_TOKEN = re.compile(r"\s*(?:(\d+)|(\*\*|[-+*/^()])|([A-Za-z_]\w*))")


class ParseError(ValueError):
    pass


def _canon_poly(s):
    out = {}
    for t in s.split("+"):
        c, e = t.split("*q^")
        out[int(e)] = out.get(int(e), 0) + int(c)
    lo = min(out)
    hi = max(out)
    shift = -lo if lo < 0 else 0
    coeffs = [0] * (hi + shift + 1)
    for e, c in out.items():
        coeffs[e + shift] += c
    return coeffs, shift


def _tokenize(s):
    pos, toks = 0, []
    s = s.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {s!r}")
        num, op, name = m.groups()
        if num is not None:
            toks.append(("num", int(num)))
        elif op is not None:
            toks.append(("op", "^" if op == "**" else op))
        else:
            toks.append(("name", name))
        pos = m.end()
    return toks


class _ExprParser:
    def __init__(self, s, field, names):
        self.toks = _tokenize(s)
        self.i = 0
        self.f = field
        self.names = names
        self.src = s

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def fail(self, msg):
        raise ParseError(f"{msg} in {self.src!r}")

    def parse(self):
        if not self.toks:
            self.fail("empty expression")
        v = self.expr()
        if self.i != len(self.toks):
            self.fail(f"trailing input at token {self.i}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            w = self.unary()
            if op == "*":
                v = v * w
            else:
                if not w:
                    self.fail("division by zero")
                v = v / w
        return v

    def unary(self):
        t = self.peek()
        if t == ("op", "-"):
            self.take()
            return -self.unary()
        if t == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def exponent(self):
        sign = 1
        while self.peek() in (("op", "-"), ("op", "+")):
            if self.take()[1] == "-":
                sign = -sign
        t = self.take()
        if t[0] == "num":
            return sign * t[1]
        if t == ("op", "("):
            e = self.exponent()
            if self.take() != ("op", ")"):
                self.fail("expected ')'")
            return sign * e
        self.fail("exponent must be an integer")

    def power(self):
        v = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            e = self.exponent()
            if e < 0 and not v:
                self.fail("zero to a negative power")
            v = v ** e
        return v

    def atom(self):
        t = self.take()
        if t[0] == "num":
            return self.f(t[1])
        if t[0] == "name":
            if t[1] in self.names:
                return self.names[t[1]]
            self.fail(f"unknown symbol {t[1]!r}")
        if t == ("op", "("):
            v = self.expr()
            if self.take() != ("op", ")"):
                self.fail("expected ')'")
            return v
        self.fail("unexpected end of expression" if t[0] is None else f"unexpected {t[1]!r}")


def parse_scalar(s, field=None):
    """Parse a scalar. Accepts the canonical "P/Q" form and ordinary
    arithmetic in q (integers, q, + - * / ^, parentheses)."""
    field = field or SYMBOLIC
    if not isinstance(s, str):
        return field(s)
    m = _CANON.match(s)
    if m:
        (n, sn), (d, sd) = _canon_poly(m.group(1)), _canon_poly(m.group(2))
        # n / q^sn over d / q^sd
        num, den = n, d
        if sd > sn:
            num = [0] * (sd - sn) + num
        elif sn > sd:
            den = [0] * (sn - sd) + den
        if isinstance(field, SymbolicField):
            if not polyz.trim(den):
                raise ParseError(f"zero denominator in {s!r}")
            return ScalarQ(num, den)
        x = field.q
        dv = sum((field(c) * x ** e for e, c in enumerate(den)), field.zero)
        if not dv:
            raise ParseError(f"zero denominator in {s!r}")
        return sum((field(c) * x ** e for e, c in enumerate(num)), field.zero) / dv
    return _ExprParser(s, field, {"q": field.q}).parse()


# ---------------------------------------------------------------- fields

class SymbolicField:
    """Q(q) with q transcendental."""

    name = "symbolic"

    def __init__(self):
        self.q = ScalarQ.gen()
        self.zero = ZERO
        self.one = ONE

    def __call__(self, x):
        return ScalarQ.coerce(x) if not isinstance(x, str) else parse_scalar(x, self)

    def to_str(self, x):
        return str(x)

    def pretty(self, x):
        return x.pretty()

    def parse(self, s):
        return parse_scalar(s, self)

    def __eq__(self, other):
        return isinstance(other, SymbolicField)

    def __hash__(self):
        return hash("symbolic")

    def __repr__(self):
        return "SymbolicField()"


class RationalField:
    """Q with q specialised to a rational q0 (q0 not in {0, 1, -1})."""

    def __init__(self, q0):
        q0 = Fraction(q0)
        if q0 in (0, 1, -1):
            raise ValueError(f"q0 = {q0} is not allowed (need q0 not in {{0, 1, -1}})")
        self.q0 = q0
        self.q = q0
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self.name = f"rational:{q0}"

    def __call__(self, x):
        if isinstance(x, ScalarQ):
            return x.subs(self.q0)
        if isinstance(x, str):
            return parse_scalar(x, self)
        return Fraction(x)

    def to_str(self, x):
        return str(Fraction(x))

    pretty = to_str

    def parse(self, s):
        return parse_scalar(s, self)

    def __eq__(self, other):
        return isinstance(other, RationalField) and other.q0 == self.q0

    def __hash__(self):
        return hash(("rational", self.q0))

    def __repr__(self):
        return f"RationalField({self.q0})"


SYMBOLIC = SymbolicField()


def field_from_spec(spec):
    """'symbolic' or 'rational:q0'."""
    if spec in (None, "", "symbolic"):
        return SYMBOLIC
    if spec.startswith("rational:"):
        q0 = Fraction(spec.split(":", 1)[1])
        fld = RationalField(q0)
        warnings.warn(
            f"numeric mode with q = {q0}: avoiding roots of unity and other "
            "special values is the caller's responsibility",
            stacklevel=2,
        )
        return fld
    raise ValueError(f"unknown scalar mode {spec!r}")


# ---------------------------------------------------------------- q-numbers

def _qof(q):
    return SYMBOLIC.q if q is None else q


def qint(n, q=None):
    """Balanced quantum integer [n] = (q^n - q^-n)/(q - q^-1)."""
    q = _qof(q)
    if n == 0:
        return q * 0
    m = abs(n)
    s = sum((q ** (m - 1 - 2 * j) for j in range(m)), q * 0)
    return s if n > 0 else -s


def qfactorial(n, q=None):
    if n < 0:
        raise ValueError("qfactorial needs n >= 0")
    q = _qof(q)
    out = q ** 0
    for k in range(2, n + 1):
        out = out * qint(k, q)
    return out


def qbinom(n, k, q=None):
    """Gaussian binomial [n choose k], any integer n, k >= 0."""
    q = _qof(q)
    if k < 0:
        return q * 0
    if n >= 0 and k > n:
        return q * 0
    num = q ** 0
    for j in range(k):
        num = num * qint(n - j, q)
    return num / qfactorial(k, q)


def verify_qpascal_identities(r_max, y_max, q=None):
    """Check the iterated q-Pascal expansion and the alternating sum.

    (a) [y+l choose l] = sum_j q^(-(l-j)y + lj) [l choose j][y choose j]
    (b) sum_{l<=r} (-1)^l q^(l(y-r+1)) [r choose l][y+l choose l]
        = (-1)^r q^(r(y+1)) [y choose r]     for r <= y
    Returns a dict with "ok", "checked" and the first "counterexample".
    """
    q = _qof(q)
    checked = 0
    for r in range(r_max + 1):
        for y in range(y_max + 1):
            rhs = sum(
                (q ** (-(r - j) * y + r * j) * qbinom(r, j, q) * qbinom(y, j, q) for j in range(r + 1)),
                q * 0,
            )
            checked += 1
            if qbinom(y + r, r, q) != rhs:
                return {"ok": False, "checked": checked, "counterexample": {"identity": "iterated", "r": r, "y": y}}
            if r > y:
                continue
            lhs = sum(
                ((-1) ** l * q ** (l * (y - r + 1)) * qbinom(r, l, q) * qbinom(y + l, l, q) for l in range(r + 1)),
                q * 0,
            )
            checked += 1
            if lhs != (-1) ** r * q ** (r * (y + 1)) * qbinom(y, r, q):
                return {"ok": False, "checked": checked, "counterexample": {"identity": "alternating", "r": r, "y": y}}
    return {"ok": True, "checked": checked, "counterexample": None}
