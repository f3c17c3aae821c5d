"""Abelian eigenvalue calculus and the quiver-variety K-theory toy model.

Spectral side: a character r(z) = prod(z - a_j) / prod(z - b_k) with r(0) != 0
predicts the psi eigenvalue q^(-deg r) r(q^2 z)/r(z) and the lattice operator
eigenvalue (-sign q)^(m-n) prod b / prod a.

K-theory side: classes are multisets of Chern roots, i.e. Laurent monomials in
q and torus variables. The 3-term complex at node k is

    q^-2 V_k  ->  q^-1 (W_k + sum_{a_kl = -1} V_l)  ->  V_k

in degrees -1, 0, 1; its class is taken as (degree 0) - (degree -1) - (degree 1),
which gives rank w_k - 2 v_k + sum v_l.
"""
import re
from fractions import Fraction
from functools import reduce

from . import polyz
from .matrix import Matrix
from .report import Report
from .scalar import ScalarQ, SymbolicField, RationalField
from .series import RatFunZ, zadd, zmul, zval, ztrim

# ---------------------------------------------------------------- monomials


_MUL_CACHE = {}


class Monomial:
    """Laurent monomial prod v^e in named variables (q among them)."""

    __slots__ = ("exps",)

    def __init__(self, exps=()):
        if isinstance(exps, dict):
            exps = exps.items()
        self.exps = tuple(sorted((v, e) for v, e in exps if e))

    @classmethod
    def var(cls, name, e=1):
        return cls({name: e})

    def as_dict(self):
        return dict(self.exps)

    def __mul__(self, other):
        if isinstance(other, Monomial):
            key = (self.exps, other.exps)
            m = _MUL_CACHE.get(key)
            if m is None:
                d = self.as_dict()
                for v, e in other.exps:
                    d[v] = d.get(v, 0) + e
                m = Monomial(d)
                if len(_MUL_CACHE) > 200000:
                    _MUL_CACHE.clear()
                _MUL_CACHE[key] = m
            return m
        return NotImplemented

    def inverse(self):
        return Monomial({v: -e for v, e in self.exps})

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, n):
        return Monomial({v: e * n for v, e in self.exps})

    def degree(self, name):
        return self.as_dict().get(name, 0)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.exps == other.exps

    def __lt__(self, other):
        return self.exps < other.exps

    def __hash__(self):
        return hash(self.exps)

    def __str__(self):
        if not self.exps:
            return "1"
        return " * ".join(v if e == 1 else f"{v}^{e}" for v, e in self.exps)

    __repr__ = __str__


ONE_MONO = Monomial()
_FACTOR = re.compile(r"^\s*([A-Za-z_]\w*)\s*(?:\^\s*\(?\s*(-?\d+)\s*\)?)?\s*$")


def parse_monomial(s):
    """'q^a * x1^b * ...' (factors joined by '*'); '1' is the empty monomial."""
    s = s.strip()
    if s in ("1", ""):
        return ONE_MONO
    d = {}
    for part in s.split("*"):
        m = _FACTOR.match(part)
        if not m:
            raise ValueError(f"bad monomial factor {part!r} in {s!r}")
        v, e = m.group(1), int(m.group(2) or 1)
        d[v] = d.get(v, 0) + e
    return Monomial(d)


def q_mono(k):
    return Monomial({"q": k})


# ---------------------------------------------------------------- Laurent polynomials


class LPoly:
    """Integer Laurent polynomial in named variables: {Monomial: int}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if isinstance(terms, Monomial):
            terms = {terms: 1}
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c):
        return cls({ONE_MONO: c})

    @classmethod
    def coerce(cls, x):
        if isinstance(x, LPoly):
            return x
        if isinstance(x, Monomial):
            return cls(x)
        if isinstance(x, int):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LPoly")

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = LPoly.coerce(other)
        d = dict(self.terms)
        for m, c in other.terms.items():
            d[m] = d.get(m, 0) + c
        return LPoly(d)

    __radd__ = __add__

    def __neg__(self):
        return LPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-LPoly.coerce(other))

    def __rsub__(self, other):
        return LPoly.coerce(other) - self

    def __mul__(self, other):
        other = LPoly.coerce(other)
        d = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                d[m] = d.get(m, 0) + c1 * c2
        return LPoly(d)

    __rmul__ = __mul__

    def __pow__(self, n):
        return reduce(lambda a, b: a * b, [self] * n, LPoly.const(1))

    def __eq__(self, other):
        try:
            other = LPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def as_monomial(self):
        """(sign, Monomial) when this is +-monomial, else None."""
        if len(self.terms) != 1:
            return None
        (m, c), = self.terms.items()
        return (c, m) if c in (1, -1) else None

    def div_monomial(self, c, m):
        """Exact division by c*m for c = +-1."""
        inv = m.inverse()
        return LPoly({k * inv: v // c for k, v in self.terms.items()})

    def divexact_q(self, p):
        """Exact division by a Laurent polynomial in q alone, given as
        (low exponent, int coefficient list)."""
        lo, coeffs = p
        groups = {}
        for m, c in self.terms.items():
            d = m.as_dict()
            e = d.pop("q", 0)
            groups.setdefault(Monomial(d), {})[e] = c
        out = {}
        for rest, poly in groups.items():
            plo = min(poly)
            arr = [0] * (max(poly) - plo + 1)
            for e, c in poly.items():
                arr[e - plo] = c
            quo = polyz.divexact(arr, list(coeffs))
            if quo is None:
                raise ArithmeticError("inexact division")
            for i, c in enumerate(quo):
                if c:
                    out[rest * q_mono(plo - lo + i)] = c
        return LPoly(out)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            ms = str(m)
            if ms == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(ms)
            elif c == -1:
                parts.append(f"-{ms}")
            else:
                parts.append(f"{c}*{ms}")
        return " + ".join(parts)

    __repr__ = __str__


ZERO_L = LPoly()
ONE_L = LPoly.const(1)


# ---------------------------------------------------------------- classes


class EquivClass:
    """Multiset of Chern roots."""

    __slots__ = ("roots",)

    def __init__(self, roots=()):
        rs = [parse_monomial(r) if isinstance(r, str) else r for r in roots]
        self.roots = tuple(sorted(rs))

    @property
    def rank(self):
        return len(self.roots)

    def det(self):
        return reduce(lambda a, b: a * b, self.roots, ONE_MONO)

    def shift(self, m):
        """m (x) E, e.g. q^k E for m = q^k."""
        return EquivClass(r * m for r in self.roots)

    def dual(self):
        return EquivClass(r.inverse() for r in self.roots)

    def __add__(self, other):
        return EquivClass(self.roots + other.roots)

    def __eq__(self, other):
        return isinstance(other, EquivClass) and self.roots == other.roots

    def __hash__(self):
        return hash(self.roots)

    def __repr__(self):
        return f"EquivClass({[str(r) for r in self.roots]})"


class VirtualClass:
    """pos - neg."""

    def __init__(self, pos=None, neg=None):
        self.pos = pos or EquivClass()
        self.neg = neg or EquivClass()

    @property
    def rank(self):
        return self.pos.rank - self.neg.rank

    def det(self):
        return self.pos.det() / self.neg.det()

    def __repr__(self):
        return f"VirtualClass(+{[str(r) for r in self.pos.roots]}, -{[str(r) for r in self.neg.roots]})"


def wedge_u(E):
    """Coefficients [1, e_1, ..., e_r] of prod_x (1 + u x) as LPolys."""
    out = [ONE_L]
    for x in E.roots:
        nxt = out + [ZERO_L]
        for i in range(len(out)):
            nxt[i + 1] = nxt[i + 1] + out[i] * LPoly(x)
        out = nxt
    return out


def is_ade(cartan):
    n = len(cartan)
    for i in range(n):
        if len(cartan[i]) != n or cartan[i][i] != 2:
            return False
        for j in range(n):
            if i != j and (cartan[i][j] not in (0, -1) or cartan[i][j] != cartan[j][i]):
                return False
    for k in range(1, n + 1):
        M = Matrix([[Fraction(cartan[i][j]) for j in range(k)] for i in range(k)], _QQ)
        if _det(M) <= 0:
            return False
    return True


class _QField:
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x):
        return Fraction(x)

    to_str = str


_QQ = _QField()


def _det(M):
    R = [list(r) for r in M.rows]
    n = len(R)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if R[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            R[c], R[p] = R[p], R[c]
            d = -d
        d *= R[c][c]
        for i in range(c + 1, n):
            f = R[i][c] / R[c][c]
            R[i] = [a - f * b for a, b in zip(R[i], R[c])]
    return d


def complex_Ck(cartan, k, V, W):
    """Class and rank of the complex at node k; V, W map node -> EquivClass."""
    if not is_ade(cartan):
        raise ValueError("Cartan matrix must be simply laced of finite type (ADE)")
    nbrs = [l for l in range(len(cartan)) if cartan[k][l] == -1]
    mid = W[k]
    for l in nbrs:
        mid = mid + V[l]
    pos = mid.shift(q_mono(-1))
    neg = V[k].shift(q_mono(-2)) + V[k]
    cls = VirtualClass(pos, neg)
    rank = W[k].rank - 2 * V[k].rank + sum(V[l].rank for l in nbrs)
    pairing = W[k].rank - sum(cartan[k][l] * V[l].rank for l in range(len(cartan)))
    if rank != cls.rank or rank != pairing:
        raise AssertionError("rank bookkeeping is inconsistent")
    return cls, rank


# ---------------------------------------------------------------- rational functions over LPoly


class LRatZ:
    """num(z)/den(z) with LPoly coefficients (lowest degree first); equality
    by cross-multiplication."""

    def __init__(self, num, den):
        self.num = ztrim(num)
        self.den = ztrim(den)

    def __eq__(self, other):
        return zmul(self.num, other.den, ZERO_L) == zmul(other.num, self.den, ZERO_L)

    def __mul__(self, other):
        return LRatZ(zmul(self.num, other.num, ZERO_L), zmul(self.den, other.den, ZERO_L))

    def value_at_infinity(self):
        if len(self.num) != len(self.den):
            return None
        d = self.den[-1].as_monomial()
        if d is None:
            raise ArithmeticError("leading denominator coefficient is not a monomial")
        return self.num[-1].div_monomial(*d)

    def __repr__(self):
        return f"LRatZ(num={[str(c) for c in self.num]}, den={[str(c) for c in self.den]})"


def _linear_product(roots, scale):
    """prod_x (z - scale*x) as a z-polynomial with LPoly coefficients."""
    p = (ONE_L,)
    for x in roots:
        p = zmul(p, (-LPoly(x * scale), ONE_L), ZERO_L)
    return p


def nakajima_psi(Ck, rank=None):
    """q^rank wedge_{-1/qz}(C) / wedge_{-q/z}(C) as a rational function of z."""
    rank = Ck.rank if rank is None else rank
    qi, q1 = q_mono(-1), q_mono(1)
    num = zmul(_linear_product(Ck.pos.roots, qi), _linear_product(Ck.neg.roots, q1), ZERO_L)
    den = zmul(_linear_product(Ck.neg.roots, qi), _linear_product(Ck.pos.roots, q1), ZERO_L)
    num = tuple(c * LPoly(q_mono(rank)) for c in num)
    return LRatZ(num, den)


def _wseries(coeffs, c, order):
    """wedge_{c w}(E) as a w-series from its coefficient list."""
    out = []
    for i in range(order):
        out.append(coeffs[i] * LPoly(c ** i) if i < len(coeffs) else ZERO_L)
    return out


def _signed(mono, sign):
    return LPoly({mono: sign})


def _wedge_ratio_series(Ck, c_mono, c_sign, order):
    """Series in w = 1/z of wedge_{c w}(pos) / wedge_{c w}(neg), c = c_sign * c_mono."""
    def ser(E):
        cs = wedge_u(E)
        return [cs[i] * _signed(c_mono ** i, c_sign ** i) if i < len(cs) else ZERO_L for i in range(order)]
    num, den = ser(Ck.pos), ser(Ck.neg)
    # den has constant term 1, so its inverse is a power series over the ring
    inv = [ONE_L]
    for n in range(1, order):
        acc = ZERO_L
        for j in range(1, n + 1):
            if den[j]:
                acc = acc - den[j] * inv[n - j]
        inv.append(acc)
    out = []
    for n in range(order):
        acc = ZERO_L
        for j in range(n + 1):
            if num[j] and inv[n - j]:
                acc = acc + num[j] * inv[n - j]
        out.append(acc)
    return out


def nakajima_cp_check(Ck, rank=None, order=10):
    """Solve P(q^2 z) = psibar(z) P(z) from the psi series and compare with
    wedge_{-q/z}(C); returns (ok, solved series, wedge series)."""
    rank = Ck.rank if rank is None else rank
    qm = q_mono(-1)
    psibar = [  # q^-rank psi = wedge_{-w/q}(C)/wedge_{-q w}(C)
        a for a in _series_div(
            _wedge_ratio_series(Ck, qm, -1, order),
            _wedge_ratio_series(Ck, q_mono(1), -1, order),
            order,
        )
    ]
    P = [ONE_L]
    for n in range(1, order):
        acc = ZERO_L
        for j in range(1, n + 1):
            if psibar[j] and P[n - j]:
                acc = acc + psibar[j] * P[n - j]
        # P_n (q^-2n - 1) = acc  ->  P_n = -q^2n acc / (q^2n - 1)
        num = acc * _signed(q_mono(2 * n), -1)
        P.append(num.divexact_q((0, [-1] + [0] * (2 * n - 1) + [1])))
    wedge = _wedge_ratio_series(Ck, q_mono(1), -1, order)
    return P == wedge, P, wedge


def _series_div(a, b, order):
    inv = [ONE_L]
    for n in range(1, order):
        acc = ZERO_L
        for j in range(1, n + 1):
            if j < len(b) and b[j]:
                acc = acc - b[j] * inv[n - j]
        inv.append(acc)
    out = []
    for n in range(order):
        acc = ZERO_L
        for j in range(n + 1):
            if a[j] and inv[n - j]:
                acc = acc + a[j] * inv[n - j]
        out.append(acc)
    return out


def nakajima_lattice(Ck, rank=None, V=None, W=None, cartan=None, k=None):
    """The line det(C)^* two ways. Route (i): lim_{z->0} z^rank wedge_{-q/z}(C)
    = (-q)^rank det C, read off the top wedge coefficients. Route (ii): the
    product q^rank det(W_k)^-1 det(V_k)^2 prod det(V_l)^-1 (needs V, W,
    cartan, k). Returns (line_i, line_ii or None)."""
    rank = Ck.rank if rank is None else rank
    tp, tn = wedge_u(Ck.pos)[-1], wedge_u(Ck.neg)[-1]
    # z^rp wedge_{-q/z}(pos) -> (-q)^rp top(pos) at z = 0; same for neg
    rp, rn = Ck.pos.rank, Ck.neg.rank
    lim_num = tp * _signed(q_mono(rp), (-1) ** rp)
    lim_den = tn * _signed(q_mono(rn), (-1) ** rn)
    dsign, dmono = lim_den.as_monomial()
    limit = lim_num.div_monomial(dsign, dmono)
    detC = limit.div_monomial((-1) ** rank, q_mono(rank))
    s, m = detC.as_monomial()
    if s != 1:
        raise ArithmeticError("det C is not a monomial")
    line_i = m.inverse()
    line_ii = None
    if V is not None:
        nbrs = [l for l in range(len(cartan)) if cartan[k][l] == -1]
        line_ii = q_mono(rank) * W[k].det().inverse() * V[k].det() ** 2
        for l in nbrs:
            line_ii = line_ii * V[l].det().inverse()
    return line_i, line_ii


def verify_quiver_instance(cartan, V, W, nodes=None, order=10):
    """All K-theory checks on one instance; returns a Report."""
    rr = Report()
    nodes = range(len(cartan)) if nodes is None else nodes
    for k in nodes:
        Ck, rank = complex_Ck(cartan, k, V, W)
        ok, _, _ = nakajima_cp_check(Ck, rank, order)
        rr.add(f"ktheory-difference-equation[{k}]", ok, "wedge_{-q/z} C_k solves P(q^2 z) = psibar(z) P(z)")
        psi = nakajima_psi(Ck, rank)
        rr.add(f"ktheory-psi-infinity[{k}]", psi.value_at_infinity() == LPoly(q_mono(rank)), "psi(infinity) = q^rank")
        li, lii = nakajima_lattice(Ck, rank, V, W, cartan, k)
        rr.add(f"ktheory-det-line[{k}]", li == lii, "limit route equals the product formula for det(C_k)^*",
               {"limit": str(li), "product": str(lii), "rank": rank})
        ch = AbelianCharacter.from_class(Ck)
        rr.add(f"ktheory-character[{k}]", lattice_eigen(ch, -1) == LPoly(li) and psi_eigen(ch) == psi,
               "the character of wedge_{-q/z} C_k predicts psi and the line")
    return rr


def load_quiver(obj):
    """{'cartan': [[...]], 'V': [[roots...] per node], 'W': [...], 'nodes': [...]}"""
    cartan = [[int(x) for x in r] for r in obj["cartan"]]
    n = len(cartan)
    V = [EquivClass(obj.get("V", [[]] * n)[i]) for i in range(n)]
    W = [EquivClass(obj.get("W", [[]] * n)[i]) for i in range(n)]
    return cartan, V, W, obj.get("nodes")


# ---------------------------------------------------------------- characters


class NotSplit(ValueError):
    pass


class AbelianCharacter:
    """r(z) = prod (z - a_j) / prod (z - b_k); zeros/poles are field elements
    (ScalarQ, Fraction) or Laurent monomials."""

    def __init__(self, zeros=(), poles=(), monomial=None):
        self.zeros = list(zeros)
        self.poles = list(poles)
        if monomial is None:
            monomial = any(isinstance(x, Monomial) for x in self.zeros + self.poles)
        self.monomial = monomial

    @property
    def m(self):
        return len(self.zeros)

    @property
    def n(self):
        return len(self.poles)

    @property
    def degree(self):
        return self.m - self.n

    def __add__(self, other):
        return AbelianCharacter(self.zeros + other.zeros, self.poles + other.poles, self.monomial or other.monomial)

    @classmethod
    def from_class(cls, Ck):
        """Character of wedge_{-q/z}(C) = z^-rank r(z)."""
        q1 = q_mono(1)
        return cls([r * q1 for r in Ck.pos.roots], [r * q1 for r in Ck.neg.roots], True)

    def __repr__(self):
        return f"AbelianCharacter(zeros={self.zeros}, poles={self.poles})"


def psi_eigen(ch, field=None):
    """q^(-deg r) r(q^2 z) / r(z)."""
    if ch.monomial:
        num = zmul(_linear_product(ch.zeros, q_mono(-2)), _linear_product(ch.poles, ONE_MONO), ZERO_L)
        den = zmul(_linear_product(ch.zeros, ONE_MONO), _linear_product(ch.poles, q_mono(-2)), ZERO_L)
        # r(q^2 z) = q^(2m-2n) prod(z - a/q^2)/prod(z - b/q^2); times q^-(m-n)
        num = tuple(c * LPoly(q_mono(ch.degree)) for c in num)
        return LRatZ(num, den)
    from .scalar import SYMBOLIC
    field = field or SYMBOLIC
    q = field.q
    z = RatFunZ.z(field)
    r = RatFunZ.const(field.one, field)
    rq = RatFunZ.const(field.one, field)
    q2z = z * (q ** 2)
    for a in ch.zeros:
        r = r * (z - a)
        rq = rq * (q2z - a)
    for b in ch.poles:
        r = r / (z - b)
        rq = rq / (q2z - b)
    return (rq / r) * (q ** (-ch.degree))


def lattice_eigen(ch, sign=-1, field=None):
    """(-sign q)^(m-n) prod b / prod a."""
    if ch.monomial:
        m = q_mono(ch.degree)
        for b in ch.poles:
            m = m * b
        for a in ch.zeros:
            m = m / a
        return LPoly({m: (-sign) ** abs(ch.degree)})
    from .scalar import SYMBOLIC
    field = field or SYMBOLIC
    out = (-sign * field.q) ** ch.degree
    for b in ch.poles:
        out = out * b
    for a in ch.zeros:
        out = out / a
    return out


# ---------------------------------------------------------------- spectra of reps


def _to_sympy(x, field, qs):
    if isinstance(field, SymbolicField):
        num = sum(c * qs ** e for e, c in enumerate(x.num))
        den = sum(c * qs ** e for e, c in enumerate(x.den))
        return num / den
    import sympy as sp
    return sp.Rational(x.numerator, x.denominator)


def _from_sympy(e, field, qs):
    import sympy as sp
    e = sp.together(e)
    n, d = sp.fraction(e)
    if isinstance(field, SymbolicField):
        def poly(p):
            p = sp.Poly(sp.expand(p), qs)
            cs = p.all_coeffs()[::-1]
            return [Fraction(int(sp.numer(c)), int(sp.denom(c))) for c in cs]
        pn, pd = poly(n), poly(d)
        num = sum((ScalarQ.monomial(c, i) for i, c in enumerate(pn)), ScalarQ())
        den = sum((ScalarQ.monomial(c, i) for i, c in enumerate(pd)), ScalarQ())
        return num / den
    return Fraction(int(n), int(d)) if isinstance(n, sp.Integer) else Fraction(str(sp.nsimplify(e)))


def split_roots(poly, field):
    """Roots (with multiplicity) of a monic z-polynomial over Q(q) or Q, via
    factorisation; NotSplit if an irreducible factor of degree > 1 appears."""
    import sympy as sp

    if len(poly) <= 1:
        return []
    zs, qs = sp.symbols("z q")
    expr = sum(_to_sympy(c, field, qs) * zs ** i for i, c in enumerate(poly))
    num, _ = sp.fraction(sp.together(expr))
    gens = (zs, qs) if isinstance(field, SymbolicField) else (zs,)
    _, factors = sp.factor_list(sp.expand(num), *gens)
    roots = []
    for fac, mult in factors:
        p = sp.Poly(fac, zs)
        d = p.degree()
        if d == 0:
            continue
        if d > 1:
            raise NotSplit(f"factor {fac} of degree {d} in z does not split")
        c1, c0 = p.all_coeffs()
        roots.extend([_from_sympy(-c0 / c1, field, qs)] * mult)
    return roots


def character_of_eigenvalue(p):
    """AbelianCharacter with p(z) = r(z) z^k, r(0) != 0, from a RatFunZ p."""
    f = p.field
    k = zval(p.num) - zval(p.den)
    num = p.num[zval(p.num):]
    den = p.den[zval(p.den):]
    if num[-1] != f.one or den[-1] != f.one:
        raise ValueError("eigenvalue does not tend to 1 at infinity")
    return AbelianCharacter(split_roots(num, f), split_roots(den, f)), k


def _triangular_diag(M):
    if M.is_upper_triangular() or M.is_lower_triangular():
        return M.diagonal()
    return None


def verify_eigenvalues(rep):
    """Spectra of psi(z) and of the lattice operator against the characters
    read off the eigenvalues of P^+(z)."""
    from .cp import cp_plus_straight, psi_rational
    from .qweyl import lattice_matrix

    rr = Report()
    P = cp_plus_straight(rep)
    psi, _ = psi_rational(rep)
    L = lattice_matrix(rep)
    dP, dpsi, dL = _triangular_diag(P), _triangular_diag(psi), _triangular_diag(L)
    if dP is None or dpsi is None or dL is None:
        rr.skip("eigen-triangular", "operators are triangular in the weight basis", "not triangular")
        return rr
    for i, p in enumerate(dP):
        try:
            ch, k = character_of_eigenvalue(p)
        except NotSplit as e:
            rr.skip(f"eigen-character[{i}]", "eigenvalue of P^+ splits into linear factors", str(e))
            continue
        lam = rep.weights[i]
        rr.add(f"eigen-weight[{i}]", ch.degree == lam and k == -lam, "deg r equals the weight")
        rr.add(f"eigen-psi[{i}]", psi_eigen(ch, rep.field) == dpsi[i], "psi eigenvalue = q^(-deg r) r(q^2 z)/r(z)",
               None if psi_eigen(ch, rep.field) == dpsi[i] else {"predicted": psi_eigen(ch, rep.field).pretty(), "actual": dpsi[i].pretty()})
        pred = lattice_eigen(ch, -1, rep.field)
        rr.add(f"eigen-lattice[{i}]", pred == dL[i], "lattice eigenvalue = q^(m-n) prod b / prod a",
               None if pred == dL[i] else {"predicted": rep.field.to_str(pred), "actual": rep.field.to_str(dL[i])})
    return rr
