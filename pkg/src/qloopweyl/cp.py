"""The series P^+-(z), their rational forms, the limit constant C, and the
identities tying C to the lattice operator.

Conventions (rep.q is the deformation parameter):

    psibar^+(z) = K^-1 psi^+(z),  psibar^-(z) = K psi^-(z)
    psibar^+-(z) = exp(+-(q - q^-1) sum_r H_{+-r} z^{-+r})
    P^+-(z) = exp(-sum_n q^{+-n} H_{+-n} / [n] z^{-+n}),   P(q^2 z) = psibar(z) P(z)

P^+ is computed twice: Pade reconstruction of its series, and A(z) B(z)^-1
from the straightening identity. P^- comes from P^+ of the mirrored
representation (q -> q^-1, X_k -> X_{-k}) via z -> 1/z, and again from Pade.
"""
from math import comb

from .looprep import mirror
from .matrix import Matrix, commutator
from .qweyl import lattice_operator
from .report import Report
from .scalar import qfactorial, qint
from .series import (
    LaurentSeries,
    PoleError,
    RatFunField,
    RatFunZ,
    ReconstructionError,
    const_matrix,
    limit_with_prefactor,
    matrix_expand,
    matrix_invert_var,
    matrix_limit,
    matrix_pade,
    matrix_scale_var,
    sexp,
    sinv,
    slog,
    smul,
)

GUARD = 8


def _cached(rep, key, fn):
    c = rep._cache
    if key not in c:
        c[key] = fn()
    return c[key]


def _mstr(m):
    return m.to_strings()


def divided_power(X, n, q):
    return (X ** n).scale(1 / qfactorial(n, q))


def _nil_index(X):
    """Largest n with X^n != 0."""
    n, P = 0, X
    while not P.is_zero():
        n += 1
        P = P * X
        if n > X.n:
            raise ValueError("matrix is not nilpotent")
    return n


def _laurent_matrix(terms, rep):
    """Matrix of RatFunZ from {z-exponent: constant matrix}."""
    f = rep.field
    rf = RatFunField(f)
    rows = []
    for i in range(rep.dim):
        row = []
        for j in range(rep.dim):
            row.append(RatFunZ.laurent({e: m.rows[i][j] for e, m in terms.items()}, f))
        rows.append(row)
    return Matrix(rows, rf)


def _zpow_diag(rep, exps):
    """diag(z^e_i) as a rational matrix."""
    f = rep.field
    return Matrix.diag([RatFunZ.laurent({e: f.one}, f) for e in exps], RatFunField(f))


# ---------------------------------------------------------------- psi and H

def psi_series(rep, sign):
    if sign > 0:
        return LaurentSeries("inf", 0, rep.psi_plus)
    return LaurentSeries("0", 0, rep.psi_minus)


def psi_bar_series(rep, sign):
    if sign > 0:
        return LaurentSeries("inf", 0, [rep.Kinv * m for m in rep.psi_plus])
    return LaurentSeries("0", 0, [rep.K * m for m in rep.psi_minus])


def psi_rational(rep):
    """psi(z) reconstructed at both anchors; returns (psi, report)."""
    def run():
        rr = Report()
        plus = matrix_pade(psi_series(rep, 1), GUARD)
        minus = matrix_pade(psi_series(rep, -1), GUARD)
        rr.add("psi-two-anchor", plus == minus, "psi^+ and psi^- expand one rational function",
               None if plus == minus else {"plus": _mstr(plus), "minus": _mstr(minus)})
        return plus, rr
    return _cached(rep, "psi_rational", run)


def psi_bar(rep):
    """(psibar^+, psibar^-) as rational matrix functions."""
    psi, _ = psi_rational(rep)
    return const_matrix(rep.Kinv) * psi, const_matrix(rep.K) * psi


def h_modes(rep, order=None):
    """{r: H_r} for 0 < |r| <= order, plus H_0 = diag(weights)."""
    order = rep.order if order is None else order
    if order > rep.order:
        raise ValueError(f"order {order} exceeds the stored psi order {rep.order}")

    def run():
        c = rep.q - 1 / rep.q
        out = {0: Matrix.diag([rep.field(w) for w in rep.weights], rep.field)}
        gp = slog(psi_bar_series(rep, 1).coeffs, rep.order + 1, rep.field)
        gm = slog(psi_bar_series(rep, -1).coeffs, rep.order + 1, rep.field)
        for r in range(1, rep.order + 1):
            out[r] = gp[r] / c
            out[-r] = -(gm[r] / c)
        return out
    H = _cached(rep, "h_modes", run)
    return {k: v for k, v in H.items() if abs(k) <= order}


def cp_series(rep, order=None, sign=1):
    """Truncated P^+ (at infinity, in z^-1) or P^- (at 0), from the H modes."""
    order = rep.order + 1 if order is None else order

    def run():
        H = h_modes(rep)
        q = rep.q
        n_max = min(order, rep.order + 1)
        g = [rep.zero()] + [
            -(H[sign * n].scale(q ** (sign * n) / qint(n, q))) for n in range(1, n_max)
        ]
        return sexp(g, n_max, rep.identity(), rep.field)
    coeffs = _cached(rep, ("cp_series", sign, order), run)
    return LaurentSeries("inf" if sign > 0 else "0", 0, coeffs)


def cp_series_recursive(rep, order=None, sign=1):
    """Second route: solve P(q^2 z) = psibar(z) P(z) term by term."""
    order = rep.order + 1 if order is None else order
    q = rep.q
    pb = psi_bar_series(rep, sign).coeffs
    P = [rep.identity()]
    for n in range(1, min(order, len(pb))):
        acc = rep.zero()
        for j in range(1, n + 1):
            if pb[j]:
                acc = acc + pb[j] * P[n - j]
        fac = q ** (-2 * n) - 1 if sign > 0 else q ** (2 * n) - 1
        P.append(acc / fac)
    return LaurentSeries("inf" if sign > 0 else "0", 0, P)


def difference_residual(rep, series, sign=1):
    """Coefficients of P(q^2 z) - psibar(z) P(z); all zero when P solves it."""
    q = rep.q
    P = series.coeffs
    pb = psi_bar_series(rep, sign).coeffs
    n = min(len(P), len(pb))
    rhs = smul(pb, P, n, rep.zero())
    out = []
    for k in range(n):
        s = q ** (-2 * k) if sign > 0 else q ** (2 * k)
        out.append(P[k].scale(s) - rhs[k])
    return out


# ---------------------------------------------------------------- currents

def e_current(rep):
    """E^+(z) = sum_{r>=0} E_r z^-r as a rational matrix, plus the two-anchor check."""
    def run():
        rr = Report()
        n = rep.order + 1
        plus = matrix_pade(LaurentSeries("inf", 0, [rep.E[r] for r in range(n)]), GUARD)
        minus = matrix_pade(LaurentSeries("0", 1, [-rep.E[-m] for m in range(1, n + 1)]), GUARD)
        rr.add("E-current-two-anchor", plus == minus, "sum_{r>=0} E_r z^-r = -sum_{r<0} E_r z^-r as rational functions")
        return plus, rr
    return _cached(rep, "e_current", run)


# ---------------------------------------------------------------- straightening

def _lhs_terms(rep):
    q = rep.q
    N = _nil_index(rep.E[0])
    terms = {}
    for n in range(N + 1):
        m = divided_power(rep.E[0], n, q) * divided_power(rep.F[1], n, q) * (rep.Kinv ** n)
        m = m.scale((-1) ** n * q ** (n * n))
        if not m.is_zero():
            terms[-n] = m
    return terms


def _f_bound(rep):
    w = rep.weights
    return (max(w) - min(w)) // 2


def straightening_residual(rep, order=None):
    """Series-level check of the straightening identity in z^-1.

    LHS = sum_n (-1)^n q^(n^2) E_0^(n) F_1^(n) K^-n z^-n
    RHS = sum_l (-1)^l q^(l^2) K^-l z^-l P^+(q^-2l z) (F_1 - q^(2l+2) F_2 z^-1)^(l) E^+(q^-2l z)^(l)
    Returns the list of coefficient differences (all zero on success).
    """
    order = rep.order + 1 if order is None else order
    q = rep.q
    zero = rep.zero()
    P = cp_series(rep, order).coeffs
    Eplus = [rep.E[r] for r in range(order)]
    lhs = [zero] * order
    for e, m in _lhs_terms(rep).items():
        if -e < order:
            lhs[-e] = m
    rhs = [zero] * order
    for l in range(_f_bound(rep) + 1):
        if l >= order:
            break
        c = q ** (2 * l)
        Ps = [m.scale(c ** k) for k, m in enumerate(P)]
        Es = [m.scale(c ** k) for k, m in enumerate(Eplus)]
        Epow = [rep.identity()] + [zero] * (order - 1)
        for _ in range(l):
            Epow = smul(Epow, Es, order, zero)
        lin = [rep.F[1], rep.F[2].scale(-(q ** (2 * l + 2)))]
        Fpow = [rep.identity()]
        for _ in range(l):
            Fpow = smul(Fpow, lin, len(Fpow) + 1, zero)
        fl = 1 / (qfactorial(l, q) ** 2)
        pre = (rep.Kinv ** l).scale((-1) ** l * q ** (l * l) * fl)
        term = smul(smul(Ps, Fpow, order, zero), Epow, order, zero)
        for k in range(order - l):
            if term[k]:
                rhs[k + l] = rhs[k + l] + pre * term[k]
    return [a - b for a, b in zip(lhs, rhs)]


def pi_factor(rep, l):
    """Pi_l(z) = prod_{j=1..l} psibar^+(q^-2j z)^-1, so P^+(z) Pi_l(z) = P^+(q^-2l z)."""
    pb_plus, _ = psi_bar(rep)
    inv = pb_plus.inverse()
    out = Matrix.identity(rep.dim, inv.field)
    for j in range(1, l + 1):
        out = out * matrix_scale_var(inv, rep.q ** (-2 * j))
    return out


def straightening_sides(rep):
    """(A(z), B(z)) with A = P^+ B; A is a Laurent polynomial matrix."""
    def run():
        q = rep.q
        f = rep.field
        rf = RatFunField(f)
        A = _laurent_matrix(_lhs_terms(rep), rep) if rep.dim else None
        E, _ = e_current(rep)
        zinv = RatFunZ.laurent({-1: f.one}, f)
        B = Matrix.zeros(rep.dim, rep.dim, rf)
        for l in range(_f_bound(rep) + 1):
            lin = const_matrix(rep.F[1]) - const_matrix(rep.F[2]).scale(zinv * (q ** (2 * l + 2)))
            Es = matrix_scale_var(E, q ** (-2 * l))
            Fl = lin ** l
            El = Es ** l
            scal = RatFunZ.laurent({-l: f.one}, f) * ((-1) ** l * q ** (l * l) / qfactorial(l, q) ** 2)
            term = const_matrix(rep.Kinv ** l) * pi_factor(rep, l) * Fl * El
            B = B + term.scale(scal)
        return A, B
    return _cached(rep, "straightening", run)


def check_pi_telescoping(rep, order=None):
    """P^+(z) Pi_l(z) = P^+(q^-2l z) as truncated series, for every l used."""
    order = rep.order + 1 if order is None else order
    rr = Report()
    P = cp_series(rep, order).coeffs
    zero = rep.zero()
    for l in range(1, _f_bound(rep) + 1):
        Pi = matrix_expand(pi_factor(rep, l), "inf", order, offset=0).coeffs
        lhs = smul(P, Pi, order, zero)
        rhs = [m.scale(rep.q ** (2 * l * k)) for k, m in enumerate(P)]
        rr.add(f"pi-telescoping[{l}]", lhs == rhs, "P^+(z) Pi_l(z) = P^+(q^-2l z)")
    return rr


def cp_plus_straight(rep):
    def run():
        A, B = straightening_sides(rep)
        return A * B.inverse()
    return _cached(rep, "P+straight", run)


def cp_plus_pade(rep):
    return _cached(rep, "P+pade", lambda: matrix_pade(cp_series(rep), GUARD))


def cp_minus_pade(rep):
    return _cached(rep, "P-pade", lambda: matrix_pade(cp_series(rep, sign=-1), GUARD))


def mirror_rep(rep):
    return _cached(rep, "mirror", lambda: mirror(rep))


def cp_minus_mirror(rep):
    return _cached(rep, "P-mirror", lambda: matrix_invert_var(cp_plus_straight(mirror_rep(rep))))


def cp_rational(rep):
    """(P^+, P^-) as rational matrices (straightening and mirror routes)."""
    return cp_plus_straight(rep), cp_minus_mirror(rep)


def verify_rationality(rep):
    rr = Report()
    Ps, Pp = cp_plus_straight(rep), cp_plus_pade(rep)
    rr.add("rationality-plus", Ps == Pp, "A(z) B(z)^-1 equals the Pade reconstruction of P^+",
           None if Ps == Pp else {"straight": _mstr(Ps), "pade": _mstr(Pp)})
    n = rep.order + 1
    ser = cp_series(rep, n)
    rr.add("rationality-plus-reexpansion", matrix_expand(Ps, "inf", n, offset=0).coeffs == ser.coeffs,
           "P^+ re-expanded at infinity matches the exponential series")
    Ms, Mp = cp_minus_mirror(rep), cp_minus_pade(rep)
    rr.add("rationality-minus", Ms == Mp, "mirrored straightening equals the Pade reconstruction of P^-",
           None if Ms == Mp else {"mirror": _mstr(Ms), "pade": _mstr(Mp)})
    rr.add("rationality-minus-reexpansion",
           matrix_expand(Ms, "0", n, offset=0).coeffs == cp_series(rep, n, -1).coeffs,
           "P^- re-expanded at 0 matches the exponential series")
    pb_plus, _ = psi_bar(rep)
    lhs = matrix_scale_var(Ps, rep.q ** 2)
    rr.add("difference-equation-rational", lhs == pb_plus * Ps, "P^+(q^2 z) = psibar^+(z) P^+(z) as rational functions")
    return rr


def verify_straightening(rep, order=None):
    rr = Report()
    res = straightening_residual(rep, order)
    bad = [k for k, m in enumerate(res) if not m.is_zero()]
    rr.add("straightening-series", not bad, "straightening identity, coefficientwise in z^-1",
           None if not bad else {"first_bad_order": bad[0], "difference": _mstr(res[bad[0]])})
    A, B = straightening_sides(rep)
    Pp = cp_plus_pade(rep)
    rr.add("straightening-rational", A == Pp * B, "A(z) = P^+(z) B(z) with P^+ from Pade")
    rr.extend(check_pi_telescoping(rep, order))
    return rr


def verify_commutation(rep):
    """Ad(P^+(z)) E_n = E_n - (1+q^2) z^-1 E_{n+1} + q^2 z^-2 E_{n+2}, and the
    same for Ad(P^+(z))^-1 on F_n."""
    rr = Report()
    P = cp_plus_straight(rep)
    Pinv = P.inverse()
    q = rep.q
    f = rep.field
    z1 = RatFunZ.laurent({-1: f.one}, f)
    z2 = RatFunZ.laurent({-2: f.one}, f)
    lo, hi = rep.window
    for n in range(lo, hi + 1):
        for name, X, a, b in (("E", rep.E, P, Pinv), ("F", rep.F, Pinv, P)):
            lhs = a * const_matrix(X[n]) * b
            rhs = (const_matrix(X[n]) - const_matrix(X[n + 1]).scale(z1 * (1 + q ** 2))
                   + const_matrix(X[n + 2]).scale(z2 * q ** 2))
            rr.add(f"cp-commutation-{name}[{n}]", lhs == rhs,
                   "Ad(P^+(z))^(+-1) X(w) = (1 - q^2 w/z)(1 - w/z) X(w), mode by mode")
    return rr


# ---------------------------------------------------------------- C

class TheoremFalsified(Exception):
    pass


def limit_constant(rep):
    """C = lim_{z->0} z^lambda P^+(z) on each weight space, with the
    z -> infinity cross-check on (P^-)^-1; returns (C, report)."""
    def run():
        rr = Report()
        P = cp_plus_straight(rep)
        w = rep.weights
        off = [(i, j) for i in range(rep.dim) for j in range(rep.dim) if w[i] != w[j] and P.rows[i][j]]
        rr.add("P-weight-preserving", not off, "P^+ preserves weight spaces")
        try:
            C = matrix_limit(P, "0", w)
        except PoleError as e:
            rr.add("C-limit-zero", False, "z^lambda P^+(z) is regular at z = 0", str(e))
            return None, rr
        rr.add("C-limit-zero", True, "z^lambda P^+(z) is regular at z = 0")
        try:
            C2 = matrix_limit(cp_minus_mirror(rep).inverse(), "inf", w)
            rr.add("C-limit-agree", C == C2, "lim z^lambda (P^-)^-1 at infinity gives the same C",
                   None if C == C2 else {"zero": _mstr(C), "inf": _mstr(C2)})
        except PoleError as e:
            rr.add("C-limit-agree", False, "lim z^lambda (P^-)^-1 at infinity gives the same C", str(e))
        return C, rr
    return _cached(rep, "C", run)


def verify_limit_constant(rep):
    C, rr = limit_constant(rep)
    rr = Report(list(rr.checks))
    if C is None:
        return rr
    try:
        Cinv = C.inverse()
        rr.add("C-invertible", True, "C is invertible")
    except ZeroDivisionError:
        rr.add("C-invertible", False, "C is invertible")
        return rr
    lhs = _zpow_diag(rep, rep.weights) * cp_plus_straight(rep)
    rhs = const_matrix(C) * cp_minus_mirror(rep)
    rr.add("C-rational-identity", lhs == rhs, "z^H0 P^+(z) = C P^-(z) as rational functions")
    q2 = rep.q ** 2
    lo, hi = rep.window
    for k in range(lo, hi + 1):
        rr.add(f"C-conjugation-E[{k}]", C * rep.E[k] * Cinv == rep.E[k + 2].scale(q2), "Ad(C) E_k = q^2 E_{k+2}")
        rr.add(f"C-conjugation-F[{k}]", C * rep.F[k] * Cinv == rep.F[k - 2].scale(1 / q2), "Ad(C) F_k = q^-2 F_{k-2}")
    comm = all(commutator(C, m).is_zero() for m in rep.psi_plus + rep.psi_minus)
    rr.add("C-commutes-psi", comm, "C commutes with every psi mode")
    return rr


# ---------------------------------------------------------------- main theorem

def minus_q_power(rep, sign=1):
    """(-q)^(sign*H0) as a diagonal matrix."""
    q = rep.q
    return Matrix.diag([(-q) ** (sign * w) for w in rep.weights], rep.field)


def verify_main_theorem(rep):
    rr = Report()
    C, _ = limit_constant(rep)
    if C is None:
        rr.add("main-theorem", False, "S_1^-1 S_0^-1 = (-q)^-H0 C", "C does not exist (pole remains)")
        return rr
    S0, S1 = lattice_operator(rep)
    lhs = S1.inverse() * S0.inverse()
    rhs = minus_q_power(rep, -1) * C
    rr.add("main-theorem", lhs == rhs, "S_1^-1 S_0^-1 = (-q)^-H0 C",
           None if lhs == rhs else {"lhs": _mstr(lhs), "rhs": _mstr(rhs)})
    L = S0 * S1
    rr.add("lattice-from-C", L == minus_q_power(rep) * C.inverse(), "lattice operator = (-q)^H0 C^-1")
    comm = all(commutator(L, m).is_zero() for m in rep.psi_plus + rep.psi_minus)
    rr.add("lattice-commutes-psi", comm, "the lattice operator commutes with every psi mode")
    return rr


# ---------------------------------------------------------------- kernel identities

def _weight_vectors(rep, lam):
    return rep.space.block(lam)


def _embed(rep, idx, coeffs):
    v = [rep.field.zero] * rep.dim
    for i, c in zip(idx, coeffs):
        v[i] = c
    return v


def kernel_basis(rep, lam):
    """Basis of Ker(E_-1) on V[lam]."""
    idx = _weight_vectors(rep, lam)
    if not idx:
        return []
    sub = rep.E[-1].submatrix(range(rep.dim), idx)
    return [_embed(rep, idx, v) for v in sub.nullspace()]


def _sl2_sum(rep, lam):
    q = rep.q
    out = rep.zero()
    for l in range(_f_bound(rep) + 1):
        t = divided_power(rep.F[0], l, q) * divided_power(rep.E[0], l, q)
        out = out + t.scale((-1) ** l * q ** (l * (lam + 1)))
    return out


def verify_kernel_identities(rep, order=None):
    rr = Report()
    q = rep.q
    C, _ = limit_constant(rep)
    S0, S1 = lattice_operator(rep)
    S0inv = S0.inverse()
    order = rep.order + 1 if order is None else order
    zero = rep.zero()
    # E^-(z) = -sum_{m>=1} E_-m z^m and its tail without the z^1 term
    Em = [zero] + [-rep.E[-m] for m in range(1, order)]
    Emu = [zero, zero] + Em[2:]
    lams = sorted({w for w in rep.weights if w >= 0})
    for lam in lams:
        basis = kernel_basis(rep, lam)
        Ed = divided_power(rep.E[0], lam, q)
        T = _sl2_sum(rep, lam)
        for bi, v in enumerate(basis):
            if C is not None:
                ok = (Ed * S0inv).apply(v) == (T * C).apply(v)
                rr.add(f"kernel-S0[{lam},{bi}]", ok, "E_0^(lam) S_0^-1 v = (sum_l (-1)^l q^(l(lam+1)) F_0^(l) E_0^(l)) C v")
            for l in range(1, _f_bound(rep) + 2):
                A = [rep.identity()] + [zero] * (order - 1)
                B = list(A)
                for _ in range(l):
                    A = smul(A, Em, order, zero)
                    B = smul(B, Emu, order, zero)
                c = q ** (l * (l - 1))
                ok = all(not any((a - b.scale(c)).apply(v)) for a, b in zip(A, B))
                rr.add(f"kernel-left-ideal[{lam},{bi},{l}]", ok, "(E^-(z)^l - q^(l(l-1)) E_^-(z)^l) v = 0 on Ker(E_-1)")
        for i in _weight_vectors(rep, lam):
            v = _embed(rep, [i], [rep.field.one])
            ok = (Ed * S1).apply(v) == T.scale((-q) ** lam).apply(v)
            rr.add(f"kernel-S1[{lam},{i}]", ok, "E_0^(lam) S_1 = (-q)^lam sum_l (-1)^l q^(l(lam+1)) F_0^(l) E_0^(l) on V[lam]")
    lhs = smul(Em, Emu, order, zero)
    rhs = [m.scale(q ** 2) for m in smul(Emu, Em, order, zero)]
    rr.add("kernel-exchange", lhs == rhs, "E^-(z) E_^-(z) = q^2 E_^-(z) E^-(z)")
    return rr


# ---------------------------------------------------------------- Euler transform

def h_tilde(rep, r):
    """H~_r = H_0 + sum_{s=1..r} (-1)^s C(r,s) (s/[s]) H_s."""
    H = h_modes(rep)
    q = rep.q
    out = H[0]
    for s in range(1, r + 1):
        out = out + H[s].scale((-1) ** s * comb(r, s) * s / qint(s, q))
    return out


def euler_series(rep, order):
    """C(t) = exp(sum_n H~_n t^n / n), first `order` coefficients."""
    f = rep.field
    g = [rep.zero()] + [h_tilde(rep, n).scale(f.one / n) for n in range(1, order)]
    return sexp(g, order, rep.identity(), f)


def _binom_series(lam, order, field):
    """(1 - t)^(-lam) = sum_j (lam)_j / j! t^j."""
    out = [field.one]
    for j in range(1, order):
        out.append(out[-1] * (lam + j - 1) / j)
    return out


def euler_substitution(rep, order):
    """(1 - q z^-1)^H0 P^+(z)^-1 at z^-1 = -t/(q(1-t)), first `order` coefficients in t."""
    f = rep.field
    q = rep.q
    zero = rep.zero()
    P = cp_series(rep, order).coeffs
    Q = sinv(P, order, rep.identity())
    s = [f.zero] + [-(1 / q)] * (order - 1)
    acc = [zero] * order
    spow = [f.one] + [f.zero] * (order - 1)
    for k in range(order):
        for j in range(order):
            if spow[j]:
                acc[j] = acc[j] + Q[k].scale(spow[j])
        spow = smul(spow, s, order, f.zero)
    diag = [_binom_series(w, order, f) for w in rep.weights]
    out = []
    for j in range(order):
        m = rep.zero()
        for i in range(rep.dim):
            for jj in range(rep.dim):
                val = f.zero
                for a in range(j + 1):
                    b = acc[j - a].rows[i][jj]
                    if b and diag[i][a]:
                        val = val + diag[i][a] * b
                m.rows[i][jj] = val
        out.append(m)
    return out


def verify_euler(rep, order=10):
    rr = Report()
    n = order + 1
    Ct = euler_series(rep, n)
    sub = euler_substitution(rep, n)
    rr.add("euler-substitution", Ct == sub, f"(1 - q/z)^H0 P^+(z)^-1 at z = q(t-1)/t equals C(t) to order {order}")
    S0, S1 = lattice_operator(rep)
    L = S0 * S1
    P = cp_plus_straight(rep)
    f = rep.field
    rf = RatFunField(f)
    one_minus = RatFunZ.laurent({0: f.one, -1: -rep.q}, f)
    D = Matrix.diag([one_minus ** w for w in rep.weights], rf)
    try:
        lim = matrix_limit(D * P.inverse(), "0")
        rr.add("euler-limit", lim == L, "lim_{t->1} C(t) equals the lattice operator",
               None if lim == L else {"limit": _mstr(lim), "lattice": _mstr(L)})
    except PoleError as e:
        rr.add("euler-limit", False, "C(t) is regular at t = 1", str(e))
    m = rep.order + 1
    try:
        Cr = matrix_pade(LaurentSeries("0", 0, euler_series(rep, m)), GUARD)
        val = Cr.map(lambda e: e.value(f.one), f)
        rr.add("euler-limit-pade", val == L, "Pade of C(t) evaluated at t = 1 equals the lattice operator")
    except (ReconstructionError, PoleError) as e:
        rr.skip("euler-limit-pade", "Pade of C(t) evaluated at t = 1", str(e))
    return rr


# ---------------------------------------------------------------- shift covariance

def verify_shift_covariance(rep, zetas):
    from .looprep import shift_twist

    rr = Report()
    S0, S1 = lattice_operator(rep)
    L = S0 * S1
    for z in zetas:
        zeta = rep.field(z)
        tag = zeta.pretty() if hasattr(zeta, "pretty") else str(zeta)
        tw = shift_twist(rep, zeta)
        T0, T1 = lattice_operator(tw)
        Lt = T0 * T1
        want = Matrix.diag([zeta ** (-w) for w in rep.weights], rep.field) * L
        rr.add(f"shift-covariance[{tag}]", Lt == want, "lattice operator of V(zeta) = zeta^-H0 times that of V")
        C, _ = limit_constant(tw)
        mt = verify_main_theorem(tw)
        rr.add(f"shift-main-theorem[{tag}]", mt.ok and C is not None, "main theorem on the twisted representation")
    return rr


# ---------------------------------------------------------------- everything

def verify_all(rep, euler_order=10):
    """Run the whole pipeline; returns one Report."""
    rr = Report()
    _, r1 = psi_rational(rep)
    rr.extend(r1)
    _, r2 = e_current(rep)
    rr.extend(r2)
    series = cp_series(rep)
    res = difference_residual(rep, series)
    rr.add("cp-difference-equation", all(m.is_zero() for m in res), "P(q^2 z) = psibar(z) P(z) coefficientwise")
    rr.add("cp-two-routes", series == cp_series_recursive(rep), "exponential formula equals the recursive solution")
    rr.extend(verify_straightening(rep))
    rr.extend(verify_rationality(rep))
    rr.extend(verify_limit_constant(rep))
    rr.extend(verify_main_theorem(rep))
    rr.extend(verify_kernel_identities(rep))
    rr.extend(verify_euler(rep, euler_order))
    return rr
