"""Quantum Weyl group elements on finite-dimensional modules.

    exp_q(x) = sum_n q^(n(n-1)/2) x^n / [n]!
    S = exp_{q^-1}(q^-1 E K^-1) exp_{q^-1}(-F) exp_{q^-1}(q E K) q^(H(H+1)/2)

For a loop representation, S_1 is built from (E_0, F_0, K) and S_0 from the
affine node (K^-1 F_1, E_-1 K, K^-1); their product S_0 S_1 is the lattice
operator, whose adjoint action shifts loop modes by two.
"""
from .matrix import Matrix
from .report import Report
from .scalar import SYMBOLIC, qfactorial


def q_exp(X, base, q, max_terms=None):
    """exp_base(X) = sum_n base^(n(n-1)/2) X^n / [n]_q! for nilpotent X."""
    one = Matrix.identity(X.n, X.field)
    out = one
    power = one
    n = 0
    limit = max_terms if max_terms is not None else X.n + 1
    while True:
        n += 1
        power = power * X
        if power.is_zero():
            break
        if n > limit:
            raise ValueError("q_exp: argument is not nilpotent")
        out = out + power.scale(base ** (n * (n - 1) // 2) / qfactorial(n, q))
    return out


def weyl_triple(E, F, K, weights, q=None):
    """Triple q-exponential element for an sl2 triple with K = q^H."""
    field = E.field
    q = field.q if q is None else q
    Kinv = Matrix.diag([q ** (-w) for w in weights], field)
    qi = 1 / q
    a = q_exp((E * Kinv).scale(qi), qi, q)
    b = q_exp(-F, qi, q)
    c = q_exp((E * K).scale(q), qi, q)
    d = Matrix.diag([q ** (w * (w + 1) // 2) for w in weights], field)
    return a * b * c * d


def s_closed_form(n, field=SYMBOLIC, q=None):
    """S m(r) = (-1)^(n-r) q^((n-r)(r+1)) m(n-r) on L_n."""
    q = field.q if q is None else q
    S = Matrix.zeros(n + 1, n + 1, field)
    for r in range(n + 1):
        S.rows[n - r][r] = q ** ((n - r) * (r + 1)) * (-1) ** (n - r)
    return S


def lattice_operator(rep):
    """(S_0, S_1) for the two nodes; the lattice operator is S_0 S_1."""
    c = rep._cache
    if "weyl" not in c:
        q = rep.q
        K, Kinv = rep.K, rep.Kinv
        S1 = weyl_triple(rep.E[0], rep.F[0], K, rep.weights, q)
        S0 = weyl_triple(Kinv * rep.F[1], rep.E[-1] * K, Kinv, [-w for w in rep.weights], q)
        c["weyl"] = (S0, S1)
    return c["weyl"]


def lattice_matrix(rep):
    S0, S1 = lattice_operator(rep)
    return S0 * S1


def check_conjugation(rep, k_range=None):
    """Ad(S_0 S_1): E_k -> E_{k-2}, F_k -> F_{k+2}, H_k -> H_k on the window."""
    from .cp import h_modes

    out = Report()
    L = lattice_matrix(rep)
    Linv = L.inverse()
    lo, hi = k_range or rep.window
    for k in range(lo, hi + 1):
        out.add(f"lattice-conjugation-E[{k}]", L * rep.E[k] * Linv == rep.E[k - 2], "Ad(S_0 S_1) E_k = E_{k-2}")
        out.add(f"lattice-conjugation-F[{k}]", L * rep.F[k] * Linv == rep.F[k + 2], "Ad(S_0 S_1) F_k = F_{k+2}")
    H = h_modes(rep, max(abs(lo), abs(hi), 1))
    for k in range(lo, hi + 1):
        if k:
            out.add(f"lattice-conjugation-H[{k}]", L * H[k] * Linv == H[k], "Ad(S_0 S_1) H_k = H_k")
    return out
