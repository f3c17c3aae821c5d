"""Finite-dimensional type-I representations of U_q(Lsl2) as exact matrices.

A ``LoopRep`` stores K, the loop modes E_k, F_k on a contiguous range of k,
and the Cartan modes psi^+_r, psi^-_{-r} for 0 <= r <= order. Everything is
generated from the seed E_0, F_0, F_1, E_{-1}, K:

    H_1 = K^-1 [E_0, F_1],   H_-1 = K [E_-1, F_0]
    E_{k+1} = [H_1, E_k]/[2],    F_{k+1} = -[H_1, F_k]/[2]
    E_{k-1} = [H_-1, E_k]/[2],   F_{k-1} = -[H_-1, F_k]/[2]
    psi^+_r = (q - q^-1)[E_0, F_r],   psi^-_{-r} = -(q - q^-1)[E_0, F_{-r}]

and the relations are then checked as matrix identities over the window.
"""
import json
from collections import OrderedDict

from .matrix import Matrix, commutator
from .report import RelationError, Report
from .scalar import SYMBOLIC, field_from_spec, qbinom, qint

DEFAULT_WINDOW = (-3, 3)


def default_order(dim):
    return 2 * dim + 8


class WeightDecomposition:
    def __init__(self, weights):
        self.weights = [int(w) for w in weights]
        self.blocks = OrderedDict()
        for i, w in enumerate(self.weights):
            self.blocks.setdefault(w, []).append(i)

    @property
    def dimension(self):
        return len(self.weights)

    def block(self, w):
        return self.blocks.get(w, [])

    def __eq__(self, other):
        return isinstance(other, WeightDecomposition) and self.weights == other.weights

    def __repr__(self):
        return f"WeightDecomposition({self.weights})"


class LoopRep:
    """Immutable bundle of loop-mode matrices; build with the functions below."""

    def __init__(self, field, q, weights, K, E, F, psi_plus, psi_minus, window, order, meta):
        self.field = field
        self.q = q
        self.space = WeightDecomposition(weights)
        self.K = K
        self.E = dict(E)
        self.F = dict(F)
        self.psi_plus = list(psi_plus)
        self.psi_minus = list(psi_minus)
        self.window = tuple(window)
        self.order = order
        self.meta = dict(meta)
        self._cache = {}

    @property
    def dim(self):
        return self.space.dimension

    @property
    def weights(self):
        return self.space.weights

    @property
    def Kinv(self):
        if "Kinv" not in self._cache:
            self._cache["Kinv"] = Matrix.diag([self.q ** (-w) for w in self.weights], self.field)
        return self._cache["Kinv"]

    @property
    def mode_range(self):
        return min(self.E), max(self.E)

    def psi(self, sign, r):
        """psi^+_r (sign=+1, r >= 0) or psi^-_{-r} (sign=-1), zero on the wrong side."""
        if sign > 0:
            return self.psi_plus[r] if r >= 0 else self.zero()
        return self.psi_minus[-r] if r <= 0 else self.zero()

    def zero(self):
        return Matrix.zeros(self.dim, self.dim, self.field)

    def identity(self):
        return Matrix.identity(self.dim, self.field)

    @property
    def H1(self):
        return self.Kinv * commutator(self.E[0], self.F[1])

    @property
    def Hm1(self):
        return self.K * commutator(self.E[-1], self.F[0])

    def replace(self, **changes):
        """Copy with some fields replaced (no regeneration, no checks)."""
        kw = dict(
            field=self.field, q=self.q, weights=self.weights, K=self.K, E=self.E, F=self.F,
            psi_plus=self.psi_plus, psi_minus=self.psi_minus, window=self.window,
            order=self.order, meta=self.meta,
        )
        kw.update(changes)
        return LoopRep(**kw)

    def __repr__(self):
        return f"LoopRep(dim={self.dim}, weights={self.weights}, meta={self.meta})"


def _k_matrix(weights, q, field):
    return Matrix.diag([q ** w for w in weights], field)


def build_from_seed(E0, F0, F1, Em1, weights, field=SYMBOLIC, q=None, window=DEFAULT_WINDOW,
                    order=None, meta=None, check=True):
    """Generate all modes from the seed and (by default) check the relations."""
    q = field.q if q is None else q
    weights = list(weights)
    dim = len(weights)
    order = default_order(dim) if order is None else order
    K = _k_matrix(weights, q, field)
    Kinv = Matrix.diag([q ** (-w) for w in weights], field)
    two = qint(2, q)
    H1 = Kinv * commutator(E0, F1)
    Hm1 = K * commutator(Em1, F0)
    # the EF-bracket relation on the window needs psi modes up to the window span
    npsi = max(order, window[1] - window[0])
    hi = max(npsi + 2, window[1] + 1)
    lo = min(-(npsi + 2), window[0] - 1)
    E = {0: E0, -1: Em1}
    F = {0: F0, 1: F1}
    for k in range(0, hi):
        E[k + 1] = commutator(H1, E[k]) / two
    for k in range(1, hi):
        F[k + 1] = -commutator(H1, F[k]) / two
    for k in range(-1, lo, -1):
        E[k - 1] = commutator(Hm1, E[k]) / two
    for k in range(0, lo, -1):
        F[k - 1] = -commutator(Hm1, F[k]) / two
    c = q - 1 / q
    psi_plus = [K] + [commutator(E0, F[r]) * c for r in range(1, npsi + 1)]
    psi_minus = [Kinv] + [-(commutator(E0, F[-r]) * c) for r in range(1, npsi + 1)]
    rep = LoopRep(field, q, weights, K, E, F, psi_plus, psi_minus, window, order, meta or {})
    if check:
        rep_report = check_relations(rep)
        if not rep_report.ok:
            bad = rep_report.failures()[0]
            raise RelationError(f"relation check failed: {bad.check}", rep_report)
    return rep


# ---------------------------------------------------------------- evaluation modules

def sl2_matrices(n, q, field=SYMBOLIC):
    """E, F, K on L_n in the basis m(0..n), weights n, n-2, ..., -n."""
    d = n + 1
    weights = [n - 2 * r for r in range(d)]
    E = Matrix.zeros(d, d, field)
    F = Matrix.zeros(d, d, field)
    for r in range(1, d):
        E.rows[r - 1][r] = qint(n - r + 1, q)
    for r in range(d - 1):
        F.rows[r + 1][r] = qint(r + 1, q)
    return E, F, _k_matrix(weights, q, field), weights


EVAL_VARIANTS = ("E0=a*F0, F0=a^-1*E0", "E0=a*F0*K, F0=a^-1*K^-1*E0")


def eval_module(n, a, field=SYMBOLIC, window=DEFAULT_WINDOW, order=None):
    """Evaluation module L_n(a)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    a = field(a)
    if not a:
        raise ValueError("evaluation parameter must be invertible")
    q = field.q
    E, F, K, weights = sl2_matrices(n, q, field)
    Kinv = Matrix.diag([q ** (-w) for w in weights], field)
    last = None
    for variant in EVAL_VARIANTS:
        if variant == EVAL_VARIANTS[0]:
            cE0, cF0 = F.scale(a), E.scale(1 / a)
        else:
            cE0, cF0 = (F * K).scale(a), (Kinv * E).scale(1 / a)
        meta = {"recipe": "eval", "n": n, "a": field.to_str(a), "variant": variant, "scalar": field.name}
        try:
            return build_from_seed(E, F, K * cE0, cF0 * Kinv, weights, field, q, window, order, meta)
        except RelationError as e:
            last = e
    raise RelationError(f"no evaluation convention passes the relation check for n={n}", last.report)


def trivial_rep(field=SYMBOLIC, window=DEFAULT_WINDOW, order=None):
    return eval_module(0, 1, field, window, order)


def generate_modes(rep, k_min, k_max):
    """Same representation with the relation window widened to [k_min, k_max]."""
    if k_min > 0 or k_max < 0:
        raise ValueError("the window must contain 0")
    window = (min(k_min, rep.window[0]), max(k_max, rep.window[1]))
    return build_from_seed(
        rep.E[0], rep.F[0], rep.F[1], rep.E[-1], rep.weights, rep.field, rep.q,
        window, max(rep.order, window[1] - window[0]), rep.meta,
    )


def direct_sum(rep1, rep2):
    if rep1.field != rep2.field or rep1.q != rep2.q:
        raise ValueError("direct sum needs matching scalar modes")
    f = rep1.field
    window = (min(rep1.window[0], rep2.window[0]), max(rep1.window[1], rep2.window[1]))
    order = default_order(rep1.dim + rep2.dim)

    def bd(a, b):
        return Matrix.block_diag([a, b], f)

    meta = {"recipe": "direct_sum", "summands": [rep1.meta, rep2.meta], "scalar": f.name}
    return build_from_seed(
        bd(rep1.E[0], rep2.E[0]), bd(rep1.F[0], rep2.F[0]), bd(rep1.F[1], rep2.F[1]),
        bd(rep1.E[-1], rep2.E[-1]), rep1.weights + rep2.weights, f, rep1.q, window, order, meta,
    )


def shift_twist(rep, zeta):
    """X_k -> zeta^k X_k for X in {E, F, psi}."""
    f = rep.field
    zeta = f(zeta)
    if not zeta:
        raise ValueError("twist parameter must be invertible")
    E = {k: m.scale(zeta ** k) for k, m in rep.E.items()}
    F = {k: m.scale(zeta ** k) for k, m in rep.F.items()}
    pp = [m.scale(zeta ** r) for r, m in enumerate(rep.psi_plus)]
    pm = [m.scale(zeta ** (-r)) for r, m in enumerate(rep.psi_minus)]
    meta = {"recipe": "shift_twist", "zeta": f.to_str(zeta), "base": rep.meta, "scalar": f.name}
    out = rep.replace(E=E, F=F, psi_plus=pp, psi_minus=pm, meta=meta)
    rr = check_relations(out)
    if not rr.ok:
        raise RelationError("shift twist broke a relation", rr)
    return out


def mirror(rep):
    """The same space with q replaced by q^-1 and X_k replaced by X_{-k}.

    X_k -> X_{-k}, psi^+_r <-> psi^-_{-r}, q -> q^-1 is an algebra isomorphism
    between the loop algebras at q and q^-1, so the result is again a loop
    representation (with deformation parameter q^-1); this is checked.
    """
    qm = 1 / rep.q
    meta = {"recipe": "mirror", "base": rep.meta, "scalar": rep.field.name}
    return build_from_seed(
        rep.E[0], rep.F[0], rep.F[-1], rep.E[1], rep.weights, rep.field, qm,
        (-rep.window[1], -rep.window[0]), rep.order, meta,
    )


# ---------------------------------------------------------------- relations

def _diff(lhs, rhs):
    d = lhs - rhs
    return None if d.is_zero() else d.to_strings()


def check_relations(rep):
    """Check every relation instance over the stored window; returns a Report."""
    rep_ = Report()
    q, f = rep.q, rep.field
    kmin, kmax = rep.window
    E, F = rep.E, rep.F
    q2, qm2 = q ** 2, q ** -2
    c = q - 1 / q
    one = rep.identity()

    # psi's commute; psi^+_0 psi^-_0 = 1
    psis = [("+", r, m) for r, m in enumerate(rep.psi_plus)] + [("-", r, m) for r, m in enumerate(rep.psi_minus)]
    for i in range(len(psis)):
        for j in range(i + 1, len(psis)):
            a, b = psis[i], psis[j]
            d = commutator(a[2], b[2])
            rep_.add(f"psi-commute[{a[0]}{a[1]},{b[0]}{b[1]}]", d.is_zero(), "[psi, psi] = 0",
                     None if d.is_zero() else d.to_strings())
    rep_.add("psi0-inverse", (rep.psi_plus[0] * rep.psi_minus[0]) == one, "psi^+_0 psi^-_0 = 1")
    if rep.psi_plus[0] != rep.K:
        rep_.add("psi0-is-K", False, "psi^+_0 = K")

    # grading by psi_0
    for k in range(kmin, kmax + 1):
        for sgn, P, Pi in (("+", rep.psi_plus[0], rep.psi_minus[0]), ("-", rep.psi_minus[0], rep.psi_plus[0])):
            s = q2 if sgn == "+" else qm2
            rep_.add(f"psi0-grading-E[{sgn},{k}]", (P * E[k] * Pi) == E[k].scale(s),
                     "Ad(psi_0) E_k = q^(+-2) E_k")
            rep_.add(f"psi0-grading-F[{sgn},{k}]", (P * F[k] * Pi) == F[k].scale(1 / s),
                     "Ad(psi_0) F_k = q^(-+2) F_k")

    # four-term psi-E and psi-F exchange
    ks = [("+", k) for k in range(0, rep.order)] + [("-", k) for k in range(-rep.order, 0)]
    for sgn, k in ks:
        s = 1 if sgn == "+" else -1
        P1, P0 = rep.psi(s, k + 1), rep.psi(s, k)
        for l in range(kmin, kmax):
            lhs = P1 * E[l] - E[l] * P1 * q2
            rhs = P0 * E[l + 1] * q2 - E[l + 1] * P0
            rep_.add(f"psi-E-exchange[{sgn},{k},{l}]", lhs == rhs, "psi_{k+1}E_l - q^2 E_l psi_{k+1} = q^2 psi_k E_{l+1} - E_{l+1} psi_k", _diff(lhs, rhs))
            lhs = P1 * F[l] - F[l] * P1 * qm2
            rhs = P0 * F[l + 1] * qm2 - F[l + 1] * P0
            rep_.add(f"psi-F-exchange[{sgn},{k},{l}]", lhs == rhs, "psi_{k+1}F_l - q^-2 F_l psi_{k+1} = q^-2 psi_k F_{l+1} - F_{l+1} psi_k", _diff(lhs, rhs))

    # four-term E-E and F-F exchange
    for k in range(kmin, kmax):
        for l in range(kmin, kmax):
            lhs = E[k + 1] * E[l] - E[l] * E[k + 1] * q2
            rhs = E[k] * E[l + 1] * q2 - E[l + 1] * E[k]
            rep_.add(f"EE-exchange[{k},{l}]", lhs == rhs, "E_{k+1}E_l - q^2 E_l E_{k+1} = q^2 E_k E_{l+1} - E_{l+1} E_k", _diff(lhs, rhs))
            lhs = F[k + 1] * F[l] - F[l] * F[k + 1] * qm2
            rhs = F[k] * F[l + 1] * qm2 - F[l + 1] * F[k]
            rep_.add(f"FF-exchange[{k},{l}]", lhs == rhs, "F_{k+1}F_l - q^-2 F_l F_{k+1} = q^-2 F_k F_{l+1} - F_{l+1} F_k", _diff(lhs, rhs))

    # [E_k, F_l] = (psi^+_{k+l} - psi^-_{k+l}) / (q - q^-1)
    for k in range(kmin, kmax + 1):
        for l in range(kmin, kmax + 1):
            m = k + l
            lhs = commutator(E[k], F[l]) * c
            rhs = rep.psi(1, m) - rep.psi(-1, m)
            rep_.add(f"EF-bracket[{k},{l}]", lhs == rhs, "[E_k, F_l] = (psi^+_{k+l} - psi^-_{k+l})/(q - q^-1)", _diff(lhs, rhs))

    rep_.extend(check_km(beck_km_generators(rep, check=False)))
    return rep_


# ---------------------------------------------------------------- Kac-Moody generators

class KMGenerators:
    """Chevalley generators of the affine presentation, node 0 and node 1."""

    def __init__(self, E, F, K, H, q, field):
        self.E = E      # [E_0, E_1]
        self.F = F
        self.K = K      # [K_0, K_1]
        self.H = H      # eigenvalue lists [H_0, H_1]
        self.q = q
        self.field = field


def beck_km_generators(rep, check=True):
    """E_1 = E_0, F_1 = F_0, E_0 = K^-1 F_1, F_0 = E_-1 K, K_0 = K^-1."""
    K, Kinv = rep.K, rep.Kinv
    km = KMGenerators(
        [Kinv * rep.F[1], rep.E[0]],
        [rep.E[-1] * K, rep.F[0]],
        [Kinv, K],
        [[-w for w in rep.weights], list(rep.weights)],
        rep.q,
        rep.field,
    )
    if check:
        r = check_km(km)
        if not r.ok:
            raise RelationError("Kac-Moody relation check failed", r)
    return km


def loop_seed_from_km(km):
    """Inverse dictionary: (E_0, F_0, F_1, E_-1)."""
    K1 = km.K[1]
    K1inv = km.K[0]
    return km.E[1], km.F[1], K1 * km.E[0], km.F[0] * K1inv


def check_km(km):
    rep_ = Report()
    q = km.q
    a = [[2, -2], [-2, 2]]
    one = Matrix.identity(km.K[0].n, km.field)
    rep_.add("km-cartan-commute", km.K[0] * km.K[1] == km.K[1] * km.K[0], "[K_i, K_j] = 0")
    rep_.add("km-cartan-inverse", km.K[0] * km.K[1] == one, "K_0 K_1 = 1 at level zero")
    Kinv = [km.K[1], km.K[0]]
    c = q - 1 / q
    for i in range(2):
        for j in range(2):
            s = q ** a[i][j]
            rep_.add(f"km-grading-E[{i},{j}]", km.K[i] * km.E[j] * Kinv[i] == km.E[j].scale(s), "K_i E_j K_i^-1 = q^a_ij E_j")
            rep_.add(f"km-grading-F[{i},{j}]", km.K[i] * km.F[j] * Kinv[i] == km.F[j].scale(1 / s), "K_i F_j K_i^-1 = q^-a_ij F_j")
            lhs = commutator(km.E[i], km.F[j]) * c
            rhs = (km.K[i] - Kinv[i]) if i == j else lhs.scale(0)
            rep_.add(f"km-EF[{i},{j}]", lhs == rhs, "[E_i, F_j] = delta_ij (K_i - K_i^-1)/(q - q^-1)", _diff(lhs, rhs))
    for i, j in ((0, 1), (1, 0)):
        for name, X in (("E", km.E), ("F", km.F)):
            tot = None
            for s in range(4):
                t = (X[i] ** (3 - s)) * X[j] * (X[i] ** s) * ((-1) ** s * qbinom(3, s, q))
                tot = t if tot is None else tot + t
            rep_.add(f"km-serre-{name}[{i},{j}]", tot.is_zero(), "quantum Serre relation, 4 terms", None if tot.is_zero() else tot.to_strings())
    return rep_


# ---------------------------------------------------------------- JSON

def _mat_json(m):
    return m.to_strings()


def _mat_parse(rows, field, dim):
    if len(rows) != dim or any(len(r) != dim for r in rows):
        raise ValueError(f"matrix must be {dim}x{dim}")
    return Matrix([[field.parse(str(x)) for x in r] for r in rows], field)


def rep_to_json(rep, modes=None):
    lo, hi = modes or rep.window
    f = rep.field
    meta = dict(rep.meta)
    meta.setdefault("scalar", f.name)
    meta["q"] = f.to_str(rep.q)
    return {
        "dim": rep.dim,
        "weights": rep.weights,
        "K": _mat_json(rep.K),
        "E": {str(k): _mat_json(rep.E[k]) for k in range(lo, hi + 1)},
        "F": {str(k): _mat_json(rep.F[k]) for k in range(lo, hi + 1)},
        "meta": meta,
    }


def rep_from_json(obj, field=None, window=None, order=None):
    """Load a representation file; the seed regenerates all modes, any other
    supplied modes must agree with the generated ones, and the relations are
    checked before returning."""
    try:
        meta = dict(obj.get("meta", {}))
        if field is None:
            field = field_from_spec(meta.get("scalar", "symbolic"))
        dim = int(obj["dim"])
        weights = [int(w) for w in obj["weights"]]
        if len(weights) != dim:
            raise ValueError("weights length differs from dim")
        q = field.parse(meta["q"]) if "q" in meta else field.q
        K = _mat_parse(obj["K"], field, dim)
        E = {int(k): _mat_parse(v, field, dim) for k, v in obj["E"].items()}
        F = {int(k): _mat_parse(v, field, dim) for k, v in obj["F"].items()}
        seed = (E[0], F[0], F[1], E[-1])
    except KeyError as e:
        raise ValueError(f"representation file is missing {e}") from None
    if K != _k_matrix(weights, q, field):
        raise ValueError("K is not q^H0 for the declared weights")
    if window is None:
        lo = min(min(E), min(F), DEFAULT_WINDOW[0])
        hi = max(max(E), max(F), DEFAULT_WINDOW[1])
        window = (lo, hi)
    rep = build_from_seed(*seed, weights, field, q, window, order, meta, check=False)
    rr = Report()
    for name, given, made in (("E", E, rep.E), ("F", F, rep.F)):
        for k, m in given.items():
            rr.add(f"file-mode-{name}[{k}]", made.get(k) == m, "supplied mode agrees with the generated one")
    rr.extend(check_relations(rep))
    if not rr.ok:
        raise RelationError(f"representation file fails: {rr.failures()[0].check}", rr)
    return rep


def load_rep(path, field=None, window=None, order=None):
    with open(path) as fh:
        return rep_from_json(json.load(fh), field, window, order)


def save_rep(rep, path):
    with open(path, "w") as fh:
        json.dump(rep_to_json(rep), fh, indent=1)
