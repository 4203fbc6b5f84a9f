"""Harish-Chandra series, hypergeometric functions and the KZ connection (numeric).

Conventions
-----------
* Spectral parameters ``lam`` and exponents are complex vectors in
  fundamental-weight coordinates, so ``lam[i] = lam(alpha_i^vee)``.
* Points of A are written a = exp(H) with H in simple-coroot coordinates;
  e^mu(a) = exp(sum_i mu_i H_i).  A_+ is where alpha_i(H) > 0 for every i.
* Elements kappa of Q_- are stored as nonnegative integer tuples m with
  kappa = -sum_i m_i alpha_i; the depth of kappa is sum(m).
* Multiplicities are numeric tuples, one value per root-length orbit.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field

import mpmath
import numpy as np

from .polynomials import c_tilde
from .root_data import Multiplicity, RootSystem

__all__ = [
    "NearPole",
    "NotInPositiveChamber",
    "NonGenericSpectralParam",
    "ResonantParameter",
    "SingularPoint",
    "DepthExhausted",
    "DEFAULT_DEPTH",
    "SpectralParam",
    "HCSeries",
    "AsymptoticSeries",
    "ChamberSeries",
    "KZMatrices",
    "genericity_report",
    "gamma_table",
    "phi_series",
    "phi_eval",
    "apply_L_series",
    "apply_T_series",
    "c_tilde_numeric",
    "F_tilde_series",
    "F_tilde",
    "F",
    "G_nonsym",
    "rank1_parameters",
    "rank1_phi",
    "rank1_F",
    "rank1_G",
    "rank1_phi_limit",
    "quoted_phi_limit",
    "gauss_summation_rank1",
    "kz_matrices",
    "kz_flatness_residual",
    "kz_flat_section_residual_rank1",
    "intertwiner_action_on_G_check",
]

DEFAULT_DEPTH = 24
POLE_TOL = 1e-6


class NearPole(ZeroDivisionError):
    """The recurrence hits (or nearly hits) a hyperplane H_kappa."""

    def __init__(self, kappa, value):
        super().__init__(f"(2 lam + kappa, kappa) = {value:.3g} for kappa = -{kappa} (simple coords)")
        self.kappa = kappa


class NotInPositiveChamber(ValueError):
    pass


class NonGenericSpectralParam(ValueError):
    pass


class ResonantParameter(ValueError):
    pass


class SingularPoint(ValueError):
    pass


class DepthExhausted(ValueError):
    pass


# small numeric helpers ---------------------------------------------------------

def _kvals(rs: RootSystem, k) -> tuple:
    if isinstance(k, Multiplicity):
        k = k.values
    if isinstance(k, (int, float, complex)):
        k = (k,)
    vals = tuple(complex(v) for v in k)
    if len(vals) == 1 and rs.orbit_count == 2:
        vals = vals * 2
    if len(vals) != rs.orbit_count:
        raise ValueError(f"{rs.label} needs {rs.orbit_count} multiplicity values")
    return vals


def _mult(rs: RootSystem, k) -> Multiplicity:
    return Multiplicity(rs, tuple(_as_real(v) for v in _kvals(rs, k)))


def _as_real(z: complex):
    return z.real if z.imag == 0 else z


class _Data:
    """Float versions of the root data used by every routine here."""

    _cache: dict = {}

    def __new__(cls, rs: RootSystem):
        hit = cls._cache.get(rs)
        if hit is not None:
            return hit
        self = super().__new__(cls)
        self.rs = rs
        self.n = rs.rank
        self.gram = np.array([[float(x) for x in row] for row in rs.weight_gram])
        pos = rs.positive_roots
        self.pos_weight = np.array([r.weight for r in pos], dtype=float)
        self.pos_simple = [tuple(int(x) for x in r.simple) for r in pos]
        self.pos_orbit = [r.orbit for r in pos]
        self.pos_coroot = np.array([r.coroot for r in pos], dtype=float)
        self.simple_weight = np.array([a.weight for a in rs.simple_roots], dtype=float)
        cls._cache[rs] = self
        return self

    def rho(self, kv) -> np.ndarray:
        return 0.5 * sum(kv[o] * w for o, w in zip(self.pos_orbit, self.pos_weight))

    def inner(self, a, b) -> complex:
        return complex(np.asarray(a) @ self.gram @ np.asarray(b))

    def kappa_weight(self, m) -> np.ndarray:
        return -(np.asarray(m, dtype=float) @ self.simple_weight)


def _check_chamber(rs: RootSystem, H) -> np.ndarray:
    H = np.asarray(H, dtype=complex)
    d = _Data(rs)
    vals = d.simple_weight @ H
    if np.any(vals.real <= 0):
        raise NotInPositiveChamber(f"H = {H.tolist()} is not in the positive chamber")
    return H


def _shells(n: int, depth: int):
    """Nonnegative integer tuples grouped by coordinate sum 0..depth."""
    for h in range(depth + 1):
        yield h, [m for m in itertools.product(range(h + 1), repeat=n) if sum(m) == h]


# spectral parameters ---------------------------------------------------------------

@dataclass
class SpectralParam:
    lam: tuple
    report: list = field(default_factory=list)

    @property
    def generic(self) -> bool:
        return not self.report


def genericity_report(rs: RootSystem, lam, depth: int = DEFAULT_DEPTH, tol: float = POLE_TOL) -> SpectralParam:
    """Pairs (alpha, n) with |lam(alpha^vee) + n| < tol, |n| <= depth."""
    lam = tuple(complex(x) for x in lam)
    out = []
    for r in rs.positive_roots:
        x = sum(a * b for a, b in zip(lam, r.coroot))
        n = round(-x.real)
        if abs(n) <= depth and abs(x + n) < tol:
            out.append((r.weight, n))
    return SpectralParam(lam, out)


# Harish-Chandra series -------------------------------------------------------------------

@dataclass
class HCSeries:
    """Gamma_kappa(lam, k) for kappa in Q_- up to the given depth."""

    rs: RootSystem
    lam: np.ndarray
    k: tuple
    depth: int
    table: dict

    @property
    def exponent(self) -> np.ndarray:
        return self.lam - _Data(self.rs).rho(self.k)

    def recurrence_residual(self) -> float:
        """Largest relative residual of the defining recurrence over the table."""
        return _recurrence_residual(self)

    def as_series(self) -> "AsymptoticSeries":
        return AsymptoticSeries(self.rs, (self.exponent,), {(0, m): c for m, c in self.table.items()}, self.depth)


def gamma_table(rs: RootSystem, k, lam, depth: int = DEFAULT_DEPTH) -> HCSeries:
    """Solve -(2 lam + kappa, kappa) G_kappa = 2 sum k_a sum_j (lam - rho + kappa + j a, a) G_{kappa + j a}."""
    d = _Data(rs)
    kv = _kvals(rs, k)
    lam = np.asarray(lam, dtype=complex)
    base = lam - d.rho(kv)
    table: dict = {}
    for h, shell in _shells(d.n, depth):
        for m in shell:
            if h == 0:
                table[m] = 1 + 0j
                continue
            kap = d.kappa_weight(m)
            lhs = -d.inner(2 * lam + kap, kap)
            if abs(lhs) < POLE_TOL:
                raise NearPole(m, abs(lhs))
            rhs = 0j
            for a, s in enumerate(d.pos_simple):
                ka = kv[d.pos_orbit[a]]
                if ka == 0:
                    continue
                alpha = d.pos_weight[a]
                j = 1
                while True:
                    mm = tuple(x - j * y for x, y in zip(m, s))
                    if min(mm) < 0:
                        break
                    g = table.get(mm, 0)
                    if g:
                        rhs += ka * d.inner(base + kap + j * alpha, alpha) * g
                    j += 1
            table[m] = 2 * rhs / lhs
    return HCSeries(rs, lam, kv, depth, table)


def _recurrence_residual(s: HCSeries) -> float:
    d = _Data(s.rs)
    base = s.exponent
    worst = 0.0
    for m, g in s.table.items():
        if not any(m):
            continue
        kap = d.kappa_weight(m)
        lhs = -d.inner(2 * s.lam + kap, kap) * g
        rhs = 0j
        scale = abs(lhs)
        for a, sm in enumerate(d.pos_simple):
            alpha = d.pos_weight[a]
            for j in itertools.count(1):
                mm = tuple(x - j * y for x, y in zip(m, sm))
                if min(mm) < 0:
                    break
                t = 2 * s.k[d.pos_orbit[a]] * d.inner(base + kap + j * alpha, alpha) * s.table[mm]
                rhs += t
                scale = max(scale, abs(t))
        if scale:
            worst = max(worst, abs(lhs - rhs) / scale)
    return worst


def phi_series(rs: RootSystem, k, lam, depth: int = DEFAULT_DEPTH) -> "AsymptoticSeries":
    return gamma_table(rs, k, lam, depth).as_series()


def phi_eval(series, H) -> tuple:
    """(Phi(a), tail estimate) at a = exp(H) in A_+."""
    if isinstance(series, HCSeries):
        series = series.as_series()
    H = _check_chamber(series.rs, H)
    return series.evaluate(H), series.tail_bound(H)


# asymptotic series ----------------------------------------------------------------

class AsymptoticSeries:
    """sum over (b, m) of c * e^{bases[b] + kappa(m)}, exact through ``depth``.

    Several leading exponents may share one object; this is what W-tuples of
    Harish-Chandra expansions need.
    """

    def __init__(self, rs: RootSystem, bases, terms: dict, depth: int):
        self.rs = rs
        self.bases = tuple(np.asarray(b, dtype=complex) for b in bases)
        self.terms = {key: c for key, c in terms.items() if c != 0 and sum(key[1]) <= depth}
        self.depth = depth

    def __add__(self, other: "AsymptoticSeries") -> "AsymptoticSeries":
        self._compatible(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return AsymptoticSeries(self.rs, self.bases, out, min(self.depth, other.depth))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, s) -> "AsymptoticSeries":
        return AsymptoticSeries(self.rs, self.bases, {key: s * c for key, c in self.terms.items()}, self.depth)

    def _compatible(self, other):
        if self.rs != other.rs or len(self.bases) != len(other.bases):
            raise ValueError("series with different exponent bases")

    def exponent(self, key) -> np.ndarray:
        b, m = key
        return self.bases[b] + _Data(self.rs).kappa_weight(m)

    def coefficient(self, b: int, m) -> complex:
        return self.terms.get((b, tuple(m)), 0)

    def derivative(self, eta) -> "AsymptoticSeries":
        eta = np.asarray(eta, dtype=complex)
        return AsymptoticSeries(
            self.rs, self.bases, {key: c * complex(self.exponent(key) @ eta) for key, c in self.terms.items()}, self.depth
        )

    def times_geometric(self, simple, sign_positive: bool) -> "AsymptoticSeries":
        """Multiply by the A_+ expansion of 1/(1 - e^{-beta}).

        beta > 0 has simple coordinates ``simple``: sum_{j>=0} e^{-j beta}.
        beta < 0 with -beta = gamma: -sum_{j>=1} e^{-j gamma}.
        """
        out: dict = {}
        step = sum(simple)
        for (b, m), c in self.terms.items():
            h = sum(m)
            j = 0 if sign_positive else 1
            coef = c if sign_positive else -c
            while h + j * step <= self.depth:
                key = (b, tuple(x + j * y for x, y in zip(m, simple)))
                out[key] = out.get(key, 0) + coef
                j += 1
        return AsymptoticSeries(self.rs, self.bases, out, self.depth)

    def shell_sums(self, H) -> np.ndarray:
        H = np.asarray(H, dtype=complex)
        sums = np.zeros(self.depth + 1)
        for key, c in self.terms.items():
            sums[sum(key[1])] += abs(c * cmath.exp(complex(self.exponent(key) @ H)))
        return sums

    def evaluate(self, H) -> complex:
        H = np.asarray(H, dtype=complex)
        total = 0j
        for key, c in self.terms.items():
            total += c * cmath.exp(complex(self.exponent(key) @ H))
        return total

    def tail_bound(self, H) -> float:
        """Geometric majorant from the last shells; a heuristic, not a proof."""
        d = _Data(self.rs)
        H = np.asarray(H, dtype=complex)
        r = float(np.max(np.exp(-(d.simple_weight @ H).real)))
        sums = self.shell_sums(H)
        last = sums[-1]
        if self.depth >= 1 and sums[-2] > 0:
            r = max(r, min(last / sums[-2], 0.99))
        if r >= 1:
            return math.inf
        return float(last * r / (1 - r))


def apply_L_series(rs: RootSystem, k, s: AsymptoticSeries) -> AsymptoticSeries:
    """L(k) = sum d_i^2 + sum_{a>0} k_a (a, .)(1 + e^{-a})/(1 - e^{-a}) on A_+."""
    d = _Data(rs)
    kv = _kvals(rs, k)
    out: dict = {}
    for key, c in s.terms.items():
        nu = s.exponent(key)
        out[key] = out.get(key, 0) + c * d.inner(nu, nu)
        b, m = key
        h = sum(m)
        for a, simple in enumerate(d.pos_simple):
            ka = kv[d.pos_orbit[a]]
            if ka == 0:
                continue
            coef = ka * d.inner(nu, d.pos_weight[a]) * c
            out[key] = out.get(key, 0) + coef
            step = sum(simple)
            j = 1
            while h + j * step <= s.depth:
                kk = (b, tuple(x + j * y for x, y in zip(m, simple)))
                out[kk] = out.get(kk, 0) + 2 * coef
                j += 1
    return AsymptoticSeries(rs, s.bases, out, s.depth)


class ChamberSeries:
    """A function f on A^reg stored through its restrictions f_w(a) = f(w a), a in A_+."""

    def __init__(self, rs: RootSystem, comps: dict):
        self.rs = rs
        self.group = rs.weyl_group()
        self.comps = comps

    @classmethod
    def invariant(cls, s: AsymptoticSeries) -> "ChamberSeries":
        return cls(s.rs, {w: s for w in s.rs.weyl_group()})

    def component(self, w=None) -> AsymptoticSeries:
        return self.comps[w if w is not None else self.rs.identity]

    def __add__(self, other):
        return ChamberSeries(self.rs, {w: self.comps[w] + other.comps[w] for w in self.group})

    def scale(self, s):
        return ChamberSeries(self.rs, {w: c.scale(s) for w, c in self.comps.items()})


def apply_T_series(rs: RootSystem, k, xi, f) -> ChamberSeries:
    """T_xi(k) on a ChamberSeries (an AsymptoticSeries is read as W-invariant).

    (T f)_w = d_{w^-1 xi} f_w + sum_{a>0} k_a a(xi) (f_w - f_{r_a w}) / (1 - e^{-w^-1 a}) - rho(k)(xi) f_w
    """
    if isinstance(f, AsymptoticSeries):
        f = ChamberSeries.invariant(f)
    d = _Data(rs)
    kv = _kvals(rs, k)
    xi = np.asarray(xi, dtype=complex)
    rho_xi = complex(d.rho(kv) @ xi)
    refl = [rs.reflection(r) for r in rs.positive_roots]
    out = {}
    for w in f.group:
        winv = w.inverse
        fw = f.comps[w]
        eta = _coweight_act(winv, xi)
        acc = fw.derivative(eta) - fw.scale(rho_xi)
        for a, r in enumerate(rs.positive_roots):
            ka = kv[d.pos_orbit[a]]
            a_xi = complex(d.pos_weight[a] @ xi)
            if ka == 0 or a_xi == 0:
                continue
            diff = fw - f.comps[refl[a] * w]
            if not diff.terms:
                continue
            beta = winv.root_image(r)
            simple = tuple(abs(int(x)) for x in beta.simple)
            acc = acc + diff.times_geometric(simple, beta.positive).scale(ka * a_xi)
        out[w] = acc
    return ChamberSeries(rs, out)


def _coweight_act(w, xi) -> np.ndarray:
    m = np.array(w.inverse.matrix, dtype=float)
    return m.T @ np.asarray(xi, dtype=complex)


# c-functions and F ----------------------------------------------------------------------

def c_tilde_numeric(rs: RootSystem, k, lam, w=None) -> complex:
    """c~_w(lam, k) as a complex number (w = identity by default)."""
    w = rs.identity if w is None else w
    return complex(c_tilde(rs, _mult(rs, k), w, tuple(complex(x) for x in lam), exact=False))


def _orbit_complex(rs: RootSystem, lam) -> list:
    out = []
    for w in rs.weyl_group():
        m = np.array(w.matrix, dtype=float)
        out.append((w, m @ np.asarray(lam, dtype=complex)))
    return out


def F_tilde_series(rs: RootSystem, k, lam, depth: int = DEFAULT_DEPTH, check_generic: bool = True) -> AsymptoticSeries:
    """sum_{w} c~(w lam, k) Phi(w lam, k) as one multi-exponent series on A_+."""
    rep = genericity_report(rs, lam, depth)
    if check_generic and not rep.generic:
        raise NonGenericSpectralParam(f"lam hits H_(n, alpha) for {rep.report}")
    bases, terms = [], {}
    for b, (w, wl) in enumerate(_orbit_complex(rs, lam)):
        c = c_tilde_numeric(rs, k, wl)
        s = gamma_table(rs, k, wl, depth)
        bases.append(s.exponent)
        for m, g in s.table.items():
            terms[(b, m)] = c * g
    return AsymptoticSeries(rs, bases, terms, depth)


def F_tilde(rs: RootSystem, k, lam, H, depth: int = DEFAULT_DEPTH) -> complex:
    H = _check_chamber(rs, H)
    return F_tilde_series(rs, k, lam, depth).evaluate(H)


def F(rs: RootSystem, k, lam, H, depth: int = DEFAULT_DEPTH) -> complex:
    """F = F~ / c~(rho(k), k)."""
    rho = _Data(rs).rho(_kvals(rs, k))
    return F_tilde(rs, k, lam, H, depth) / c_tilde_numeric(rs, k, rho)


# nonsymmetric G -----------------------------------------------------------------------

def _pick_xi(rs: RootSystem, orbit) -> np.ndarray:
    best, best_gap = None, -1.0
    for t in range(1, 40):
        xi = np.array([math.sqrt(p) for p in (2, 3, 5, 7, 11, 13, 17, 19)[: rs.rank]]) * (1 + 0.137 * t)
        xi = np.cos(t * np.arange(1, rs.rank + 1)) + 0.1 * xi
        vals = [complex(wl @ xi) for _, wl in orbit]
        gap = min(abs(vals[0] - v) for v in vals[1:]) if len(vals) > 1 else 1.0
        if gap > best_gap:
            best, best_gap = xi, gap
    return best


def G_nonsym(rs: RootSystem, k, lam, H, depth: int = DEFAULT_DEPTH, method: str = "series") -> complex:
    """Nonsymmetric hypergeometric function, T_xi G = lam(xi) G and G(e) = 1.

    ``method="series"`` applies |W| q(T) to the chamber expansion of F;
    ``method="closed"`` uses the rank-one Gauss function form.
    """
    kv = _kvals(rs, k)
    lam = np.asarray(lam, dtype=complex)
    for r in rs.positive_roots:
        x = complex(lam @ np.array(r.coroot, dtype=float))
        ka = kv[r.orbit]
        # the inverse q of symmetrization needs x != 0 and x != k_alpha only
        if abs(x) < POLE_TOL or abs(x - ka) < POLE_TOL:
            raise ResonantParameter(f"lam(alpha^vee) = {x} is 0 or k for alpha = {r.weight}")
    if method == "closed":
        if rs.rank != 1:
            raise ValueError("closed form exists in rank one only")
        return rank1_G(kv[0], lam[0], H)
    H = _check_chamber(rs, H)
    orbit = _orbit_complex(rs, lam)
    xi = _pick_xi(rs, orbit)
    lam_xi = complex(lam @ xi)
    d = _Data(rs)
    rho = d.rho(kv)
    fs = F_tilde_series(rs, kv, lam, depth).scale(1 / c_tilde_numeric(rs, kv, rho))
    g = ChamberSeries.invariant(fs)
    const = len(orbit)
    for r in rs.positive_roots:
        const /= 1 - kv[r.orbit] / complex(lam @ np.array(r.coroot, dtype=float))
    for w, wl in orbit[1:] if orbit[0][0] == rs.identity else orbit:
        if w == rs.identity:
            continue
        mu = complex(wl @ xi)
        g = apply_T_series(rs, kv, xi, g) + g.scale(-mu)
        const /= lam_xi - mu
    return const * g.component().evaluate(H)


# rank one ---------------------------------------------------------------------

def rank1_parameters(k: float, t) -> tuple:
    """Gauss parameters (a, b, c) for A_1 with lam(alpha^vee) = t.

    The A_1 root is identified with the short root of BC_1 (k_1 = k, k_2 = 0),
    so y = e^alpha, the BC_1 spectral variable is t/2 and z = 1/2 - (y + 1/y)/4.
    """
    lb = t / 2
    return lb + k / 2, -lb + k / 2, 0.5 + k


def _h(H):
    h = H[0] if isinstance(H, (tuple, list, np.ndarray)) else H
    return h if isinstance(h, (mpmath.mpf, mpmath.mpc)) else mpmath.mpmathify(complex(h))


def _z(y):
    return mpmath.mpf(1) / 2 - (y + 1 / y) / 4


def _rank1_F_mp(k, t, h):
    a, b, c = rank1_parameters(k, t)
    return mpmath.hyp2f1(a, b, c, _z(mpmath.exp(2 * h)))


def _rank1_G_mp(k, t, h):
    a, b, c = rank1_parameters(k, t)
    y = mpmath.exp(2 * h)
    z = _z(y)
    deriv = a * b / c * mpmath.hyp2f1(a + 1, b + 1, c + 1, z)
    return mpmath.hyp2f1(a, b, c, z) + (y - 1 / y) / (4 * b) * deriv


def rank1_F(k, t, H) -> complex:
    """F(lam, k; a) = 2F1(a, b; c; z) for A_1, a = exp(H)."""
    return complex(_rank1_F_mp(k, t, _h(H)))


def rank1_G(k, t, H) -> complex:
    """2F1(a,b;c;z) + (y - 1/y)/(4b) 2F1'(a,b;c;z)."""
    return complex(_rank1_G_mp(k, t, _h(H)))


def rank1_phi(k, t, H) -> complex:
    """Harish-Chandra series of A_1 through the Kummer solution at z = infinity."""
    a, b, c = rank1_parameters(k, t)
    y = mpmath.exp(2 * _h(H))
    z = _z(y)
    pref = mpmath.power(y, -b) * mpmath.power(1 - 1 / y, -2 * b)
    return complex(pref * mpmath.hyp2f1(b, b - c + 1, b - a + 1, 1 / z))


def rank1_phi_limit(k, t) -> complex:
    """lim_{a -> e} Phi(lam, k; a) for A_1 and Re k < 1/2.

    Equals Gamma(1-2k) Gamma(1-t) / (Gamma(1-k) Gamma(1-t-k)), i.e.
    c~_{w0}(-lam, -k) / c~_{w0}(-rho(k), -k).
    """
    g = mpmath.gamma
    return complex(g(1 - 2 * k) * g(1 - t) / (g(1 - k) * g(1 - t - k)))


def quoted_phi_limit(k, t) -> complex:
    """The closed value c~(-lam, 1-k) proposed for the same limit (A_1)."""
    return complex(mpmath.gamma(-t) / mpmath.gamma(-t + 1 - k))


def gauss_summation_rank1(k, t) -> complex:
    """F(lam, k; e) assembled from the limits of both Harish-Chandra series.

    Each limit is a Gauss-type connection coefficient; the result should be 1.
    """
    def ct(x, kk):
        return mpmath.gamma(x) / mpmath.gamma(x + kk)

    total = ct(t, k) * rank1_phi_limit(k, t) + ct(-t, k) * rank1_phi_limit(k, -t)
    return complex(total / ct(k, k))


# KZ connection -----------------------------------------------------------------------

@dataclass
class KZMatrices:
    rs: RootSystem
    H: np.ndarray
    lam: np.ndarray
    group: tuple
    M: list
    dM: list  # dM[i][j] = d_i M_j


def kz_matrices(rs: RootSystem, k, lam, H, eps_sign: int = 1) -> KZMatrices:
    """Connection matrices of nabla_{xi_i}, xi_i = alpha_i^vee, on C[W] at exp(H).

    M_xi = 1/2 sum_{a>0} k_a a(xi) [coth(a/2) (1 - r_a) + r_a eps_a] - diag(w lam (xi)),
    with r_a acting by left multiplication and eps_a(w) = eps_sign * sgn(w^-1 a) w.
    The default eps_sign = +1 is the sign for which sum_w G^w (x) w is flat;
    eps_sign = -1 gives the other (also flat) connection.
    """
    d = _Data(rs)
    kv = _kvals(rs, k)
    H = np.asarray(H, dtype=complex)
    lam = np.asarray(lam, dtype=complex)
    group = rs.weyl_group()
    index = {w: i for i, w in enumerate(group)}
    N = len(group)
    n = rs.rank
    eye = np.eye(N)
    M = [np.zeros((N, N), dtype=complex) for _ in range(n)]
    dM = [[np.zeros((N, N), dtype=complex) for _ in range(n)] for _ in range(n)]
    for a, r in enumerate(rs.positive_roots):
        ka = kv[d.pos_orbit[a]]
        if ka == 0:
            continue
        x = complex(d.pos_weight[a] @ H)
        if abs(x) < 1e-12:
            raise SingularPoint(f"alpha = {r.weight} vanishes at H")
        coth = 1 / cmath.tanh(x / 2)
        dcoth = -0.5 / cmath.sinh(x / 2) ** 2
        ra = rs.reflection(r)
        left = np.zeros((N, N))
        eps = np.zeros((N, N))
        for w in group:
            left[index[ra * w], index[w]] = 1
            eps[index[w], index[w]] = eps_sign * (1 if w.inverse.root_image(r).positive else -1)
        a_xi = d.pos_weight[a]  # alpha(alpha_i^vee) = alpha.weight[i]
        term = coth * (eye - left) + left @ eps
        dterm = dcoth * (eye - left)
        for j in range(n):
            if a_xi[j]:
                M[j] += 0.5 * ka * a_xi[j] * term
                for i in range(n):
                    if a_xi[i]:
                        dM[i][j] += 0.5 * ka * a_xi[j] * a_xi[i] * dterm
    for j in range(n):
        for w in group:
            wl = np.array(w.matrix, dtype=float) @ lam
            M[j][index[w], index[w]] -= wl[j]
    return KZMatrices(rs, H, lam, group, M, dM)


def kz_flatness_residual(m: KZMatrices) -> float:
    """max_{i<j} || d_i M_j - d_j M_i + [M_i, M_j] || (max-abs entry)."""
    worst = 0.0
    n = len(m.M)
    for i in range(n):
        for j in range(i + 1, n):
            curv = m.dM[i][j] - m.dM[j][i] + m.M[i] @ m.M[j] - m.M[j] @ m.M[i]
            worst = max(worst, float(np.max(np.abs(curv))))
    return worst


def kz_flat_section_residual_rank1(k, t, H, eps_sign: int = 1) -> float:
    """Apply nabla to sum_w G^w(lam, k) (x) w for A_1, using the closed-form G."""
    from .root_data import build_root_system

    rs = build_root_system("A1")
    h = complex(_h(H))
    signs = [1 if w == rs.identity else -1 for w in rs.weyl_group()]
    # G^w(a) = G(w^-1 a); w^-1 acts on H by a sign in rank one
    with mpmath.workdps(30):
        psi = np.array([complex(_rank1_G_mp(k, t, s * mpmath.mpmathify(h))) for s in signs])
        dpsi = np.array([
            complex(mpmath.diff(lambda x, s=s: _rank1_G_mp(k, t, s * x), mpmath.mpmathify(h)))
            for s in signs
        ])
    m = kz_matrices(rs, k, (t,), (h,), eps_sign)
    res = dpsi + m.M[0] @ psi
    return float(np.max(np.abs(res)) / max(1.0, float(np.max(np.abs(psi)))))


# intertwiners on G -----------------------------------------------------------------

def intertwiner_action_on_G_check(k, t, which: int, points=(2.0, 4.0, 8.0)) -> float:
    """Residual of I_i G(lam) = (lam(a_i) + k_i) G(r_i lam) in A_1, i in {0, 1}.

    The scalar is the product over the single affine root a_i that r_i makes
    negative, which fixes the inversion-set convention.
    """
    worst = 0.0
    for ya in points:
        h = math.log(ya) / 2
        g = rank1_G(k, t, (h,))
        g_ref = rank1_G(k, t, (-h,))  # G^{r}(a) = G(r a)
        if which == 1:
            lhs = t * g_ref + k * g
            rhs = (t + k) * rank1_G(k, -t, (h,))
        elif which == 0:
            # I_0 = pi(r_0)(1 - T_theta^vee) + k, pi(r_0) f = e^theta f^{r}; a_0 = 1 - theta^vee
            lhs = (1 - t) * cmath.exp(2 * h) * g_ref + k * g
            rhs = (1 - t + k) * rank1_G(k, 2 - t, (h,))
        else:
            lhs = rhs = g
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    return worst
