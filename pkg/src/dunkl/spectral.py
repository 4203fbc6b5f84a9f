"""Plancherel densities, integrability and residual subspaces (attractive case).

Weights and points of a* are in fundamental-weight coordinates, so that
alpha^vee(lam) = sum_i coroot_i lam_i.  Residual subspaces are enumerated
exactly over the rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate, special

from .root_data import Multiplicity, RootSystem

__all__ = [
    "PoleAtArgument",
    "NotIntegrable",
    "NotNormalCrossing",
    "OriginNotInAntidual",
    "PlancherelDensity",
    "ResidualSubspace",
    "sigma_densities",
    "sigma_functional_equation_residual",
    "integrability_check",
    "enumerate_residual",
    "residual_density",
    "normal_crossing_residue",
    "rank1_plancherel_checks",
]


class PoleAtArgument(ZeroDivisionError):
    pass


class NotIntegrable(ValueError):
    pass


class NotNormalCrossing(ValueError):
    pass


class OriginNotInAntidual(ValueError):
    pass


def _kvals(rs: RootSystem, k) -> tuple:
    if isinstance(k, Multiplicity):
        k = k.values
    if isinstance(k, (int, float, complex, Fraction)):
        k = (k,)
    vals = tuple(k)
    if len(vals) == 1 and rs.orbit_count == 2:
        vals = vals * 2
    if len(vals) != rs.orbit_count:
        raise ValueError(f"{rs.label} needs {rs.orbit_count} multiplicity values")
    return vals


def _pair(lam, coroot):
    return sum(a * b for a, b in zip(lam, coroot))


def _gamma(z: complex) -> complex:
    r = special.rgamma(complex(z))
    if r == 0:
        raise PoleAtArgument(f"Gamma has a pole at {z}")
    return 1 / r


def _rgamma(z: complex) -> complex:
    return complex(special.rgamma(complex(z)))


# densities -------------------------------------------------------------------

@dataclass
class PlancherelDensity:
    mode: str
    lam: tuple
    value: complex
    note: str = ""


def _c_tilde(rs, kv, lam) -> complex:
    out = 1 + 0j
    for r in rs.positive_roots:
        x = complex(_pair(lam, r.coroot))
        out *= _gamma(x) * _rgamma(x + complex(kv[r.orbit]))
    return out


def sigma_densities(rs: RootSystem, k, lam) -> dict:
    """sigma, sigma' and the c-function forms of sigma' at lam.

    sigma(lam)  = prod Gamma(x + k) Gamma(-x + k + 1) / (Gamma(x) Gamma(-x + 1))
    sigma'(lam) = prod Gamma(x + k) Gamma(-x + k) / (Gamma(x) Gamma(-x)),  x = lam(alpha^vee)
    """
    kv = _kvals(rs, k)
    sig = 1 + 0j
    sigp = 1 + 0j
    for r in rs.positive_roots:
        x = complex(_pair(lam, r.coroot))
        kk = complex(kv[r.orbit])
        sig *= _gamma(x + kk) * _gamma(-x + kk + 1) * _rgamma(x) * _rgamma(-x + 1)
        sigp *= _gamma(x + kk) * _gamma(-x + kk) * _rgamma(x) * _rgamma(-x)
    neg = tuple(-complex(x) for x in lam)
    ct = _c_tilde(rs, kv, lam) * _c_tilde(rs, kv, neg)
    rho = tuple(complex(x) for x in Multiplicity(rs, [complex(v).real for v in kv]).rho)
    ct_rho = _c_tilde(rs, kv, rho)
    return {
        "sigma": PlancherelDensity("sigma", tuple(lam), sig),
        "sigma_prime": PlancherelDensity("sigma'", tuple(lam), sigp),
        # sigma' = 1/(c~(lam) c~(-lam)); with c = c~/c~(rho) this is c~(rho)^-2 / (c(lam) c(-lam))
        "one_over_ct_ct": 1 / ct,
        "one_over_c_c": ct_rho ** 2 / ct,
        "c_tilde_rho": ct_rho,
    }


def sigma_functional_equation_residual(rs: RootSystem, k, lam, i: int) -> float:
    """|(1 + k_i/lam(a_i)) sigma(lam) - (1 - k_i/lam(a_i)) sigma(r_i lam)|, relative.

    a_0 = 1 - theta^vee acts as the affine function lam -> 1 - lam(theta^vee).
    """
    kv = _kvals(rs, k)
    lam = tuple(complex(x) for x in lam)
    if i == 0:
        th = rs.theta
        ai = 1 - complex(_pair(lam, th.coroot))
        img = tuple(x - (complex(_pair(lam, th.coroot)) - 1) * w for x, w in zip(lam, th.weight))
        ki = complex(kv[th.orbit])
    else:
        a = rs.simple_roots[i - 1]
        ai = complex(_pair(lam, a.coroot))
        img = tuple(x - ai * w for x, w in zip(lam, a.weight))
        ki = complex(kv[a.orbit])
    lhs = (1 + ki / ai) * sigma_densities(rs, kv, lam)["sigma"].value
    rhs = (1 - ki / ai) * sigma_densities(rs, kv, img)["sigma"].value
    return abs(lhs - rhs) / max(1.0, abs(lhs))


# integrability ----------------------------------------------------------------

def integrability_check(rs: RootSystem, k) -> bool:
    """Local integrability of delta_k.

    k >= 0: yes.  All k < 0: rho(k)(theta^vee) + k_theta + 1 > 0.  Mixed signs:
    sufficient test that c~(rho(k), k) stays positive on the segment to the
    clipped parameter max(k, 0).
    """
    kv = _kvals(rs, k)
    if all(v >= 0 for v in kv):
        return True
    if all(v < 0 for v in kv):
        m = Multiplicity(rs, kv)
        th = rs.theta
        return _pair(m.rho, th.coroot) + kv[th.orbit] + 1 > 0
    target = [max(v, 0) for v in kv]
    for s in np.linspace(0, 1, 201):
        kk = [float(v) + s * (t - float(v)) for v, t in zip(kv, target)]
        rho = Multiplicity(rs, kk).rho
        try:
            val = _c_tilde(rs, kk, rho)
        except PoleAtArgument:
            return False
        if not val.real > 0:
            return False
    return True


# residual subspaces ---------------------------------------------------------------

def _rref(rows):
    """Reduced row echelon form over Q; rows are lists of Fractions (last entry = rhs)."""
    m = [list(r) for r in rows]
    ncols = len(m[0]) - 1 if m else 0
    piv_cols = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
    for row in m[r:]:
        if row[-1] != 0:
            return None, None  # inconsistent
    return tuple(tuple(row) for row in m[:r]), tuple(piv_cols)


@dataclass(frozen=True)
class ResidualSubspace:
    """L = basepoint + span(directions) in a* (fundamental coordinates)."""

    equations: tuple  # RREF rows (coefficients..., rhs) in lam coordinates
    basepoint: tuple
    directions: tuple
    center: tuple
    n_k: int
    n_0: int
    codim: int
    R_L: tuple  # indices of roots with alpha^vee constant on L
    minus_center_in_orbit: bool

    @property
    def dim(self) -> int:
        return len(self.directions)

    @property
    def distinguished(self) -> bool:
        return self.dim == 0

    @property
    def equality_holds(self) -> bool:
        return self.n_k == self.n_0 + self.codim

    def to_json(self) -> dict:
        s = str
        return {
            "basepoint": [s(x) for x in self.basepoint],
            "directions": [[s(x) for x in d] for d in self.directions],
            "center": [s(x) for x in self.center],
            "counts": {"n_k": self.n_k, "n_0": self.n_0, "codim": self.codim},
            "distinguished": self.distinguished,
            "minus_center_in_orbit": self.minus_center_in_orbit,
        }


def _solve_affine(rs: RootSystem, eqs):
    n = rs.rank
    piv = eqs[1]
    rows = eqs[0]
    base = [Fraction(0)] * n
    for row, c in zip(rows, piv):
        base[c] = row[-1]
    free = [c for c in range(n) if c not in piv]
    dirs = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, c in zip(rows, piv):
            v[c] = -row[f]
        dirs.append(tuple(v))
    return tuple(base), tuple(dirs)


def _gram(rs):
    return [[Fraction(x) for x in row] for row in rs.weight_gram]


def _ip(g, a, b):
    n = len(a)
    return sum(a[i] * g[i][j] * b[j] for i in range(n) for j in range(n) if a[i] and b[j])


def _project_origin(rs, base, dirs):
    """Orthogonal projection of 0 onto base + span(dirs)."""
    if not dirs:
        return base
    g = _gram(rs)
    m = len(dirs)
    A = [[_ip(g, dirs[i], dirs[j]) for j in range(m)] + [-_ip(g, dirs[i], base)] for i in range(m)]
    rows, piv = _rref(A)
    coef = [Fraction(0)] * m
    for row, c in zip(rows, piv):
        coef[c] = row[-1]
    return tuple(b + sum(c * d[i] for c, d in zip(coef, dirs)) for i, b in enumerate(base))


def _reflect(lam, root):
    c = _pair(lam, root.coroot)
    return tuple(x - c * w for x, w in zip(lam, root.weight))


def _orbit_under(roots, point, limit=100000):
    seen = {point}
    todo = [point]
    while todo:
        p = todo.pop()
        for r in roots:
            q = _reflect(p, r)
            if q not in seen:
                seen.add(q)
                todo.append(q)
                if len(seen) > limit:  # pragma: no cover
                    raise RuntimeError("orbit too large")
    return seen


def enumerate_residual(rs: RootSystem, k, dominance_filter: bool = False) -> list:
    """All residual subspaces for the shifted arrangement alpha^vee(lam) = k_alpha, alpha in R.

    Subspaces are generated as intersections of the shifted hyperplanes.  This
    is complete: if L satisfies the inequality form, so does the intersection
    L' of the shifted hyperplanes containing it, and equality at L' forces
    L = L'.  Every output is checked for the equality form and the center
    symmetry; failures are reported in the returned objects, not hidden.
    With ``dominance_filter`` only centers in the closure of a*_- are kept.
    """
    kv = tuple(Fraction(v) for v in _kvals(rs, k))
    if any(v == 0 for v in kv):
        raise ValueError("enumeration needs k_alpha != 0 for every alpha")
    n = rs.rank
    hyper = [tuple(Fraction(c) for c in r.coroot) + (kv[r.orbit],) for r in rs.roots]
    start = ((), ())
    lattice = {start: None}
    frontier = [start]
    while frontier:
        nxt = []
        for eqs in frontier:
            rows = list(eqs[0])
            for h in hyper:
                cand_rows, cand_piv = _rref(rows + [list(h)])
                if cand_rows is None or len(cand_rows) == len(rows):
                    continue
                key = (cand_rows, cand_piv)
                if key not in lattice:
                    lattice[key] = None
                    nxt.append(key)
        frontier = nxt
    out = []
    for eqs in lattice:
        base, dirs = _solve_affine(rs, eqs)
        n_k = n_0 = 0
        R_L = []
        for r in rs.roots:
            if any(_pair(d, r.coroot) != 0 for d in dirs):
                continue
            R_L.append(r.index)
            v = _pair(base, r.coroot)
            if v == kv[r.orbit]:
                n_k += 1
            if v == 0:
                n_0 += 1
        codim = n - len(dirs)
        if n_k < n_0 + codim:
            continue
        center = _project_origin(rs, base, dirs)
        if dominance_filter and any(_pair(center, r.coroot) > 0 for r in rs.positive_roots):
            continue
        roots_L = [rs.roots[i] for i in R_L]
        minus = tuple(-x for x in center)
        in_orbit = minus in _orbit_under(roots_L, center)
        out.append(ResidualSubspace(eqs[0], base, dirs, center, n_k, n_0, codim, tuple(R_L), in_orbit))
    out.sort(key=lambda L: (L.codim, L.center, L.equations))
    return out


def residual_density(rs: RootSystem, k, L: ResidualSubspace, lam) -> PlancherelDensity:
    """f_L(lam, k) = c~(rho(k), k)^2 prod' Gamma(lam(a^vee) + k_a) / prod' Gamma(lam(a^vee)).

    The products run over a in R and skip the factors that are identically
    singular on L.  gamma_L(k) is not included.
    """
    kv = _kvals(rs, k)
    kf = [complex(float(v)) for v in kv]
    rho = Multiplicity(rs, [float(v) for v in kv]).rho
    val = _c_tilde(rs, kf, rho) ** 2
    for r in rs.roots:
        const = all(_pair(d, r.coroot) == 0 for d in L.directions)
        x = complex(_pair([complex(float(c)) if isinstance(c, Fraction) else complex(c) for c in lam], r.coroot))
        kk = kf[r.orbit]
        c_val = _pair(L.basepoint, r.coroot) if const else None
        if not (const and c_val + kv[r.orbit] <= 0 and Fraction(c_val + kv[r.orbit]).denominator == 1):
            val *= _gamma(x + kk)
        if not (const and c_val <= 0 and Fraction(c_val).denominator == 1):
            val *= _rgamma(x)
    return PlancherelDensity("f_L", tuple(lam), val, note="gamma_L(k) not included")


# residues ---------------------------------------------------------------------

def normal_crossing_residue(alphas, ks, phi_c, gram=None, gamma=None) -> dict:
    """Local contribution of prod ((lam, a_H) - k_H)^-1 dlam at a normal crossing.

    ``alphas`` are n independent vectors (rows, coordinates in a basis with
    Gram matrix ``gram``; identity by default).  Returns both closed forms:
    (-2 pi i)^n det((a_H, a_H'))^{-1/2} phi(c) and (-2 pi i)^n phi(c) / covol.
    """
    A = np.array(alphas, dtype=float)
    n = A.shape[1]
    if A.shape[0] != n:
        raise NotNormalCrossing(f"need exactly {n} hyperplanes through the point")
    G = np.eye(n) if gram is None else np.array(gram, dtype=float)
    M = A @ G @ A.T
    det = float(np.linalg.det(M))
    if abs(det) < 1e-14:
        raise NotNormalCrossing("hyperplane normals are dependent")
    c = np.linalg.solve(A @ G, np.array(ks, dtype=float))
    if gamma is not None:
        g = np.array(gamma, dtype=float)
        if np.any(A @ G @ g >= np.array(ks, dtype=float)):
            raise ValueError("gamma must satisfy (gamma, a_H) < k_H for every H")
    # origin in the antidual cone: -c = sum t_H a_H with t_H >= 0
    t = np.linalg.solve(A.T, -c)
    if np.any(t < -1e-12):
        raise OriginNotInAntidual("the origin is not in the closed antidual cone; the contribution vanishes")
    pref = (-2j * math.pi) ** n
    covol = abs(float(np.linalg.det(A))) * math.sqrt(float(np.linalg.det(G)))
    return {
        "center": c.tolist(),
        "det_form": pref * det ** -0.5 * phi_c,
        "covolume_form": pref / covol * phi_c,
    }


# rank one Plancherel ----------------------------------------------------------------

def rank1_plancherel_checks(k: float, cutoff: float = 15.0) -> dict:
    """A_1: int_A delta_k(a) da against binom(2k, k) pi / sin(-pi k).

    With a = exp(h alpha^vee) and covol(Q^vee) = 1 the integral is
    int_R |2 sinh h|^{2k} dh.  Quadrature: algebraic weight at 0, plain on
    [1, cutoff], analytic tail beyond (cutoff 15 is a^alpha = e^30).
    """
    from .root_data import build_root_system

    rs = build_root_system("A1")
    if not integrability_check(rs, Fraction(k).limit_denominator(10**9)):
        raise NotIntegrable(f"delta_k is not integrable for k = {k}")
    if k >= 0:
        raise NotIntegrable("the total integral is finite only for k < 0")
    p = 2 * k
    near, err1 = integrate.quad(lambda h: (math.sinh(h) / h) ** p * 2 ** p if h else 2 ** p,
                                0, 1, weight="alg", wvar=(p, 0), epsabs=1e-14, epsrel=1e-13)
    mid, err2 = integrate.quad(lambda h: (2 * math.sinh(h)) ** p, 1, cutoff, epsabs=1e-14, epsrel=1e-13, limit=200)
    # |2 sinh h|^p = e^{p h} (1 - e^{-2h})^p = sum_j binom(p, j) (-1)^j e^{(p - 2j) h}
    tail = 0.0
    for j in range(0, 30):
        term = special.binom(p, j) * (-1) ** j * math.exp((p - 2 * j) * cutoff) / (2 * j - p)
        tail += term
        if abs(term) < 1e-18:
            break
    quad = 2 * (near + mid + tail)
    closed = special.binom(2 * k, k) * math.pi / math.sin(-math.pi * k)
    gamma_form = 2 * special.gamma(2 * k) * special.gamma(-k) / special.gamma(k)
    # square-norm expression for F(rho(k), k) = 1 without the factor +-gamma_L^-1
    cor_ratio = special.gamma(2 * k) * special.gamma(-k) / special.gamma(k) / 2
    return {
        "k": k,
        "quadrature": quad,
        "quadrature_error_estimate": 2 * (err1 + err2),
        "closed_form": closed,
        "gamma_form": gamma_form,
        "relative_error": abs(quad - closed) / abs(closed),
        "square_norm_ratio_without_gamma_L": cor_ratio,
        "implied_gamma_L": cor_ratio / quad,
    }
