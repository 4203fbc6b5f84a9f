"""Root systems, Weyl groups and extended affine Weyl groups.

Conventions
-----------
Weights are integer tuples in the basis of fundamental weights, so the
coordinate ``i`` of ``lam`` is ``lam(alpha_i^vee)``.  Elements of the Cartan
subalgebra (the things Dunkl operators are indexed by) are rational tuples in
the basis of simple coroots; the pairing of a weight ``c`` with such a vector
``m`` is ``sum(c_i * m_i)``.

Simple roots follow the Bourbaki numbering.  Short roots have squared length
2; long roots have squared length 4 (B, C, F) or 6 (G).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .scalars import symbolic_field

__all__ = [
    "UnknownType",
    "GroupTooLarge",
    "Root",
    "RootSystem",
    "WeylElement",
    "ExtAffineWeylElement",
    "Multiplicity",
    "build_root_system",
    "all_weights_in_ball",
    "parse_cartan_type",
]

WEYL_ORDER_LIMIT = 51840


class UnknownType(ValueError):
    """Invalid Cartan type label."""


class GroupTooLarge(RuntimeError):
    """Refusal to enumerate a Weyl group above the configured size."""


def parse_cartan_type(label: str) -> tuple[str, int]:
    text = label.strip().upper().replace("_", "")
    if len(text) < 2 or text[0] not in "ABCDEFG" or not text[1:].isdigit():
        raise UnknownType(f"cannot parse Cartan type {label!r}")
    letter, n = text[0], int(text[1:])
    ok = {
        "A": n >= 1,
        "B": n >= 2,
        "C": n >= 2,
        "D": n >= 4,
        "E": n in (6, 7, 8),
        "F": n == 4,
        "G": n == 2,
    }[letter]
    if not ok:
        raise UnknownType(f"no root system of type {letter}{n}")
    return letter, n


def _dynkin(letter: str, n: int):
    """Half squared lengths of simple roots and the Dynkin edges (0-based)."""
    chain = [(i, i + 1) for i in range(n - 1)]
    if letter == "A":
        return [1] * n, chain
    if letter == "B":
        return [2] * (n - 1) + [1], chain
    if letter == "C":
        return [1] * (n - 1) + [2], chain
    if letter == "D":
        return [1] * n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if letter == "E":
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(i, i + 1) for i in range(4, n - 1)]
        return [1] * n, edges
    if letter == "F":
        return [2, 2, 1, 1], chain
    if letter == "G":
        return [1, 3], chain
    raise UnknownType(letter)


@dataclass(frozen=True)
class Root:
    index: int
    weight: tuple  # fundamental-weight coordinates
    simple: tuple  # simple-root coordinates
    coroot: tuple  # simple-coroot coordinates of alpha^vee
    norm2: int  # (alpha, alpha)
    positive: bool
    orbit: int  # 0 = short (or only) orbit, 1 = long

    @property
    def height(self) -> int:
        return sum(self.simple)


class RootSystem:
    """Immutable root datum of a reduced irreducible root system."""

    def __init__(self, letter: str, n: int):
        self.letter, self.rank = letter, n
        self.label = f"{letter}{n}"
        d, edges = _dynkin(letter, n)
        self.half_norms = tuple(d)
        gram = [[0] * n for _ in range(n)]
        for i in range(n):
            gram[i][i] = 2 * d[i]
        for i, j in edges:
            gram[i][j] = gram[j][i] = -max(d[i], d[j])
        self.simple_gram = tuple(tuple(r) for r in gram)
        # cartan[i][j] = alpha_j(alpha_i^vee)
        self.cartan = tuple(
            tuple(2 * gram[i][j] // gram[i][i] for j in range(n)) for i in range(n)
        )
        self._build_roots()

    # construction -----------------------------------------------------------
    def _build_roots(self):
        n = self.rank
        simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        found = set(simple)
        frontier = list(simple)
        while frontier:
            new = []
            for beta in frontier:
                for i in range(n):
                    # r_i(beta) in simple coordinates
                    c = sum(self.cartan[i][j] * beta[j] for j in range(n))
                    img = tuple(beta[j] - (c if j == i else 0) for j in range(n))
                    if img not in found:
                        found.add(img)
                        new.append(img)
            frontier = new
        pos = sorted((s for s in found if all(x >= 0 for x in s)), key=lambda s: (sum(s), s))
        neg = [tuple(-x for x in s) for s in pos]
        short2 = min(2 * x for x in self.half_norms)
        roots = []
        for idx, s in enumerate(pos + neg):
            norm2 = sum(s[i] * self.simple_gram[i][j] * s[j] for i in range(n) for j in range(n))
            weight = tuple(sum(self.cartan[i][j] * s[j] for j in range(n)) for i in range(n))
            coroot = tuple(
                Fraction(s[i] * self.simple_gram[i][i], norm2) for i in range(n)
            )
            assert all(c.denominator == 1 for c in coroot)
            roots.append(
                Root(
                    index=idx,
                    weight=weight,
                    simple=s,
                    coroot=tuple(int(c) for c in coroot),
                    norm2=norm2,
                    positive=idx < len(pos),
                    orbit=0 if norm2 == short2 else 1,
                )
            )
        self.roots = tuple(roots)
        self.positive_roots = tuple(roots[: len(pos)])
        self.n_pos = len(pos)
        self._by_weight = {r.weight: r.index for r in roots}
        self.simple_roots = tuple(roots[self._by_weight[tuple(self.cartan[i][j] for i in range(n))]]
                                  for j in range(n))
        self.orbit_count = 1 + max(r.orbit for r in roots)

    # basic lookups ------------------------------------------------------------
    def __repr__(self):
        return f"RootSystem({self.label})"

    def __eq__(self, other):
        return isinstance(other, RootSystem) and other.label == self.label

    def __hash__(self):
        return hash(self.label)

    def root_index(self, weight) -> int | None:
        return self._by_weight.get(tuple(weight))

    def negate_index(self, idx: int) -> int:
        return (idx + self.n_pos) % (2 * self.n_pos)

    @staticmethod
    def pairing(lam, coroot) -> object:
        """lam(alpha^vee) for a weight in fundamental coordinates."""
        return sum(a * b for a, b in zip(lam, coroot))

    def reflect(self, root: Root, lam):
        c = self.pairing(lam, root.coroot)
        return tuple(x - c * a for x, a in zip(lam, root.weight))

    @cached_property
    def cartan_inverse(self):
        return _inverse_matrix([[Fraction(x) for x in row] for row in self.cartan])

    def to_simple(self, lam) -> tuple:
        """Simple-root coordinates (exact rationals) of a weight."""
        inv = self.cartan_inverse
        n = self.rank
        # lam_i = sum_j cartan[i][j] s_j
        return tuple(sum(inv[j][i] * lam[i] for i in range(n)) for j in range(n))

    def from_simple(self, s) -> tuple:
        n = self.rank
        out = tuple(sum(self.cartan[i][j] * s[j] for j in range(n)) for i in range(n))
        return tuple(int(x) if isinstance(x, Fraction) and x.denominator == 1 else x for x in out)

    @cached_property
    def weight_gram(self):
        """(lambda_i, lambda_j) for fundamental weights."""
        n = self.rank
        inv = self.cartan_inverse
        return tuple(tuple(inv[i][j] * self.half_norms[i] for j in range(n)) for i in range(n))

    def inner(self, lam, mu):
        g = self.weight_gram
        n = self.rank
        return sum(lam[i] * g[i][j] * mu[j] for i in range(n) for j in range(n) if lam[i] and mu[j])

    def weight_to_coweight(self, lam) -> tuple:
        """The element xi of a with mu(xi) = (mu, lam) for all mu (simple-coroot coordinates)."""
        n = self.rank
        g = self.weight_gram
        # (mu, lam) = sum_i mu_i * sum_j g_ij lam_j
        return tuple(sum(g[i][j] * lam[j] for j in range(n)) for i in range(n))

    def coweight_to_weight(self, xi) -> tuple:
        n = self.rank
        # inverse of weight_gram maps back; (alpha_i, alpha_j) cartan relation
        s = [Fraction(0)] * n
        # xi_i = (lambda_i, lam) -> lam in simple coordinates: (lambda_i, alpha_j) = d_j delta_ij
        for j in range(n):
            s[j] = Fraction(xi[j]) / self.half_norms[j]
        return self.from_simple(s)

    def height(self, lam):
        return sum(self.to_simple(lam))

    def in_root_lattice(self, lam) -> bool:
        return all(Fraction(x).denominator == 1 for x in self.to_simple(lam))

    def is_dominant(self, lam) -> bool:
        return all(x >= 0 for x in lam)

    def is_regular(self, lam) -> bool:
        return all(self.pairing(lam, r.coroot) != 0 for r in self.positive_roots)

    # invariants -----------------------------------------------------------------
    @cached_property
    def rho(self) -> tuple:
        """delta = half the sum of positive roots = sum of fundamental weights."""
        return (1,) * self.rank

    @cached_property
    def theta(self) -> Root:
        """Highest short root."""
        shorts = [r for r in self.positive_roots if r.orbit == 0]
        return max(shorts, key=lambda r: r.height)

    @cached_property
    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    @cached_property
    def exponents(self) -> tuple:
        """Exponents via the height partition of the positive roots."""
        counts = {}
        for r in self.positive_roots:
            counts[r.height] = counts.get(r.height, 0) + 1
        h = max(counts)
        exps = []
        for m in range(1, h + 1):
            exps += [m] * (counts.get(m, 0) - counts.get(m + 1, 0))
        return tuple(sorted(exps))

    @cached_property
    def degrees(self) -> tuple:
        return tuple(m + 1 for m in self.exponents)

    @cached_property
    def weyl_order(self) -> int:
        out = 1
        for d in self.degrees:
            out *= d
        return out

    @cached_property
    def coxeter_number(self) -> int:
        return max(self.degrees)

    @cached_property
    def orbit_names(self) -> tuple:
        return ("k",) if self.orbit_count == 1 else ("k1", "k2")

    # Weyl group -------------------------------------------------------------------
    def simple_reflection(self, i: int) -> "WeylElement":
        return self.reflection(self.simple_roots[i])

    def reflection(self, root: Root) -> "WeylElement":
        n = self.rank
        mat = tuple(
            tuple((1 if r == c else 0) - root.weight[r] * root.coroot[c] for c in range(n))
            for r in range(n)
        )
        return WeylElement(self, mat)

    @cached_property
    def identity(self) -> "WeylElement":
        n = self.rank
        return WeylElement(self, tuple(tuple(int(r == c) for c in range(n)) for r in range(n)))

    @cached_property
    def longest_element(self) -> "WeylElement":
        w = self.identity
        while True:
            for i in range(self.rank):
                if w.root_image(self.simple_roots[i]).positive:
                    w = w * self.simple_reflection(i)
                    break
            else:
                return w

    def weyl_group(self, limit: int | None = None) -> tuple:
        """All elements, sorted by length (BFS order)."""
        limit = WEYL_ORDER_LIMIT if limit is None else limit
        if self.weyl_order > limit:
            raise GroupTooLarge(f"|W({self.label})| = {self.weyl_order} exceeds {limit}")
        return self._weyl_group

    @cached_property
    def _weyl_group(self) -> tuple:
        gens = [self.simple_reflection(i) for i in range(self.rank)]
        seen = {self.identity.matrix: self.identity}
        layer = [self.identity]
        out = [self.identity]
        while layer:
            nxt = []
            for w in layer:
                for s in gens:
                    v = s * w
                    if v.matrix not in seen:
                        seen[v.matrix] = v
                        nxt.append(v)
            out += nxt
            layer = nxt
        assert len(out) == self.weyl_order
        return tuple(out)

    def parabolic_subgroup(self, indices) -> tuple:
        gens = [self.simple_reflection(i) for i in indices]
        seen = {self.identity.matrix: self.identity}
        layer = [self.identity]
        while layer:
            nxt = []
            for w in layer:
                for s in gens:
                    v = w * s
                    if v.matrix not in seen:
                        seen[v.matrix] = v
                        nxt.append(v)
            layer = nxt
        return tuple(sorted(seen.values(), key=lambda w: w.length))

    def orbit(self, lam) -> list:
        """W-orbit of a weight, found by reflecting (no group enumeration)."""
        lam = tuple(lam)
        seen = {lam}
        frontier = [lam]
        while frontier:
            nxt = []
            for mu in frontier:
                for r in self.simple_roots:
                    nu = self.reflect(r, mu)
                    if nu not in seen:
                        seen.add(nu)
                        nxt.append(nu)
            frontier = nxt
        return sorted(seen)

    def dominant_representative(self, lam) -> tuple:
        """(lam_plus, w) with w(lam_plus) = lam and w longest with that property."""
        mu = tuple(lam)
        word = []
        while True:
            for i, x in enumerate(mu):
                if x < 0:
                    mu = self.reflect(self.simple_roots[i], mu)
                    word.append(i)
                    break
            else:
                break
        w = self.identity
        for i in word:
            w = w * self.simple_reflection(i)
        stab = [i for i, x in enumerate(mu) if x == 0]
        while True:
            for i in stab:
                if w.root_image(self.simple_roots[i]).positive:
                    w = w * self.simple_reflection(i)
                    break
            else:
                break
        return mu, w

    def stabilizer_longest(self, lam) -> "WeylElement":
        """Longest element of the stabilizer of a dominant weight."""
        stab = [i for i, x in enumerate(lam) if x == 0]
        w = self.identity
        while True:
            for i in stab:
                if w.root_image(self.simple_roots[i]).positive:
                    w = w * self.simple_reflection(i)
                    break
            else:
                return w

    def min_coset_reps(self, lam) -> tuple:
        """W^lam: minimal length representatives of W / W_lam (lam dominant)."""
        stab = [i for i, x in enumerate(lam) if x == 0]
        return tuple(
            w for w in self.weyl_group()
            if all(w.root_image(self.simple_roots[i]).positive for i in stab)
        )

    # orders -----------------------------------------------------------------------
    def dominance_leq(self, lam, mu) -> bool:
        """lam <= mu iff mu - lam is a nonnegative integer combination of simple roots."""
        diff = self.to_simple(tuple(b - a for a, b in zip(lam, mu)))
        return all(Fraction(x).denominator == 1 and x >= 0 for x in diff)

    def dominance_lt(self, lam, mu) -> bool:
        return tuple(lam) != tuple(mu) and self.dominance_leq(lam, mu)

    def cher_order_lt(self, lam, mu) -> bool:
        """The modified order: lam_+ < mu_+, or lam_+ = mu_+ and lam > mu."""
        lp, _ = self.dominant_representative(lam)
        mp, _ = self.dominant_representative(mu)
        if lp != mp:
            return self.dominance_lt(lp, mp)
        return self.dominance_lt(mu, lam)

    def dominant_weights_below(self, lam) -> list:
        """Dominant mu with mu <= lam (lam dominant)."""
        lam = tuple(lam)
        out = {lam}
        frontier = [lam]
        while frontier:
            nxt = []
            for mu in frontier:
                for r in self.positive_roots:
                    nu = tuple(a - b for a, b in zip(mu, r.weight))
                    if nu not in out and self.is_dominant(nu):
                        out.add(nu)
                        nxt.append(nu)
            frontier = nxt
        return sorted(out)

    def cher_ideal(self, lam) -> list:
        """All mu with mu ⊴ lam, listed from the top of the order downwards."""
        lp, _ = self.dominant_representative(lam)
        cands = []
        for nu in self.dominant_weights_below(lp):
            cands += self.orbit(nu)
        below = [mu for mu in cands if self.cher_order_lt(mu, lam)]
        return sorted(below, key=self.cher_sort_key)

    def cher_sort_key(self, mu):
        """A linear extension of ⊴, larger elements first."""
        mp, _ = self.dominant_representative(mu)
        return (-self.height(mp), self.height(mu), tuple(mu))

    # minuscule weights and Omega ---------------------------------------------------
    @cached_property
    def minuscule_indices(self) -> tuple:
        return tuple(i for i, c in enumerate(self.theta.coroot) if c == 1)

    def minuscule_weights(self) -> list:
        return [tuple(int(j == i) for j in range(self.rank)) for i in self.minuscule_indices]

    def omega_group(self) -> list:
        out = [ExtAffineWeylElement(self, (0,) * self.rank, self.identity)]
        w0 = self.longest_element
        for lam in self.minuscule_weights():
            w_lam = self.stabilizer_longest(lam)
            out.append(ExtAffineWeylElement(self, lam, w_lam * w0))
        return out

    # affine Weyl group ------------------------------------------------------------
    def affine_simple_root(self, i: int) -> tuple:
        """a_i as (root index, n) meaning [alpha^vee, n]; a_0 = [-theta^vee, 1]."""
        if i == 0:
            return (self.negate_index(self.theta.index), 1)
        return (self.simple_roots[i - 1].index, 0)

    def affine_simple_reflection(self, i: int) -> "ExtAffineWeylElement":
        if i == 0:
            th = self.theta
            return ExtAffineWeylElement(self, th.weight, self.reflection(th))
        return ExtAffineWeylElement(self, (0,) * self.rank, self.simple_reflection(i - 1))

    def translation(self, lam) -> "ExtAffineWeylElement":
        return ExtAffineWeylElement(self, tuple(lam), self.identity)

    def shortest_with_origin_image(self, lam) -> "ExtAffineWeylElement":
        """The unique shortest element w of W^e with w(0) = lam."""
        cands = [ExtAffineWeylElement(self, tuple(lam), u) for u in self.weyl_group()]
        best = min(c.length for c in cands)
        winners = [c for c in cands if c.length == best]
        assert len(winners) == 1, "shortest representative is not unique"
        return winners[0]

    # serialization -----------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "type": self.label,
            "rank": self.rank,
            "cartan_matrix": [list(r) for r in self.cartan],
            "simple_gram": [list(r) for r in self.simple_gram],
            "positive_roots": [
                {"simple": list(r.simple), "weight": list(r.weight), "coroot": list(r.coroot),
                 "norm2": r.norm2}
                for r in self.positive_roots
            ],
            "theta": list(self.theta.weight),
            "exponents": list(self.exponents),
            "weyl_order": self.weyl_order,
        }


_CACHE: dict = {}


def build_root_system(cartan_type: str) -> RootSystem:
    key = parse_cartan_type(cartan_type)
    if key not in _CACHE:
        _CACHE[key] = RootSystem(*key)
    return _CACHE[key]


class WeylElement:
    """Element of W as an integer matrix acting on fundamental-weight coordinates."""

    __slots__ = ("rs", "matrix", "__dict__")

    def __init__(self, rs: RootSystem, matrix):
        self.rs = rs
        self.matrix = matrix

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"WeylElement({self.reduced_word})"

    def act(self, lam):
        m = self.matrix
        return tuple(sum(row[c] * lam[c] for c in range(len(lam)) if row[c]) for row in m)

    def root_image(self, root: Root) -> Root:
        return self.rs.roots[self.rs.root_index(self.act(root.weight))]

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        a, b = self.matrix, other.matrix
        n = len(a)
        return WeylElement(
            self.rs,
            tuple(tuple(sum(a[r][t] * b[t][c] for t in range(n)) for c in range(n)) for r in range(n)),
        )

    @cached_property
    def length(self) -> int:
        return sum(1 for r in self.rs.positive_roots if not self.root_image(r).positive)

    @cached_property
    def sign(self) -> int:
        return -1 if self.length % 2 else 1

    @cached_property
    def reduced_word(self) -> tuple:
        w = self
        word = []
        while True:
            for i, a in enumerate(self.rs.simple_roots):
                if not w.root_image(a).positive:
                    word.append(i)
                    w = w * self.rs.simple_reflection(i)
                    break
            else:
                break
        return tuple(reversed(word))

    @cached_property
    def inverse(self) -> "WeylElement":
        w = self.rs.identity
        for i in reversed(self.reduced_word):
            w = w * self.rs.simple_reflection(i)
        return w

    def coweight_act(self, xi):
        """Action on a (simple-coroot coordinates), dual to the weight action."""
        # mu(w xi) = (w^{-1} mu)(xi); w^{-1} has matrix M', so (w xi)_c = sum_r M'[r][c] xi_r
        m = self.inverse.matrix
        n = len(m)
        return tuple(sum(m[r][c] * xi[r] for r in range(n)) for c in range(n))


class ExtAffineWeylElement:
    """t_lam * u in W^e = W ⋉ P, acting on weights by mu -> u(mu) + lam."""

    def __init__(self, rs: RootSystem, trans, fin: WeylElement):
        self.rs = rs
        self.trans = tuple(trans)
        self.fin = fin

    def __eq__(self, other):
        return (
            isinstance(other, ExtAffineWeylElement)
            and self.trans == other.trans
            and self.fin == other.fin
        )

    def __hash__(self):
        return hash((self.trans, self.fin.matrix))

    def __repr__(self):
        return f"ExtAffineWeylElement(t={self.trans}, w={self.fin.reduced_word})"

    def act(self, mu):
        img = self.fin.act(mu)
        return tuple(a + b for a, b in zip(img, self.trans))

    def __mul__(self, other: "ExtAffineWeylElement") -> "ExtAffineWeylElement":
        shift = self.fin.act(other.trans)
        return ExtAffineWeylElement(
            self.rs, tuple(a + b for a, b in zip(self.trans, shift)), self.fin * other.fin
        )

    @cached_property
    def inverse(self) -> "ExtAffineWeylElement":
        uinv = self.fin.inverse
        return ExtAffineWeylElement(self.rs, tuple(-x for x in uinv.act(self.trans)), uinv)

    def act_affine_root(self, aroot):
        """Image of [alpha^vee, n] under the dual action."""
        idx, n = aroot
        img = self.fin.root_image(self.rs.roots[idx])
        return (img.index, n - self.rs.pairing(self.trans, img.coroot))

    def _is_positive(self, aroot) -> bool:
        idx, n = aroot
        return n > 0 or (n == 0 and self.rs.roots[idx].positive)

    def inversion_set(self) -> list:
        """Positive affine roots a with self(a) negative."""
        out = []
        for r in self.rs.roots:
            img = self.fin.root_image(r)
            m = self.rs.pairing(self.trans, img.coroot)
            n0 = 0 if r.positive else 1
            for n in range(n0, max(n0, m) + 1):
                if n < m or (n == m and not img.positive):
                    out.append((r.index, n))
        return out

    @cached_property
    def length(self) -> int:
        total = 0
        for r in self.rs.roots:
            img = self.fin.root_image(r)
            m = self.rs.pairing(self.trans, img.coroot)
            n0 = 0 if r.positive else 1
            total += max(0, m - n0)
            if m >= n0 and not img.positive:
                total += 1
        return total

    @cached_property
    def reduced_word(self) -> tuple:
        """(omega, [i_1..i_l]) with self = omega r_{i_1} ... r_{i_l}."""
        w = self
        word = []
        while w.length > 0:
            for i in range(self.rs.rank + 1):
                if not self._is_positive(w.act_affine_root(self.rs.affine_simple_root(i))):
                    w = w * self.rs.affine_simple_reflection(i)
                    word.append(i)
                    break
            else:  # pragma: no cover - length > 0 always has a descent
                raise AssertionError("no descent found")
        return w, tuple(reversed(word))

    @staticmethod
    def from_word(rs: RootSystem, omega: "ExtAffineWeylElement", word) -> "ExtAffineWeylElement":
        e = omega
        for i in word:
            e = e * rs.affine_simple_reflection(i)
        return e


class Multiplicity:
    """W-invariant multiplicity function, one value per root-length orbit."""

    def __init__(self, rs: RootSystem, values):
        values = tuple(values)
        if len(values) == 1 and rs.orbit_count == 2:
            values = values * 2
        if len(values) != rs.orbit_count:
            raise ValueError(f"{rs.label} needs {rs.orbit_count} multiplicity values")
        self.rs = rs
        self.values = values

    @classmethod
    def symbolic(cls, rs: RootSystem) -> "Multiplicity":
        field = symbolic_field(rs.orbit_names)
        return cls(rs, field.gens())

    @classmethod
    def shifted(cls, k: "Multiplicity", delta) -> "Multiplicity":
        return cls(k.rs, tuple(v + delta for v in k.values))

    def __repr__(self):
        return f"Multiplicity({self.rs.label}, {self.values})"

    def __eq__(self, other):
        return isinstance(other, Multiplicity) and other.rs == self.rs and other.values == self.values

    def __hash__(self):
        return hash((self.rs, self.values))

    def of(self, root: Root):
        return self.values[root.orbit]

    @property
    def k0(self):
        return self.of(self.rs.theta)

    def as_dict(self) -> dict:
        return dict(zip(self.rs.orbit_names, self.values))

    @cached_property
    def rho(self) -> tuple:
        """rho(k) = 1/2 sum_{alpha>0} k_alpha alpha, fundamental coordinates."""
        n = self.rs.rank
        out = [0] * n
        for r in self.rs.positive_roots:
            kv = self.of(r)
            for i in range(n):
                if r.weight[i]:
                    out[i] = out[i] + kv * r.weight[i]
        return tuple(x * Fraction(1, 2) if not isinstance(x, (float, complex)) else x / 2 for x in out)

    def is_integral_nonneg(self) -> bool:
        return all(isinstance(v, int) or (isinstance(v, Fraction) and v.denominator == 1)
                   for v in self.values) and all(v >= 0 for v in self.values)


def _inverse_matrix(m):
    n = len(m)
    a = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def all_weights_in_ball(rs: RootSystem, radius: int) -> list:
    """Weights with sum of absolute fundamental coordinates at most radius."""
    rng = range(-radius, radius + 1)
    return [lam for lam in itertools.product(rng, repeat=rs.rank) if sum(map(abs, lam)) <= radius]
