"""ADE root lattices, A_n fixed-point data and equivariant pairings.

Curve classes are integer vectors in the basis E_1..E_n of exceptional curves,
with E_i.E_j = -C_ij.  Divisor classes use the dual basis omega_1..omega_n
(omega_i.E_j = delta_ij), and cohomology classes the basis {1, omega_1..omega_n}.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

from .algebra.ratfunc import T1, T2
from .algebra.scalars import Q

__all__ = [
    "SurfaceModel", "CohClass", "build_surface", "intersection", "equivariant_pairing",
    "is_root_multiple", "s_monomial", "alpha", "parse_surface",
]


def _cartan(kind: str, n: int) -> tuple:
    c = [[0] * n for _ in range(n)]
    for i in range(n):
        c[i][i] = 2
    edges = []
    if kind == "A":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif kind == "D":
        if n < 4:
            raise ValueError("D(n) needs n >= 4")
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    elif kind == "E":
        if n not in (6, 7, 8):
            raise ValueError("E(n) needs n in 6, 7, 8")
        # Bourbaki labelling: 1-3-4-5-6-7-8 with 2 attached to 4
        edges = [(0, 2), (1, 3), (2, 3)] + [(k, k + 1) for k in range(3, n - 1)]
    else:
        raise ValueError(f"unknown ADE type {kind!r}")
    for i, j in edges:
        c[i][j] = c[j][i] = -1
    return tuple(tuple(r) for r in c)


def _positive_roots(cartan: tuple) -> tuple:
    n = len(cartan)
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                pair = sum(cartan[i][j] * beta[j] for j in range(n))
                if pair == 0:
                    continue
                img = list(beta)
                img[i] -= pair
                img = tuple(img)
                if all(x >= 0 for x in img) and any(img) and img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return tuple(sorted(seen, key=lambda r: (sum(r), tuple(-x for x in r))))


def _inverse(mat) -> tuple:
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for c in range(n):
        p = next(i for i in range(c, n) if a[i][c])
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(tuple(Q(x) for x in row[n:]) for row in a)


@dataclass(frozen=True)
class SurfaceModel:
    """Lattice data of an ADE resolution (plus toric weights for type A)."""

    kind: str
    rank: int
    cartan: tuple = field(repr=False)
    positive_roots: tuple = field(repr=False)
    fixed_points: tuple = field(repr=False, default=())

    @property
    def name(self) -> str:
        return f"{self.kind}{self.rank}"

    @property
    def is_toric(self) -> bool:
        return self.kind == "A"

    @cached_property
    def cartan_inverse(self) -> tuple:
        return _inverse(self.cartan)

    def root_index(self, beta) -> int:
        return self.positive_roots.index(tuple(beta))

    def omega_pairing(self, beta, l: int) -> int:
        """beta . omega_l for a curve class (l is 1-based)."""
        return tuple(beta)[l - 1]

    def edge_weight(self, i: int, at: int):
        """Tangent weight along E_i at its endpoint p_i (at=i) or p_{i+1} (at=i+1)."""
        if at == i:
            return self.fixed_points[i - 1][1]
        if at == i + 1:
            return self.fixed_points[i][0]
        raise ValueError("E_i only meets p_i and p_{i+1}")

    def restriction(self, cls: "CohClass", point: int):
        """Restriction of an equivariant class to the fixed point p_point (1-based)."""
        if not self.is_toric:
            raise ValueError("fixed-point data exists only for A-type surfaces")
        val = cls.coeffs[0]
        e_restr = [self._divisor_restriction(i, point) for i in range(1, self.rank + 1)]
        cinv = self.cartan_inverse
        for l in range(1, self.rank + 1):
            c = cls.coeffs[l]
            if not c:
                continue
            # omega_l = -sum_j Cinv[l][j] E_j
            for j in range(1, self.rank + 1):
                if cinv[l - 1][j - 1] and e_restr[j - 1]:
                    val = val - c * cinv[l - 1][j - 1] * e_restr[j - 1]
        return val

    def _divisor_restriction(self, i: int, point: int):
        if point == i:
            return self.fixed_points[i - 1][0]
        if point == i + 1:
            return self.fixed_points[i][1]
        return Q(0)

    def euler(self, point: int):
        a, b = self.fixed_points[point - 1]
        return a * b


@lru_cache(maxsize=None)
def build_surface(kind: str, n: int | None = None) -> SurfaceModel:
    """``build_surface("A", 3)`` or ``build_surface("D4")``."""
    if n is None:
        kind, n = parse_surface(kind)
    cartan = _cartan(kind, n)
    roots = _positive_roots(cartan)
    fixed = ()
    if kind == "A":
        fixed = tuple(((n + 2 - i) * T1 - (i - 1) * T2, (i - n - 1) * T1 + i * T2)
                      for i in range(1, n + 2))
    return SurfaceModel(kind, n, cartan, roots, fixed)


def parse_surface(text: str) -> tuple:
    m = re.fullmatch(r"\s*([ADEade])\s*\(?\s*(\d+)\s*\)?\s*", text)
    if not m:
        raise ValueError(f"cannot parse surface {text!r}; expected e.g. A3, D4, E6")
    return m.group(1).upper(), int(m.group(2))


def alpha(surface: SurfaceModel, i: int, j: int) -> tuple:
    """The A_n root alpha_ij = E_i + ... + E_{j-1}, 1 <= i < j <= n+1."""
    if surface.kind != "A":
        raise ValueError("alpha_ij indexing is defined for A-type surfaces")
    if not 1 <= i < j <= surface.rank + 1:
        raise ValueError(f"need 1 <= i < j <= {surface.rank + 1}, got ({i}, {j})")
    return tuple(1 if i <= k < j else 0 for k in range(1, surface.rank + 1))


# --------------------------------------------------------------------------
# classes
# --------------------------------------------------------------------------
@dataclass(frozen=True)
class CohClass:
    """Coefficients over {1, omega_1, ..., omega_n}."""

    coeffs: tuple

    @classmethod
    def one(cls, n: int) -> "CohClass":
        return cls((Q(1),) + (Q(0),) * n)

    @classmethod
    def omega(cls, n: int, i: int) -> "CohClass":
        return cls(tuple(Q(int(k == i)) for k in range(n + 1)))

    @classmethod
    def from_curve(cls, surface: SurfaceModel, beta) -> "CohClass":
        """Divisor class of a curve combination of the E_j: E_j = -sum_k C_jk omega_k."""
        n = surface.rank
        out = [Q(0)] * (n + 1)
        for j, bj in enumerate(beta):
            for k in range(n):
                out[k + 1] -= bj * surface.cartan[j][k]
        return cls(tuple(out))

    @property
    def rank(self) -> int:
        return len(self.coeffs) - 1

    @property
    def identity_part(self):
        return self.coeffs[0]

    @property
    def divisor_part(self) -> tuple:
        return self.coeffs[1:]

    def degree(self) -> int:
        """Real cohomological degree (0 or 2); raises if inhomogeneous or zero."""
        has_one = bool(self.coeffs[0])
        has_div = any(self.coeffs[1:])
        if has_one and has_div:
            raise ValueError("inhomogeneous class")
        if not has_one and not has_div:
            raise ValueError("zero class has no degree")
        return 0 if has_one else 2

    def __add__(self, other):
        return CohClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return CohClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> "CohClass":
        return CohClass(tuple(a * c for a in self.coeffs))

    def __rmul__(self, c):
        return self.scale(c)


def _as_e_basis(surface: SurfaceModel, x) -> list:
    """E-basis coefficients of a curve class tuple or a divisor CohClass."""
    if isinstance(x, CohClass):
        if x.coeffs[0]:
            raise ValueError("class has an identity component; use equivariant_pairing")
        cinv = surface.cartan_inverse
        out = [Q(0)] * surface.rank
        for l in range(surface.rank):
            c = x.coeffs[l + 1]
            if c:
                for j in range(surface.rank):
                    out[j] -= c * cinv[l][j]
        return out
    return [Q(v) for v in x]


def intersection(a, b, surface: SurfaceModel):
    """Intersection pairing with E_i.E_j = -C_ij, extended bilinearly."""
    ea, eb = _as_e_basis(surface, a), _as_e_basis(surface, b)
    total = Q(0)
    for i, x in enumerate(ea):
        if x:
            for j, y in enumerate(eb):
                if y and surface.cartan[i][j]:
                    total -= x * y * surface.cartan[i][j]
    return total


def equivariant_pairing(a: CohClass, b: CohClass, surface: SurfaceModel):
    """Atiyah-Bott sum  sum_p a|_p b|_p / e(p)  over the torus-fixed points."""
    if not surface.is_toric:
        raise ValueError("equivariant pairing needs an A-type surface")
    total = Q(0)
    for p in range(1, surface.rank + 2):
        ra = surface.restriction(a, p)
        if not ra:
            continue
        rb = surface.restriction(b, p)
        if not rb:
            continue
        total = total + ra * rb / surface.euler(p)
    return total


def is_root_multiple(beta, surface: SurfaceModel):
    """Return ``(d, root)`` when beta = d * root for a positive root, else ``None``."""
    beta = tuple(int(x) for x in beta)
    if not any(beta) or any(x < 0 for x in beta):
        return None
    from math import gcd
    from functools import reduce
    d = reduce(gcd, beta)
    root = tuple(x // d for x in beta)
    if root in set(surface.positive_roots):
        return d, root
    return None


def s_monomial(beta, surface: SurfaceModel | None = None) -> tuple:
    """Exponent tuple of s^beta = prod s_i^{beta.omega_i}."""
    exps = tuple(int(x) for x in beta)
    if any(e < 0 for e in exps):
        raise ValueError(f"curve class {beta} is not effective")
    return exps
