"""Fock space of the Heisenberg algebra p_k(gamma) with the Nakajima basis.

Basis vectors are indexed by weighted partitions and normalised as

    b_mu = 1/(prod mu_i * |Aut mu|) * prod_i p_{-mu_i}(gamma_i) v_empty,

with commutators [p_k(g1), p_l(g2)] = -k delta_{k+l,0} (g1, g2) and adjoint
p_k(g)^* = -p_{-k}(g); the pairing (., .) on labels is the equivariant pairing
of the surface.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations, product
from math import prod

from .algebra.scalars import Q
from .geometry import CohClass, SurfaceModel, equivariant_pairing
from .partitions import WeightedPartition, weighted_partitions

__all__ = [
    "FockVector", "label_gram", "label_pairing", "aut_and_gluing", "fock_pairing",
    "nakajima_degree", "common_subpartitions", "dual_basis", "creation", "annihilation",
    "apply_operator", "commutator_check", "adjoint_check",
]


@lru_cache(maxsize=None)
def label_gram(surface: SurfaceModel) -> tuple:
    """Pairings of the label basis {1, omega_1..omega_n}; ``None`` where undefined (D/E identity)."""
    n = surface.rank
    basis = [CohClass.one(n)] + [CohClass.omega(n, i) for i in range(1, n + 1)]
    rows = []
    for a in range(n + 1):
        row = []
        for b in range(n + 1):
            if surface.is_toric:
                row.append(equivariant_pairing(basis[a], basis[b], surface))
            elif a == 0 or b == 0:
                row.append(Q(0) if a != b else None)
            else:
                row.append(-surface.cartan_inverse[a - 1][b - 1])
        rows.append(tuple(row))
    return tuple(rows)


def label_pairing(surface: SurfaceModel, a: int, b: int):
    v = label_gram(surface)[a][b]
    if v is None:
        raise ValueError(f"(1, 1) is undefined on {surface.name}: no fixed-point data")
    return v


def aut_and_gluing(p) -> tuple:
    """``(|Aut p|, z(p))`` for a weighted partition or a plain tuple of parts."""
    if not isinstance(p, WeightedPartition):
        p = WeightedPartition.unlabeled(p)
    return p.aut(), p.z_factor()


class FockVector:
    """Finite combination of normalised Nakajima basis vectors."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def vacuum(cls) -> "FockVector":
        return cls({WeightedPartition(): Q(1)})

    @classmethod
    def basis(cls, wp: WeightedPartition) -> "FockVector":
        return cls({wp: Q(1)})

    @classmethod
    def from_creation(cls, factors) -> "FockVector":
        """prod p_{-k}(gamma) v_empty for ``factors = [(k, CohClass), ...]`` (no normalisation)."""
        vec = cls.vacuum()
        for k, gamma in factors:
            vec = creation(k, gamma, vec)
        return vec

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return FockVector(out)

    def __sub__(self, other):
        return self + other.scale(Q(-1))

    def scale(self, c) -> "FockVector":
        return FockVector({k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        return all(self.terms.get(k, 0) == other.terms.get(k, 0) for k in keys)

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        inner = ", ".join(f"{k}: {v}" for k, v in sorted(self.terms.items()))
        return f"FockVector({{{inner}}})"


def _label_coeffs(gamma) -> list:
    if isinstance(gamma, CohClass):
        return list(enumerate(gamma.coeffs))
    return [(int(gamma), Q(1))]


def creation(k: int, gamma, vec: FockVector) -> FockVector:
    """Apply p_{-k}(gamma), k > 0."""
    if k <= 0:
        raise ValueError("creation operators are p_{-k} with k > 0")
    out: dict = {}
    for wp, c in vec.terms.items():
        z_old = wp.z_factor()
        for label, g in _label_coeffs(gamma):
            if not g:
                continue
            new = wp.with_pair(k, label)
            out[new] = out.get(new, 0) + c * g * new.z_factor() / z_old
    return FockVector(out)


def annihilation(k: int, gamma, vec: FockVector, surface: SurfaceModel) -> FockVector:
    """Apply p_k(gamma), k > 0, using [p_k(g), p_{-k}(h)] = -k (g, h)."""
    if k <= 0:
        raise ValueError("annihilation operators are p_k with k > 0")
    out: dict = {}
    for wp, c in vec.terms.items():
        z_old = wp.z_factor()
        for i, (part, lab) in enumerate(wp.pairs):
            if part != k:
                continue
            pair = Q(0)
            for label, g in _label_coeffs(gamma):
                if g:
                    pair = pair + g * label_pairing(surface, label, lab)
            if not pair:
                continue
            new = wp.without_index(i)
            out[new] = out.get(new, 0) + c * (-k) * pair * new.z_factor() / z_old
    return FockVector(out)


def apply_operator(k: int, gamma, vec: FockVector, surface: SurfaceModel) -> FockVector:
    """p_k(gamma) for any nonzero integer k."""
    if k < 0:
        return creation(-k, gamma, vec)
    if k > 0:
        return annihilation(k, gamma, vec, surface)
    raise ValueError("p_0 is not part of the algebra")


def _basis_pairing(mu: WeightedPartition, nu: WeightedPartition, surface: SurfaceModel):
    if mu.parts != nu.parts:
        return Q(0)
    total = Q(1)
    sizes = sorted(set(mu.parts))
    for k in sizes:
        la = [l for p, l in mu.pairs if p == k]
        lb = [l for p, l in nu.pairs if p == k]
        perm_sum = Q(0)
        for sigma in permutations(range(len(lb))):
            term = Q(1)
            for a, b in zip(la, sigma):
                term = term * label_pairing(surface, a, lb[b])
                if not term:
                    break
            perm_sum = perm_sum + term
        if not perm_sum:
            return Q(0)
        total = total * perm_sum * Q(k) ** len(la)
    return total / (mu.z_factor() * nu.z_factor())


def fock_pairing(a, b, surface: SurfaceModel):
    """Bilinear pairing with <v_empty|v_empty> = 1; arguments are FockVectors or weighted partitions."""
    if isinstance(a, WeightedPartition):
        a = FockVector.basis(a)
    if isinstance(b, WeightedPartition):
        b = FockVector.basis(b)
    total = Q(0)
    for mu, x in a.terms.items():
        for nu, y in b.terms.items():
            if mu.size != nu.size:
                continue
            v = _basis_pairing(mu, nu, surface)
            if v:
                total = total + x * y * v
    return total


def nakajima_degree(p) -> int:
    """2(m - l(mu)) + sum of label degrees; labels are indices or CohClasses."""
    pairs = p.pairs if isinstance(p, WeightedPartition) else tuple(p)
    m = sum(k for k, _ in pairs)
    deg = 2 * (m - len(pairs))
    for _, lab in pairs:
        if isinstance(lab, CohClass):
            deg += lab.degree()
        else:
            deg += 0 if int(lab) == 0 else 2
    return deg


def common_subpartitions(mu: WeightedPartition, nu: WeightedPartition) -> list:
    """All (rho, mu minus rho, nu minus rho) with rho a common labeled sub-multiset."""
    from collections import Counter
    cm, cn = Counter(mu.pairs), Counter(nu.pairs)
    common = sorted((cm & cn).items(), key=lambda kv: (-kv[0][0], kv[0][1]))
    out = []
    for mult in product(*[range(c + 1) for _, c in common]):
        rho = WeightedPartition([pair for (pair, _), e in zip(common, mult) for _ in range(e)])
        out.append((rho, mu.difference(rho), nu.difference(rho)))
    out.sort(key=lambda t: (t[0].size, t[0].pairs))
    return out


@lru_cache(maxsize=None)
def _dual_labels(surface: SurfaceModel) -> tuple:
    gram = label_gram(surface)
    n = surface.rank + 1
    if any(x is None for row in gram for x in row):
        raise ValueError(f"label Gram matrix of {surface.name} is not defined")
    # Gaussian elimination on [G | I]
    a = [list(row) + [Q(int(i == j)) for j in range(n)] for i, row in enumerate(gram)]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            raise ValueError("singular label Gram matrix")
        a[c], a[p] = a[p], a[c]
        inv = Q(1) / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    ginv = [row[n:] for row in a]
    return tuple(CohClass(tuple(ginv[c][d] for d in range(n))) for c in range(n))


def dual_basis(surface: SurfaceModel, m: int) -> dict:
    """Map each basis partition of size m to its dual vector under :func:`fock_pairing`.

    The dual of b_mu is the raw creation monomial with every label replaced by its
    dual label (no normalisation factor), which pairs to 1 with b_mu.
    """
    duals = _dual_labels(surface)
    out = {}
    for wp in weighted_partitions(m, surface.rank + 1):
        out[wp] = FockVector.from_creation([(k, duals[l]) for k, l in wp.pairs])
    return out


def commutator_check(surface: SurfaceModel, max_size: int = 4) -> list:
    """Failures of [p_k(g1), p_l(g2)] = -k delta_{k+l,0} (g1, g2) on basis vectors of size <= max_size.

    Returns a list of witnesses ``(k, l, a, b, mu)``; empty means the identity holds.
    """
    labels = range(surface.rank + 1)
    bad = []
    for size in range(max_size + 1):
        for wp in weighted_partitions(size, surface.rank + 1):
            v = FockVector.basis(wp)
            for k in range(-max_size, max_size + 1):
                for l in range(-max_size, max_size + 1):
                    if k == 0 or l == 0 or k > l:
                        continue
                    if size - k < 0 or size - l < 0 or size - k - l < 0:
                        continue
                    for a in labels:
                        for b in labels:
                            lhs = (apply_operator(k, a, apply_operator(l, b, v, surface), surface)
                                   - apply_operator(l, b, apply_operator(k, a, v, surface), surface))
                            rhs = v.scale(-k * label_pairing(surface, a, b)) if k + l == 0 else FockVector()
                            if not lhs == rhs:
                                bad.append((k, l, a, b, str(wp)))
    return bad


def adjoint_check(surface: SurfaceModel, max_size: int = 3) -> list:
    """Failures of <p_k(g) x, y> = -<x, p_{-k}(g) y> with the pairing computed independently."""
    bad = []
    for size in range(max_size + 1):
        basis = weighted_partitions(size, surface.rank + 1)
        for k in range(1, size + 1):
            lower = weighted_partitions(size - k, surface.rank + 1)
            for g in range(surface.rank + 1):
                for x in basis:
                    px = apply_operator(k, g, FockVector.basis(x), surface)
                    for y in lower:
                        lhs = fock_pairing(px, FockVector.basis(y), surface)
                        rhs = -fock_pairing(FockVector.basis(x),
                                            apply_operator(-k, g, FockVector.basis(y), surface), surface)
                        if lhs != rhs:
                            bad.append((k, g, str(x), str(y)))
    return bad
