# services/spherocheck/project/api/lie_core.py

"""
Root data, weights and characters of the simple Lie algebras A-D, G2, E6.

Conventions: a_ij = alpha_j(h_i); weights are integer tuples in the
fundamental-weight basis; roots are integer tuples in the simple-root basis.
The simple root alpha_j written in fundamental weights is column j of the
Cartan matrix.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from project.api.exactla import QMatrix, inverse
from project.api.exceptions import InvalidType, InvalidWeight, NotAModuleCharacter

logger = logging.getLogger(__name__)

MIN_RANK = {'A': 1, 'B': 2, 'C': 2, 'D': 3}
FIXED_RANK = {'G2': 2, 'E6': 6}

# E6 node numbering: the fundamental weights follow the chain
# 1-2-3-4-5 with node 6 attached to node 3, so omega_1 is the 27-dim module.
# Bourbaki labels of the same nodes:
E6_TO_BOURBAKI = {1: 1, 2: 3, 3: 4, 4: 5, 5: 6, 6: 2}


def _chain(n):
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


def cartan_matrix(type_label, rank):
    if type_label in FIXED_RANK:
        if rank != FIXED_RANK[type_label]:
            raise InvalidType('{} has rank {}, not {}'.format(type_label, FIXED_RANK[type_label], rank))
    elif type_label not in MIN_RANK:
        raise InvalidType('unknown type {!r}'.format(type_label))
    elif rank < MIN_RANK[type_label]:
        raise InvalidType('{}{} is not admissible (rank >= {})'.format(type_label, rank, MIN_RANK[type_label]))

    if type_label == 'A':
        a = _chain(rank)
    elif type_label == 'B':
        a = _chain(rank)
        a[rank - 1][rank - 2] = -2
    elif type_label == 'C':
        a = _chain(rank)
        a[rank - 2][rank - 1] = -2
    elif type_label == 'D':
        a = _chain(rank)
        a[rank - 2][rank - 1] = a[rank - 1][rank - 2] = 0
        a[rank - 3][rank - 1] = a[rank - 1][rank - 3] = -1
    elif type_label == 'G2':
        a = [[2, -3], [-1, 2]]
    else:
        a = _chain(6)
        a[4][5] = a[5][4] = 0
        a[2][5] = a[5][2] = -1
    return tuple(tuple(row) for row in a)


def _symmetrizer(a):
    """d_i with d_i a_ij = d_j a_ji, scaled to coprime positive integers."""
    n = len(a)
    d = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if a[i][j] and d[j] is None:
                d[j] = d[i] * a[i][j] / a[j][i]
                stack.append(j)
    scale = 1
    for v in d:
        scale = lcm(scale, v.denominator)
    ints = [int(v * scale) for v in d]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return tuple(v // g for v in ints)


def _positive_roots(a):
    """Reflection closure of the simple roots, kept positive."""
    n = len(a)
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                pairing = sum(a[i][j] * beta[j] for j in range(n))
                image = tuple(b - pairing if k == i else b for k, b in enumerate(beta))
                if all(c >= 0 for c in image) and any(image) and image not in found:
                    found.add(image)
                    nxt.append(image)
        frontier = nxt
    return tuple(sorted(found, key=lambda r: (sum(r), tuple(-c for c in r))))


@dataclass(frozen=True)
class RootSystem:
    type_label: str
    rank: int
    cartan_matrix: tuple
    positive_roots: tuple = field(repr=False)
    symmetrizer: tuple = field(repr=False)

    @property
    def name(self):
        return '{}{}'.format(self.type_label, self.rank) if self.type_label in MIN_RANK else self.type_label

    @property
    def dimension(self):
        return self.rank + 2 * len(self.positive_roots)

    @property
    def rho(self):
        return (1,) * self.rank

    def zero(self):
        return (0,) * self.rank

    def simple_root(self, j):
        """alpha_j in fundamental-weight coordinates."""
        return tuple(self.cartan_matrix[i][j] for i in range(self.rank))

    def root_weight(self, beta):
        """A root given in simple-root coordinates, in fundamental weights."""
        a = self.cartan_matrix
        return tuple(sum(a[i][j] * beta[j] for j in range(self.rank)) for i in range(self.rank))

    def pair_root(self, weight, beta):
        """(weight, beta) for beta in simple-root coordinates."""
        return sum(weight[j] * beta[j] * self.symmetrizer[j] for j in range(self.rank))

    def reflect(self, weight, i):
        c = weight[i]
        if not c:
            return tuple(weight)
        return tuple(w - c * self.cartan_matrix[k][i] for k, w in enumerate(weight))

    def to_json(self):
        return {'type': self.type_label, 'rank': self.rank, 'positive_roots': len(self.positive_roots)}


@lru_cache(maxsize=None)
def root_system(type_label, rank):
    a = cartan_matrix(type_label, rank)
    return RootSystem(type_label, rank, a, _positive_roots(a), _symmetrizer(a))


@lru_cache(maxsize=None)
def _gram(R):
    """Gram matrix of the fundamental weights: (omega_i, omega_j)."""
    inv = inverse(QMatrix.from_rows(R.cartan_matrix))
    return tuple(tuple(inv[j, i] * R.symmetrizer[j] for j in range(R.rank)) for i in range(R.rank))


def inner(R, x, y):
    g = _gram(R)
    return sum(x[i] * g[i][j] * y[j] for i in range(R.rank) for j in range(R.rank) if x[i] and y[j])


@lru_cache(maxsize=None)
def _to_roots(R):
    return inverse(QMatrix.from_rows(R.cartan_matrix))


def height(R, weight):
    """Sum of the simple-root coordinates of a weight (rational)."""
    inv = _to_roots(R)
    return sum(inv[i, j] * weight[j] for i in range(R.rank) for j in range(R.rank))


def check_weight(R, weight, dominant=True):
    weight = tuple(int(c) for c in weight)
    if len(weight) != R.rank:
        raise InvalidWeight('weight {} has length {}, {} needs {}'.format(weight, len(weight), R.name, R.rank))
    if dominant and any(c < 0 for c in weight):
        raise InvalidWeight('weight {} is not dominant'.format(weight))
    return weight


def is_dominant(weight):
    return all(c >= 0 for c in weight)


def dominant_conjugate(R, weight):
    weight = tuple(weight)
    while True:
        i = next((k for k, c in enumerate(weight) if c < 0), None)
        if i is None:
            return weight
        weight = R.reflect(weight, i)


def dual_weight(R, weight):
    """Highest weight of the dual module, -w0(weight)."""
    return dominant_conjugate(R, tuple(-c for c in weight))


def weyl_orbit(R, weight):
    weight = tuple(weight)
    seen = {weight}
    frontier = [weight]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(R.rank):
                image = R.reflect(w, i)
                if image not in seen:
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt
    return seen


def weyl_dim(R, weight):
    weight = check_weight(R, weight)
    rho = R.rho
    shifted = tuple(w + 1 for w in weight)
    dim = Fraction(1)
    for beta in R.positive_roots:
        dim *= Fraction(R.pair_root(shifted, beta), R.pair_root(rho, beta))
    return int(dim)


@lru_cache(maxsize=None)
def _dominant_weights(R, weight):
    """Dominant weights below `weight`, highest first."""
    roots = [R.root_weight(beta) for beta in R.positive_roots]
    found = {weight}
    frontier = [weight]
    while frontier:
        nxt = []
        for mu in frontier:
            for r in roots:
                nu = tuple(m - c for m, c in zip(mu, r))
                if is_dominant(nu) and nu not in found:
                    found.add(nu)
                    nxt.append(nu)
        frontier = nxt
    return tuple(sorted(found, key=lambda mu: (-height(R, mu), tuple(-c for c in mu))))


@lru_cache(maxsize=None)
def dominant_multiplicities(R, weight):
    """Freudenthal recursion restricted to dominant weights."""
    weight = check_weight(R, weight)
    rho = R.rho
    lam_rho = tuple(w + 1 for w in weight)
    top = inner(R, lam_rho, lam_rho)
    roots = [(beta, R.root_weight(beta)) for beta in R.positive_roots]
    mult = {}
    conj = {}

    def m(nu):
        if nu not in conj:
            conj[nu] = dominant_conjugate(R, nu)
        return mult.get(conj[nu], 0)

    for mu in _dominant_weights(R, weight):
        if mu == weight:
            mult[mu] = 1
            continue
        mu_rho = tuple(c + r for c, r in zip(mu, rho))
        denom = top - inner(R, mu_rho, mu_rho)
        total = 0
        for beta, r in roots:
            k = 1
            while True:
                nu = tuple(c + k * x for c, x in zip(mu, r))
                value = m(nu)
                if not value:
                    break
                total += R.pair_root(nu, beta) * value
                k += 1
        value = Fraction(2 * total) / denom
        if value.denominator != 1:
            raise NotAModuleCharacter('non-integral multiplicity at {} in V({})'.format(mu, weight))
        if value:
            mult[mu] = int(value)
    return mult


def _add(a, b):
    if a and isinstance(a[0], tuple):
        return tuple(_add(x, y) for x, y in zip(a, b))
    return tuple(x + y for x, y in zip(a, b))


def _scale(a, k):
    if a and isinstance(a[0], tuple):
        return tuple(_scale(x, k) for x in a)
    return tuple(k * x for x in a)


class Character(dict):
    """Sparse map weight -> multiplicity.

    Keys are weight tuples, or tuples of weight tuples for products of
    several root systems (with an optional trailing center character).
    """

    def mass(self):
        return sum(self.values())

    def copy(self):
        return Character(self)

    def __add__(self, other):
        out = Character(self)
        for k, v in other.items():
            out[k] = out.get(k, 0) + v
        return out.pruned()

    def __mul__(self, other):
        out = Character()
        for k1, v1 in self.items():
            for k2, v2 in other.items():
                key = _add(k1, k2)
                out[key] = out.get(key, 0) + v1 * v2
        return out.pruned()

    def scaled(self, c):
        return Character({k: c * v for k, v in self.items()}).pruned()

    def adams(self, k):
        """psi^k: every weight multiplied by k."""
        out = Character()
        for key, v in self.items():
            key = _scale(key, k)
            out[key] = out.get(key, 0) + v
        return out

    def dual(self):
        return Character({_scale(k, -1): v for k, v in self.items()})

    def pruned(self):
        return Character({k: v for k, v in self.items() if v})

    def is_weyl_invariant(self, R):
        return all(self.get(R.reflect(mu, i), 0) == v for mu, v in self.items() for i in range(R.rank))


def trivial_character(key):
    return Character({key: 1})


@lru_cache(maxsize=None)
def _full_character(R, weight):
    out = {}
    for mu, m in dominant_multiplicities(R, weight).items():
        for nu in weyl_orbit(R, mu):
            out[nu] = m
    return out


def weight_multiplicities(R, weight):
    """Full weight diagram of V(weight)."""
    weight = check_weight(R, weight)
    return Character(_full_character(R, weight))


def peel(dominant, irreducible, order_key):
    """Iterated peeling of a dominant-restricted character.

    `irreducible(key)` returns the dominant-restricted character of the
    irreducible module with highest weight `key`; the highest remaining key
    under `order_key` is always a highest weight.
    """
    remaining = {k: v for k, v in dominant.items() if v}
    out = []
    while remaining:
        top = max(remaining, key=order_key)
        c = remaining[top]
        if c < 0:
            raise NotAModuleCharacter('negative coefficient {} at {}'.format(c, top))
        out.append((top, c))
        for k, v in irreducible(top).items():
            nv = remaining.get(k, 0) - c * v
            if nv:
                remaining[k] = nv
            else:
                remaining.pop(k, None)
    return out


def decompose(chi, R):
    """Highest weights with multiplicities of a Weyl-invariant character."""
    dominant = {mu: v for mu, v in chi.items() if is_dominant(mu)}
    return peel(dominant, lambda lam: dominant_multiplicities(R, lam),
                lambda mu: (height(R, mu), mu))


def compose(parts, R):
    """Sum of irreducible characters; the inverse of decompose."""
    out = Character()
    for lam, c in parts:
        out = out + weight_multiplicities(R, lam).scaled(c)
    return out


def sym_power_character(chi, d):
    """Character of S^d via h_d = (1/d) sum_k psi^k(chi) h_{d-k}."""
    if d < 0:
        raise InvalidWeight('negative degree {}'.format(d))
    key = next(iter(chi)) if chi else ()
    h = [trivial_character(_scale(key, 0))]
    powers = [None] + [chi.adams(k) for k in range(1, d + 1)]
    for n in range(1, d + 1):
        acc = Character()
        for k in range(1, n + 1):
            acc = acc + powers[k] * h[n - k]
        out = Character()
        for wt, v in acc.items():
            if v % n:
                raise NotAModuleCharacter('Newton recursion left a remainder at {}'.format(wt))
            out[wt] = v // n
        h.append(out.pruned())
        logger.debug('S^%d: %d distinct weights', n, len(h[-1]))
    return h[d]
