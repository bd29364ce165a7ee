# services/spherocheck/project/api/symplectic.py

"""
Coadjoint geometry of sl(W) for the moment map T*P(W) -> sl(W)*.

sl(W)* is identified with sl(W) by the trace form x(y) = tr(X y), so the
moment image of T*P(W) is the set of nilpotent matrices of rank <= 1 and
k^perp is a subspace of sl(W).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from project.api.exactla import QMatrix, SampleConfig, SpanReducer, bracket, kernel_of_rows, random_nonzero_vector, \
    random_vector
from project.api.exceptions import InvalidRequest, PreconditionError
from project.api.models import Model
from project.api.rep_build import SubalgebraInGl

logger = logging.getLogger(__name__)

LAGRANGIAN_TRIALS = 8
REGULAR_ATTEMPTS = 16


@dataclass(frozen=True, repr=False)
class CoadjointPoint(Model):
    matrix: QMatrix

    def __post_init__(self):
        if self.matrix.rows != self.matrix.cols:
            raise InvalidRequest('coadjoint point must be square')
        if self.matrix.trace():
            raise InvalidRequest('coadjoint point must be traceless')

    @property
    def n(self):
        return self.matrix.rows

    def __call__(self, y):
        return (self.matrix @ y).trace()

    def is_zero(self):
        return self.matrix.is_zero()

    def to_json(self):
        return {'n': self.n, 'matrix': self.matrix.to_json()}


def _check_square(n, *ms):
    for m in ms:
        if m.shape != (n, n):
            raise InvalidRequest('expected {0}x{0}, got {1}'.format(n, m.shape))


def kk_form(x, p, q):
    """x([p, q])."""
    _check_square(x.n, p, q)
    return x(bracket(p, q))


def canonical_form(first, second):
    """Symplectic form of T*F^n on (w1, xi1), (w2, xi2): xi2(w1) - xi1(w2)."""
    (w1, xi1), (w2, xi2) = first, second
    if not len(w1) == len(xi1) == len(w2) == len(xi2):
        raise InvalidRequest('cotangent vectors of different lengths')
    return sum(Fraction(a) * b for a, b in zip(xi2, w1)) - sum(Fraction(a) * b for a, b in zip(xi1, w2))


def moment_image_point(w, xi):
    """The rank <= 1 nilpotent w . xi^T, for xi vanishing on w."""
    if len(w) != len(xi):
        raise InvalidRequest('w and xi have different lengths')
    if sum(Fraction(a) * b for a, b in zip(w, xi)):
        raise PreconditionError('xi does not annihilate w')
    n = len(w)
    return QMatrix(n, n, {(i, j): Fraction(a) * b for i, a in enumerate(w) if a for j, b in enumerate(xi) if b})


def random_conormal_pair(n, cfg):
    """Random w with a random covector adjusted to vanish on it."""
    w = random_nonzero_vector(n, cfg.derive(0))
    xi = random_vector(n, cfg.derive(1))
    k = next(i for i, a in enumerate(w) if a)
    xi[k] -= sum(a * b for a, b in zip(w, xi)) / w[k]
    return w, xi


def sl_basis(n):
    basis = [QMatrix.unit(n, i, j) for i in range(n) for j in range(n) if i != j]
    basis += [QMatrix(n, n, {(i, i): 1, (i + 1, i + 1): -1}) for i in range(n - 1)]
    return basis


def _pairing_row(b):
    """Coefficients of X -> tr(X b) on the row-major entries of X."""
    n = b.rows
    return {j * n + i: v for (i, j), v in b.items()}


def perp_space(sub, extra_rows=()):
    """Basis of {X in sl(W) : tr(X b) = 0 for b in k}."""
    n = sub.ambient_dim
    rows = [{i * n + i: 1 for i in range(n)}]
    rows += [_pairing_row(b) for b in sub.basis]
    rows += list(extra_rows)
    out = []
    for vec in kernel_of_rows(rows, n * n):
        out.append(QMatrix(n, n, {(k // n, k % n): v for k, v in enumerate(vec) if v}))
    return out


def in_perp(sub, x):
    return all(not x(b) for b in sub.basis)


def isotropy_check(sub, x):
    """x([k_i, k_j]) = 0 for all basis pairs."""
    if not in_perp(sub, x):
        raise PreconditionError('x is not in the annihilator of k')
    basis = sub.basis
    return all(not kk_form(x, basis[i], basis[j]) for i in range(len(basis)) for j in range(i + 1, len(basis)))


def orbit_dimension(basis, x):
    """Rank of b -> [b, X]."""
    span = SpanReducer()
    for b in basis:
        span.add(bracket(b, x.matrix).vec())
    return span.dim


def is_nilpotent(m):
    power = m
    for _ in range(m.rows):
        if power.is_zero():
            return True
        power = power @ m
    return power.is_zero()


def lagrangian_check(sub, x):
    """dim K.x == dim G.x / 2 for nilpotent x in k^perp; None for x = 0."""
    if x.is_zero():
        return None
    if not in_perp(sub, x):
        raise PreconditionError('x is not in the annihilator of k')
    if not is_nilpotent(x.matrix):
        raise PreconditionError('x is not nilpotent')
    k_dim = orbit_dimension(sub.basis, x)
    g_dim = orbit_dimension(sl_basis(x.n), x)
    logger.debug('orbit dims: K %d, G %d', k_dim, g_dim)
    return 2 * k_dim == g_dim


def conormal_point(sub, w):
    """w . xi^T with xi vanishing on span(w, k.w); None when k.[w] is open."""
    n = sub.ambient_dim
    columns = [list(w)] + [b.apply(list(w)) for b in sub.basis]
    covectors = kernel_of_rows([{i: v for i, v in enumerate(col) if v} for col in columns], n)
    if not covectors:
        return None
    xi = [sum(c[i] for c in covectors) for i in range(n)]
    return CoadjointPoint(moment_image_point(w, xi))


def _exp_apply(y, v):
    out = list(v)
    term = list(v)
    k = 1
    while True:
        term = [a / k for a in y.apply(term)]
        if not any(term):
            return out
        out = [a + b for a, b in zip(out, term)]
        k += 1
        if k > y.rows + 1:
            raise PreconditionError('lowering element is not nilpotent')


def minimal_orbit_points(sub, cfg=None, count=LAGRANGIAN_TRIALS):
    """Conormal points along the orbit of basis vector 0 (a highest weight line)."""
    cfg = cfg or SampleConfig()
    n = sub.ambient_dim
    lowering = [b for b in sub.basis if not b.is_zero() and all(i > j for (i, j), _ in b.items())]
    top = [Fraction(1)] + [Fraction(0)] * (n - 1)
    points = []
    for trial in range(count):
        coeffs = random_vector(len(lowering), cfg.derive(trial)) if lowering else []
        y = QMatrix.zeros(n)
        for c, b in zip(coeffs, lowering):
            y = y + b.scale(c)
        point = conormal_point(sub, _exp_apply(y, top))
        if point is None:
            return []
        points.append(point)
    return points


def nilpotent_perp_points(sub, cfg=None, count=LAGRANGIAN_TRIALS):
    """Random elements of the positive part of k^perp for a generic element of the diagonal torus."""
    cfg = cfg or SampleConfig()
    n = sub.ambient_dim
    torus = [b for b in sub.basis if b.is_diagonal() and not b.is_zero()]
    if not torus:
        return []
    h0 = None
    for attempt in range(REGULAR_ATTEMPTS):
        coeffs = random_vector(len(torus), cfg.derive(count + attempt))
        candidate = [sum(c * t[i, i] for c, t in zip(coeffs, torus)) for i in range(n)]
        if h0 is None or len(set(candidate)) > len(set(h0)):
            h0 = candidate
        if len(set(h0)) == n:
            break
    forced = [{i * n + j: 1} for i in range(n) for j in range(n) if h0[i] <= h0[j]]
    space = perp_space(sub, forced)
    if not space:
        return []
    points = []
    for trial in range(count):
        mix = random_vector(len(space), cfg.derive(trial))
        x = QMatrix.zeros(n)
        for c, m in zip(mix, space):
            x = x + m.scale(c)
        if not x.is_zero():
            points.append(CoadjointPoint(x))
    return points


def _form_matrix(kind, n):
    """Antidiagonal Gram matrix: symmetric for so, skew for sp."""
    if kind == 'so':
        return [1] * n
    if n % 2:
        raise InvalidRequest('sp needs an even size, got {}'.format(n))
    return [1] * (n // 2) + [-1] * (n // 2)


def standard_subalgebra(kind, n):
    """so(n) or sp(n) preserving the antidiagonal form, Cartan diagonal and Borel upper triangular."""
    if kind not in ('so', 'sp'):
        raise InvalidRequest('unknown classical kind {!r}'.format(kind))
    if n < 2:
        raise InvalidRequest('n must be >= 2')
    eps = _form_matrix(kind, n)
    seen = set()
    basis = []
    borel = []
    for a in range(n):
        for b in range(n):
            # E_ab - (eps_a / eps_b) E_b'a' with i' = n - 1 - i
            pair = (n - 1 - b, n - 1 - a)
            if (a, b) in seen:
                continue
            seen.update(((a, b), pair))
            if pair == (a, b):
                if kind == 'so':
                    continue
                m = QMatrix.unit(n, a, b)
            else:
                m = QMatrix(n, n, {(a, b): 1, pair: -Fraction(eps[a], eps[b])})
            basis.append(m)
            if a <= b:
                borel.append(m)
    return SubalgebraInGl(n, tuple(basis), tuple(borel), tuple(basis), (), True, None)


def sample_moment_points(n, samples, cfg=None):
    cfg = cfg or SampleConfig()
    points = []
    for trial in range(samples):
        w, xi = random_conormal_pair(n, cfg.derive(trial))
        m = moment_image_point(w, xi)
        points.append({'matrix': m.to_json(), 'trace_zero': not m.trace(), 'square_zero': (m @ m).is_zero()})
    return points
