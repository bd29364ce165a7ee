# services/spherocheck/project/api/sphericity.py

"""
Open Borel orbit tests on P(W) and Gr(r, W), the boundedness verdict and the
normalizer of k + c in gl(W).

Positive verdicts carry an exact full-rank point; negative verdicts carry a
dimension count or a multiplicity certificate. Failed trials alone never
produce NotSpherical.
"""

import logging
from fractions import Fraction

from project.api.exactla import QMatrix, SampleConfig, SpanReducer, bracket, fast_rank, kernel_of_rows, \
    random_nonzero_vector, random_vector, rank, rank_of_vectors, trial_rank
from project.api.exceptions import InvalidRequest, PreconditionError
from project.api.models import DimensionCount, GrassmannianScan, MultiplicityCertificate, PairSpec, Status, \
    Verdict, Witness
from project.api.mult_free import DEFAULT_DMAX, nonspherical_certificate, sym_decomposition
from project.api.rep_build import DEFAULT_DIM_CAP, SubalgebraInGl, assemble

logger = logging.getLogger(__name__)


def _projective_matrix(sub, w):
    if len(w) != sub.ambient_dim:
        raise InvalidRequest('point of length {} in a {}-dimensional W'.format(len(w), sub.ambient_dim))
    if not any(w):
        raise InvalidRequest('zero vector has no image in P(W)')
    return QMatrix.from_columns([list(w)] + [b.apply(w) for b in sub.borel_basis], rows=len(w))


def projective_tangent_rank(sub, w):
    """rank of b -> b.w mod F.w over the Borel basis."""
    return fast_rank(_projective_matrix(sub, w)) - 1


def _annihilator(columns, n):
    """Covectors vanishing on the given columns."""
    return kernel_of_rows([{i: v for i, v in enumerate(col) if v} for col in columns], n)


def _grassmannian_matrix(sub, columns):
    n = sub.ambient_dim
    r = len(columns)
    if not 1 <= r < n:
        raise InvalidRequest('r = {} outside 1 <= r < {}'.format(r, n))
    if any(len(col) != n for col in columns):
        raise InvalidRequest('columns must have length {}'.format(n))
    if rank_of_vectors([list(col) for col in columns], n) != r:
        raise PreconditionError('columns of U are linearly dependent')
    quotient = _annihilator(columns, n)
    images = []
    for b in sub.borel_basis:
        moved = [b.apply(list(col)) for col in columns]
        images.append([sum(q[i] * u[i] for i in range(n) if q[i] and u[i]) for q in quotient for u in moved])
    if not images:
        return QMatrix.zeros(r * (n - r), 0)
    return QMatrix.from_columns(images, rows=r * (n - r))


def grassmannian_tangent_rank(sub, columns):
    """rank of b -> (u -> b.u mod U) into Hom(U, W/U)."""
    return fast_rank(_grassmannian_matrix(sub, columns))


def _confirmed(matrix, expected, trial):
    """Exact rational rank of a candidate witness matrix."""
    if rank(matrix) == expected:
        return True
    logger.warning('trial %d: modular rank %d not confirmed over Q', trial, expected)
    return False


def is_spherical_projective(sub, cfg=None, spec=None, dmax=DEFAULT_DMAX):
    cfg = cfg or SampleConfig()
    spec = spec or sub.spec
    target = sub.ambient_dim - 1
    if len(sub.borel_basis) < target:
        logger.info('%s: Borel dimension %d < %d', spec or 'subalgebra', len(sub.borel_basis), target)
        return Verdict(Status.NOT_SPHERICAL, certificate=DimensionCount(len(sub.borel_basis), target))
    best = -1
    for trial in range(cfg.trials):
        w = random_nonzero_vector(sub.ambient_dim, cfg.derive(trial))
        r = projective_tangent_rank(sub, w)
        logger.debug('trial %d: projective rank %d of %d', trial, r, target)
        best = max(best, r)
        if r == target and _confirmed(_projective_matrix(sub, w), target + 1, trial):
            witness = Witness(tuple(w), r, target, cfg.seed, trial)
            return Verdict(Status.SPHERICAL, witness=witness, trials_used=trial + 1, best_rank=r)
    if spec is not None and dmax > 0:
        certificate = nonspherical_certificate(spec, dmax)
        if certificate is not None:
            return Verdict(Status.NOT_SPHERICAL, certificate=certificate, trials_used=cfg.trials, best_rank=best)
    return Verdict(Status.UNDETERMINED, trials_used=cfg.trials, best_rank=best)


def _random_frame(n, r, cfg):
    """r random independent columns, re-sampled while dependent."""
    attempt = 0
    while True:
        columns = [random_vector(n, cfg.derive(1000 * attempt + j)) for j in range(r)]
        if rank_of_vectors(columns, n) == r:
            return columns
        attempt += 1


def is_spherical_grassmannian(sub, r, cfg=None, spec=None, dmax=DEFAULT_DMAX):
    cfg = cfg or SampleConfig()
    n = sub.ambient_dim
    if not 1 <= r < n:
        raise InvalidRequest('r = {} outside 1 <= r < {}'.format(r, n))
    if r == 1:
        return is_spherical_projective(sub, cfg, spec, dmax)
    target = r * (n - r)
    if len(sub.borel_basis) < target:
        return Verdict(Status.NOT_SPHERICAL, certificate=DimensionCount(len(sub.borel_basis), target))
    best = -1
    for trial in range(cfg.trials):
        columns = _random_frame(n, r, cfg.derive(trial))
        value = trial_rank(_grassmannian_matrix(sub, columns))
        logger.debug('trial %d: Gr(%d) rank %d of %d', trial, r, value, target)
        best = max(best, value)
        if value == target and _confirmed(_grassmannian_matrix(sub, columns), target, trial):
            witness = Witness(tuple(tuple(col) for col in columns), value, target, cfg.seed, trial)
            return Verdict(Status.SPHERICAL, witness=witness, trials_used=trial + 1, best_rank=value)
    return Verdict(Status.UNDETERMINED, trials_used=cfg.trials, best_rank=best)


def grassmannian_scan(sub, cfg=None, projective=None):
    cfg = cfg or SampleConfig()
    projective = projective or is_spherical_projective(sub, cfg)
    verdicts = []
    for r in range(1, sub.ambient_dim):
        verdicts.append((r, projective if r == 1 else is_spherical_grassmannian(sub, r, cfg)))
    scan = GrassmannianScan(projective, tuple(verdicts))
    if scan.inconsistencies:
        logger.warning('Gr(r) spherical without P(W) spherical for r in %s', scan.inconsistencies)
    return scan


def _traceless_center(sub):
    n = sub.ambient_dim
    identity = QMatrix.identity(n)
    cartan = [m.diagonal_values() for m in sub.borel_basis[:len(sub.borel_basis) - len(sub.center)] if m.is_diagonal()]
    kept = []
    for g in sub.center:
        projected = g - identity.scale(g.trace() / n)
        if projected.is_zero():
            continue
        rows = cartan + [m.diagonal_values() for m in kept] + [projected.diagonal_values()]
        if rank_of_vectors(rows, n) == len(rows):
            kept.append(projected)
    return kept


def is_bounded(sub, cfg=None, spec=None, dmax=DEFAULT_DMAX):
    """k is bounded in sl(W) iff P(W) is k-spherical.

    Center generators are replaced by their traceless parts; scalars act
    trivially on P(W) and are dropped.
    """
    if not sub.semisimple_traceless:
        raise PreconditionError('semisimple part is not traceless')
    center = _traceless_center(sub)
    c = len(sub.center)

    def strip(ms):
        return tuple(ms[:len(ms) - c]) if c else tuple(ms)

    reduced = SubalgebraInGl(sub.ambient_dim, strip(sub.basis) + tuple(center), strip(sub.borel_basis) + tuple(center),
                             strip(sub.generators) + tuple(center), tuple(center), True, sub.spec)
    verdict = is_spherical_projective(reduced, cfg, spec or sub.spec, dmax)
    logger.info('bounded: %s', verdict.status.value)
    return verdict


def generic_orbit_codimension(sub, cfg=None):
    """dim P(W) minus the best projective Borel rank over the trials."""
    cfg = cfg or SampleConfig()
    best = max(projective_tangent_rank(sub, random_nonzero_vector(sub.ambient_dim, cfg.derive(t)))
               for t in range(cfg.trials))
    return sub.ambient_dim - 1 - best


def single_orbit(sub):
    """k is transitive on P(W): the closed orbit through basis vector 0 is open."""
    n = sub.ambient_dim
    v = [Fraction(1)] + [Fraction(0)] * (n - 1)
    columns = [v] + [b.apply(v) for b in sub.basis]
    return rank(QMatrix.from_columns(columns, rows=n)) - 1 == n - 1


def verify_verdict(verdict, sub, spec=None, cap=DEFAULT_DIM_CAP):
    """Independent exact re-check of a witness or certificate."""
    spec = spec or sub.spec
    if verdict.is_spherical:
        w = verdict.witness
        if w.point and isinstance(w.point[0], tuple):
            value = rank(_grassmannian_matrix(sub, [list(col) for col in w.point]))
            r = len(w.point)
            target = r * (sub.ambient_dim - r)
        else:
            value = rank(_projective_matrix(sub, list(w.point))) - 1
            target = sub.ambient_dim - 1
        return value == w.rank == w.target == target
    if verdict.is_not_spherical:
        cert = verdict.certificate
        if isinstance(cert, DimensionCount):
            return cert.borel_dim == len(sub.borel_basis) and cert.borel_dim < cert.target_dim
        if isinstance(cert, MultiplicityCertificate):
            if spec is None or cert.multiplicity < 2:
                return False
            found = dict(sym_decomposition(spec, cert.degree, cap).components)
            return found.get(cert.component) == cert.multiplicity
        return False
    return True


def _torus(basis):
    """Diagonal basis elements, or () when some element is not homogeneous for them."""
    torus = [m for m in basis if m.is_diagonal() and not m.is_zero()]
    for m in basis:
        if not _degree(m, torus, check=True):
            return ()
    return tuple(torus)


def _degree(m, torus, check=False):
    degrees = {tuple(t[i, i] - t[j, j] for t in torus) for (i, j), _ in m.items()}
    if check:
        return len(degrees) <= 1
    return degrees.pop() if degrees else None


def normalizer_in_gl(basis, ambient_dim, generators=None):
    """Basis of {x in gl(W) : [x, b] in span(basis) for all b}.

    Solved degree by degree for the torus of diagonal basis elements; it is
    enough to test the generators of the algebra.
    """
    n = ambient_dim
    basis = list(basis)
    generators = list(generators) if generators is not None else basis
    if not basis:
        return [QMatrix.unit(n, i, j) for i in range(n) for j in range(n)]
    span = SpanReducer(m.vec() for m in basis)
    if span.dim != len(basis):
        raise InvalidRequest('basis is linearly dependent')
    torus = _torus(basis)
    blocks = {}
    for i in range(n):
        for j in range(n):
            key = tuple(t[i, i] - t[j, j] for t in torus)
            blocks.setdefault(key, []).append((i, j))
    out = []
    for key in sorted(blocks):
        unknowns = blocks[key]
        rows = {}
        for u, (i, j) in enumerate(unknowns):
            unit = QMatrix.unit(n, i, j)
            for g_index, g in enumerate(generators):
                for coord, v in span.reduce(bracket(unit, g).vec()).items():
                    rows.setdefault((g_index, coord), {})[u] = v
        for vec in kernel_of_rows(list(rows.values()), len(unknowns)):
            out.append(QMatrix(n, n, {unknowns[u]: v for u, v in enumerate(vec) if v}))
    logger.debug('normalizer in gl(%d): dim %d over %d blocks', n, len(out), len(blocks))
    return out


def normalizer_condition_holds(spec, cap=DEFAULT_DIM_CAP):
    """k + c equals its normalizer in gl(W)."""
    sub = assemble(spec, cap)
    normalizer = normalizer_in_gl(sub.basis, sub.ambient_dim, sub.generators)
    if len(normalizer) != sub.dim:
        return False
    span = SpanReducer(m.vec() for m in normalizer)
    return all(span.contains(b.vec()) for b in sub.basis)


def normalizer_closure(spec):
    """PairSpec of N_gl(W)(k + c) = k_ss + sum gl(m) over isotypic classes.

    None when a center generator takes different values on two copies of
    the same summand.
    """
    classes = []
    members = {}
    for index, word in enumerate(spec.summands):
        if word not in members:
            classes.append(word)
            members[word] = []
        members[word].append(index)
    for gen in spec.center:
        for word in classes:
            if len({gen[i] for i in members[word]}) > 1:
                return None
    extra = [len(members[word]) for word in classes if len(members[word]) > 1]
    factors = tuple(spec.factors) + tuple(('A', m - 1) for m in extra)
    summands = []
    slot = 0
    for word in classes:
        tail = []
        m = len(members[word])
        for k, size in enumerate(extra):
            weight = [0] * (size - 1)
            if m > 1 and k == slot:
                weight[0] = 1
            tail.append(tuple(weight))
        if m > 1:
            slot += 1
        summands.append(tuple(word) + tuple(tail))
    center = tuple(tuple(1 if k == c else 0 for k in range(len(classes))) for c in range(len(classes)))
    return PairSpec(factors, tuple(summands), center)
