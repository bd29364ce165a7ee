# services/spherocheck/project/api/rep_build.py

"""
Exact matrix models of highest-weight modules and of the subalgebras
k + c of gl(W) they assemble into.

Every basis is a weight basis ordered from the highest weight down, so
raising operators (and hence the chosen Borel subalgebra) are upper
triangular.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement

from project.api.exactla import QMatrix, SpanReducer, block_diagonal, bracket, kron, rank_of_vectors
from project.api.exceptions import DimensionCapExceeded, InvalidRequest, SpherocheckError
from project.api.lie_core import Character, check_weight, dual_weight, weyl_dim
from project.api.models import PairSpec

logger = logging.getLogger(__name__)

DEFAULT_DIM_CAP = 64


@dataclass(frozen=True, eq=False)
class MatrixRep:
    root_system: object
    highest_weight: tuple
    dim: int
    gen_e: tuple
    gen_f: tuple
    gen_h: tuple
    weights: tuple

    def character(self):
        out = Character()
        for w in self.weights:
            out[w] = out.get(w, 0) + 1
        return out

    def chevalley_defects(self):
        """Chevalley relations that fail; empty when the model is exact."""
        a = self.root_system.cartan_matrix
        r = self.root_system.rank
        failed = []
        for i in range(r):
            for j in range(r):
                if bracket(self.gen_h[i], self.gen_e[j]) != self.gen_e[j].scale(a[i][j]):
                    failed.append('[h{},e{}]'.format(i + 1, j + 1))
                if bracket(self.gen_h[i], self.gen_f[j]) != self.gen_f[j].scale(-a[i][j]):
                    failed.append('[h{},f{}]'.format(i + 1, j + 1))
                expected = self.gen_h[i] if i == j else QMatrix.zeros(self.dim)
                if bracket(self.gen_e[i], self.gen_f[j]) != expected:
                    failed.append('[e{},f{}]'.format(i + 1, j + 1))
        return failed

    def serre_defects(self):
        """(ad x_i)^(1 - a_ij) x_j = 0 for x = e and x = f, i != j."""
        a = self.root_system.cartan_matrix
        r = self.root_system.rank
        failed = []
        for gens, label in ((self.gen_e, 'e'), (self.gen_f, 'f')):
            for i in range(r):
                for j in range(r):
                    if i == j:
                        continue
                    x = gens[j]
                    for _ in range(1 - a[i][j]):
                        x = bracket(gens[i], x)
                    if not x.is_zero():
                        failed.append('serre {}{}{}'.format(label, i + 1, j + 1))
        return failed

    def to_json(self):
        return {'root_system': self.root_system.name, 'highest_weight': list(self.highest_weight or ()),
                'dim': self.dim}


def _standard_weight(n, a):
    """Weight of the a-th standard basis vector of F^n (0-based) for sl_n."""
    w = [0] * (n - 1)
    if a < n - 1:
        w[a] += 1
    if a > 0:
        w[a - 1] -= 1
    return tuple(w)


def _sl_power(R, k, symmetric):
    """Lambda^k or S^k of the standard module of sl_n on sorted index tuples."""
    n = R.rank + 1
    words = list(combinations_with_replacement(range(n), k) if symmetric else combinations(range(n), k))
    index = {w: p for p, w in enumerate(words)}
    dim = len(words)
    gen_e, gen_f, gen_h = [], [], []
    for i in range(n - 1):
        e, f, h = {}, {}, {}
        for p, word in enumerate(words):
            up, down = word.count(i + 1), word.count(i)
            h[(p, p)] = down - up
            if up and (symmetric or not down):
                target = list(word)
                target[target.index(i + 1)] = i
                e[(index[tuple(sorted(target))], p)] = up
            if down and (symmetric or not up):
                target = list(word)
                target[len(target) - 1 - target[::-1].index(i)] = i + 1
                f[(index[tuple(sorted(target))], p)] = down
        gen_e.append(QMatrix(dim, dim, e))
        gen_f.append(QMatrix(dim, dim, f))
        gen_h.append(QMatrix(dim, dim, h))
    weights = []
    for word in words:
        w = [0] * R.rank
        for a in word:
            w = [x + y for x, y in zip(w, _standard_weight(n, a))]
        weights.append(tuple(w))
    top = weights[0]
    return MatrixRep(R, top, dim, tuple(gen_e), tuple(gen_f), tuple(gen_h), tuple(weights))


def _fast_path(R, weight):
    if R.type_label != 'A' or not any(weight):
        return None
    nonzero = [i for i, c in enumerate(weight) if c]
    if len(nonzero) == 1 and weight[nonzero[0]] == 1:
        return _sl_power(R, nonzero[0] + 1, symmetric=False)
    if nonzero == [0]:
        return _sl_power(R, weight[0], symmetric=True)
    return None


def _highest_weight_construction(R, weight):
    """Depth-by-depth construction of V(weight) from its highest weight vector.

    A candidate f_j b at weight nu is zero in the irreducible quotient iff
    all e_i kill it, so the e-images of the candidates (computed from
    shallower data) detect every linear relation; pivot candidates form the
    basis of the weight space.
    """
    r = R.rank
    alpha = [R.simple_root(j) for j in range(r)]
    weights = [weight]
    e_act = {}
    f_act = {}
    level = [0]
    while level:
        groups = {}
        for v in level:
            for j in range(r):
                nu = tuple(c - x for c, x in zip(weights[v], alpha[j]))
                groups.setdefault(nu, []).append((j, v))
        next_level = []
        for nu in sorted(groups, key=lambda w: tuple(-c for c in w)):
            candidates = groups[nu]
            columns = []
            for j, v in candidates:
                col = {}
                for i in range(r):
                    for u, c in e_act.get((i, v), {}).items():
                        for t, d in f_act[(j, u)].items():
                            col[(i, t)] = col.get((i, t), 0) + c * d
                    if i == j and weights[v][i]:
                        col[(i, v)] = col.get((i, v), 0) + weights[v][i]
                columns.append({key: x for key, x in col.items() if x})
            rows = {}
            for c, col in enumerate(columns):
                for key, x in col.items():
                    rows.setdefault(key, {})[c] = Fraction(x)
            reducer = SpanReducer(rows[key] for key in sorted(rows))
            pivots = reducer.pivots
            reduced = reducer.rows()
            new_index = {}
            for p in pivots:
                new_index[p] = len(weights)
                weights.append(nu)
                next_level.append(new_index[p])
                for (i, t), x in columns[p].items():
                    e_act.setdefault((i, new_index[p]), {})[t] = x
            for c, (j, v) in enumerate(candidates):
                if c in new_index:
                    f_act[(j, v)] = {new_index[c]: Fraction(1)}
                else:
                    f_act[(j, v)] = {new_index[p]: row[c] for p, row in zip(pivots, reduced) if row.get(c)}
        level = next_level
    dim = len(weights)
    gen_e = []
    gen_f = []
    gen_h = []
    for i in range(r):
        gen_e.append(QMatrix(dim, dim, {(t, b): x for (k, b), image in e_act.items() if k == i
                                        for t, x in image.items()}))
        gen_f.append(QMatrix(dim, dim, {(t, v): x for (k, v), image in f_act.items() if k == i
                                        for t, x in image.items()}))
        gen_h.append(QMatrix.diagonal(w[i] for w in weights))
    return MatrixRep(R, weight, dim, tuple(gen_e), tuple(gen_f), tuple(gen_h), tuple(weights))


@lru_cache(maxsize=None)
def hw_module(R, weight, cap=DEFAULT_DIM_CAP):
    """Irreducible module V(weight) with exact Chevalley generators."""
    weight = check_weight(R, weight)
    expected = weyl_dim(R, weight)
    if expected > cap:
        raise DimensionCapExceeded(expected, cap)
    rep = _fast_path(R, weight) or _highest_weight_construction(R, weight)
    if rep.dim != expected:
        raise SpherocheckError('V({}) of {} built with dim {}, expected {}'.format(weight, R.name, rep.dim, expected))
    defects = rep.chevalley_defects()
    if defects:
        raise SpherocheckError('V({}) of {} violates {}'.format(weight, R.name, ', '.join(defects)))
    logger.debug('built V(%s) of %s, dim %d', weight, R.name, rep.dim)
    return rep


def _reversed_transpose(m):
    n = m.rows
    return QMatrix(n, n, {(n - 1 - j, n - 1 - i): -v for (i, j), v in m.items()})


def dual(rep):
    """X -> -X^T, with the basis order reversed so raising stays upper triangular."""
    top = dual_weight(rep.root_system, rep.highest_weight) if rep.highest_weight is not None else None
    return MatrixRep(rep.root_system, top, rep.dim,
                     tuple(_reversed_transpose(m) for m in rep.gen_e),
                     tuple(_reversed_transpose(m) for m in rep.gen_f),
                     tuple(_reversed_transpose(m) for m in rep.gen_h),
                     tuple(tuple(-c for c in w) for w in reversed(rep.weights)))


def _same_root_system(reps):
    systems = {rep.root_system for rep in reps}
    if len(systems) != 1:
        raise InvalidRequest('representations of different root systems')
    return systems.pop()


def direct_sum(reps):
    R = _same_root_system(reps)
    r = R.rank
    return MatrixRep(R, None, sum(rep.dim for rep in reps),
                     tuple(block_diagonal([rep.gen_e[i] for rep in reps]) for i in range(r)),
                     tuple(block_diagonal([rep.gen_f[i] for rep in reps]) for i in range(r)),
                     tuple(block_diagonal([rep.gen_h[i] for rep in reps]) for i in range(r)),
                     tuple(w for rep in reps for w in rep.weights))


def _tensor_pair(a, b):
    ia = QMatrix.identity(a.dim)
    ib = QMatrix.identity(b.dim)

    def act(x, y):
        return kron(x, ib) + kron(ia, y)

    r = a.root_system.rank
    return MatrixRep(a.root_system, None, a.dim * b.dim,
                     tuple(act(a.gen_e[i], b.gen_e[i]) for i in range(r)),
                     tuple(act(a.gen_f[i], b.gen_f[i]) for i in range(r)),
                     tuple(act(a.gen_h[i], b.gen_h[i]) for i in range(r)),
                     tuple(tuple(x + y for x, y in zip(u, v)) for u in a.weights for v in b.weights))


def tensor(reps):
    _same_root_system(reps)
    out = reps[0]
    for rep in reps[1:]:
        out = _tensor_pair(out, rep)
    return out


@dataclass(frozen=True, eq=False)
class SubalgebraInGl:
    """A basis of k + c inside gl(W) with a distinguished Borel sub-basis."""
    ambient_dim: int
    basis: tuple
    borel_basis: tuple
    generators: tuple
    center: tuple
    semisimple_traceless: bool
    spec: PairSpec = None

    @property
    def dim(self):
        return len(self.basis)

    def span(self):
        return SpanReducer(m.vec() for m in self.basis)

    def is_independent(self):
        return self.span().dim == len(self.basis)

    def is_closed(self):
        """Every bracket of basis elements lies in the span of the basis."""
        span = self.span()
        for p in range(len(self.basis)):
            for q in range(p + 1, len(self.basis)):
                if not span.contains(bracket(self.basis[p], self.basis[q]).vec()):
                    return False
        return True

    def borel_in_span(self):
        span = self.span()
        return all(span.contains(b.vec()) for b in self.borel_basis)

    def to_json(self):
        return {'ambient_dim': self.ambient_dim, 'dim': self.dim, 'borel_dim': len(self.borel_basis),
                'center_dim': len(self.center), 'spec': self.spec.to_text() if self.spec else None}


def _embed(x, before, after):
    out = x
    if before > 1:
        out = kron(QMatrix.identity(before), out)
    if after > 1:
        out = kron(out, QMatrix.identity(after))
    return out


def _root_vectors(R, gens):
    """Root vectors X_beta = [g_i, X_(beta - alpha_i)] for all positive beta."""
    vectors = {}
    for beta in R.positive_roots:
        if sum(beta) == 1:
            vectors[beta] = gens[beta.index(1)]
            continue
        for i in range(R.rank):
            prev = tuple(c - 1 if k == i else c for k, c in enumerate(beta))
            if prev in vectors:
                vectors[beta] = bracket(gens[i], vectors[prev])
                break
    return [vectors[beta] for beta in R.positive_roots]


def assemble(spec, cap=DEFAULT_DIM_CAP):
    """Realize k + c of a PairSpec inside gl(W)."""
    systems = spec.root_systems
    total = spec.dim
    if total > cap:
        raise DimensionCapExceeded(total, cap)
    modules = [[hw_module(R, w, cap) for R, w in zip(systems, word)] for word in spec.summands]
    sizes = [[m.dim for m in word] for word in modules]
    basis, borel, generators, cartan = [], [], [], []
    for f, R in enumerate(systems):
        if all(not any(word[f]) for word in spec.summands):
            raise InvalidRequest('factor {} acts trivially on W'.format(R.name))

        def lift(attr, i):
            blocks = []
            for s, word in enumerate(modules):
                before = 1
                for d in sizes[s][:f]:
                    before *= d
                after = 1
                for d in sizes[s][f + 1:]:
                    after *= d
                blocks.append(_embed(getattr(word[f], attr)[i], before, after))
            return block_diagonal(blocks)

        es = [lift('gen_e', i) for i in range(R.rank)]
        fs = [lift('gen_f', i) for i in range(R.rank)]
        hs = [lift('gen_h', i) for i in range(R.rank)]
        positive = _root_vectors(R, es)
        negative = _root_vectors(R, fs)
        basis.extend(hs + positive + negative)
        borel.extend(hs + positive)
        generators.extend(es + fs)
        cartan.extend(hs)
    offsets = [sum(spec.summand_dim(t) for t in range(s)) for s in range(len(spec.summands))]
    center = []
    for gen in spec.center:
        values = []
        for s, c in enumerate(gen):
            values.extend([c] * spec.summand_dim(s))
        center.append(QMatrix.diagonal(values))
    diagonals = [m.diagonal_values() for m in cartan + center]
    if rank_of_vectors(diagonals, total) != len(diagonals):
        raise InvalidRequest('center generators are dependent on the Cartan subalgebra')
    traceless = all(not m.trace() for m in basis)
    basis.extend(center)
    borel.extend(center)
    generators.extend(center)
    logger.debug('assembled %s: dim W %d, dim k+c %d, summand offsets %s', spec.to_text(), total, len(basis), offsets)
    return SubalgebraInGl(total, tuple(basis), tuple(borel), tuple(generators), tuple(center), traceless, spec)


def dual_spec(spec):
    systems = spec.root_systems
    summands = tuple(tuple(dual_weight(R, w) for R, w in zip(systems, word)) for word in spec.summands)
    center = tuple(tuple(-c for c in gen) for gen in spec.center)
    return PairSpec(spec.factors, summands, center)


def dual_subalgebra(sub):
    """The same algebra acting on W*, basis reversed."""
    def flip(ms):
        return tuple(_reversed_transpose(m) for m in ms)

    return SubalgebraInGl(sub.ambient_dim, flip(sub.basis), flip(sub.borel_basis), flip(sub.generators),
                          flip(sub.center), sub.semisimple_traceless,
                          dual_spec(sub.spec) if sub.spec else None)
