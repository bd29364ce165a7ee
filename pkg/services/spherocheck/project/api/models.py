# services/spherocheck/project/api/models.py

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import reduce

from project.api.exceptions import InvalidRequest, InvalidWeight, SpecArityError
from project.api.lie_core import check_weight, root_system, weyl_dim


class Model(object):
    """to_json-backed repr shared by the report types."""

    def to_json(self):
        raise NotImplementedError

    def __repr__(self):
        str_list = []
        for attr, value in self.to_json().items():
            str_list.append("{}={}".format(attr, value))
        return "{}({})".format(self.__class__.__name__, ",".join(str_list))


def algebra_name(type_label, rank):
    if type_label == 'A':
        return 'sl({})'.format(rank + 1)
    if type_label == 'B':
        return 'so({})'.format(2 * rank + 1)
    if type_label == 'C':
        return 'sp({})'.format(2 * rank)
    if type_label == 'D':
        return 'so({})'.format(2 * rank)
    return type_label.lower()


def weight_text(weight):
    terms = []
    for i, c in enumerate(weight):
        if c == 1:
            terms.append('w{}'.format(i + 1))
        elif c:
            terms.append('{}w{}'.format(c, i + 1))
    return '+'.join(terms) if terms else '1'


def center_text(generator):
    if all(c == 1 for c in generator):
        return 'h1'
    return 'h({})'.format(','.join(str(c) for c in generator))


@dataclass(frozen=True)
class PairSpec:
    """A reductive k = (product of simple factors) + center acting on W.

    W is the direct sum of `summands`; each summand is a tensor word with one
    dominant weight per factor. Each center generator lists one scaling
    constant per summand.
    """
    factors: tuple
    summands: tuple
    center: tuple = ()

    def __post_init__(self):
        factors = tuple((t, int(r)) for t, r in self.factors)
        systems = [root_system(t, r) for t, r in factors]
        if not self.summands:
            raise SpecArityError('at least one summand is required')
        summands = []
        for word in self.summands:
            if len(word) != len(factors):
                raise SpecArityError('tensor word names {} factors, the algebra has {}'.format(len(word), len(factors)))
            summands.append(tuple(check_weight(R, w) for R, w in zip(systems, word)))
        center = []
        for gen in self.center:
            if len(gen) != len(summands):
                raise SpecArityError('center generator has {} scalings for {} summands'.format(len(gen), len(summands)))
            gen = tuple(int(c) for c in gen)
            if not any(gen):
                raise InvalidWeight('zero center generator')
            center.append(gen)
        object.__setattr__(self, 'factors', factors)
        object.__setattr__(self, 'summands', tuple(summands))
        object.__setattr__(self, 'center', tuple(center))

    @property
    def root_systems(self):
        return tuple(root_system(t, r) for t, r in self.factors)

    def summand_dim(self, index):
        return reduce(lambda acc, pair: acc * weyl_dim(*pair), zip(self.root_systems, self.summands[index]), 1)

    @property
    def dim(self):
        return sum(self.summand_dim(i) for i in range(len(self.summands)))

    @property
    def algebra_dim(self):
        return sum(R.dimension for R in self.root_systems) + len(self.center)

    def to_text(self):
        algebras = ' + '.join(algebra_name(t, r) for t, r in self.factors) or '0'
        rep = ' ++ '.join(' * '.join(weight_text(w) for w in word) or '1' for word in self.summands)
        text = '{}: {}'.format(algebras, rep)
        if self.center:
            text += ' [{}]'.format(', '.join(center_text(g) for g in self.center))
        return text

    def to_json(self):
        return {'spec': self.to_text(), 'dim': self.dim}

    def __str__(self):
        return self.to_text()


class Status(Enum):
    SPHERICAL = 'Spherical'
    NOT_SPHERICAL = 'NotSpherical'
    UNDETERMINED = 'Undetermined'


def _fraction_text(values):
    return [str(Fraction(v)) for v in values]


@dataclass(frozen=True, repr=False)
class Witness(Model):
    """An exact point at which the Borel tangent map reaches full rank."""
    point: tuple
    rank: int
    target: int
    seed: int
    trial: int

    def to_json(self):
        if self.point and isinstance(self.point[0], tuple):
            point = [_fraction_text(col) for col in self.point]
        else:
            point = _fraction_text(self.point)
        return {'point': point, 'rank': self.rank, 'target': self.target, 'seed': self.seed, 'trial': self.trial}


@dataclass(frozen=True, repr=False)
class DimensionCount(Model):
    borel_dim: int
    target_dim: int
    kind: str = field(default='DimensionCount', init=False)

    def to_json(self):
        return {'kind': self.kind, 'borel_dim': self.borel_dim, 'target_dim': self.target_dim}


@dataclass(frozen=True, repr=False)
class MultiplicityCertificate(Model):
    degree: int
    component: tuple
    multiplicity: int
    kind: str = field(default='MultiplicityCertificate', init=False)

    def to_json(self):
        return {'kind': self.kind, 'degree': self.degree, 'multiplicity': self.multiplicity,
                'component': component_json(self.component)}


@dataclass(frozen=True, repr=False)
class Verdict(Model):
    status: Status
    witness: Witness = None
    certificate: object = None
    trials_used: int = 0
    best_rank: int = None

    def __post_init__(self):
        if self.status is Status.SPHERICAL and self.witness is None:
            raise InvalidRequest('a Spherical verdict needs a witness')
        if self.status is Status.NOT_SPHERICAL and self.certificate is None:
            raise InvalidRequest('a NotSpherical verdict needs a certificate')

    @property
    def is_spherical(self):
        return self.status is Status.SPHERICAL

    @property
    def is_not_spherical(self):
        return self.status is Status.NOT_SPHERICAL

    def to_json(self):
        return {
            'status': self.status.value,
            'witness': self.witness.to_json() if self.witness else None,
            'certificate': self.certificate.to_json() if self.certificate else None,
            'trials_used': self.trials_used,
            'best_rank': self.best_rank,
        }


def component_json(component):
    *weights, center = component
    return {'weights': [list(w) for w in weights], 'center': list(center)}


@dataclass(frozen=True, repr=False)
class GrassmannianScan(Model):
    """Verdicts for Gr(r, W), 1 <= r < dim W, next to the P(W) verdict."""
    projective: Verdict
    verdicts: tuple

    @property
    def bounded(self):
        """True if some Gr(r) is Spherical, False if every one is NotSpherical."""
        if any(v.is_spherical for _, v in self.verdicts):
            return True
        if self.verdicts and all(v.is_not_spherical for _, v in self.verdicts):
            return False
        return None

    @property
    def inconsistencies(self):
        if self.projective.is_spherical:
            return []
        return [r for r, v in self.verdicts if v.is_spherical]

    def to_json(self):
        return {
            'grassmannians': [dict(v.to_json(), r=r) for r, v in self.verdicts],
            'bounded_via_grassmannian': self.bounded,
            'inconsistencies': self.inconsistencies,
        }


@dataclass(frozen=True, repr=False)
class GradedDecomposition(Model):
    degree: int
    components: tuple

    @property
    def max_multiplicity(self):
        return max((m for _, m in self.components), default=0)

    def to_json(self):
        return {
            'degree': self.degree,
            'components': [dict(component_json(c), multiplicity=m) for c, m in self.components],
            'max_multiplicity': self.max_multiplicity,
        }
