# services/spherocheck/project/api/mult_free.py

"""
Degree-by-degree decomposition of F[W] = sum_d S^d(W*) under k + c.

Joint weights are keyed as (weight of factor 1, ..., weight of factor k,
center character), the center character holding one integer per center
generator.
"""

import logging
from functools import lru_cache
from itertools import product

from project.api.exceptions import DimensionCapExceeded, InvalidRequest
from project.api.lie_core import Character, dominant_multiplicities, height, is_dominant, peel, \
    sym_power_character, weight_multiplicities, weyl_dim
from project.api.models import GradedDecomposition, MultiplicityCertificate

logger = logging.getLogger(__name__)

DEFAULT_DMAX = 6
PROFILE_DEGREE = 4


def _center_character(spec, index, sign):
    return tuple(sign * gen[index] for gen in spec.center)


def summand_character(spec, index, dual=False):
    """Joint character of one summand of W (or of W* when dual)."""
    sign = -1 if dual else 1
    diagrams = [weight_multiplicities(R, w).items() for R, w in zip(spec.root_systems, spec.summands[index])]
    center = _center_character(spec, index, sign)
    out = Character()
    for combo in product(*diagrams):
        key = tuple(tuple(sign * c for c in mu) for mu, _ in combo) + (center,)
        mult = 1
        for _, m in combo:
            mult *= m
        out[key] = out.get(key, 0) + mult
    return out


def joint_character(spec, dual=False):
    out = Character()
    for index in range(len(spec.summands)):
        out = out + summand_character(spec, index, dual)
    return out


def _irreducible(systems):
    @lru_cache(maxsize=None)
    def restricted(key):
        *weights, center = key
        parts = [dominant_multiplicities(R, w).items() for R, w in zip(systems, weights)]
        out = {}
        for combo in product(*parts):
            mult = 1
            for _, m in combo:
                mult *= m
            out[tuple(mu for mu, _ in combo) + (center,)] = mult
        return out

    return restricted


def decompose_joint(chi, systems):
    """Peel a joint character into (highest weights + center character, multiplicity) pairs."""
    irreducible = _irreducible(tuple(systems))

    def order_key(key):
        return sum(height(R, w) for R, w in zip(systems, key[:-1])), key

    groups = {}
    for key, v in chi.items():
        if all(is_dominant(w) for w in key[:-1]):
            groups.setdefault(key[-1], {})[key] = v
    out = []
    for center in sorted(groups):
        out.extend(peel(groups[center], irreducible, order_key))
    return out


def sym_decomposition(spec, d, cap=64):
    """S^d(W*) as a (k + c)-module."""
    if d < 0:
        raise InvalidRequest('negative degree {}'.format(d))
    if spec.dim > cap:
        raise DimensionCapExceeded(spec.dim, cap)
    chi = sym_power_character(joint_character(spec, dual=True), d)
    components = decompose_joint(chi, spec.root_systems)
    logger.debug('S^%d of %s: %d components', d, spec.to_text(), len(components))
    return GradedDecomposition(d, tuple(components))


def nonspherical_certificate(spec, dmax=DEFAULT_DMAX, cap=64):
    """Lowest-degree component of F[W] with multiplicity >= 2, if any up to dmax."""
    for d in range(1, dmax + 1):
        for component, mult in sym_decomposition(spec, d, cap).components:
            if mult >= 2:
                logger.info('%s: multiplicity %d at degree %d', spec.to_text(), mult, d)
                return MultiplicityCertificate(d, component, mult)
    return None


def multiplicity_profile(spec, dmax=PROFILE_DEGREE, cap=64):
    return [(d, sym_decomposition(spec, d, cap).max_multiplicity) for d in range(1, dmax + 1)]


def component_dim(spec, component):
    dim = 1
    for R, w in zip(spec.root_systems, component[:-1]):
        dim *= weyl_dim(R, w)
    return dim
