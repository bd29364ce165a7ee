# services/spherocheck/project/api/exactla.py

"""
Exact linear algebra over the rationals.

QMatrix is an immutable sparse matrix with Fraction entries. Ranks are
computed by fraction-free (Bareiss) elimination on integer-scaled rows,
kernels by reduced row echelon form, and rank_mod_p is a numpy pre-filter
whose answer never exceeds the rational rank.
"""

import logging
import math
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from project.api.exceptions import BadPrime, InvalidRequest

logger = logging.getLogger(__name__)

DEFAULT_PRIME = 2147483647
PRIMES = (2147483647, 2147483629, 2147483587, 2147483579, 2147483563)

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class QMatrix(object):
    """Immutable sparse rational matrix.

    Entries are stored as a dict {(row, col): Fraction} holding nonzero
    values only; Fraction keeps them in lowest terms.
    """
    __slots__ = ('rows', 'cols', '_entries', '_hash')

    def __init__(self, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise InvalidRequest('negative matrix shape {}x{}'.format(rows, cols))
        self.rows = rows
        self.cols = cols
        clean = {}
        for (i, j), value in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise InvalidRequest('entry ({}, {}) outside a {}x{} matrix'.format(i, j, rows, cols))
            value = Fraction(value)
            if value:
                clean[(i, j)] = value
        self._entries = clean
        self._hash = None

    @classmethod
    def zeros(cls, rows, cols=None):
        return cls(rows, rows if cols is None else cols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def diagonal(cls, values):
        values = list(values)
        return cls(len(values), len(values), {(i, i): v for i, v in enumerate(values)})

    @classmethod
    def unit(cls, n, i, j):
        """Elementary matrix E_ij of size n."""
        return cls(n, n, {(i, j): 1})

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise InvalidRequest('ragged rows')
        return cls(len(rows), ncols, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v})

    @classmethod
    def from_columns(cls, columns, rows=None):
        columns = [list(c) for c in columns]
        nrows = len(columns[0]) if columns else (rows or 0)
        if any(len(c) != nrows for c in columns):
            raise InvalidRequest('ragged columns')
        return cls(nrows, len(columns), {(i, j): v for j, c in enumerate(columns) for i, v in enumerate(c) if v})

    @classmethod
    def column(cls, vector):
        return cls.from_columns([vector])

    @property
    def shape(self):
        return self.rows, self.cols

    @property
    def nnz(self):
        return len(self._entries)

    def __getitem__(self, key):
        return self._entries.get(key, Fraction(0))

    def items(self):
        return self._entries.items()

    def to_rows(self):
        dense = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            dense[i][j] = v
        return dense

    def row_dicts(self):
        out = [dict() for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def column_vector(self, j):
        return [self._entries.get((i, j), Fraction(0)) for i in range(self.rows)]

    def columns(self):
        return [self.column_vector(j) for j in range(self.cols)]

    def vec(self):
        """Row-major flattening as a sparse dict {index: value}."""
        return {i * self.cols + j: v for (i, j), v in self._entries.items()}

    def transpose(self):
        return QMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self._entries.items()})

    T = property(transpose)

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise InvalidRequest('shape mismatch {} vs {}'.format(self.shape, other.shape))

    def __add__(self, other):
        self._check_same_shape(other)
        out = dict(self._entries)
        for k, v in other._entries.items():
            out[k] = out.get(k, 0) + v
        return QMatrix(self.rows, self.cols, out)

    def __sub__(self, other):
        self._check_same_shape(other)
        out = dict(self._entries)
        for k, v in other._entries.items():
            out[k] = out.get(k, 0) - v
        return QMatrix(self.rows, self.cols, out)

    def __neg__(self):
        return QMatrix(self.rows, self.cols, {k: -v for k, v in self._entries.items()})

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return QMatrix(self.rows, self.cols)
        return QMatrix(self.rows, self.cols, {k: c * v for k, v in self._entries.items()})

    def __mul__(self, c):
        if isinstance(c, QMatrix):
            return self @ c
        return self.scale(c)

    __rmul__ = scale

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise InvalidRequest('cannot multiply {} by {}'.format(self.shape, other.shape))
        by_row = {}
        for (k, j), v in other._entries.items():
            by_row.setdefault(k, []).append((j, v))
        out = {}
        for (i, k), a in self._entries.items():
            for j, b in by_row.get(k, ()):
                out[(i, j)] = out.get((i, j), 0) + a * b
        return QMatrix(self.rows, other.cols, out)

    def apply(self, vector):
        """Matrix times a dense vector."""
        if len(vector) != self.cols:
            raise InvalidRequest('vector of length {} for {} columns'.format(len(vector), self.cols))
        out = [Fraction(0)] * self.rows
        for (i, j), v in self._entries.items():
            if vector[j]:
                out[i] += v * vector[j]
        return out

    def trace(self):
        return sum((v for (i, j), v in self._entries.items() if i == j), Fraction(0))

    def is_zero(self):
        return not self._entries

    def is_diagonal(self):
        return all(i == j for i, j in self._entries)

    def is_upper_triangular(self):
        return all(i <= j for i, j in self._entries)

    def diagonal_values(self):
        return [self._entries.get((i, i), Fraction(0)) for i in range(min(self.rows, self.cols))]

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, frozenset(self._entries.items())))
        return self._hash

    def to_json(self):
        return [[str(v) for v in row] for row in self.to_rows()]

    def __repr__(self):
        return 'QMatrix(rows={},cols={},nnz={})'.format(self.rows, self.cols, self.nnz)


def bracket(a, b):
    """Commutator [a, b] = ab - ba."""
    return a @ b - b @ a


def kron(a, b):
    out = {}
    for (i, j), x in a.items():
        for (k, l), y in b.items():
            out[(i * b.rows + k, j * b.cols + l)] = x * y
    return QMatrix(a.rows * b.rows, a.cols * b.cols, out)


def block_diagonal(blocks):
    n = sum(b.rows for b in blocks)
    m = sum(b.cols for b in blocks)
    out = {}
    r = c = 0
    for b in blocks:
        for (i, j), v in b.items():
            out[(r + i, c + j)] = v
        r += b.rows
        c += b.cols
    return QMatrix(n, m, out)


def _integer_rows(rows):
    """Scale each sparse rational row by the lcm of its denominators."""
    out = []
    for row in rows:
        if not row:
            continue
        scale = 1
        for v in row.values():
            scale = math.lcm(scale, v.denominator)
        out.append({j: int(v * scale) for j, v in row.items()})
    return out


def _bareiss_rank(int_rows, ncols):
    m = [[row.get(j, 0) for j in range(ncols)] for row in int_rows]
    nrows = len(m)
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        pivot = next((i for i in range(rank, nrows) if m[i][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        top = m[rank]
        for i in range(rank + 1, nrows):
            row = m[i]
            a = row[col]
            for j in range(col + 1, ncols):
                row[j] = (p * row[j] - a * top[j]) // prev
            row[col] = 0
        prev = p
        rank += 1
    return rank


def rank(matrix):
    """Exact rank over the rationals (fraction-free elimination)."""
    rows = matrix.row_dicts()
    if matrix.rows > matrix.cols:
        rows = matrix.transpose().row_dicts()
        ncols = matrix.rows
    else:
        ncols = matrix.cols
    return _bareiss_rank(_integer_rows(rows), ncols)


def rank_of_vectors(vectors, length):
    """Rank of a family of dense vectors of the given length."""
    if not vectors:
        return 0
    return rank(QMatrix.from_columns(vectors, rows=length))


class SpanReducer(object):
    """Incremental reduced echelon basis of sparse rational vectors.

    Each stored row has a leading 1 in its pivot column and zeros in every
    other pivot column, so reduction is a single pass.
    """

    def __init__(self, vectors=()):
        self._pivots = {}
        for v in vectors:
            self.add(v)

    @property
    def dim(self):
        return len(self._pivots)

    @property
    def pivots(self):
        return sorted(self._pivots)

    def reduce(self, vector):
        r = {k: Fraction(v) for k, v in vector.items() if v}
        for col, prow in self._pivots.items():
            c = r.get(col)
            if c:
                for k, v in prow.items():
                    nv = r.get(k, 0) - c * v
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
        return r

    def contains(self, vector):
        return not self.reduce(vector)

    def add(self, vector):
        """Adds a vector; returns False when it was already in the span."""
        r = self.reduce(vector)
        if not r:
            return False
        col = min(r)
        inv = 1 / r[col]
        r = {k: v * inv for k, v in r.items()}
        for other in self._pivots.values():
            c = other.get(col)
            if c:
                for k, v in r.items():
                    nv = other.get(k, 0) - c * v
                    if nv:
                        other[k] = nv
                    else:
                        other.pop(k, None)
        self._pivots[col] = r
        return True

    def rows(self):
        return [dict(self._pivots[c]) for c in sorted(self._pivots)]


def rref(matrix):
    """Reduced row echelon form as (list of sparse rows, pivot columns)."""
    reducer = SpanReducer(matrix.row_dicts())
    return reducer.rows(), reducer.pivots


def kernel_basis(matrix):
    """Columns spanning the exact null space; count = cols - rank."""
    rows, pivots = rref(matrix)
    pivot_set = set(pivots)
    basis = []
    for free in range(matrix.cols):
        if free in pivot_set:
            continue
        entries = {(free, 0): 1}
        for col, row in zip(pivots, rows):
            v = row.get(free)
            if v:
                entries[(col, 0)] = -v
        basis.append(QMatrix(matrix.cols, 1, entries))
    return basis


def kernel_of_rows(rows, ncols):
    """Null space of a system given as sparse row dicts, as dense vectors."""
    reducer = SpanReducer(rows)
    pivots = reducer.pivots
    reduced = reducer.rows()
    out = []
    for free in range(ncols):
        if free in reducer._pivots:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for col, row in zip(pivots, reduced):
            v = row.get(free)
            if v:
                vec[col] = -v
        out.append(vec)
    return out


def rank_mod_p(matrix, p=DEFAULT_PRIME):
    """Rank of the reduction mod p; never exceeds the rational rank."""
    if p >= 1 << 31:
        raise InvalidRequest('prime {} too large for int64 elimination'.format(p))
    a = np.zeros((matrix.rows, matrix.cols), dtype=np.int64)
    for (i, j), v in matrix.items():
        den = v.denominator % p
        if den == 0:
            raise BadPrime(p)
        a[i, j] = (v.numerator % p) * pow(den, -1, p) % p
    r = 0
    for col in range(matrix.cols):
        if r == matrix.rows:
            break
        nz = np.nonzero(a[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, col]), -1, p)
        a[r] = (a[r] * inv) % p
        factors = a[r + 1:, col].copy()
        if factors.any():
            a[r + 1:] = (a[r + 1:] - np.outer(factors, a[r]) % p) % p
        r += 1
    return r


def trial_rank(matrix):
    """Modular rank: a lower bound on the rank, and exact whenever it is full."""
    for p in PRIMES:
        try:
            return rank_mod_p(matrix, p)
        except BadPrime:
            logger.debug('bad prime %d, trying the next one', p)
    return rank(matrix)


def fast_rank(matrix):
    """Exact rank with a modular pre-filter.

    A full rank mod p is already exact; anything lower is recomputed over
    the rationals.
    """
    bound = min(matrix.rows, matrix.cols)
    try:
        modular = rank_mod_p(matrix)
    except BadPrime:
        return rank(matrix)
    if modular == bound:
        return modular
    return rank(matrix)


@dataclass(frozen=True)
class SampleConfig:
    """Deterministic sampling parameters for generic points."""
    seed: int = 0
    height_bound: int = 7
    trials: int = 16

    def __post_init__(self):
        if self.height_bound < 1:
            raise InvalidRequest('height_bound must be >= 1')
        if self.trials < 1:
            raise InvalidRequest('trials must be >= 1')
        object.__setattr__(self, 'seed', self.seed & _MASK64)

    def derive(self, index):
        """Independent configuration for the index-th trial."""
        _, seed = _splitmix64((self.seed ^ ((index + 1) * _GOLDEN)) & _MASK64)
        return replace(self, seed=seed)

    def to_json(self):
        return {'seed': self.seed, 'height_bound': self.height_bound, 'trials': self.trials}


def _splitmix64(state):
    state = (state + _GOLDEN) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


class RationalStream(object):
    """splitmix64 integer stream mapped to bounded-height rationals."""

    def __init__(self, seed, height_bound):
        self.state = seed & _MASK64
        self.height_bound = height_bound

    def next_int(self):
        self.state, out = _splitmix64(self.state)
        return out

    def next_rational(self):
        h = self.height_bound
        num = self.next_int() % (2 * h + 1) - h
        den = self.next_int() % h + 1
        return Fraction(num, den)

    def vector(self, dim):
        return [self.next_rational() for _ in range(dim)]


def random_vector(dim, cfg):
    if dim < 1:
        raise InvalidRequest('random_vector needs dim >= 1')
    return RationalStream(cfg.seed, cfg.height_bound).vector(dim)


def random_nonzero_vector(dim, cfg):
    stream = RationalStream(cfg.seed, cfg.height_bound)
    while True:
        v = stream.vector(dim)
        if any(v):
            return v


def inverse(matrix):
    """Exact inverse of a square matrix."""
    n = matrix.rows
    if matrix.cols != n:
        raise InvalidRequest('inverse of a non-square {} matrix'.format(matrix.shape))
    entries = dict(matrix.items())
    entries.update({(i, n + i): 1 for i in range(n)})
    reduced, pivots = rref(QMatrix(n, 2 * n, entries))
    if pivots != list(range(n)):
        raise InvalidRequest('matrix is singular')
    return QMatrix(n, n, {(i, j - n): v for i, row in enumerate(reduced) for j, v in row.items() if j >= n})
