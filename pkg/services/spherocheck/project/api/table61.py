# services/spherocheck/project/api/table61.py

"""
Instantiation and verification of the classification table of indecomposable
spherical representations.

Each data line is expanded over a small parameter box (lower bound and
lower bound + 1 for every parameter) and over every combination of dual
flips. Asserted instances are checked on their normalizer closure: the
P(W) verdict must be Spherical with a verified witness and S^d(W*) must be
multiplicity free for d <= 4.
"""

import ast
import logging
import operator
import re
import time
from dataclasses import dataclass, field
from itertools import combinations, product
from multiprocessing import Pool

from project.api.exactla import SampleConfig
from project.api.exceptions import InvalidRequest, SpherocheckError
from project.api.lie_core import dual_weight
from project.api.models import PairSpec
from project.api.mult_free import PROFILE_DEGREE, multiplicity_profile
from project.api.rep_build import DEFAULT_DIM_CAP, assemble
from project.api.spec_parser import SpecParser
from project.api.sphericity import grassmannian_scan, is_spherical_projective, normalizer_closure, \
    normalizer_condition_holds, normalizer_in_gl, verify_verdict

logger = logging.getLogger(__name__)

MAX_DIM_W = 40
GRASSMANNIAN_MAX_DIM = 12
TSV_COLUMNS = ('entry_id', 'params', 'dimW', 'verdict', 'normalizer_ok', 'max_mult_d<=4', 'millis')

_BINARY = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.FloorDiv: operator.floordiv}
_COMPARE = {ast.Gt: operator.gt, ast.GtE: operator.ge, ast.Lt: operator.lt, ast.LtE: operator.le,
            ast.Eq: operator.eq, ast.NotEq: operator.ne}
_SLOT = re.compile(r'\{([^{}]*)\}')
_BOUND = re.compile(r'^\s*([a-z])\s*>=\s*(\d+)\s*$')


def evaluate(expr, env):
    """Integer arithmetic and comparisons over the entry parameters."""

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise InvalidRequest('unknown parameter {!r} in {!r}'.format(node.id, expr))
            return env[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -walk(node.operand)
        if isinstance(node, ast.BinOp) and type(node.op) in _BINARY:
            return _BINARY[type(node.op)](walk(node.left), walk(node.right))
        if isinstance(node, ast.BoolOp) and isinstance(node.op, ast.And):
            return all(walk(v) for v in node.values)
        if isinstance(node, ast.Compare):
            left = walk(node.left)
            for op, right in zip(node.ops, node.comparators):
                if type(op) not in _COMPARE:
                    break
                right = walk(right)
                if not _COMPARE[type(op)](left, right):
                    return False
                left = right
            else:
                return True
        raise InvalidRequest('unsupported expression {!r}'.format(expr))

    try:
        tree = ast.parse(expr, mode='eval')
    except SyntaxError:
        raise InvalidRequest('malformed expression {!r}'.format(expr))
    return walk(tree)


class TemplateParser(SpecParser):
    """Pair-spec parser that also records "~g" dual-group marks per slot."""

    def __init__(self, text):
        super().__init__(text)
        self.marks = []
        self._pending = []

    def summand(self, factors):
        self._pending = []
        word = super().summand(factors)
        self.marks.append(tuple(self._pending))
        return word

    def factor_rep(self):
        group = None
        if self.accept('~'):
            kind, group, _ = self.current
            if kind != 'name':
                raise self.error('expected a dual group name after "~"')
            self.index += 1
        self._pending.append(group)
        return super().factor_rep()


@dataclass(frozen=True)
class TableEntry:
    entry_id: str
    params: tuple
    constraints: tuple
    template: str
    notes: tuple = ()
    line: int = 0

    @property
    def reading(self):
        for note in self.notes:
            if note.startswith('reading='):
                return note.split('=', 1)[1]
        return 'dual'

    @property
    def asserted(self):
        return self.reading != 'literal'

    def boxes(self):
        """Parameter assignments, lower bound and one increment, in order."""
        names = [name for name, _ in self.params]
        ranges = [(lo, lo + 1) for _, lo in self.params]
        for values in product(*ranges):
            env = dict(zip(names, values))
            if all(evaluate(c, env) for c in self.constraints):
                yield env

    def to_json(self):
        return {
            'entry_id': self.entry_id,
            'params': {name: lo for name, lo in self.params},
            'constraints': list(self.constraints),
            'template': self.template,
            'reading': self.reading,
            'notes': list(self.notes),
        }


@dataclass(frozen=True)
class TableInstance:
    entry: TableEntry
    env: tuple
    flips: tuple
    spec: PairSpec = field(compare=False)

    @property
    def entry_id(self):
        return self.entry.entry_id

    @property
    def asserted(self):
        return self.entry.asserted

    @property
    def label(self):
        text = ','.join('{}={}'.format(k, v) for k, v in self.env) or '-'
        if self.flips:
            text += ';dual=' + ''.join(self.flips)
        if not self.asserted:
            text += ';' + self.entry.reading
        return text


def read_table(file):
    entries = []
    with open(file) as f:
        for number, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith('#'):
                continue
            cells = [c.strip() for c in line.split('|')]
            if len(cells) != 5:
                raise InvalidRequest('line {}: expected 5 cells, found {}'.format(number, len(cells)))
            entry_id, params, constraints, template, notes = cells
            bounds = []
            for part in filter(None, (p.strip() for p in params.split(','))):
                match = _BOUND.match(part)
                if match is None:
                    raise InvalidRequest('line {}: bad parameter bound {!r}'.format(number, part))
                bounds.append((match.group(1), int(match.group(2))))
            entries.append(TableEntry(
                entry_id,
                tuple(bounds),
                tuple(c.strip() for c in constraints.split(',') if c.strip()),
                template,
                tuple(n.strip() for n in notes.split(',') if n.strip()),
                number,
            ))
    logger.debug('read %d table lines from %s', len(entries), file)
    return entries


def instantiate(entry, env):
    """(PairSpec, marks) for one parameter assignment."""
    text = _SLOT.sub(lambda m: str(evaluate(m.group(1), env)), entry.template)
    parser = TemplateParser(text)
    return parser.parse(), parser.marks


def flip(spec, marks, groups):
    systems = spec.root_systems
    summands = []
    for word, word_marks in zip(spec.summands, marks):
        summands.append(tuple(dual_weight(R, w) if g in groups else w
                              for R, w, g in zip(systems, word, word_marks)))
    return PairSpec(spec.factors, tuple(summands), spec.center)


def expand(entry, env):
    """Every dual-flip variant of one assignment, without repeats."""
    spec, marks = instantiate(entry, env)
    groups = sorted({g for word in marks for g in word if g is not None})
    subsets = [c for size in range(len(groups) + 1) for c in combinations(groups, size)]
    seen = set()
    for subset in subsets:
        variant = flip(spec, marks, set(subset))
        if variant not in seen:
            seen.add(variant)
            yield subset, variant


def enumerate_instances(max_dim=MAX_DIM_W, entries=None, entry_id=None):
    out = []
    for entry in entries:
        if entry_id is not None and entry.entry_id != entry_id:
            continue
        seen = set()
        for env in entry.boxes():
            try:
                variants = list(expand(entry, env))
            except SpherocheckError as e:
                log = logger.debug if not entry.asserted else logger.warning
                log('%s (line %d) %s: %s', entry.entry_id, entry.line, env, e)
                continue
            for subset, spec in variants:
                if spec.dim > max_dim or spec in seen:
                    continue
                seen.add(spec)
                out.append(TableInstance(entry, tuple(sorted(env.items())), tuple(subset), spec))
    return out


def verify_instance(instance, cfg=None, cap=DEFAULT_DIM_CAP, dmax=PROFILE_DEGREE, gr_max_dim=GRASSMANNIAN_MAX_DIM):
    """Report for one table instance; `passed` only means something for asserted rows."""
    return verify_entry(instance.entry_id, instance.spec, cfg, cap, dmax, gr_max_dim,
                        entry=instance.entry, label=instance.label)


def verify_entry(entry_id, spec, cfg=None, cap=DEFAULT_DIM_CAP, dmax=PROFILE_DEGREE,
                 gr_max_dim=GRASSMANNIAN_MAX_DIM, entry=None, label='-'):
    """Verdict, normalizer condition and multiplicity profile of one pair.

    Mathematical failures are report contents: `passed` is False and
    `verdict` is 'Error' when the pair could not be built.
    """
    cfg = cfg or SampleConfig()
    started = time.time()
    report = {
        'entry_id': entry_id,
        'params': label,
        'spec': spec.to_text(),
        'dimW': spec.dim,
        'reading': entry.reading if entry else 'dual',
        'asserted': entry.asserted if entry else True,
        'notes': list(entry.notes) if entry else [],
    }
    try:
        raw = assemble(spec, cap)
        report['normalizer_dim'] = len(normalizer_in_gl(raw.basis, raw.ambient_dim, raw.generators))
        report['normalizer_ok'] = normalizer_condition_holds(spec, cap)
        closure = normalizer_closure(spec) or spec
        report['closure'] = closure.to_text()
        report['closure_dim'] = closure.algebra_dim
        sub = assemble(closure, cap)
        verdict = is_spherical_projective(sub, cfg, closure, dmax=0)
        report['verdict'] = verdict.status.value
        report['witness_verified'] = verify_verdict(verdict, sub, closure, cap)
        profile = multiplicity_profile(closure, dmax, cap)
        report['profile'] = [{'degree': d, 'max_multiplicity': m} for d, m in profile]
        report['max_mult'] = max((m for _, m in profile), default=0)
        report['passed'] = verdict.is_spherical and report['witness_verified'] and report['max_mult'] <= 1
        if spec.dim <= gr_max_dim:
            scan = grassmannian_scan(sub, cfg, verdict)
            report['grassmannian_spherical'] = [r for r, v in scan.verdicts if v.is_spherical]
            report['gr_inconsistencies'] = scan.inconsistencies
            report['passed'] = report['passed'] and not scan.inconsistencies
    except SpherocheckError as e:
        logger.error('%s %s: %s', entry_id, label, e)
        report.update({'verdict': 'Error', 'message': str(e), 'passed': False,
                       'normalizer_ok': None, 'max_mult': None})
    report['millis'] = int((time.time() - started) * 1000)
    logger.info('%s %s: %s in %d ms', entry_id, label, report['verdict'], report['millis'])
    return report


def _verify_job(args):
    return verify_instance(*args)


def verify_table(entries, max_dim=MAX_DIM_W, entry_id=None, cfg=None, workers=1, cap=DEFAULT_DIM_CAP,
                 gr_max_dim=GRASSMANNIAN_MAX_DIM):
    """Reports for every instance in table order."""
    cfg = cfg or SampleConfig()
    instances = enumerate_instances(max_dim, entries, entry_id)
    if entry_id is not None and not instances:
        raise InvalidRequest('no instances for entry {!r} within dim W <= {}'.format(entry_id, max_dim))
    jobs = [(instance, cfg, cap, PROFILE_DEGREE, gr_max_dim) for instance in instances]
    if workers > 1:
        with Pool(workers) as pool:
            return pool.map(_verify_job, jobs)
    return [_verify_job(job) for job in jobs]


def table_failures(reports):
    return [r for r in reports if r['asserted'] and not r['passed']]


NEGATIVE_CONTROLS = (
    ('quartic-binary-forms', 'sl(2): 4w1', 'DimensionCount'),
    ('sl3-adjoint', 'sl(3): w1+w2', 'DimensionCount'),
    ('three-planes-torus', 'sl(2): w1 ++ w1 ++ w1 [h(1,0,0), h(0,1,0), h(0,0,1)]', 'MultiplicityCertificate'),
    ('two-exterior-squares', 'sl(4): w2 ++ w2 [h(1,0), h(0,1)]', 'MultiplicityCertificate'),
    ('sl3-sl3-no-center', 'sl(3) + sl(3): w1 * w1', None),
)


def negative_controls():
    return [(name, SpecParser(text).parse(), expected) for name, text, expected in NEGATIVE_CONTROLS]


def run_negative_controls(cfg=None, dmax=6, cap=DEFAULT_DIM_CAP):
    """Verdicts on the raw specs; a control passes when its certificate has the expected kind."""
    cfg = cfg or SampleConfig()
    reports = []
    for name, spec, expected in negative_controls():
        started = time.time()
        sub = assemble(spec, cap)
        verdict = is_spherical_projective(sub, cfg, spec, dmax)
        kind = verdict.certificate.kind if verdict.certificate else None
        verified = verify_verdict(verdict, sub, spec, cap)
        report = {
            'entry_id': name,
            'spec': spec.to_text(),
            'dimW': spec.dim,
            'expected': expected,
            'verdict': verdict.status.value,
            'certificate': verdict.certificate.to_json() if verdict.certificate else None,
            'normalizer_ok': normalizer_condition_holds(spec, cap),
            'verified': verified,
            'passed': verified and (expected is None or (verdict.is_not_spherical and kind == expected)),
            'millis': int((time.time() - started) * 1000),
        }
        logger.info('control %s: %s (%s)', name, report['verdict'], kind)
        reports.append(report)
    return reports


def tsv_lines(reports):
    lines = ['\t'.join(TSV_COLUMNS)]
    for r in reports:
        row = (r['entry_id'], r['params'], r['dimW'], r['verdict'], r['normalizer_ok'], r['max_mult'], r['millis'])
        lines.append('\t'.join('-' if v is None else str(v) for v in row))
    return lines
