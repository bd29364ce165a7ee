# services/spherocheck/project/api/commands.py

"""
Flask-Script commands. Each command prints one JSON report (verify-table and
negative-controls also print a TSV summary) and returns the exit code:
0 success, 1 failed assertion, 2 usage or parse error, 3 dimension cap.
"""

import logging
import time

from flask import current_app
from flask_script import Command, Option

from project.api.exactla import SampleConfig
from project.api.exceptions import DimensionCapExceeded, SpherocheckError
from project.api.mult_free import component_dim, sym_decomposition
from project.api.rep_build import assemble
from project.api.spec_parser import parse_pair_spec
from project.api.sphericity import generic_orbit_codimension, grassmannian_scan, is_bounded, \
    is_spherical_grassmannian, is_spherical_projective, normalizer_closure, normalizer_condition_holds, \
    normalizer_in_gl, single_orbit, verify_verdict
from project.api.symplectic import CoadjointPoint, isotropy_check, lagrangian_check, minimal_orbit_points, \
    nilpotent_perp_points, perp_space, sample_moment_points, standard_subalgebra
from project.api.table61 import read_table, run_negative_controls, table_failures, tsv_lines, verify_table
from project.api.utils.response import dump_report, report_fail, report_ok, write_report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def sample_config_from(config, seed=None, trials=None, height=None):
    return SampleConfig(
        seed=config['SEED'] if seed is None else seed,
        height_bound=config['HEIGHT_BOUND'] if height is None else height,
        trials=config['TRIALS'] if trials is None else trials,
    )


class SpherocheckCommand(Command):
    """Runs `execute`, maps errors to exit codes and prints the report."""

    name = None

    def execute(self, config, **kwargs):
        """Returns (exit code, payload, extra report fields)."""
        raise NotImplementedError

    def run(self, **kwargs):
        config = current_app.config
        started = time.time()
        fields = {'command': self.name, 'schema': config['SCHEMA'], 'version': config['TOOL_VERSION']}
        try:
            code, payload, extra = self.execute(config, **kwargs)
            fields.update(extra)
            fields['millis'] = int((time.time() - started) * 1000)
            if code == EXIT_OK:
                report = report_ok(payload, **fields)
            else:
                report = report_fail(payload.pop('message', 'assertion failed'), payload, **fields)
        except DimensionCapExceeded as e:
            code = EXIT_CAP
            report = report_fail(str(e), {'dim': e.dim, 'cap': e.cap}, **fields)
        except SpherocheckError as e:
            code = EXIT_USAGE
            report = report_fail(str(e), {'error': e.__class__.__name__}, **fields)
        report.setdefault('millis', int((time.time() - started) * 1000))
        if code != EXIT_OK:
            logger.warning('%s: %s', self.name, report['message'])
        print(dump_report(report))
        return code


class CheckSpherical(SpherocheckCommand):
    """Decides whether P(W) (or Gr(r, W)) is spherical."""

    name = 'check-spherical'
    option_list = (
        Option('spec'),
        Option('--trials', dest='trials', type=int, default=None),
        Option('--seed', dest='seed', type=int, default=None),
        Option('--height', dest='height', type=int, default=None),
        Option('--gr', dest='gr', type=int, default=None),
    )

    def execute(self, config, spec, trials=None, seed=None, height=None, gr=None):
        pair = parse_pair_spec(spec)
        cfg = sample_config_from(config, seed, trials, height)
        sub = assemble(pair, config['DIM_CAP'])
        if gr is None or gr == 1:
            verdict = is_spherical_projective(sub, cfg, pair, config['DMAX'])
        else:
            verdict = is_spherical_grassmannian(sub, gr, cfg, pair, config['DMAX'])
        payload = {
            'verdict': verdict.to_json(),
            'verified': verify_verdict(verdict, sub, pair, config['DIM_CAP']),
            'subalgebra': sub.to_json(),
            'gr': gr or 1,
        }
        return EXIT_OK, payload, {'spec': pair.to_text(), 'sampling': cfg.to_json(), 'seed': cfg.seed}


class CheckBounded(SpherocheckCommand):
    """Boundedness of k in sl(W) through the P(W) verdict."""

    name = 'check-bounded'
    option_list = (
        Option('spec'),
        Option('--via-gr', dest='via_gr', action='store_true', default=False),
        Option('--trials', dest='trials', type=int, default=None),
        Option('--seed', dest='seed', type=int, default=None),
    )

    def execute(self, config, spec, via_gr=False, trials=None, seed=None):
        pair = parse_pair_spec(spec)
        cfg = sample_config_from(config, seed, trials)
        sub = assemble(pair, config['DIM_CAP'])
        verdict = is_bounded(sub, cfg, pair, config['DMAX'])
        payload = {
            'verdict': verdict.to_json(),
            'bounded': True if verdict.is_spherical else False if verdict.is_not_spherical else None,
            'single_orbit': single_orbit(sub),
            'generic_orbit_codimension': generic_orbit_codimension(sub, cfg),
        }
        if via_gr:
            if pair.dim > config['GRASSMANNIAN_MAX_DIM']:
                payload['grassmannian'] = 'skipped: dim W {} > {}'.format(pair.dim, config['GRASSMANNIAN_MAX_DIM'])
            else:
                payload.update(grassmannian_scan(sub, cfg, verdict).to_json())
        return EXIT_OK, payload, {'spec': pair.to_text(), 'seed': cfg.seed}


class DecomposeSym(SpherocheckCommand):
    """S^d(W*) for d = 1..degree as (k + c)-modules."""

    name = 'decompose-sym'
    option_list = (
        Option('spec'),
        Option('--degree', dest='degree', type=int, default=None),
    )

    def execute(self, config, spec, degree=None):
        pair = parse_pair_spec(spec)
        degree = config['PROFILE_DEGREE'] if degree is None else degree
        decompositions = []
        for d in range(min(1, degree), degree + 1):
            graded = sym_decomposition(pair, d, config['DIM_CAP'])
            body = graded.to_json()
            for item, (component, _) in zip(body['components'], graded.components):
                item['dim'] = component_dim(pair, component)
            decompositions.append(body)
        payload = {
            'decomposition': decompositions[-1],
            'decompositions': decompositions,
            'multiplicity_free': all(d['max_multiplicity'] <= 1 for d in decompositions),
        }
        return EXIT_OK, payload, {'spec': pair.to_text()}


class Normalizer(SpherocheckCommand):
    """Normalizer of k + c in gl(W) and the normalizer closure."""

    name = 'normalizer'
    option_list = (Option('spec'),)

    def execute(self, config, spec):
        pair = parse_pair_spec(spec)
        sub = assemble(pair, config['DIM_CAP'])
        normalizer = normalizer_in_gl(sub.basis, sub.ambient_dim, sub.generators)
        closure = normalizer_closure(pair)
        payload = {
            'algebra_dim': sub.dim,
            'normalizer_dim': len(normalizer),
            'condition_holds': normalizer_condition_holds(pair, config['DIM_CAP']),
            'diagonal_elements': sum(1 for m in normalizer if m.is_diagonal()),
            'closure': closure.to_text() if closure else None,
            'closure_dim': closure.algebra_dim if closure else None,
        }
        return EXIT_OK, payload, {'spec': pair.to_text()}


class VerifyTable(SpherocheckCommand):
    """Instantiates and verifies the classification table."""

    name = 'verify-table'
    option_list = (
        Option('--max-dim', dest='max_dim', type=int, default=None),
        Option('--entry', dest='entry', default=None),
        Option('--table', dest='table', default=None),
        Option('--reports', dest='reports', default=None),
        Option('--workers', dest='workers', type=int, default=None),
        Option('--seed', dest='seed', type=int, default=None),
    )

    def execute(self, config, max_dim=None, entry=None, table=None, reports=None, workers=None, seed=None):
        cfg = sample_config_from(config, seed)
        entries = read_table(table or config['TABLE'])
        results = verify_table(
            entries,
            max_dim=config['MAX_DIM_W'] if max_dim is None else max_dim,
            entry_id=entry,
            cfg=cfg,
            workers=config['WORKERS'] if workers is None else workers,
            cap=config['DIM_CAP'],
            gr_max_dim=config['GRASSMANNIAN_MAX_DIM'],
        )
        print('\n'.join(tsv_lines(results)))
        failures = table_failures(results)
        payload = {
            'instances': len(results),
            'asserted': sum(1 for r in results if r['asserted']),
            'failures': [{'entry_id': r['entry_id'], 'params': r['params']} for r in failures],
        }
        if reports:
            write_report(report_ok({'reports': results}, command=self.name, schema=config['SCHEMA']), reports)
            payload['reports_file'] = reports
        if failures:
            payload['message'] = '{} table instance(s) failed'.format(len(failures))
            return EXIT_ASSERTION, payload, {'seed': cfg.seed}
        return EXIT_OK, payload, {'seed': cfg.seed}


class MomentImage(SpherocheckCommand):
    """Samples the moment image of T*P(W) and checks k^perp geometry."""

    name = 'moment-image'
    option_list = (
        Option('--n', dest='n', type=int, required=True),
        Option('--samples', dest='samples', type=int, default=10),
        Option('--subalgebra', dest='subalgebra', choices=('so', 'sp'), default=None),
        Option('--lagrangian', dest='lagrangian', action='store_true', default=False),
        Option('--seed', dest='seed', type=int, default=None),
    )

    def execute(self, config, n, samples=10, subalgebra=None, lagrangian=False, seed=None):
        cfg = sample_config_from(config, seed)
        points = sample_moment_points(n, samples, cfg)
        payload = {
            'n': n,
            'points': points,
            'all_trace_zero': all(p['trace_zero'] for p in points),
            'all_square_zero': all(p['square_zero'] for p in points),
        }
        code = EXIT_OK if payload['all_trace_zero'] and payload['all_square_zero'] else EXIT_ASSERTION
        if subalgebra:
            sub = standard_subalgebra(subalgebra, n)
            perp = [CoadjointPoint(m) for m in perp_space(sub)]
            payload['perp_dim'] = len(perp)
            payload['isotropic'] = all(isotropy_check(sub, x) for x in perp)
            if lagrangian:
                trials = config['LAGRANGIAN_TRIALS']
                nilpotent = minimal_orbit_points(sub, cfg, trials) or nilpotent_perp_points(sub, cfg, trials)
                checks = [lagrangian_check(sub, x) for x in nilpotent]
                payload['lagrangian_points'] = len(checks)
                payload['lagrangian'] = bool(checks) and all(checks)
            if not payload['isotropic'] or payload.get('lagrangian') is False:
                code = EXIT_ASSERTION
        if code != EXIT_OK:
            payload['message'] = 'moment image check failed'
        return code, payload, {'seed': cfg.seed}


class NegativeControls(SpherocheckCommand):
    """Curated non-spherical pairs and their certificates."""

    name = 'negative-controls'
    option_list = (Option('--seed', dest='seed', type=int, default=None),)

    def execute(self, config, seed=None):
        cfg = sample_config_from(config, seed)
        results = run_negative_controls(cfg, config['DMAX'], config['DIM_CAP'])
        failed = [r['entry_id'] for r in results if not r['passed']]
        payload = {'controls': results, 'failed': failed}
        if failed:
            payload['message'] = 'negative control(s) failed: {}'.format(', '.join(failed))
            return EXIT_ASSERTION, payload, {'seed': cfg.seed}
        return EXIT_OK, payload, {'seed': cfg.seed}


COMMANDS = (CheckSpherical, CheckBounded, DecomposeSym, Normalizer, VerifyTable, MomentImage, NegativeControls)


def register_commands(manager):
    for command in COMMANDS:
        manager.add_command(command.name, command())
    return manager
