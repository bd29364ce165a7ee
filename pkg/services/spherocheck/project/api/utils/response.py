# services/spherocheck/project/api/utils/response.py

import json

SCHEMA = 'spherocheck-report/1'


def report_ok(payload, **fields):
    """Creates the report object of a successful command
    with the given payload merged in
    :param payload: dict of command results
    :param fields: extra top-level fields (command, spec, seed, millis, ...)
    :return report: dict with 'status' set to 'success'
    """
    return _make_report(payload, 'success', fields)


def report_fail(message, payload=None, **fields):
    """Creates the report object of a failed command
    :param message: human readable reason of the failure
    :param payload: optional dict of partial results
    :param fields: extra top-level fields
    :return report: dict with 'status' set to 'fail'
    """
    payload = dict(payload or {})
    payload['message'] = message
    return _make_report(payload, 'fail', fields)


def dump_report(report):
    """Serializes a report with sorted keys
    :param report: dict created by report_ok or report_fail
    :return text: JSON text
    """
    return json.dumps(report, sort_keys=True, indent=2, default=str)


def write_report(report, path):
    """Writes a report as JSON to the given path
    :param report: dict created by report_ok or report_fail
    :param path: output file path
    """
    with open(path, 'w') as f:
        f.write(dump_report(report))
        f.write('\n')


def _make_report(payload, status, fields):
    """Creates the report object with the given status.
    :param payload: dict of command results
    :param status: 'success' or 'fail'
    :param fields: extra top-level fields
    :return report: dict with schema, status and the payload keys
    """
    report = {'schema': SCHEMA, 'status': status}
    report.update(fields)
    report.update(payload)
    return report
