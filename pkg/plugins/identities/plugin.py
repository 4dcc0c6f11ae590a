import json
import os

from app_controller import EXIT_FAILURE, EXIT_INCONCLUSIVE, EXIT_OK, UsageError
from lbounds.types import POLE_EXCLUSION, Consistency
from report_integrity import write_fingerprint

from .checks import DEFAULT_S_VALUES, run_all

STATUS_MARKS = {
    Consistency.CONSISTENT: 'ok',
    Consistency.INCONSISTENT: 'FAILED',
    Consistency.INCONCLUSIVE: 'inconclusive',
}


def parse_s(text):
    try:
        value = complex(text.replace(' ', ''))
    except ValueError as error:
        raise UsageError(f'Not a complex number: {text!r}.') from error
    if abs(value - 1) < POLE_EXCLUSION:
        raise UsageError(f's={text} is at the pole.')
    if not value.real > -1:
        raise UsageError(f's={text} needs Re(s) > -1.')
    return value


def overall_status(results):
    statuses = {result.status for result in results}
    if Consistency.INCONSISTENT in statuses:
        return Consistency.INCONSISTENT
    if Consistency.INCONCLUSIVE in statuses:
        return Consistency.INCONCLUSIVE
    return Consistency.CONSISTENT


def write_report(path, results, status):
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    report = {'status': status.value, 'checks': [result.as_record() for result in results]}
    with open(path, 'w', encoding='utf-8', newline='\n') as file:
        json.dump(report, file, indent=2, sort_keys=True)
        file.write('\n')
    return write_fingerprint(path)


class IdentitiesCommand:
    def configure_parser(self, parser):
        parser.add_argument('--q-max', type=int, default=30, help='largest modulus for character and coprime checks')
        parser.add_argument('--s', action='append', metavar='S', help='point for the Hurwitz identities, e.g. 1+10j')
        parser.add_argument('--out', metavar='PATH', help='JSON report path')

    def run(self, args):
        if args.q_max < 2:
            raise UsageError(f'--q-max must be at least 2, got {args.q_max}.')
        s_values = tuple(parse_s(text) for text in args.s) if args.s else DEFAULT_S_VALUES
        try:
            results = run_all(args.q_max, s_values)
        except ValueError as error:
            raise UsageError(str(error)) from error
        status = overall_status(results)
        for result in results:
            print(f'{result.name:22s} {STATUS_MARKS[result.status]}')
        if args.out:
            fingerprint = write_report(args.out, results, status)
            print(f'Report written to {args.out} (SHA-256 {fingerprint})')
        if status is Consistency.INCONSISTENT:
            return EXIT_FAILURE
        if status is Consistency.INCONCLUSIVE:
            return EXIT_INCONCLUSIVE
        return EXIT_OK
