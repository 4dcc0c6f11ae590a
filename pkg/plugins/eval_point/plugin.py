import json
import logging

from app_controller import EXIT_FAILURE, EXIT_INCONCLUSIVE, EXIT_OK, UsageError
from lbounds.characters import character_by_index
from lbounds.hurwitz import TruncationError
from lbounds.lfun import cross_check, l_eval_hurwitz, l_eval_partial_sum, partial_sum_truncation
from lbounds.types import Consistency

METHODS = ('hurwitz', 'psum', 'both')


def point_record(point):
    return {
        'q': point.q,
        'chi_exponents': list(point.chi.exponents),
        't': point.t,
        'method': point.method.value,
        'l_real': point.value.mid.real,
        'l_imag': point.value.mid.imag,
        'l_radius': point.value.radius,
        'l_abs_mid': point.abs_mid,
        'l_abs_radius': point.abs_radius,
        'truncation': point.truncation,
    }


class EvalPointCommand:
    def configure_parser(self, parser):
        parser.add_argument('--q', type=int, required=True, help='modulus')
        parser.add_argument('--chi', type=int, required=True, help='index among the non-principal characters')
        parser.add_argument('--t', type=float, required=True, help='imaginary part of s = 1 + it')
        parser.add_argument('--radius', type=float, default=1e-10, help='target radius')
        parser.add_argument('--method', choices=METHODS, default='hurwitz')
        parser.add_argument('--order', type=int, default=1, help='Euler-Maclaurin order (odd)')
        parser.add_argument('--max-terms', type=int, default=10 ** 8, help='cap on partial-sum terms')

    def run(self, args):
        if args.q < 3:
            raise UsageError(f'--q must be at least 3, got {args.q}.')
        if not args.t > 0 or not args.radius > 0:
            raise UsageError('--t and --radius must be positive.')
        try:
            chi = character_by_index(args.q, args.chi)
        except ValueError as error:
            raise UsageError(str(error)) from error

        points = []
        status = EXIT_OK
        if args.method in ('hurwitz', 'both'):
            try:
                points.append(l_eval_hurwitz(chi, args.t, args.radius, args.order))
            except TruncationError as error:
                logging.warning('%s', error)
                status = EXIT_INCONCLUSIVE
            except ValueError as error:
                raise UsageError(str(error)) from error
        if args.method in ('psum', 'both'):
            truncation = partial_sum_truncation(args.q, args.t, args.radius)
            if truncation > args.max_terms:
                capped = max(args.q, args.max_terms - args.max_terms % args.q)
                logging.warning('Target radius needs N=%d; capped at N=%d.', truncation, capped)
                truncation = capped
            points.append(l_eval_partial_sum(chi, args.t, truncation))

        for point in points:
            print(json.dumps(point_record(point), sort_keys=True))
        if len(points) == 2 and cross_check(*points) is Consistency.INCONSISTENT:
            return EXIT_FAILURE
        return status
