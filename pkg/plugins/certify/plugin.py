from fractions import Fraction

from app_controller import EXIT_FAILURE, EXIT_INCONCLUSIVE, EXIT_OK, UsageError
from lbounds.certify import (
    DEFAULT_TOLERANCE,
    ROUNDING_MODES,
    backlund_spec,
    certify_residual_negative,
    gamma_glue_spec,
    partial_summation_spec,
    theorem2_glue_spec,
)
from lbounds.types import CertificateStatus

from .persistence import default_output_path, write_certificate

KINDS = ('backlund', 'psum', 'gamma-glue', 't2-glue')
DEFAULT_REGIONS = {
    'backlund': {'t_min': 50.0, 't_max': 1e6},
    'psum': {'t_min': 0.0, 't_max': 1e6},
    'gamma-glue': {'t_min': 1e-3, 't_max': 1e6},
    't2-glue': {'t_min': 0.0, 't_max': 50.0},
}
EXIT_CODES = {
    CertificateStatus.CERTIFIED: EXIT_OK,
    CertificateStatus.FAILED: EXIT_FAILURE,
    CertificateStatus.EVIDENCE_ONLY: EXIT_INCONCLUSIVE,
}


def parse_fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as error:
        raise UsageError(f'Not a rational number: {text!r}.') from error


def build_spec(args):
    region = DEFAULT_REGIONS[args.kind]
    t_min = region['t_min'] if args.t_min is None else args.t_min
    tails = not args.no_tails
    if args.kind == 'backlund':
        return backlund_spec(3.0 if args.m is None else args.m, t_min, tails)
    if args.kind == 'psum':
        return partial_summation_spec(
            2.0 if args.m is None else args.m,
            Fraction(14, 5) if args.b is None else parse_fraction(args.b),
            2.0 if args.q_min is None else args.q_min,
            1e4 if args.q_max is None else args.q_max,
            t_min,
            tails,
        )
    if args.kind == 'gamma-glue':
        return gamma_glue_spec(t_min)
    return theorem2_glue_spec(t_min)


class CertifyCommand:
    def configure_parser(self, parser):
        parser.add_argument('--kind', choices=KINDS, required=True)
        parser.add_argument('--m', type=float)
        parser.add_argument('--b', help='rational shift, e.g. 14/5')
        parser.add_argument('--t-min', type=float)
        parser.add_argument('--t-max', type=float)
        parser.add_argument('--q-min', type=float)
        parser.add_argument('--q-max', type=float)
        parser.add_argument('--tol', type=float, default=DEFAULT_TOLERANCE, help='minimum cell width')
        parser.add_argument('--rounding', choices=sorted(ROUNDING_MODES), default='directed')
        parser.add_argument('--no-tails', action='store_true', help='skip the unbounded tail cells')
        parser.add_argument('--max-cells', type=int, default=200_000)
        parser.add_argument('--out', metavar='PATH', help='JSON Lines certificate path')

    def run(self, args):
        t_max = DEFAULT_REGIONS[args.kind]['t_max'] if args.t_max is None else args.t_max
        try:
            spec = build_spec(args)
            certificate = certify_residual_negative(spec, t_max, args.tol, args.rounding, args.max_cells)
        except ValueError as error:
            raise UsageError(str(error)) from error

        path = args.out or default_output_path(args.kind)
        fingerprint = write_certificate(path, certificate)
        print(f'Certificate {certificate.status.value}: {spec.kind.value} written to {path}')
        print(f'  SHA-256: {fingerprint}')
        print(f'  Cells: {len(certificate.subintervals)}  Tail cells: {len(certificate.tails)}')
        if certificate.max_upper_bound is not None:
            print(f'  Largest upper bound: {certificate.max_upper_bound:.17g}')
        if certificate.failure is not None:
            print(f'  Failed on {certificate.failure.cell.describe()}: {certificate.reason}')
        elif certificate.reason:
            print(f'  {certificate.reason}')
        return EXIT_CODES[certificate.status]
