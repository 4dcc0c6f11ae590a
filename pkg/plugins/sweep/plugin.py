from app_controller import UsageError

from .config import ConfigError, load_config
from .formatting import summarize
from .persistence import write_report
from .runner import run_sweep


class SweepCommand:
    def configure_parser(self, parser):
        parser.add_argument('--config', metavar='FILE', help='JSON sweep configuration (defaults from config.json)')
        parser.add_argument('--out', metavar='PATH', help='CSV report path (overrides output_path)')
        parser.add_argument('--workers', type=int, metavar='N', help='worker processes (overrides parallelism)')

    def run(self, args):
        try:
            cfg = load_config(args.config).with_overrides(output_path=args.out, parallelism=args.workers)
        except ConfigError as error:
            raise UsageError(str(error)) from error
        result = run_sweep(cfg)
        fingerprint = write_report(cfg.output_path, result.rows)
        print(summarize(result.summary, cfg.output_path, fingerprint))
        return result.summary.exit_code
