import argparse
import logging
import os
import sys

from plugin_loader import discover_manifests, load_command_class

APP_DIR = os.path.dirname(os.path.abspath(__file__))
PLUGINS_PACKAGE = 'plugins'
LOG_FORMAT = '%(asctime)s %(levelname)s %(message)s'

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64


class UsageError(Exception):
    """Bad command-line arguments or configuration; maps to exit status 64."""


class CommandParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f'{self.prog}: {message}')


class ApplicationController:
    def __init__(self, plugins_dir=None):
        self.plugins_dir = plugins_dir or os.path.join(APP_DIR, PLUGINS_PACKAGE)
        self.commands = {}

    def load_commands(self):
        for plugin_folder_name, manifest in discover_manifests(self.plugins_dir):
            try:
                command_class = load_command_class(PLUGINS_PACKAGE, plugin_folder_name, manifest)
            except (ImportError, AttributeError) as error:
                logging.error("Could not load command '%s': %s", manifest['command'], error)
                continue
            self.commands[manifest['command']] = (manifest, command_class())
        return self.commands

    def build_parser(self):
        parser = CommandParser(
            prog='lbounds',
            description='Certified bounds for Dirichlet L-functions on the line Re(s) = 1.',
        )
        verbosity = parser.add_mutually_exclusive_group()
        verbosity.add_argument('--verbose', action='store_true', help='log debug detail')
        verbosity.add_argument('--quiet', action='store_true', help='log warnings and errors only')
        subparsers = parser.add_subparsers(dest='command', metavar='COMMAND', parser_class=CommandParser)
        subparsers.required = True
        for command_name, (manifest, command) in sorted(self.commands.items()):
            subparser = subparsers.add_parser(command_name, help=manifest['description'])
            command.configure_parser(subparser)
        return parser

    def start(self, argv=None):
        self._configure_logging(argv)
        if not self.commands:
            self.load_commands()
        parser = self.build_parser()
        try:
            args = parser.parse_args(argv)
        except UsageError as error:
            parser.print_usage(sys.stderr)
            print(error, file=sys.stderr)
            return EXIT_USAGE

        _, command = self.commands[args.command]
        try:
            return command.run(args)
        except UsageError as error:
            logging.error('%s', error)
            return EXIT_USAGE
        except OSError as error:
            logging.error('Could not write report: %s', error)
            return EXIT_FAILURE

    @staticmethod
    def _configure_logging(argv):
        arguments = sys.argv[1:] if argv is None else argv
        level = logging.INFO
        if '--verbose' in arguments:
            level = logging.DEBUG
        elif '--quiet' in arguments:
            level = logging.WARNING
        logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)
