import logging
import os
import sys
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from commands import (CommandOutcome, GeometryCommands, IntegralCommands, PartitionCommands, ReportCommands,
                      RunContext)
from config import Settings, load_settings
from errors import BudgetError, GaugeKitError, InputError
from utils import ColorOutput, PathResolver, configure_logging, dumps, parse_options, resolve_jobs, to_csv
from utils.parallel import available_memory

logger = logging.getLogger(__name__)

GLOBAL_OPTIONS = {
    '--seed': 1,
    '--jobs': 1,
    '--format': 1,
    '--output': 1,
    '--config': 1,
    '--verbose': 0,
    '--quiet': 0,
}
GLOBAL_ALIASES = {'-v': '--verbose', '-q': '--quiet'}
FORMATS = ('json', 'csv')

EXIT_OK = 0
EXIT_REFUTED = 2


@dataclass
class Execution:
    """Exit code, the rendered report, and status lines meant for stderr."""

    code: int
    output: str = ''
    messages: List[str] = field(default_factory=list)


class GaugeTerminal:

    def __init__(self, cwd: Optional[str] = None, environ: Optional[Dict[str, str]] = None):
        self.cwd = cwd or os.getcwd()
        self.environ = environ
        self.context: Optional[RunContext] = None
        self.verbosity = 0

        # Command registry
        self.commands: Dict[str, Callable[[List[str]], CommandOutcome]] = {
            # Geometry
            'geom': lambda args: GeometryCommands.geom(args, self.context),
            'constants': lambda args: GeometryCommands.constants(args, self.context),
            'partition': lambda args: PartitionCommands.partition(args, self.context),

            # Integrals
            'gauss-green': lambda args: IntegralCommands.gauss_green(args, self.context),
            'hk': lambda args: IntegralCommands.hk(args, self.context),
            'verify': lambda args: IntegralCommands.verify(args, self.context),
            'charge-check': lambda args: IntegralCommands.charge_check(args, self.context),

            # Reports
            'diagram': lambda args: ReportCommands.diagram(args, self.context),
            'help': lambda args: ReportCommands.help(args, self.context),
        }

    def split_globals(self, argv: List[str]) -> Tuple[List[str], List[str]]:
        """Pull the global flags out from anywhere in argv."""
        flags, rest = [], []
        i = 0
        while i < len(argv):
            token = argv[i]
            name = GLOBAL_ALIASES.get(token, token).split('=', 1)[0]
            if name in GLOBAL_OPTIONS:
                take = 1 if '=' in token else 1 + GLOBAL_OPTIONS[name]
                flags.extend(argv[i:i + take])
                i += take
            else:
                rest.append(token)
                i += 1
        return flags, rest

    def resolve_settings(self, options: dict) -> Settings:
        seed = None
        if 'seed' in options:
            try:
                seed = int(options['seed'])
            except ValueError:
                raise InputError(f"not an integer: {options['seed']!r}", '--seed')
        jobs = None
        if 'jobs' in options:
            try:
                jobs = resolve_jobs(options['jobs'])
            except ValueError:
                raise InputError(f"expected an integer or 'auto', got {options['jobs']!r}", '--jobs')
        path = None
        if 'config' in options:
            path = PathResolver.resolve(options['config'], self.cwd)
        return load_settings(path, self.environ, seed=seed, jobs=jobs)

    def render(self, command: str, args: List[str], outcome: CommandOutcome, fmt: str) -> str:
        if fmt == 'csv':
            return to_csv(outcome.table)
        return dumps({'command': command, 'args': args, 'settings': self.context.settings.as_dict(),
                      'report': outcome.payload}) + '\n'

    def execute(self, argv: List[str]) -> Execution:
        """Run one command line; never raises."""
        cmd = 'gaugekit'
        try:
            flags, rest = self.split_globals(list(argv))
            options, _ = parse_options(flags, GLOBAL_OPTIONS, GLOBAL_ALIASES)
            self.verbosity = (1 if options.get('verbose') else 0) - (1 if options.get('quiet') else 0)
            fmt = options.get('format', 'json')
            if fmt not in FORMATS:
                raise InputError(f"must be one of {', '.join(FORMATS)}", '--format')
            self.context = RunContext(self.resolve_settings(options), self.cwd)

            if not rest:
                rest = ['help']
            cmd, args = rest[0], rest[1:]
            handler = self.commands.get(cmd)
            if handler is None:
                raise InputError("command not found")
            logger.debug("running %s %s", cmd, ' '.join(args))
            outcome = handler(args)

            text = self.render(cmd, args, outcome, fmt)
            messages = list(outcome.summary)
            if 'output' in options:
                target = PathResolver.expand_path(options['output'])
                if not os.path.isabs(target):
                    target = os.path.join(self.cwd, target)
                with open(target, 'w', encoding='utf-8') as f:
                    f.write(text)
                messages.append(ColorOutput.success(f"report written to {options['output']}"))
                text = ''
            return Execution(EXIT_REFUTED if outcome.refuted else EXIT_OK, text, messages)
        except GaugeKitError as e:
            if isinstance(e, BudgetError):
                logger.warning("budget %s exhausted with %.1f GiB available", e.budget,
                               available_memory() / 2 ** 30)
            messages = [ColorOutput.error(f"{cmd}: {e}")]
            if e.detail:
                messages.append(ColorOutput.info(dumps(e.detail).replace('\n', ' ')))
            return Execution(e.exit_code, '', messages)
        except OSError as e:
            return Execution(InputError.exit_code, '', [ColorOutput.error(f"{cmd}: {e}")])
        except Exception as e:
            logger.debug("unexpected failure", exc_info=True)
            return Execution(1, '', [ColorOutput.error(f"{cmd}: {e}")])

    def run(self, argv: List[str]) -> int:
        """Execute, print the report on stdout and status lines on stderr."""
        flags, _ = self.split_globals(list(argv))
        configure_logging(sum(1 for f in flags if f in ('-v', '--verbose'))
                          - sum(1 for f in flags if f in ('-q', '--quiet')))
        result = self.execute(argv)
        if result.output:
            sys.stdout.write(result.output)
        if self.verbosity >= 0 or result.code not in (EXIT_OK, EXIT_REFUTED):
            for line in result.messages:
                print(line, file=sys.stderr)
        return result.code
