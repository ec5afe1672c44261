from typing import List

from colorama import Fore, Style

from errors import InputError
from harness import run_diagram
from utils import ColorOutput, as_int, parse_options

from .context import CommandOutcome, RunContext

DIAGRAM_OPTIONS = {'--depth': 1, '--trials': 1}

HELP_TEXT = {
    'geom': 'geom --figure F | --set S | --approximate X R LEVEL [--tag X] [--eps E] [--relative-to A]\n'
            '     [--isoperimetric E [--depth D]]  - volume, perimeter, diameter, regularity',
    'constants': 'constants [--n N] [--eps E] [--eta ETA] [--p P]  - dimension constants and eps\'',
    'partition': 'partition [subordinate|reflect|vitali|cousin|doubling] ...\n'
                 '  subordinate --balls B [--root LEVEL:i,j]\n'
                 '  reflect --box Q --x X --r R\n'
                 '  vitali --balls B\n'
                 '  cousin --interval a,b [--gauge G]\n'
                 '  doubling [--phi NAME] [--dim N] [--R R] [--eps E] [--tau T] [--c-t C] [--grid J]',
    'gauss-green': 'gauss-green --field U --figure F [--div-source symbolic|numeric] [--order K]',
    'hk': 'hk integrate --interval a,b [--f NAME] [--tolerance T] [--singular P..]\n'
          'hk check --claim C [--gauge G] [--trials N] [--windows W] [--eps E..]',
    'verify': 'verify --claim C [--gauge G] [--trials N] [--count K] [--depth D] [--eps E..]\n'
              '       [--restrict A] [--points X..] [--definite]',
    'charge-check': 'charge-check --charge C [--dim N] [--eps E] [--trials N] [--region A]\n'
                    '             [--derivative-at X [--eta ETA] [--radii R..]]',
    'diagram': 'diagram [--depth D] [--trials N]  - witness rows for the inclusions between notions',
}


class ReportCommands:

    @staticmethod
    def diagram(args: List[str], ctx: RunContext) -> CommandOutcome:
        """Run every witness row; a row off its expected status fails the run."""
        options, rest = parse_options(args, DIAGRAM_OPTIONS)
        if rest:
            raise InputError(f"unexpected argument '{rest[0]}'", 'diagram')
        report = run_diagram(ctx.settings, as_int(options, 'depth', 2), as_int(options, 'trials', 16))
        summary = [(ColorOutput.success if row.ok else ColorOutput.error)(
            f"{row.name}: {ColorOutput.verdict(row.status)}") for row in report.rows]
        return CommandOutcome(report, report.table(), summary, refuted=not report.ok)

    @staticmethod
    def help(args: List[str], ctx: RunContext) -> CommandOutcome:
        """Display help information."""
        if args:
            cmd = args[0]
            text = HELP_TEXT.get(cmd)
            if text is None:
                raise InputError(f"no help available for '{cmd}'", 'help')
            return CommandOutcome({'command': cmd, 'usage': text}, [], [text])
        lines = [
            f"{Fore.CYAN}gaugekit - gauge integrals on BV sets and dyadic figures{Style.RESET_ALL}",
            f"{Fore.GREEN}Geometry:{Style.RESET_ALL}   geom, constants, partition",
            f"{Fore.GREEN}Integrals:{Style.RESET_ALL}  gauss-green, hk, verify, charge-check, diagram",
            f"{Fore.YELLOW}Global flags:{Style.RESET_ALL} --seed N --jobs N|auto --format json|csv "
            f"--output PATH --config PATH -v -q",
            f"{Fore.YELLOW}Type 'help <command>' for detailed help{Style.RESET_ALL}",
        ]
        return CommandOutcome({'commands': sorted(HELP_TEXT)}, [], lines)
