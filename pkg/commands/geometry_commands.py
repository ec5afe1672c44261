from typing import List

from errors import InputError
from geometry import (Constants, Figure, diameter_with_tag, dyadic_approximation, is_eps_isoperimetric_sampled,
                      is_eps_regular, perimeter, regularity, regularity_squared, relative_perimeter,
                      relative_perimeter_in_open, shape_from_dict, volume)
from utils import ColorOutput, as_float, as_int, parse_options, parse_point, parse_rational

from .context import CommandOutcome, RunContext

GEOM_OPTIONS = {
    '--figure': 1,
    '--set': 1,
    '--approximate': 3,
    '--tag': 1,
    '--eps': 1,
    '--relative-to': 1,
    '--isoperimetric': 1,
    '--depth': 1,
}

CONSTANTS_OPTIONS = {'--n': 1, '--eps': 1, '--eta': 1, '--p': 1}


class GeometryCommands:

    @staticmethod
    def geom(args: List[str], ctx: RunContext) -> CommandOutcome:
        """Volume, perimeter, diameter and regularity of a figure or 1D set."""
        options, rest = parse_options(args, GEOM_OPTIONS, {'-f': '--figure'})
        if rest:
            raise InputError(f"unexpected argument '{rest[0]}'", 'geom')
        E = GeometryCommands._load_shape(options, ctx)

        tag = parse_point(options['tag'], E.dim, '--tag') if 'tag' in options else None
        diameter = diameter_with_tag(E, tag)
        report = {
            'set': E.to_dict(),
            'dim': E.dim,
            'volume': volume(E),
            'perimeter': perimeter(E),
            'diameter': diameter,
            'regularity_squared': regularity_squared(E, tag),
            'regularity': regularity(E, tag),
            'tag': list(tag) if tag is not None else None,
        }
        summary = [ColorOutput.info(f"|E| = {float(report['volume']):.6g}, "
                                    f"P(E) = {float(report['perimeter']):.6g}, "
                                    f"d = {diameter.value:.6g}, r = {report['regularity']:.6g}")]
        if isinstance(E, Figure):
            report['cubes'] = len(E)
            report['bounding_box'] = [list(b) for b in E.bounding_box()] if not E.is_empty() else None

        if 'eps' in options:
            eps = parse_rational(options['eps'], '--eps')
            report['epsilon'] = eps
            report['eps_regular'] = is_eps_regular(E, eps, tag)
            line = f"{'' if report['eps_regular'] else 'not '}{float(eps):g}-regular"
            summary.append(ColorOutput.success(line) if report['eps_regular'] else ColorOutput.warning(line))

        if 'relative_to' in options:
            A = shape_from_dict(ctx.load(options['relative_to'], '--relative-to'), '--relative-to')
            if not isinstance(E, Figure) or not isinstance(A, Figure):
                raise InputError("relative perimeter needs two figures", '--relative-to')
            report['relative'] = {
                'region': A.to_dict(),
                'P(E, A)': relative_perimeter(E, A),
                'P(E, cl A)': relative_perimeter(E, A, closure=True),
                'P(E, in A)': relative_perimeter_in_open(E, A),
            }

        if 'isoperimetric' in options:
            depth = as_int(options, 'depth', 2)
            verdict = is_eps_isoperimetric_sampled(E, options['isoperimetric'], depth, ctx.settings.seed,
                                                   subset_budget=ctx.settings.subset_budget)
            report['isoperimetric'] = verdict
            summary.append(ColorOutput.info(f"isoperimetric: {ColorOutput.verdict(verdict.status)}"))

        return CommandOutcome(report, [GeometryCommands._row(report)], summary)

    @staticmethod
    def _load_shape(options: dict, ctx: RunContext):
        if 'approximate' in options:
            center, radius, level = options['approximate']
            center = parse_point(center, None, '--approximate')
            try:
                level = int(level)
            except ValueError:
                raise InputError(f"not an integer: {level!r}", '--approximate')
            return dyadic_approximation(center, radius, level, ctx.settings.refinement_budget)
        key = 'figure' if 'figure' in options else 'set' if 'set' in options else None
        if key is None:
            raise InputError("give --figure, --set or --approximate", 'geom')
        data = ctx.load(options[key], f'--{key}')
        if key == 'figure':
            if not isinstance(data, dict):
                raise InputError("expected an object", '--figure')
            return Figure.from_dict(data)
        return shape_from_dict(data, '--set')

    @staticmethod
    def _row(report: dict) -> dict:
        row = {k: report[k] for k in ('dim', 'volume', 'perimeter', 'regularity')}
        row['diameter'] = report['diameter'].value
        for key in ('epsilon', 'eps_regular'):
            if key in report:
                row[key] = report[key]
        return row

    @staticmethod
    def constants(args: List[str], ctx: RunContext) -> CommandOutcome:
        """Dump the dimension constants, and the eps-dependent ones when --eps is given."""
        options, rest = parse_options(args, CONSTANTS_OPTIONS)
        if rest:
            raise InputError(f"unexpected argument '{rest[0]}'", 'constants')
        n = as_int(options, 'n', 2)
        table = Constants(n, as_float(options, 'eta', ctx.settings.eta_n),
                          as_float(options, 'p', ctx.settings.p_n)).table(as_float(options, 'eps'))
        summary = [ColorOutput.info(f"n = {n}: rho = {table['rho']:.5g}, c_c = {table['c_c']:.5g}, "
                                    f"eps' defined for eps < {table['epsilon_prime_limit']:.5g}")]
        return CommandOutcome(table, [table], summary)
