from typing import List

from charges import scalar_function
from errors import InputError
from gauges import (cousin_partition_1d, gauge_from_descriptor, is_delta_fine, load_balls, verify_vitali,
                    vitali_disjoint_subfamily)
from geometry import Constants, DyadicCube, Interval
from partition import find_doubling_radius, reflection_decomposition, subordinate_partition
from utils import ColorOutput, as_float, as_int, parse_options, parse_point, parse_rational

from .context import CommandOutcome, RunContext

PARTITION_OPTIONS = {
    '--root': 1,
    '--balls': 1,
    '--box': 1,
    '--x': 1,
    '--r': 1,
    '--interval': 1,
    '--gauge': 1,
    '--phi': 1,
    '--dim': 1,
    '--R': 1,
    '--eps': 1,
    '--tau': 1,
    '--c-t': 1,
    '--grid': 1,
}


def _root_cube(text: str, dim: int) -> DyadicCube:
    """'level:i,j,..' with the unit cube [0, 1]^n as default."""
    if not text:
        return DyadicCube(0, (0,) * dim)
    level, _, index = text.partition(':')
    try:
        return DyadicCube(int(level), tuple(int(k) for k in index.split(',') if k.strip()))
    except ValueError:
        raise InputError(f"expected level:i,j,.. got {text!r}", '--root')


class PartitionCommands:

    MODES = ('subordinate', 'reflect', 'vitali', 'cousin', 'doubling')

    @staticmethod
    def partition(args: List[str], ctx: RunContext) -> CommandOutcome:
        """Dispatch to one of the partition constructions (default: subordinate)."""
        mode = 'subordinate'
        if args and not args[0].startswith('-'):
            mode, args = args[0], args[1:]
        if mode not in PartitionCommands.MODES:
            raise InputError(f"unknown mode '{mode}' (known: {', '.join(PartitionCommands.MODES)})",
                             'partition')
        options, rest = parse_options(args, PARTITION_OPTIONS)
        if rest:
            raise InputError(f"unexpected argument '{rest[0]}'", 'partition')
        return getattr(PartitionCommands, mode)(options, ctx)

    @staticmethod
    def subordinate(options: dict, ctx: RunContext) -> CommandOutcome:
        if 'balls' not in options:
            raise InputError("missing option", '--balls')
        balls = load_balls(ctx.load(options['balls'], '--balls'), None, '--balls')
        root = _root_cube(options.get('root', ''), balls[0].dim)
        result = subordinate_partition(root, balls, ctx.settings.refinement_budget)
        constants = Constants(root.dim, ctx.settings.eta_n, ctx.settings.p_n)
        diagnostics = result.diagnostics(constants)
        payload = dict(result.to_dict(), diagnostics=diagnostics)
        table = [{'ball': i, 'cubes': len(cubes), 'volume': sum(c.volume for c in cubes)}
                 for i, cubes in sorted(result.systems().items())]
        failed = [k for k, v in diagnostics.items() if v is False]
        summary = [ColorOutput.info(f"{len(result.cells)} cubes over {len(balls)} balls, "
                                    f"max {diagnostics['max_count']} per ball")]
        summary.append(ColorOutput.warning(f"diagnostics failed: {', '.join(failed)}") if failed
                       else ColorOutput.success("all diagnostics hold"))
        return CommandOutcome(payload, table, summary)

    @staticmethod
    def reflect(options: dict, ctx: RunContext) -> CommandOutcome:
        for key in ('box', 'x', 'r'):
            if key not in options:
                raise InputError("missing option", f'--{key}')
        box = Interval.from_dict(ctx.load(options['box'], '--box'))
        x = parse_point(options['x'], box.dim, '--x')
        decomposition = reflection_decomposition(box, x, parse_rational(options['r'], '--r'),
                                                 seed=ctx.settings.seed)
        table = [{'sign': p.sign, 'bounds': [list(b) for b in p.box.bounds],
                  'regularity_squared': p.regularity_squared, 'certified': p.certified,
                  'on_bound': p.on_bound, 'isoperimetric': p.isoperimetric}
                 for p in decomposition.pieces]
        summary = [ColorOutput.info(f"{len(decomposition.pieces)} signed boxes over axes "
                                    f"{decomposition.reflected_axes}")]
        summary.append(ColorOutput.success("every box certified rho-regular") if decomposition.all_certified()
                       else ColorOutput.warning("some boxes are not certified rho-regular"))
        if not decomposition.all_isoperimetric():
            summary.append(ColorOutput.warning("some boxes failed the sampled beta(rho)-isoperimetric check"))
        return CommandOutcome(decomposition, table, summary)

    @staticmethod
    def vitali(options: dict, ctx: RunContext) -> CommandOutcome:
        if 'balls' not in options:
            raise InputError("missing option", '--balls')
        balls = load_balls(ctx.load(options['balls'], '--balls'), None, '--balls')
        selection = vitali_disjoint_subfamily(balls)
        verified = verify_vitali(balls, selection)
        payload = {'balls': balls, 'selection': selection, 'verified': verified}
        table = [{'ball': i, 'selected': i in selection.selected, 'witness': selection.certificate[i]}
                 for i in range(len(balls))]
        line = f"{len(selection.selected)} of {len(balls)} balls selected"
        return CommandOutcome(payload, table,
                              [ColorOutput.success(line) if verified else ColorOutput.error(line)])

    @staticmethod
    def cousin(options: dict, ctx: RunContext) -> CommandOutcome:
        if 'interval' not in options:
            raise InputError("missing option", '--interval')
        a, b = parse_point(options['interval'], 2, '--interval')
        gauge = gauge_from_descriptor(ctx.load(options.get('gauge', '{"kind": "constant", "value": 0.1}'),
                                               '--gauge'), 1, '--gauge')
        tagged = cousin_partition_1d(a, b, gauge)
        fine = is_delta_fine(tagged, gauge)
        payload = {'interval': [a, b], 'gauge': gauge.describe(), 'partition': tagged, 'fine': fine}
        table = [{'lo': item.set.bounds[0][0], 'hi': item.set.bounds[0][1], 'tag': item.tag[0]}
                 for item in tagged.items]
        summary = [ColorOutput.success(f"{len(tagged)} tagged pieces, delta-fine") if fine
                   else ColorOutput.error(f"not fine: {fine.reason}")]
        return CommandOutcome(payload, table, summary)

    @staticmethod
    def doubling(options: dict, ctx: RunContext) -> CommandOutcome:
        dim = as_int(options, 'dim', 2)
        phi = scalar_function(options.get('phi', 'identity'), 1, '--phi')
        R = as_float(options, 'R', 1.0)
        result = find_doubling_radius(lambda r: float(phi.at([r])), dim, R, as_float(options, 'eps', 0.1),
                                      as_float(options, 'tau', 1.0), as_float(options, 'c_t', 2.0 ** (dim + 4)),
                                      as_int(options, 'grid', 30))
        table = [{'step': j, 'radius': R * 2.0 ** -j, 'ratio': ratio} for j, ratio in enumerate(result.ratios)]
        summary = [ColorOutput.success(f"doubling radius {result.radius:.6g} at step {result.step}")
                   if result.found else ColorOutput.warning(f"no doubling radius; min ratio {result.min_ratio:.6g}")]
        return CommandOutcome(result, table, summary)
