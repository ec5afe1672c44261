import logging
from typing import Any, List

from charges import (FIELD_CATALOG, charge_axiom_falsifier, charge_derivative_estimate, charge_from_descriptor,
                     is_charge_in, scalar_function, vector_field)
from errors import InputError
from gauges import Gauge, gauge_from_descriptor, hk_oscillatory_gauge
from geometry import Figure, PASSED, shape_from_dict
from harness import (LINE_NOTIONS, PACKING_NOTIONS, PARTITION_NOTIONS, IntegralClaim, Notion,
                     check_bv_partition_integral, check_packing_integral, definite_line_value, definite_value,
                     gauss_green_verify, hk_check, hk_integrate_adaptive, mc_alpha_check,
                     restriction_consistency)
from utils import ColorOutput, as_float, as_int, parse_options, parse_point

from .context import CommandOutcome, RunContext

logger = logging.getLogger(__name__)

GAUSS_GREEN_OPTIONS = {'--field': 1, '--figure': 1, '--div-source': 1, '--order': 1, '--step': 1}

HK_OPTIONS = {
    '--f': 1,
    '--interval': 1,
    '--tolerance': 1,
    '--singular': -1,
    '--claim': 1,
    '--gauge': 1,
    '--trials': 1,
    '--windows': 1,
    '--eps': -1,
}

VERIFY_OPTIONS = {
    '--claim': 1,
    '--gauge': 1,
    '--trials': 1,
    '--count': 1,
    '--depth': 1,
    '--eps': -1,
    '--restrict': 1,
    '--points': -1,
    '--windows': 1,
    '--definite': 0,
}

CHARGE_OPTIONS = {
    '--charge': 1,
    '--dim': 1,
    '--eps': 1,
    '--trials': 1,
    '--tail': 1,
    '--region': 1,
    '--derivative-at': 1,
    '--eta': 1,
    '--radii': -1,
}

DEFAULT_GAUGE = {'kind': 'constant', 'value': 0.25}


def _epsilons(options: dict):
    if 'eps' not in options:
        return None
    try:
        values = tuple(float(v) for v in options['eps'])
    except ValueError:
        raise InputError(f"not a number list: {options['eps']!r}", '--eps')
    if any(v <= 0 for v in values):
        raise InputError("must be positive", '--eps')
    return values


def gauge_source(spec: Any, dim: int):
    """A gauge, or eps -> gauge when the catalog gauge is matched to each eps."""
    if (isinstance(spec, dict) and spec.get('kind') == 'custom-catalog'
            and spec.get('name') == 'hk-oscillatory' and 'epsilon' not in spec):
        return hk_oscillatory_gauge
    return gauge_from_descriptor(spec, dim, '--gauge')


class IntegralCommands:

    @staticmethod
    def _claim(options: dict, ctx: RunContext):
        if 'claim' not in options:
            raise InputError("missing option", '--claim')
        data = ctx.load(options['claim'], '--claim')
        claim = IntegralClaim.from_dict(data, ctx.settings.epsilons, ctx.settings.quadrature_order)
        spec = ctx.load(options['gauge'], '--gauge') if 'gauge' in options else data.get('gauge', DEFAULT_GAUGE)
        return claim, gauge_source(spec, claim.dim)

    @staticmethod
    def gauss_green(args: List[str], ctx: RunContext) -> CommandOutcome:
        """Compare the boundary flux of a field with the integral of its divergence."""
        options, rest = parse_options(args, GAUSS_GREEN_OPTIONS)
        if rest:
            raise InputError(f"unexpected argument '{rest[0]}'", 'gauss-green')
        for key in ('field', 'figure'):
            if key not in options:
                raise InputError("missing option", f'--{key}')
        figure = Figure.from_dict(ctx.load(options['figure'], '--figure'))
        spec = options['field']
        u = vector_field(spec if spec in FIELD_CATALOG else ctx.load(spec, '--field'), figure.dim, '--field')
        result = gauss_green_verify(u, figure, options.get('div_source', 'symbolic'),
                                    as_int(options, 'order', ctx.settings.quadrature_order),
                                    as_float(options, 'step', 1e-5))
        line = f"flux {result.flux:.12g} vs divergence {result.volume_integral:.12g} (error {result.abs_error:.3g})"
        summary = [ColorOutput.info(line)]
        if result.exact_match is not None:
            summary.append(ColorOutput.success("exact identity holds") if result.exact_match
                           else ColorOutput.error("exact values differ"))
        return CommandOutcome(result, [result.to_dict()], summary)

    @staticmethod
    def hk(args: List[str], ctx: RunContext) -> CommandOutcome:
        """hk integrate: adaptive value; hk check: Saks–Henstock sums of a line claim."""
        if not args or args[0] not in ('integrate', 'check'):
            raise InputError("expected 'integrate' or 'check'", 'hk')
        mode, args = args[0], args[1:]
        options, rest = parse_options(args, HK_OPTIONS)
        if rest:
            raise InputError(f"unexpected argument '{rest[0]}'", 'hk')
        if mode == 'check':
            claim, gauge = IntegralCommands._claim(options, ctx)
            if claim.notion not in (Notion.HK, Notion.HKS):
                raise InputError(f"hk check needs notion hk or hks, got {claim.notion.value}", 'notion')
            report = hk_check(claim, gauge, as_int(options, 'trials', 8), ctx.settings.seed,
                              _epsilons(options), as_int(options, 'windows', 16), ctx.settings.jobs)
            return CommandOutcome.from_report(report, f"{claim.name} ({claim.notion.value})")

        if 'interval' not in options:
            raise InputError("missing option", '--interval')
        a, b = parse_point(options['interval'], 2, '--interval')
        f = scalar_function(options.get('f', 'oscillatory-derivative'), 1, '--f')
        try:
            singular = [float(s) for s in options.get('singular', [])]
        except ValueError:
            raise InputError("not a number list", '--singular')
        result = hk_integrate_adaptive(f, a, b, as_float(options, 'tolerance', ctx.settings.hk_tolerance),
                                       ctx.settings.hk_panel_budget, singular)
        summary = [ColorOutput.info(f"integral of {f.name} over [{a}, {b}] = {result.value:.12g} "
                                    f"({result.panels} panels)")]
        return CommandOutcome(result, [{'function': f.name, 'a': a, 'b': b, 'value': result.value,
                                        'error_indicator': result.error, 'panels': result.panels}], summary)

    @staticmethod
    def verify(args: List[str], ctx: RunContext) -> CommandOutcome:
        """Run the falsifier matching the claim's notion."""
        options, rest = parse_options(args, VERIFY_OPTIONS)
        if rest:
            raise InputError(f"unexpected argument '{rest[0]}'", 'verify')
        claim, gauge = IntegralCommands._claim(options, ctx)
        settings = ctx.settings
        epsilons = _epsilons(options)
        trials = as_int(options, 'trials', 16)
        if callable(gauge) and not isinstance(gauge, Gauge) and claim.notion not in (Notion.HK, Notion.HKS):
            raise InputError("an eps-matched gauge only applies to hk claims", '--gauge')

        if 'restrict' in options:
            if claim.notion not in PACKING_NOTIONS:
                raise InputError("restriction runs on packing claims", '--restrict')
            region = shape_from_dict(ctx.load(options['restrict'], '--restrict'), '--restrict')
            report = restriction_consistency(claim, region, gauge, trials, settings.seed, epsilons,
                                             as_int(options, 'count', 6), as_int(options, 'depth', 2), settings.jobs)
            return IntegralCommands._restriction_outcome(claim, report)

        if claim.notion in PACKING_NOTIONS:
            report = check_packing_integral(claim, gauge, trials, settings.seed, epsilons,
                                            as_int(options, 'count', 6),
                                            as_int(options, 'depth', settings.seminorm_depth), settings.jobs,
                                            settings.eta_n, settings.box_budget)
        elif claim.notion in PARTITION_NOTIONS:
            report = check_bv_partition_integral(claim, gauge, trials, settings.seed, epsilons,
                                                 as_int(options, 'count', 12), settings.jobs)
        elif claim.notion in (Notion.HK, Notion.HKS):
            report = hk_check(claim, gauge, as_int(options, 'trials', 8), settings.seed, epsilons,
                              as_int(options, 'windows', 16), settings.jobs)
        else:
            points = None
            if 'points' in options:
                try:
                    points = [float(p) for p in options['points']]
                except ValueError:
                    raise InputError("not a number list", '--points')
            report = mc_alpha_check(claim, points, seed=settings.seed)

        outcome = CommandOutcome.from_report(report, f"{claim.name} ({claim.notion.value})")
        if options.get('definite'):
            value = definite_line_value(claim) if claim.notion in LINE_NOTIONS else definite_value(claim)
            outcome.payload = dict(report.to_dict(), definite_value=value)
            outcome.summary.insert(0, ColorOutput.info(f"definite value {value:.12g}"))
        return outcome

    @staticmethod
    def _restriction_outcome(claim: IntegralClaim, report) -> CommandOutcome:
        table = []
        for form, part in (('zero-extension', report.zero_extension), ('in-region', report.in_region)):
            table += [dict(row, form=form) for row in part.table()]
        refuted = report.zero_extension.refuted or report.in_region.refuted
        summary = [ColorOutput.success("formulations agree") if report.agree
                   else ColorOutput.warning("formulations disagree")]
        line = (f"{claim.name}: zero extension {ColorOutput.verdict(report.zero_extension.verdict)}, "
                f"in region {ColorOutput.verdict(report.in_region.verdict)}")
        summary.append(ColorOutput.error(line) if refuted else ColorOutput.success(line))
        return CommandOutcome(report, table, summary, refuted)

    @staticmethod
    def charge_check(args: List[str], ctx: RunContext) -> CommandOutcome:
        """Charge-axiom falsifier, optional support and derivative estimates."""
        options, rest = parse_options(args, CHARGE_OPTIONS)
        if rest:
            raise InputError(f"unexpected argument '{rest[0]}'", 'charge-check')
        if 'charge' not in options:
            raise InputError("missing option", '--charge')
        dim = as_int(options, 'dim')
        charge = charge_from_descriptor(ctx.load(options['charge'], '--charge'), dim,
                                        ctx.settings.quadrature_order, '--charge')
        eps = as_float(options, 'eps', 0.05)
        verdict = charge_axiom_falsifier(charge, eps, as_int(options, 'trials', 64), ctx.settings.seed,
                                         ctx.settings.jobs, dim, tail=as_int(options, 'tail', 5))
        payload = {'charge': charge.describe(), 'falsifier': verdict}
        table = [{'check': 'charge-axiom', 'status': verdict.status, 'epsilon': eps,
                  'max_tail_value': verdict.max_tail_value}]
        summary = [(ColorOutput.success if verdict.status == PASSED else ColorOutput.error)(
            f"charge axiom: {ColorOutput.verdict(verdict.status)} (max tail {verdict.max_tail_value:.3g})")]

        if 'region' in options:
            region = shape_from_dict(ctx.load(options['region'], '--region'), '--region')
            if not isinstance(region, Figure):
                raise InputError("support check needs a figure", '--region')
            support = is_charge_in(charge, region, seed=ctx.settings.seed)
            payload['support'] = support
            table.append({'check': 'charge-in', 'status': support['status']})
            summary.append(ColorOutput.info(f"charge in region: {ColorOutput.verdict(support['status'])}"))

        if 'derivative_at' in options:
            estimate = charge_derivative_estimate(charge, options['derivative_at'],
                                                  as_float(options, 'eta', 0.1),
                                                  options.get('radii', ['1/4', '1/8', '1/16']))
            payload['derivative'] = estimate
            table.append({'check': 'derivative', 'lower': estimate.lower, 'upper': estimate.upper})
            summary.append(ColorOutput.info(f"derivative in [{estimate.lower:.6g}, {estimate.upper:.6g}]"))

        return CommandOutcome(payload, table, summary, refuted=verdict.falsified)
