from .color_output import ColorOutput, ColorFormatter, configure_logging
from .path_resolver import PathResolver
from .options import parse_options, as_int, as_float
from .parallel import run_trials, trial_rng, resolve_jobs
from .serialization import parse_rational, parse_point, format_rational, dumps, to_csv, to_jsonable
