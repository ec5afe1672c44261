from typing import Any, Dict, List, Tuple

from errors import InputError


def parse_options(args: List[str], spec: Dict[str, int],
                  aliases: Dict[str, str] = None) -> Tuple[Dict[str, Any], List[str]]:
    """Split command arguments into options and positionals.

    ``spec`` maps an option name (``--seed``) to its arity: 0 for a switch,
    n > 0 for exactly n values, -1 for one or more values up to the next option.
    Repeated single-value options keep the last value.
    """
    aliases = aliases or {}
    options: Dict[str, Any] = {}
    positional: List[str] = []
    i = 0
    while i < len(args):
        arg = args[i]
        name = aliases.get(arg, arg)
        if name.startswith('-') and not _is_number(name):
            if '=' in name and name.split('=', 1)[0] in spec:
                name, inline = name.split('=', 1)
                args = args[:i] + [name, inline] + args[i + 1:]
            if name not in spec:
                raise InputError("unknown option", name)
            arity = spec[name]
            key = name.lstrip('-').replace('-', '_')
            if arity == 0:
                options[key] = True
                i += 1
            elif arity == -1:
                values = []
                i += 1
                while i < len(args) and not (args[i].startswith('--') and not _is_number(args[i])):
                    values.append(args[i])
                    i += 1
                if not values:
                    raise InputError("expects at least one value", name)
                options[key] = values
            else:
                if i + arity > len(args) - 1:
                    raise InputError(f"expects {arity} value(s)", name)
                values = args[i + 1:i + 1 + arity]
                options[key] = values[0] if arity == 1 else values
                i += 1 + arity
        else:
            positional.append(arg)
            i += 1
    return options, positional


def _is_number(text: str) -> bool:
    try:
        float(text)
        return True
    except ValueError:
        return False


def as_int(options: Dict[str, Any], key: str, default: int = None) -> int:
    if key not in options:
        return default
    try:
        return int(options[key])
    except (TypeError, ValueError):
        raise InputError(f"not an integer: {options[key]!r}", '--' + key.replace('_', '-'))


def as_float(options: Dict[str, Any], key: str, default: float = None) -> float:
    if key not in options:
        return default
    try:
        return float(options[key])
    except (TypeError, ValueError):
        raise InputError(f"not a number: {options[key]!r}", '--' + key.replace('_', '-'))
