import csv
import io
import json
import math
from dataclasses import is_dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Sequence, Union

import numpy as np

from errors import InputError

Number = Union[int, float, Fraction]


def parse_rational(value: Any, field: str = 'value') -> Fraction:
    """Read an exact rational from an int, a decimal or a "p/q" string."""
    if isinstance(value, bool):
        raise InputError("expected a number", field)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            raise InputError("must be finite", field)
        # decimal literal semantics: 0.3 means 3/10
        return Fraction(repr(float(value)))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"not a rational: {value!r}", field)
    raise InputError(f"expected a number, got {type(value).__name__}", field)


def parse_point(value: Any, dim: int = None, field: str = 'point') -> tuple:
    """Read a point given as a list of numbers or a comma separated string."""
    if isinstance(value, str):
        value = [v for v in value.split(',') if v.strip()]
    if isinstance(value, (int, float, Fraction)) and not isinstance(value, bool):
        value = [value]
    if not isinstance(value, (list, tuple)) or not value:
        raise InputError("expected a coordinate list", field)
    point = tuple(parse_rational(v, f"{field}[{i}]") for i, v in enumerate(value))
    if dim is not None and len(point) != dim:
        raise InputError(f"expected {dim} coordinates, got {len(point)}", field)
    return point


def format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def to_jsonable(obj: Any) -> Any:
    """Convert report objects into plain JSON data."""
    if hasattr(obj, 'to_dict'):
        return to_jsonable(obj.to_dict())
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)):
        return obj
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if math.isnan(value):
            return 'nan'
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        return value
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [to_jsonable(v) for v in obj]
        return sorted(items, key=repr) if isinstance(obj, (set, frozenset)) else items
    if is_dataclass(obj):
        return {k: to_jsonable(v) for k, v in vars(obj).items()}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, shortest round-trip floats."""
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False)


def to_csv(rows: Sequence[Dict[str, Any]], columns: Iterable[str] = None) -> str:
    """Flatten report rows to CSV; nested values are written as compact JSON."""
    rows = [to_jsonable(r) for r in rows]
    if columns is None:
        seen: List[str] = []
        for row in rows:
            for key in row:
                if key not in seen:
                    seen.append(key)
        columns = seen
    columns = list(columns)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator='\n')
    writer.writerow(columns)
    for row in rows:
        cells = []
        for key in columns:
            value = row.get(key, '')
            if isinstance(value, (dict, list)):
                value = json.dumps(value, sort_keys=True, separators=(',', ':'))
            cells.append(value)
        writer.writerow(cells)
    return out.getvalue()
