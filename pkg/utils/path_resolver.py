import json
import os
from typing import Any, Optional

from errors import InputError

DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'data')


class PathResolver:
    """Resolve input paths against the working directory and the bundled data dir."""

    @staticmethod
    def expand_path(path: str) -> str:
        """Expand environment variables and user home in path."""
        path = os.path.expanduser(path)
        return os.path.expandvars(path)

    @staticmethod
    def resolve(path: str, cwd: Optional[str] = None) -> str:
        """Find an existing file; fall back to data/ and its subdirectories."""
        if not path:
            raise InputError("empty path", 'path')
        expanded = PathResolver.expand_path(path)
        base = cwd or os.getcwd()
        candidates = [expanded if os.path.isabs(expanded) else os.path.join(base, expanded)]
        if not os.path.isabs(expanded):
            candidates.append(os.path.join(DATA_DIR, expanded))
            for sub in sorted(os.listdir(DATA_DIR)) if os.path.isdir(DATA_DIR) else []:
                candidates.append(os.path.join(DATA_DIR, sub, expanded))
        for candidate in candidates:
            if os.path.isfile(candidate):
                return os.path.normpath(candidate)
        raise InputError(f"{path}: No such file", 'path')

    @staticmethod
    def load_json(path: str, cwd: Optional[str] = None) -> Any:
        full_path = PathResolver.resolve(path, cwd)
        try:
            with open(full_path, 'r', encoding='utf-8') as f:
                return json.load(f)
        except json.JSONDecodeError as e:
            raise InputError(f"invalid JSON in {path}: {e}", 'path')
