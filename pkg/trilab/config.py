"""Runtime configuration: .env file parsing and thread-count resolution."""
from __future__ import annotations

import logging
import os
from typing import Dict, Mapping, Optional

from .constants import DEFAULT_THREADS, THREADS_ENV

log = logging.getLogger(__name__)

# Anchor to the repository root (one level up from this package)
_REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DOTENV_PATH = os.path.join(_REPO_ROOT, '.env')


def load_dotenv(path: str = DOTENV_PATH) -> Dict[str, str]:
    """Settings from the repository .env, the last place TRILAB_THREADS is looked up.

    Lines are KEY=VALUE with an optional leading ``export``; the value may be quoted.
    Comments, blank lines and lines without '=' are skipped. A missing file is empty.
    """
    if not os.path.isfile(path):
        return {}
    env: Dict[str, str] = {}
    with open(path, encoding='utf-8') as f:
        for raw in f:
            key, sep, value = raw.strip().partition('=')
            if not sep or key.startswith('#'):
                continue
            if key.startswith('export '):
                key = key[len('export '):]
            env[key.strip()] = value.strip().strip('"\'')
    log.debug("read %s from %s", sorted(env), path)
    return env


def _parse_threads(raw: str, source: str) -> Optional[int]:
    try:
        n = int(raw)
    except ValueError:
        log.warning("ignoring %s=%r from %s (not an integer)", THREADS_ENV, raw, source)
        return None
    if n < 1:
        log.warning("ignoring %s=%r from %s (must be >= 1)", THREADS_ENV, raw, source)
        return None
    return n


def resolve_threads(cli_value: Optional[int] = None,
                    environ: Optional[Mapping[str, str]] = None,
                    dotenv_path: str = DOTENV_PATH) -> int:
    """Thread cap: CLI flag, then environment, then .env, then the default."""
    if cli_value is not None:
        if cli_value >= 1:
            return cli_value
        log.warning("ignoring --threads %d (must be >= 1)", cli_value)
    environ = os.environ if environ is None else environ
    raw = environ.get(THREADS_ENV, '').strip()
    if raw:
        n = _parse_threads(raw, 'environment')
        if n is not None:
            return n
    raw = load_dotenv(dotenv_path).get(THREADS_ENV, '').strip()
    if raw:
        n = _parse_threads(raw, dotenv_path)
        if n is not None:
            return n
    return DEFAULT_THREADS
