"""On-disk cache of pushforward tuples.

Enabled when ``HILB_CACHE_DIR`` is set or :func:`set_cache_dir` is called.
Entries carry the engine version and are ignored when it changes.
"""

from __future__ import annotations

import json
import logging
import os
import threading
from pathlib import Path

from . import __version__

log = logging.getLogger(__name__)

ENGINE_VERSION = f"hilbkit-{__version__}"
_dir: Path | None = None
_lock = threading.Lock()


def set_cache_dir(path) -> None:
    global _dir
    _dir = Path(path) if path else None


def cache_dir() -> Path | None:
    if _dir is not None:
        return _dir
    env = os.environ.get("HILB_CACHE_DIR")
    return Path(env) if env else None


def _path(key) -> Path | None:
    root = cache_dir()
    if root is None:
        return None
    name = "_".join(str(k) for k in key).replace("-", "m") + ".json"
    return root / name


def cached_class(key, compute):
    from .localization import EquivClass

    path = _path(key)
    if path is not None and path.exists():
        try:
            data = json.loads(path.read_text())
            if data.get("engine") == ENGINE_VERSION:
                return EquivClass.from_json(data["class"])
        except (ValueError, KeyError, TypeError) as exc:
            log.warning("cache entry %s is corrupt (%s); recomputing", path, exc)
    value = compute()
    if path is not None:
        with _lock:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(f".tmp{os.getpid()}")
            tmp.write_text(json.dumps({"engine": ENGINE_VERSION, "class": value.to_json()}))
            tmp.replace(path)
    return value
