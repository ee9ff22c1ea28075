"""
Process-wide settings read from the environment.

    SPT_THREADS  worker cap for sweep cells (default: logical cores)
    SPT_DEBUG    when truthy, check state invariants after every operation
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass

logger = logging.getLogger(__name__)

_TRUTHY = {"1", "true", "yes", "on"}


@dataclass(frozen=True)
class Settings:
    threads: int
    debug: bool = False

    @classmethod
    def from_env(cls) -> Settings:
        cores = os.cpu_count() or 1
        raw = os.environ.get("SPT_THREADS", "").strip()
        threads = cores
        if raw:
            try:
                threads = int(raw)
            except ValueError:
                logger.warning("ignoring SPT_THREADS=%r (not an integer); using %d", raw, cores)
        debug = os.environ.get("SPT_DEBUG", "").strip().lower() in _TRUTHY
        return cls(threads=max(1, threads), debug=debug)
