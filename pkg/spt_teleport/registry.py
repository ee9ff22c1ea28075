"""
Catalog of the built-in experiments.

Every entry names a function in spt_teleport.experiments that returns a
config document.  The catalog is the single source of truth for
`spt-teleport list` and for `spt-teleport run NAME`.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from typing import Callable, TextIO

from . import experiments
from .errors import ConfigError


@dataclass(frozen=True)
class ExperimentEntry:
    name: str
    build: Callable[[], dict]

    def config(self) -> dict:
        return self.build()

    @property
    def protocol(self) -> str:
        return self.config()["protocol"]

    @property
    def description(self) -> str:
        return self.config().get("description", "")


EXPERIMENTS: dict[str, ExperimentEntry] = {
    name: ExperimentEntry(name, getattr(experiments, name)) for name in experiments.__all__
}


def list_builtin_experiments() -> list[ExperimentEntry]:
    return list(EXPERIMENTS.values())


def builtin_config(name: str) -> dict:
    """Config document of a built-in experiment."""
    try:
        return EXPERIMENTS[name].config()
    except KeyError:
        known = ", ".join(EXPERIMENTS)
        raise ConfigError(f"no built-in experiment named {name!r} (known: {known})") from None


def print_registry(out: TextIO | None = None) -> None:
    """Pretty-print the catalog."""
    out = out or sys.stdout
    _DIM = "\033[2m" if out.isatty() else ""
    _RST = "\033[0m" if out.isatty() else ""
    name_w = max(len(n) for n in EXPERIMENTS)
    proto_w = max(len(e.protocol) for e in EXPERIMENTS.values())

    print(f"{'=' * 60}", file=out)
    print(f"  BUILT-IN EXPERIMENTS ({len(EXPERIMENTS)})", file=out)
    print(f"{'=' * 60}", file=out)
    for e in EXPERIMENTS.values():
        print(f"    {e.name:<{name_w}}  {e.protocol:<{proto_w}}", file=out)
        print(f"      {_DIM}{e.description}{_RST}", file=out)
    print(file=out)


def show_config(name: str, out: TextIO | None = None) -> None:
    """Print a built-in config as JSON, ready to edit and pass back to `run`."""
    out = out or sys.stdout
    print(json.dumps(builtin_config(name), indent=2), file=out)
