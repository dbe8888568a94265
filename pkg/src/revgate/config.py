"""Run configurations for the experiment scripts."""

from __future__ import annotations

import argparse
from dataclasses import dataclass, fields

DEFAULT_SEED = 20240611


@dataclass(frozen=True)
class SoundnessConfig:
    k: int = 3
    arity: int = 2
    count: int = 50
    seed: int = DEFAULT_SEED
    modulus: int = 2


@dataclass(frozen=True)
class SweepConfig:
    k: int = 3
    max_n: int = 10


@dataclass(frozen=True)
class LatticeConfig:
    depth: int = 6
    output: str | None = None


def add_config_arguments(parser: argparse.ArgumentParser, cls) -> None:
    """One ``--field`` flag per dataclass field, defaulting to the field default."""
    for f in fields(cls):
        kind = str if f.default is None else type(f.default)
        parser.add_argument("--" + f.name.replace("_", "-"), type=kind, default=f.default)


def config_from_args(cls, args: argparse.Namespace):
    return cls(**{f.name: getattr(args, f.name) for f in fields(cls)})
