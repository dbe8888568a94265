"""Write the Hasse diagram of the classes above CONS_{k-1,1} as DOT."""

from __future__ import annotations

import argparse
from pathlib import Path

from revgate.cli import lattice_dot
from revgate.config import LatticeConfig, add_config_arguments, config_from_args


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    add_config_arguments(ap, LatticeConfig)
    cfg = config_from_args(LatticeConfig, ap.parse_args())
    dot = lattice_dot(cfg.depth)
    if cfg.output:
        Path(cfg.output).write_text(dot)
    else:
        print(dot, end="")


if __name__ == "__main__":
    main()
