"""Parity certificate for T_0..T_n against T_{n+1}, for a range of n."""

from __future__ import annotations

import argparse
import time

from revgate.config import SweepConfig, add_config_arguments, config_from_args
from revgate.lattice import nonfingen_certificate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    add_config_arguments(ap, SweepConfig)
    args = config_from_args(SweepConfig, ap.parse_args())
    ok = True
    for n in range(args.max_n + 1):
        t0 = time.perf_counter()
        rep = nonfingen_certificate(n, args.k)
        ok &= rep.flag == "UNREACHABLE_PARITY"
        print(f"n={n:2d} placements={len(rep.counts):5d} inputs={rep.designated:5d}  {rep.summary()}"
              f"  ({time.perf_counter() - t0:.2f} s)")
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
