from __future__ import annotations

import argparse

from revgate.config import SoundnessConfig, SweepConfig, add_config_arguments, config_from_args


def test_config_flags_round_trip():
    ap = argparse.ArgumentParser()
    add_config_arguments(ap, SoundnessConfig)
    cfg = config_from_args(SoundnessConfig, ap.parse_args(["--count", "7", "--modulus", "3"]))
    assert cfg == SoundnessConfig(count=7, modulus=3)
    ap = argparse.ArgumentParser()
    add_config_arguments(ap, SweepConfig)
    assert config_from_args(SweepConfig, ap.parse_args(["--max-n", "4"])).max_n == 4
