import random

import pytest

from tactile_skin import SensorFrame

REST = 512


def make_frame(seq=0, t_ms=0, deltas=None, rest=REST):
    """Frame with baseline at rest and filtered = rest - delta per sensor."""
    deltas = deltas or {}
    filtered = tuple(rest - deltas.get(i, 0) for i in range(9))
    return SensorFrame(seq=seq, t_ms=t_ms, filtered=filtered, baseline=(rest,) * 9)


def random_frame(rng: random.Random, seq=None, t_ms=None) -> SensorFrame:
    return SensorFrame(
        seq=rng.randrange(0, 0x10000) if seq is None else seq,
        t_ms=rng.randrange(0, 2**32) if t_ms is None else t_ms,
        filtered=tuple(rng.randrange(0, 1024) for _ in range(9)),
        baseline=tuple(rng.randrange(0, 1024) for _ in range(9)),
    )


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
