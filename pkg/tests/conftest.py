from fractions import Fraction

import numpy as np
import pytest

from dsym import StateSpec

# Three-qutrit sequence that is 1-PPT but entangled: the boundary case
# separating the even-N equivalence from the odd-N failure.
PPT_ENTANGLED_P = tuple(
    float(Fraction(x)) for x in ("1", "1/4", "1/8", "1/9", "1/8", "1/4", "1")
)


@pytest.fixture
def ppt_entangled_spec() -> StateSpec:
    return StateSpec(N=3, d=3, p=PPT_ENTANGLED_P)


def random_spec(rng: np.random.Generator, N: int, d: int) -> StateSpec:
    return StateSpec(N=N, d=d, p=tuple(rng.uniform(0.0, 1.0, N * (d - 1) + 1)))


def geometric_p(N: int, d: int, t: float, w: float = 1.0) -> tuple[float, ...]:
    return tuple(w * t**k for k in range(N * (d - 1) + 1))
