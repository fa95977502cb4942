import math

import mpmath
import numpy as np
import pytest

from ambient_swipt.rf import SystemParams


def quad_lower_gamma(n, a, dps=30):
    """Independent oracle: adaptive quadrature of exp(-t) t^n on [0, a], divided by n!."""
    with mpmath.workdps(dps):
        a = mpmath.mpf(a)
        if a <= (n + 1) / 2:
            # t = a u^(1/(n+1)) flattens the t^n endpoint behaviour
            integral = mpmath.quad(lambda u: mpmath.exp(-a * u ** (mpmath.mpf(1) / (n + 1))), [0, 1])
            return float(integral * a ** (n + 1) / (n + 1) / mpmath.factorial(n))
        s = math.sqrt(n)
        cuts = {x for x in (n - 8 * s, n - 3 * s, n, n + 3 * s, n + 8 * s) if 0 < x < a}
        pts = sorted({0.0, float(a)} | cuts)
        integral = mpmath.quad(lambda t: mpmath.exp(-t) * t**n, pts)
        return float(integral / mpmath.factorial(n))


@pytest.fixture
def table_params():
    """Reference setting with a distant access point so power outage is possible."""
    return SystemParams(eta=0.5, d_a=10.0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
