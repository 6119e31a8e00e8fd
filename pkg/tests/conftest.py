import math

import numpy as np
from hypothesis import strategies as st

angles = st.floats(min_value=-4 * math.pi, max_value=4 * math.pi, allow_nan=False, allow_infinity=False)


def su2(alpha, beta, gamma, theta):
    """Generic 2x2 unitary from four angles."""
    c, s = math.cos(theta), math.sin(theta)
    return np.exp(1j * alpha) * np.array(
        [[np.exp(1j * beta) * c, np.exp(1j * gamma) * s], [-np.exp(-1j * gamma) * s, np.exp(-1j * beta) * c]]
    )


unitaries = st.builds(su2, angles, angles, angles, angles)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
