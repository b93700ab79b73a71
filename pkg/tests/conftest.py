import numpy as np
import pytest

from newsquality.synthetic import default_schema, make_domain_pool


@pytest.fixture
def small_schema():
    return default_schema(n_numeric=4, n_tags=4)


@pytest.fixture
def domain_pool():
    return make_domain_pool(3, 3)


@pytest.fixture
def blob_data():
    """Strictly separable 2-D blobs: class 0 in [-2,-1]^2, class 1 in [1,2]^2."""
    from newsquality.rng import Xoshiro256StarStar

    rng = Xoshiro256StarStar(99)
    n = 200
    lo = rng.uniforms(2 * n).reshape(n, 2) - 2.0  # [-2, -1)
    hi = rng.uniforms(2 * n).reshape(n, 2) + 1.0  # [1, 2)
    X = np.vstack([lo, hi])
    y = np.array([0] * n + [1] * n, dtype=np.int64)
    return X, y


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion at the end of the run."""
    lines = []
    for outcome, verdict in (("passed", "PASS"), ("failed", "FAIL"), ("error", "FAIL")):
        for report in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py::" in nodeid and getattr(report, "when", "call") == "call":
                name = nodeid.split("::")[-1].replace("test_", "", 1)
                lines.append((name, verdict))
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for name, verdict in sorted(lines):
            terminalreporter.write_line(f"ACCEPTANCE {name}: {verdict}")
