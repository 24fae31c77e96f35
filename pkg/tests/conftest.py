import numpy as np
import pytest

from supgdirac.runner import RunConfig, calibrate_reference_c, run_convergence, run_extended, run_method


@pytest.fixture(scope="session")
def calibrated_c():
    return calibrate_reference_c()[0]


@pytest.fixture(scope="session")
def reference_config(calibrated_c):
    """z=118 point nucleus, n=600, epsilon=1e-4, calibrated speed of light."""
    return RunConfig(c=calibrated_c)


@pytest.fixture(scope="session")
def reference_runs(reference_config):
    """Classified bound states up to genuine level 20 per (kappa, method) on the reference configuration."""
    runs = {}
    for kappa in (-2, 2):
        for method in ("galerkin", "supg"):
            runs[kappa, method] = run_method(reference_config, method, kappa, levels=20)
    return runs


@pytest.fixture(scope="session")
def convergence(reference_config):
    return run_convergence(reference_config, [200, 400, 600, 800, 1000], levels=5)


@pytest.fixture(scope="session")
def extended_runs(reference_config):
    cfg = RunConfig(c=reference_config.c, nucleus="extended")
    return run_extended(cfg, [-2, 2, -3, 3, -4, 4, -5, 5])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[k])
