import pytest

from ultraturan.suite import CHECKS, TOLERANCES, ConfigError, SuiteConfig, run_suite, sup_rel


@pytest.mark.parametrize(
    "kwargs",
    [{"grid": 2}, {"lambdas": (-0.5,)}, {"lambdas": ()}, {"n_min": 0}, {"n_min": 5, "n_max": 4},
     {"tolerances": {"bogus": 1.0}}, {"output_format": "xml"}],
)
def test_config_validation(kwargs):
    with pytest.raises(ConfigError):
        SuiteConfig(**kwargs)


def test_defaults():
    cfg = SuiteConfig()
    assert cfg.lambdas == (-0.49, -0.25, -0.1, 0.1, 0.5, 1.0, 2.5, 10.0)
    assert cfg.degrees == range(1, 61) and cfg.grid == 1001
    assert cfg.tol("turan") == TOLERANCES["turan"]
    assert SuiteConfig(tolerances={"turan": 0.5}).tol("turan") == 0.5


def test_sup_rel():
    assert sup_rel([1.0, 2.0], [1.0, 2.5]) == pytest.approx(0.2)
    assert sup_rel([1e-3], [0.0]) == 1e-3


def test_small_run_all_pass():
    res = run_suite(SuiteConfig(lambdas=(-0.3, 0.7), n_max=8, grid=101, certificates=False))
    assert len(res) == len(CHECKS) - 1
    assert all(r.passed for r in res), [r.line() for r in res if not r.passed]
    assert all(r.line().startswith("[PASS]") for r in res)


def test_tightened_tolerance_fails():
    res = run_suite(SuiteConfig(lambdas=(0.7,), n_max=10, grid=101, certificates=False,
                                tolerances={"ode": 0.0, "hermite": 0.0}))
    bad = {r.name for r in res if not r.passed}
    assert "ODE residuals (relative to terms)" in bad
