import pytest

from mmwsim import preset, run_experiment


def _run_preset(name):
    return {cfg.label: run_experiment(cfg) for cfg in preset(name)}


@pytest.fixture(scope="session")
def fig3_results():
    return _run_preset("fig3_scenarios")


@pytest.fixture(scope="session")
def fig4_results():
    return _run_preset("fig4_ied")


@pytest.fixture(scope="session")
def fig5_results():
    return _run_preset("fig5_array")
