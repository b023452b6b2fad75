# ensure we don't break imports from cement namespace


def test_import():
    from cement import App, Controller, ex, init_defaults  # noqa: F401


def test_lazy_submodules():
    from nucorrelate.core import oscillation, sweep

    assert oscillation.pmns.build_pmns is not None
    assert oscillation.units.km > oscillation.units.m
    assert sweep.emit.COLUMNS[0] == 'sigma_x_m'
