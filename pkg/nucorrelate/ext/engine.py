from cement.core.meta import MetaMixin
from ..core.sweep.config import load_config, fig1_config
from ..core.sweep.runner import run_sweep
from ..core.sweep.emit import emit, write_records
from ..core.checks import CheckSettings, run_checks
from ..core.exc import ConfigError


class NuCorrelateEngine(MetaMixin):

    class Meta:
        """Extension meta-data."""

        #: Unique identifier for this handler
        label = 'nucorrelate.engine'

        #: Id for config
        config_section = 'engine'

        #: Dict with initial settings
        config_defaults = dict(
            workers=1,
            quadrature_tolerance=1e-3,
            check_seed=20240101,
            check_random_states=10000,
            check_wootters_states=1000,
            check_grid_points=1000,
            check_plane_wave_points=100,
            check_quadrature_baselines=20,
        )

    def __init__(self, app, *args, **kw):
        super(NuCorrelateEngine, self).__init__(*args, **kw)
        self.app = app

    def _setup(self, app):
        self.app.config.merge({self._meta.config_section: self._meta.config_defaults}, override=False)

    def _config(self, key):
        """
        This is a simple wrapper, and is equivalent to: ``self.app.config.get(<section>, <key>)``.
        """
        return self.app.config.get(self._meta.config_section, key)

    def _int(self, key, minimum):
        try:
            value = int(self._config(key))
        except (TypeError, ValueError):
            raise ConfigError(f'{self._meta.config_section}.{key}', f'expected an integer, got {self._config(key)!r}')
        if value < minimum:
            raise ConfigError(f'{self._meta.config_section}.{key}', f'must be at least {minimum}, got {value}')
        return value

    def _float(self, key, minimum):
        try:
            value = float(self._config(key))
        except (TypeError, ValueError):
            raise ConfigError(f'{self._meta.config_section}.{key}', f'expected a number, got {self._config(key)!r}')
        if not value >= minimum:
            raise ConfigError(f'{self._meta.config_section}.{key}', f'must be at least {minimum}, got {value}')
        return value

    @property
    def workers(self):
        return self._int('workers', 1)

    def check_settings(self):
        return CheckSettings(
            seed=self._int('check_seed', 0),
            random_states=self._int('check_random_states', 1),
            wootters_states=self._int('check_wootters_states', 1),
            grid_points=self._int('check_grid_points', 2),
            plane_wave_points=self._int('check_plane_wave_points', 2),
            quadrature_baselines=self._int('check_quadrature_baselines', 1),
            quadrature_tolerance=self._float('quadrature_tolerance', 0.0),
            workers=self.workers,
        )

    ### --------------------------------------------------------------------------------------

    def sweep(self, path=None, overrides=None):
        """Load a sweep document, apply overrides and evaluate the grid."""
        config = load_config(path, overrides)
        return config, self.evaluate(config)

    def fig1(self, fmt='csv', out=None):
        config = fig1_config(fmt, out)
        return config, self.evaluate(config)

    def evaluate(self, config):
        self.app.log.info(f'evaluating {config.mode} sweep of {config.initial_flavor.label} over {config.baseline_grid.points} baselines')
        records = run_sweep(config, self.workers)
        self.app.log.debug(f'evaluated {len(records)} records')
        return records

    def publish(self, config, records):
        """Write the records to the configured path or print them."""
        target = config.output
        if target.path:
            size = write_records(records, target.format, target.path)
            self.app.log.info(f'wrote {len(records)} records ({size} bytes) to {target.path}')
        else:
            self.app.print(emit(records, target.format).decode('utf-8'), end='')

    def check(self):
        settings = self.check_settings()
        self.app.log.info(f'running invariant checks with seed {settings.seed}')
        return run_checks(settings)


def nucorrelate_engine_extend_app(app):
    app.extend('engine', NuCorrelateEngine(app))
    app.engine._setup(app)


def load(app):
    app.hook.register('post_setup', nucorrelate_engine_extend_app)
