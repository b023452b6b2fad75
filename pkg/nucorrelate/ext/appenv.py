import os
from cement.utils import fs


PRODUCTION = 'production'
STAGING = 'staging'
DEVELOPMENT = 'development'
TESTING = 'testing'

ENV_ALIASES = {
    'dev': DEVELOPMENT,
    'development': DEVELOPMENT,
    'prod': PRODUCTION,
    'production': PRODUCTION,
    'stage': STAGING,
    'staging': STAGING,
    'test': TESTING,
    'testing': TESTING,
}


class NuCorrelateAppEnv:
    """
    Resolves the run environment from ``<LABEL>_ENV`` and the list of config
    files layered for it. ``<LABEL>_CONFIG_DIR`` replaces the repository
    ``config/`` directory.
    """

    def __init__(self, app):
        # labels like 'nucorrelate:test' share the files of their app
        self.APP_LABEL = app._meta.label.strip().lower().split(':')[0]
        self.APP_ENV_VAR_NAME = self.APP_LABEL.upper() + '_ENV'
        self.APP_ENV_VAR_VALUE = os.environ.get(self.APP_ENV_VAR_NAME, default='').strip().lower()
        self.APP_ENV = ENV_ALIASES.get(self.APP_ENV_VAR_VALUE)
        self.IS_PROD_MODE = self.APP_ENV == PRODUCTION
        self.IS_STAGE_MODE = self.APP_ENV == STAGING
        self.IS_DEV_MODE = self.APP_ENV == DEVELOPMENT
        self.IS_TEST_MODE = self.APP_ENV == TESTING
        # package dir and the repository dir above it
        self.APP_MAIN_DIR = app._meta.main_dir
        self.APP_DIR = fs.abspath(self.APP_MAIN_DIR + '/..')
        config_dir = os.environ.get(self.APP_LABEL.upper() + '_CONFIG_DIR', default='').strip()
        self.APP_CONFIG_DIR = fs.abspath(config_dir) if config_dir else fs.abspath(self.APP_DIR + '/config')

    @property
    def config_files(self):
        names = [self.APP_LABEL]
        if self.APP_ENV:
            names += [f'{self.APP_LABEL}.{self.APP_ENV}', f'{self.APP_LABEL}.{self.APP_ENV}.local']
        return [os.path.join(self.APP_CONFIG_DIR, name) for name in names]


def load(app):
    env = NuCorrelateAppEnv(app)
    app._meta.config_files = [f'{path}{app._meta.config_file_suffix}' for path in env.config_files]
    app.extend('env', env)
