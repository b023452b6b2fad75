import os
from cement import App, TestApp
from cement.core.exc import CaughtSignal
from cement.utils import fs
from .core.exc import NuCorrelateError
from .controllers.base import BaseController
from .controllers.sweep import SweepController
from .controllers.check import CheckController


class NuCorrelate(App):
    """The nu-correlate primary application."""

    class Meta:
        # this app name
        label = 'nucorrelate'

        # this app main path
        main_dir = os.path.dirname(fs.abspath(__file__))

        # configuration defaults
        config_defaults = dict(
            debug=False,
        )

        # call sys.exit() on close
        exit_on_close = True

        # load additional framework extensions
        extensions = [
            'colorlog',
            'jinja2',
            'yaml',
            'nucorrelate.ext.print',
            'nucorrelate.ext.appenv',
            'nucorrelate.ext.engine',
        ]

        # register handlers
        handlers = [
            BaseController,
            SweepController,
            CheckController,
        ]

        # configuration handler and file suffix
        config_handler = 'yaml'
        config_file_suffix = '.yaml'

        # set the log handler
        log_handler = 'colorlog'

        # set the output handler
        output_handler = 'jinja2'

        # templates shipped as package data
        template_module = 'nucorrelate.templates'


class NuCorrelateTest(TestApp, NuCorrelate):
    """A sub-class of NuCorrelate that is better suited for testing."""

    class Meta:
        # this app test name
        label = f'{NuCorrelate.Meta.label}:test'


def main():
    with NuCorrelate() as app:
        try:
            app.run()

        except AssertionError as e:
            print('AssertionError > %s' % e.args[0])
            app.exit_code = 1

            if app.debug is True:
                import traceback

                traceback.print_exc()

        except NuCorrelateError as e:
            print('NuCorrelateError > %s' % e.args[0])
            app.exit_code = 1

            if app.debug is True:
                import traceback

                traceback.print_exc()

        except CaughtSignal as e:
            # Default Cement signals are SIGINT and SIGTERM, exit 0 (non-error)
            print('\n%s' % e)
            app.exit_code = 0


if __name__ == '__main__':
    main()
