from nucorrelate.ext.argparse import Controller
from cement import ex


class CheckController(Controller):

    class Meta:
        label = 'check_commands'
        stacked_type = 'embedded'
        stacked_on = 'base'

        # text displayed at the top of --help output
        description = 'Verify the numerical invariants of the library.'

        # short help information
        help = 'run the invariant suite'

    @ex(
        help='run the invariant suite',
        description='Evaluate every invariant and print the worst residual per property. Exits with 1 on any violation.',
    )
    def check(self):
        results = self.app.engine.check()
        failed = [r.name for r in results if not r.passed]
        self.app.render(dict(results=results, failed=failed), 'check.jinja2')
        if failed:
            self.app.log.error(f'{len(failed)} of {len(results)} checks failed: {", ".join(failed)}')
            self.app.exit_code = 1
        else:
            self.app.log.info(f'all {len(results)} checks passed')
