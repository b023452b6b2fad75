from nucorrelate.ext.argparse import Controller, SWEEP_ARGUMENTS, OUTPUT_ARGUMENTS, SWEEP_KEYS
from cement import ex


class SweepController(Controller):

    class Meta:
        label = 'sweep_commands'
        stacked_type = 'embedded'
        stacked_on = 'base'

        # text displayed at the top of --help output
        description = 'Evaluate probabilities, coherence and concurrences over baselines and widths.'

        # short help information
        help = 'run parameter sweeps'

    @ex(
        help='sweep baselines and wave-packet widths',
        description='Evaluate a sweep document. Flags override the keys of the document.',
        epilog='Example: nu-correlate sweep --flavor mu --sigma-x 1e-16m --l-max 20000 --format json',
        arguments=SWEEP_ARGUMENTS + OUTPUT_ARGUMENTS,
    )
    def sweep(self):
        overrides = {key: getattr(self.app.pargs, key, None) for key in SWEEP_KEYS}
        config, records = self.app.engine.sweep(self.app.pargs.config, overrides)
        self.app.engine.publish(config, records)

    @ex(
        help='emit the three-width coherence data set',
        description='Coherence of an initial electron neutrino for three wave-packet widths from 0 to 50000 km.',
        arguments=OUTPUT_ARGUMENTS,
    )
    def fig1(self):
        config, records = self.app.engine.fig1(self.app.pargs.format or 'csv', self.app.pargs.out)
        self.app.engine.publish(config, records)
