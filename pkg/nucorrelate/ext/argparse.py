from cement.ext.ext_argparse import ArgparseController
import argparse


class NuCorrelateHelpFormatter(argparse.RawDescriptionHelpFormatter):
    """List sub-commands alphabetically in one aligned column."""

    def _iter_indented_subactions(self, action):
        if isinstance(action, argparse._SubParsersAction):
            self._indent()
            yield from sorted(action._get_subactions(), key=lambda a: a.dest)
            self._dedent()
        else:
            yield from super()._iter_indented_subactions(action)

    def _format_action(self, action):
        if isinstance(action, argparse._SubParsersAction):
            self._command_width = max((len(a.dest) for a in action._get_subactions()), default=0)
        if type(action).__name__ == '_ChoicesPseudoAction':
            help_text = self._expand_help(action) if action.help else ''
            return '  {:{width}}    {}\n'.format(action.dest, help_text, width=self._command_width)
        return super()._format_action(action)


class Controller(ArgparseController):

    class Meta:
        argument_formatter = NuCorrelateHelpFormatter

    def _default(self):
        self._parser.print_help()


def length_list(text):
    """Split ``--sigma-x 1e-16m,2e-16 m`` style values; units are checked later."""
    return [item.strip() for item in text.split(',') if item.strip()]


### the flags of a sweep, mapped onto sweep document keys

SWEEP_ARGUMENTS = [
    (
        ['--config'],
        dict(
            action='store',
            dest='config',
            metavar='PATH',
            default=None,
            help='sweep document (YAML key/value mapping)',
        ),
    ),
    (
        ['--flavor'],
        dict(
            action='store',
            dest='flavor',
            choices=['e', 'mu', 'tau'],
            default=None,
            help='initial flavor',
        ),
    ),
    (
        ['--mode'],
        dict(
            action='store',
            dest='mode',
            choices=['plane', 'wavepacket'],
            default=None,
            help='plane-wave or wave-packet probabilities',
        ),
    ),
    (
        ['--sigma-x'],
        dict(
            action='extend',
            dest='sigma_x',
            type=length_list,
            metavar='LENGTH',
            default=None,
            help='wave-packet width with unit, e.g. 1e-16m; repeat or separate by commas',
        ),
    ),
    (
        ['--l-min'],
        dict(action='store', dest='baseline_min_km', metavar='KM', default=None, help='shortest baseline in km'),
    ),
    (
        ['--l-max'],
        dict(action='store', dest='baseline_max_km', metavar='KM', default=None, help='longest baseline in km'),
    ),
    (
        ['--l-points'],
        dict(action='store', dest='baseline_points', metavar='N', default=None, help='number of baselines'),
    ),
    (
        ['--l-scale'],
        dict(action='store', dest='baseline_scale', choices=['lin', 'log'], default=None, help='baseline spacing'),
    ),
]

OUTPUT_ARGUMENTS = [
    (
        ['--format'],
        dict(action='store', dest='format', choices=['csv', 'json'], default=None, help='output format (default csv)'),
    ),
    (
        ['--out'],
        dict(action='store', dest='out', metavar='PATH', default=None, help='write to a file instead of stdout'),
    ),
]

SWEEP_KEYS = [args['dest'] for _, args in SWEEP_ARGUMENTS + OUTPUT_ARGUMENTS if args['dest'] != 'config']
