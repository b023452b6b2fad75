"""
Cement print extension module.
"""

from __future__ import annotations
from typing import Any, Dict, Union, TYPE_CHECKING
from cement.core import output

if TYPE_CHECKING:
    from cement.core.foundation import App  # pragma: nocover


def nucorrelate_print(app: App) -> None:

    def _print(*args: Any, sep=' ', end='\n') -> None:
        app.render(dict(args=args, sep=sep, end=end), handler='print')

    app.extend('print', _print)


class NuCorrelatePrintOutputHandler(output.OutputHandler):
    """
    Joins the ``args`` of the data dict like the builtin ``print()`` does, so
    that ``app.print()`` output passes the ``pre_render`` and ``post_render``
    hooks and lands in ``app.last_rendered``.
    """

    class Meta(output.OutputHandler.Meta):
        """Handler meta-data"""

        label = 'print'

        #: not selectable through the command line
        overridable = False

    _meta: Meta  # type: ignore

    def render(self, data: Dict[str, Any], *args: Any, **kw: Any) -> Union[str, None]:
        if 'args' not in data:
            self.app.log.debug(f"no 'args' key found in data, not rendering content via {self.__module__}")
            return None
        return data.get('sep', ' ').join(str(arg) for arg in data['args']) + data.get('end', '\n')


def load(app: App) -> None:
    app.handler.register(NuCorrelatePrintOutputHandler)
    app.hook.register('pre_argument_parsing', nucorrelate_print)
