"""Web service composition over a composition search tree."""

import json

from ._core import *  # noqa: F401,F403
from ._core import __version__, render_answer


def answer(tree, outcome, registry):
    """Search outcome as a dict; ``{"found": False}`` when nothing was found."""
    return json.loads(render_answer(tree, outcome, registry))
