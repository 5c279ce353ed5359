import logging

from . import _reset_ui
from .log_utils import _reset_log_handler


def reset():
    """
    Put logging and the UI back in their startup state. Only used by unit-tests.
    """
    _reset_log_handler()
    _reset_ui()
    logging.disable()
