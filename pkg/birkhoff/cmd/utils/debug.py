"""
High level log and debug configuration.

core.ui.log_utils contains code which is independent of birkhoff itself.

This module contains birkhoff-specific logging code, such as logging arguments and
the versions of the numerical libraries.
"""

import logging
import sys
from typing import Optional

import numpy
import scipy

import birkhoff
from birkhoff.core import ui
from birkhoff.core.constants import MAX_WORKERS
from birkhoff.core.ui import log_utils


logger = logging.getLogger(__name__)


def setup_debug_mode(*, filename: Optional[str] = None) -> None:
    """
    Enable debug mode: set up logger and set the UI level to DEBUG.
    """
    ui.set_level(ui.Level.DEBUG)

    log_utils.set_log_handler(filename)

    logger.debug("args=%s", sys.argv)
    logger.debug("birkhoff=%s", birkhoff.__version__)
    logger.debug("numpy=%s scipy=%s", numpy.__version__, scipy.__version__)
    logger.debug("max_workers=%d", MAX_WORKERS)
