__all__ = ("create_app",)

import logging
from typing import TYPE_CHECKING

from .cli import Application

if TYPE_CHECKING:
    from config import Settings

logger = logging.getLogger(__name__)


def create_app(settings: "Settings") -> Application:
    app = Application(settings)
    if settings.DEBUG:
        logger.setLevel(logging.DEBUG)
    logger.debug("Application %s %s created", settings.APP_NAME, settings.VERSION)
    return app
