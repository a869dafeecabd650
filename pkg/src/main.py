import logging.config
import sys

import yaml
from pydantic import ValidationError

from config import get_settings

# pre-configure root logger
logging.basicConfig(format="%(message)s", level=logging.INFO)
logger = logging.getLogger(__name__)

try:
    settings = get_settings()
except ValidationError as e:
    logger.error("ValidationError: %s", e)
    sys.exit(1)

with open(settings.LOG_CONFIG, encoding="utf-8") as f:
    logging.config.dictConfig(yaml.safe_load(f))

from qshuffle import create_app  # noqa: E402

app = create_app(settings)

if __name__ == "__main__":
    sys.exit(app.run(sys.argv[1:]))
