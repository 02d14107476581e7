import logging
import os
import sys
from datetime import datetime
from typing import Optional


def setup_logging(
    console_log_level: Optional[int] = None, base_log_dir: Optional[str] = "logs"
) -> logging.Logger:
    """Sets up logging configuration.

    Creates a directory for logs based on the current date and configures
    the logger to write logs to a file and optionally to the console.
    Console output goes to stderr so that table files and piped output
    stay clean.

    Args:
        console_log_level: Level of the stderr handler, None to disable it.
        base_log_dir: Root directory of the per-run log files, None or an
            empty string to disable file logging.

    Returns:
        logging.Logger: Configured logger instance.
    """
    logger = logging.getLogger("main_logger")

    # Prevent adding multiple handlers if logger already has handlers
    if logger.hasHandlers():
        return logger

    formatter = logging.Formatter(
        "%(asctime)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s"
    )

    if base_log_dir:
        # Create a folder for the current date if it doesn't exist
        current_date = datetime.now().strftime("%Y-%m-%d")
        current_time = datetime.now().strftime("%Hh-%Mmin-%Ssec")
        date_folder = os.path.join(base_log_dir, current_date)
        os.makedirs(date_folder, exist_ok=True)

        log_file_path = os.path.join(date_folder, f"{current_time}.log")
        file_handler = logging.FileHandler(log_file_path)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    if console_log_level is not None:
        stream_handler = logging.StreamHandler(sys.stderr)
        stream_handler.setFormatter(formatter)
        stream_handler.setLevel(console_log_level)
        logger.addHandler(stream_handler)

    if not logger.handlers:
        logger.addHandler(logging.NullHandler())

    logger.setLevel(logging.DEBUG)
    return logger


# The module must be loaded under a single name, otherwise two loggers with
# competing handlers are configured (e.g. 'src.log_manager.logging_config'
# and 'log_manager.logging_config' when sys.path contains src/).
current_module_path = os.path.abspath(__file__)
for module in list(sys.modules.values()):
    if module and getattr(module, "__file__", None) is not None:
        if (
            os.path.abspath(module.__file__) == current_module_path
            and module.__name__ != __name__
        ):
            raise ImportError(
                "logging_config is being imported via multiple paths:"
                f" '{module.__name__}' and '{__name__}'. Import it as"
                " 'from src.log_manager.logging_config import logger'."
            )


# Logging is configured before the Dynaconf settings object exists, so the
# two knobs are read straight from the environment.
LOGGER_CONSOLE_LEVEL = logging.getLevelName(
    os.environ.get("QCT_CONSOLE_LOG_LEVEL", "WARNING").upper()
)
if not isinstance(LOGGER_CONSOLE_LEVEL, int):
    LOGGER_CONSOLE_LEVEL = logging.WARNING

logger = setup_logging(
    console_log_level=LOGGER_CONSOLE_LEVEL,
    base_log_dir=os.environ.get("QCT_LOG_DIR", "logs"),
)
