from dynaconf import Dynaconf

from src.log_manager.logging_config import logger

logger.debug("Initializing settings")

# Initialize settings with Dynaconf
settings = Dynaconf(
    envvar_prefix="QCT",
    settings_files=[
        "settings.toml",
        ".secrets.toml",
    ],
    environments=True,
    load_dotenv=True,
)
