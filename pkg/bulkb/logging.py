import logging

from rich.console import Console
from rich.logging import RichHandler

logging.basicConfig(level=logging.WARNING)

formatter = logging.Formatter("%(name)s - %(message)s")

# one shared handler on stderr; stdout is reserved for command output
rich_handler = RichHandler(console=Console(stderr=True), show_path=False, rich_tracebacks=False)
rich_handler.setFormatter(formatter)


def get_logger(name: str = "main", level: int = logging.INFO):
    logger = logging.getLogger(name)
    logger.setLevel(level)
    if rich_handler not in logger.handlers:
        logger.addHandler(rich_handler)
    logger.propagate = False
    return logger
