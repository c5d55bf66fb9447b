"""
Logging configuration for the verification tool.
"""

import logging
from pathlib import Path
from typing import Optional, Union


class Logger:
    """Logger configuration and setup."""

    def __init__(self, log_level: Union[int, str] = logging.INFO, log_dir: Optional[str] = None,
                 log_to_file: bool = False):
        if isinstance(log_level, str):
            log_level = getattr(logging, log_level.upper(), logging.INFO)
        self.log_level = log_level
        self.log_to_file = log_to_file
        self.log_dir = Path(log_dir or "data/logs")

    def setup_logging(self) -> logging.Logger:
        """Set up logging configuration."""
        formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )

        logger = logging.getLogger()
        logger.setLevel(self.log_level)
        logger.handlers.clear()

        # Console handler; stdout stays reserved for command output
        console_handler = logging.StreamHandler()
        console_handler.setLevel(self.log_level)
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

        if self.log_to_file:
            self.log_dir.mkdir(parents=True, exist_ok=True)

            file_handler = logging.FileHandler(self.log_dir / "ofip.log", encoding='utf-8')
            file_handler.setLevel(self.log_level)
            file_handler.setFormatter(formatter)
            logger.addHandler(file_handler)

            error_handler = logging.FileHandler(self.log_dir / "errors.log", encoding='utf-8')
            error_handler.setLevel(logging.ERROR)
            error_handler.setFormatter(formatter)
            logger.addHandler(error_handler)

        # numpy emits nothing useful below WARNING
        logging.getLogger('numpy').setLevel(logging.WARNING)

        logger.debug("Logging system initialized")
        return logger
