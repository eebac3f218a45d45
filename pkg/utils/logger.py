"""
Logger utility for all2sat
Console logging to stderr (stdout carries models and cubes) with colored
level names, plus an optional log file
"""
import logging
import sys

from colorama import Fore, Style, init as colorama_init

LEVEL_COLORS = {
    "DEBUG": Fore.CYAN,
    "INFO": Fore.GREEN,
    "WARNING": Fore.YELLOW,
    "ERROR": Fore.RED,
    "CRITICAL": Fore.RED + Style.BRIGHT,
}

FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


class ColorFormatter(logging.Formatter):
    def format(self, record):
        formatted = super().format(record)
        color = LEVEL_COLORS.get(record.levelname)
        if not color:
            return formatted
        return formatted.replace(record.levelname, f"{color}{record.levelname}{Style.RESET_ALL}", 1)


class Logger:
    def __init__(self, name="all2sat", level=logging.INFO, log_file=None, color=True, stream=None):
        self.logger = logging.getLogger(name)
        self.logger.setLevel(level)

        # Clear existing handlers
        self.logger.handlers.clear()

        stream = stream or sys.stderr
        use_color = color and hasattr(stream, "isatty") and stream.isatty()
        if use_color:
            colorama_init()
            console_formatter = ColorFormatter(FORMAT, datefmt=DATE_FORMAT)
        else:
            console_formatter = logging.Formatter(FORMAT, datefmt=DATE_FORMAT)

        console_handler = logging.StreamHandler(stream)
        console_handler.setLevel(level)
        console_handler.setFormatter(console_formatter)
        self.logger.addHandler(console_handler)

        # File handler if specified
        if log_file:
            try:
                file_handler = logging.FileHandler(log_file)
                file_handler.setLevel(level)
                file_handler.setFormatter(logging.Formatter(FORMAT, datefmt=DATE_FORMAT))
                self.logger.addHandler(file_handler)
            except OSError as e:
                self.warning(f"Could not create file handler: {e}")

    def debug(self, message):
        self.logger.debug(message)

    def info(self, message):
        self.logger.info(message)

    def warning(self, message):
        self.logger.warning(message)

    def error(self, message):
        self.logger.error(message)

    def critical(self, message):
        self.logger.critical(message)

    def set_level(self, level):
        """Set logging level on the logger and all of its handlers"""
        if isinstance(level, str):
            level = logging.getLevelName(level.upper())
        self.logger.setLevel(level)
        for handler in self.logger.handlers:
            handler.setLevel(level)
