import logging
import sys

from colorama import init, Fore, Style

init(autoreset=True)


class ColorOutput:
    """Handle colored terminal output."""

    COLORS = {
        'red': Fore.RED,
        'green': Fore.GREEN,
        'yellow': Fore.YELLOW,
        'blue': Fore.BLUE,
        'magenta': Fore.MAGENTA,
        'cyan': Fore.CYAN,
        'white': Fore.WHITE,
        'reset': Style.RESET_ALL,
        'bold': Style.BRIGHT,
    }

    # Verdict colors for harness summaries
    VERDICT_COLORS = {
        'consistent-at-depth': Fore.GREEN,
        'passed-sampled': Fore.GREEN,
        'refuted': Fore.RED + Style.BRIGHT,
        'falsified': Fore.RED + Style.BRIGHT,
        'observed': Fore.CYAN,
        'failed': Fore.YELLOW,
    }

    LEVEL_COLORS = {
        logging.DEBUG: Fore.WHITE,
        logging.INFO: Fore.CYAN,
        logging.WARNING: Fore.YELLOW,
        logging.ERROR: Fore.RED,
        logging.CRITICAL: Fore.RED + Style.BRIGHT,
    }

    @classmethod
    def colorize(cls, text: str, color: str) -> str:
        """Apply color to text."""
        color_code = cls.COLORS.get(color.lower(), '')
        return f"{color_code}{text}{Style.RESET_ALL}"

    @classmethod
    def verdict(cls, status: str) -> str:
        """Color a verdict keyword."""
        return f"{cls.VERDICT_COLORS.get(status, '')}{status}{Style.RESET_ALL}"

    @classmethod
    def success(cls, message: str) -> str:
        """Format success message."""
        return f"{Fore.GREEN}✓ {message}{Style.RESET_ALL}"

    @classmethod
    def error(cls, message: str) -> str:
        """Format error message."""
        return f"{Fore.RED}✗ {message}{Style.RESET_ALL}"

    @classmethod
    def warning(cls, message: str) -> str:
        """Format warning message."""
        return f"{Fore.YELLOW}⚠ {message}{Style.RESET_ALL}"

    @classmethod
    def info(cls, message: str) -> str:
        """Format info message."""
        return f"{Fore.CYAN}ℹ {message}{Style.RESET_ALL}"


class ColorFormatter(logging.Formatter):
    """Log formatter that tints the level name."""

    def format(self, record: logging.LogRecord) -> str:
        text = super().format(record)
        color = ColorOutput.LEVEL_COLORS.get(record.levelno, '')
        return f"{color}{text}{Style.RESET_ALL}"


def configure_logging(verbosity: int = 0) -> None:
    """Route toolkit logs to stderr; -1 quiet, 0 info, 1+ debug."""
    level = logging.INFO
    if verbosity < 0:
        level = logging.WARNING
    elif verbosity > 0:
        level = logging.DEBUG
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(ColorFormatter('%(levelname)s %(name)s: %(message)s'))
    root = logging.getLogger()
    for existing in list(root.handlers):
        root.removeHandler(existing)
    root.addHandler(handler)
    root.setLevel(level)
