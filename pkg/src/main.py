"""Command-line entry point."""

import logging
import sys
from collections.abc import Sequence

import structlog

from src.cli.base import ExitCode, exit_code_for
from src.cli.router import build_parser
from src.config import settings

logger = structlog.get_logger()


def configure_logging(level: str = settings.log_level) -> None:
    """Send structlog events through stdlib logging to stderr."""
    logging.basicConfig(
        level=getattr(logging, level.upper()),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
        force=True,
    )
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_log_level,
            structlog.processors.format_exc_info,
            structlog.dev.ConsoleRenderer(colors=False),
        ],
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=False,
    )


def main(argv: Sequence[str] | None = None) -> int:
    """Run one ``cgsp`` command and return its exit code."""
    configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return int(args.handler(args))
    except SystemExit as exc:
        # --help and --version
        return int(exc.code or 0)
    except Exception as exc:
        code = exit_code_for(exc)
        if code is ExitCode.FAILURE:
            logger.exception("command failed")
        print(f"error: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
