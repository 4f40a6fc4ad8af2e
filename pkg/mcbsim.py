"""
mcbsim - multi-message CONGEST broadcast simulator
Entry point: python mcbsim.py <command> [options]
"""
import argparse
import sys

from src.commands import register_all
from src.utils.errors import MCBSimError
from src.utils.log import get_logger, setup_logging

logger = get_logger('main')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='mcbsim', description='Multi-message CONGEST broadcast simulator')
    parser.add_argument('--log-level', dest='log_level', help='override the log_level setting')
    subparsers = parser.add_subparsers(dest='command', required=True)
    register_all(subparsers)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)
    try:
        args.handler(args)
    except MCBSimError as e:
        logger.debug(f"{args.command} failed", exc_info=True)
        print(f"❌ {e}")
        return 1
    return 0


if __name__ == '__main__':
    sys.exit(main())
