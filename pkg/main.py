import argparse
import logging
import sys
import time

import config
from commands.base_command import BaseCommand
from commands.factory import CommandFactory
from utils.errors import ToridynError, UsageError
from utils.helpers import dumps

logger = logging.getLogger(__name__)


class _ArgumentParser(argparse.ArgumentParser):
    """ argparse 的錯誤改為拋出 UsageError，由 facade 統一轉換為結束碼。 """

    def error(self, message):
        raise UsageError(message)


class ToridynFacade:
    """
    Facade Pattern 實作：註冊所有子命令、解析參數、分派執行並輸出 JSON。
    """

    def __init__(self, config):
        self.config = config
        self.factory = CommandFactory()
        self.commands: dict[str, BaseCommand] = {}
        self._register_commands()
        self.parser = self._build_parser()

    def _register_commands(self):
        for name in self.factory.names():
            self.commands[name] = self.factory.create_command(name)
        logger.debug("CLI registered with %d commands.", len(self.commands))

    def _build_parser(self) -> argparse.ArgumentParser:
        parser = _ArgumentParser(prog="toridyn", description="Exact arithmetic dynamics on tori and affine space.")
        parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
        sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_ArgumentParser)
        for name, command in self.commands.items():
            command.add_arguments(sub.add_parser(name, help=command.help, description=command.help))
        return parser

    def _configure_logging(self, verbose: bool):
        level = logging.INFO if verbose else self.config.LOG_LEVEL
        root = logging.getLogger()
        if not root.handlers:
            logging.basicConfig(level=level, format=self.config.LOG_FORMAT, stream=sys.stderr)
        else:
            root.setLevel(level)

    def _emit(self, payload: dict):
        print(dumps({"schema": self.config.SCHEMA, **payload}))

    def _emit_error(self, error: Exception) -> int:
        kind = getattr(error, "kind", "domain_error")
        self._emit({"error": {"type": kind, "message": str(error)}})
        return self.config.EXIT_USAGE if isinstance(error, UsageError) else self.config.EXIT_DOMAIN

    def run(self, argv=None) -> int:
        """
        解析並執行一個子命令。

        :return: 結束碼 (0 成功、2 使用錯誤、3 領域錯誤)
        """
        try:
            args = self.parser.parse_args(argv)
        except UsageError as e:
            return self._emit_error(e)
        except SystemExit as e:
            # --help
            return int(e.code or 0)
        self._configure_logging(args.verbose)
        if args.command is None:
            return self._emit_error(UsageError("missing subcommand; see --help"))

        command = self.commands[args.command]
        logger.info("======= EXECUTING COMMAND: %s =======", args.command)
        start_time = time.time()
        try:
            payload = command.execute(args)
        except (ToridynError, ZeroDivisionError) as e:
            logger.info("Command %s failed: %s", args.command, e)
            return self._emit_error(e)
        logger.info("======= COMMAND %s COMPLETED IN %.2fs =======", args.command, time.time() - start_time)
        for item in payload if isinstance(payload, list) else [payload]:
            self._emit(item)
        return self.config.EXIT_OK


def run(argv=None) -> int:
    return ToridynFacade(config).run(argv)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
