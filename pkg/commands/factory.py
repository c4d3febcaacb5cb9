from .lattice_commands import (
    CharpolyCommand,
    DecomposeCommand,
    HnfCommand,
    PositiveCommand,
    SaturateCommand,
    SnfCommand,
)
from .torus_commands import CosetCommand, FixedPointsCommand, QuotientCommand
from .cyclo_commands import HouseCommand, LoxtonCommand
from .degree_commands import DyndegCommand, HenonProfileCommand, RegularProfileCommand
from .affine_commands import (
    BackwardCommand,
    CertCommand,
    EscapeCommand,
    GreenCommand,
    PreperCommand,
    PreperScanCommand,
    SemiconjCommand,
)
from .henon_commands import HenonScanCommand, PeriodicCommand
from .classify_commands import ChebyshevCommand, ClassifyCommand, QuotientCheckCommand
from .acceptance_command import AcceptanceCommand
from utils.errors import UsageError


class CommandFactory:
    """
    工廠模式，用於根據子命令名稱實例化命令。
    """

    _creators = {
        cls.name: cls
        for cls in (
            HnfCommand, SnfCommand, CharpolyCommand, SaturateCommand, PositiveCommand, DecomposeCommand,
            DyndegCommand, RegularProfileCommand, HenonProfileCommand,
            FixedPointsCommand, CosetCommand, QuotientCommand,
            HouseCommand, LoxtonCommand,
            CertCommand, EscapeCommand, PreperCommand, PreperScanCommand, BackwardCommand, GreenCommand,
            SemiconjCommand,
            PeriodicCommand, HenonScanCommand,
            ClassifyCommand, ChebyshevCommand, QuotientCheckCommand,
            AcceptanceCommand,
        )
    }

    def names(self) -> list[str]:
        return list(self._creators)

    def create_command(self, name: str) -> "BaseCommand":
        """
        建立一個子命令實例。

        :param name: 子命令名稱 (例如 "hnf")
        :return: BaseCommand 的一個實例
        """
        if name not in self._creators:
            raise UsageError(f"Unknown subcommand: {name}")

        return self._creators[name]()
