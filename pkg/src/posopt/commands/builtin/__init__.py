"""Built-in subcommands for posopt."""

from .minimize_commands import LyapunovCommand, MinimizeConstrainedCommand, MinimizeGlobalCommand
from .moment_commands import HamburgerCommand, JacobiCommand, StieltjesCommand, TrigMomentCommand
from .nc_commands import (
    NcConvexCommand,
    NcCyclicCommand,
    NcDeriveCommand,
    NcEvalCommand,
    NcIdealCommand,
    NcLmiCommand,
    NcSosCommand,
)
from .onedim_commands import DiskCommand, FejerCommand, PickCommand, SchurCommand, SturmCommand
from .sdp_commands import SdpEntropyCommand, SdpExportCommand, SdpSolveCommand
from .sos_commands import (
    HermitianSosCommand,
    MultiplierCommand,
    PerturbCommand,
    SosCheckCommand,
    SosExtractCommand,
)
from .system_commands import (
    DgkfCommand,
    DissipativityCommand,
    LoopCommand,
    SchurComplementCommand,
)
from .verify_command import VerifyCommand

BUILTIN_COMMANDS = [
    SosCheckCommand,
    SosExtractCommand,
    HermitianSosCommand,
    MultiplierCommand,
    PerturbCommand,
    MinimizeGlobalCommand,
    MinimizeConstrainedCommand,
    LyapunovCommand,
    HamburgerCommand,
    StieltjesCommand,
    TrigMomentCommand,
    JacobiCommand,
    FejerCommand,
    SchurCommand,
    SturmCommand,
    DiskCommand,
    PickCommand,
    NcEvalCommand,
    NcDeriveCommand,
    NcSosCommand,
    NcConvexCommand,
    NcLmiCommand,
    NcIdealCommand,
    NcCyclicCommand,
    SchurComplementCommand,
    LoopCommand,
    DissipativityCommand,
    DgkfCommand,
    SdpSolveCommand,
    SdpEntropyCommand,
    SdpExportCommand,
    VerifyCommand,
]

__all__ = [cls.__name__ for cls in BUILTIN_COMMANDS] + ['BUILTIN_COMMANDS']
