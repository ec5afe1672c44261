from .context import CommandOutcome, RunContext
from .geometry_commands import GeometryCommands
from .partition_commands import PartitionCommands
from .integral_commands import IntegralCommands
from .report_commands import ReportCommands
