from .cli import main, run_scenario, Command, CommandResult, COMMANDS
from .output import emit_csv, read_csv, parse_csv, render_csv, render_aligned
