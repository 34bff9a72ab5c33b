from .commands import parse_delta, cmd_detect, cmd_boundary, cmd_simulate, cmd_sweep, cmd_generate, signal_preview

__all__ = ["parse_delta", "cmd_detect", "cmd_boundary", "cmd_simulate", "cmd_sweep", "cmd_generate",
           "signal_preview"]
