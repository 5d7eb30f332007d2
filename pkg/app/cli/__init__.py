from app.cli.jobs import ColorSpec, JobSpec, cmd_guess, cmd_invariant, cmd_sweep
from app.cli.verify import cmd_verify
