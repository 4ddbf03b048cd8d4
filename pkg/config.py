import logging
import os
from typing import Optional
from dotenv import load_dotenv

# Load environment variables from a .env file
load_dotenv()

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

# Defaults used when neither a flag nor an SPD_* variable is given.
DEFAULTS = {
    "SPD_SEED": 7,
    "SPD_TRIALS": 100,
    "SPD_N_MAX": 12,
    "SPD_BUDGET_N": 22,
    "SPD_TIME_LIMIT": 120,
    "SPD_MAX_CLIQUE": 4,
    "SPD_WORKERS": 1,
}

class RunConfig:
    """
    Settings for one CLI run: flags layered over SPD_* environment defaults.
    """
    def __init__(
        self,
        command: str,
        seed: int,
        trials: int,
        n_max: int,
        budget_n: int,
        time_limit: float,
        max_clique: int,
        workers: int,
        output_format: str = "human",
        out: Optional[str] = None,
        log_level: str = "WARNING"
    ):
        self.command = command
        self.seed = seed
        self.trials = trials
        self.n_max = n_max
        self.budget_n = budget_n
        self.time_limit = time_limit
        self.max_clique = max_clique
        self.workers = workers
        self.output_format = output_format
        self.out = out
        self.log_level = log_level

    @property
    def human(self) -> bool:
        return self.output_format == "human"

def get_env_int(key: str, minimum: int = 0) -> int:
    """
    Reads an integer SPD_* variable, falling back to its default.
    Raises a RuntimeError if the value is not an integer >= minimum.
    """
    raw = os.getenv(key)
    if raw is None or raw.strip() == "":
        return DEFAULTS[key]
    try:
        value = int(raw)
    except ValueError:
        raise RuntimeError(f"❌ INVALID CONFIG: Environment variable '{key}' must be an integer, got '{raw}'")
    if value < minimum:
        raise RuntimeError(f"❌ INVALID CONFIG: Environment variable '{key}' must be >= {minimum}, got {value}")
    return value

def get_config(args) -> RunConfig:
    """
    Factory function building the RunConfig for a parsed argparse namespace.
    Flags left at None take the environment value.
    Usage: SPD_SEED=11 python app.py harness --trials 50
    """
    def pick(flag: str, key: str, minimum: int = 0):
        value = getattr(args, flag, None)
        if value is None:
            return get_env_int(key, minimum)
        if value < minimum:
            raise RuntimeError(f"❌ INVALID CONFIG: --{flag.replace('_', '-')} must be >= {minimum}, got {value}")
        return value

    log_level = os.getenv("SPD_LOG_LEVEL", "WARNING").upper()
    if not isinstance(logging.getLevelName(log_level), int):
        raise RuntimeError(f"❌ INVALID CONFIG: Environment variable 'SPD_LOG_LEVEL' has unknown level '{log_level}'")

    return RunConfig(
        command=args.command,
        seed=pick("seed", "SPD_SEED"),
        trials=pick("trials", "SPD_TRIALS"),
        n_max=pick("n_max", "SPD_N_MAX", minimum=2),
        budget_n=pick("budget_n", "SPD_BUDGET_N", minimum=1),
        time_limit=pick("time_limit", "SPD_TIME_LIMIT", minimum=1),
        max_clique=pick("max_clique", "SPD_MAX_CLIQUE", minimum=2),
        workers=pick("workers", "SPD_WORKERS", minimum=1),
        output_format=getattr(args, "format", None) or "human",
        out=getattr(args, "out", None),
        log_level=log_level
    )

def configure_logging(level: str = "WARNING") -> None:
    """
    Installs a single stream handler on the root logger.
    """
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(level)
