import json
import logging
import os
import pandas as pd
import yaml
from pathlib import Path

PROJECT_ROOT = Path(__file__).resolve().parents[2]
CACHE_ENV_VAR = "HECKE_CELLS_CACHE_DIR"
LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s"


def load_config(path: str | None = None) -> dict:
    """
    Loads the kernel configuration from a YAML file.

    Reads rank bounds, cache location, verification levels and logging
    parameters. The function automatically locates config.yaml in the
    project root if no path is provided.

    Parameters
    ----------
    path : str or None, default None
        Path to the configuration file. Can be:
        - None (default): Automatically uses `config.yaml` in project root
        - Relative path: Interpreted relative to current working directory
        - Absolute path: Used as-is

    Returns
    -------
    dict
        Configuration dictionary with sections:

        config["kl"] - KL table generation:
            - max_rank (int): Largest n accepted without --force
            - workers (int): Thread fan-out while building tables
            - progress (bool): Show tqdm progress bars
        config["cache"] - On-disk table cache:
            - enabled (bool)
            - dir (str or None): Cache directory, None for the default
        config["verify"] - Acceptance suite:
            - levels (dict): level name -> largest rank checked
            - seed (int): Seed for randomized checks
            - closure_max_rank (int): Bound for the cell-closure oracle
        config["idempotents"]:
            - warn_rank (int): Rank from which p_T construction logs a warning
        config["reports"]:
            - dir (str): Directory for CSV verification reports
        config["logging"]:
            - level (str), format (str)
    """
    if path is None:
        path = PROJECT_ROOT / "config.yaml"
    else:
        path = Path(path)

    if not path.exists():
        raise FileNotFoundError(f"Config file not found: {path}")

    with open(path, "r") as file:
        return yaml.safe_load(file) or {}


def setup_logging(level: str | int = "INFO", fmt: str = LOG_FORMAT) -> None:
    """
    Configures root logging once for CLI runs.

    Log records go to stderr so that JSON written to stdout stays parseable.
    """
    if isinstance(level, str):
        level = getattr(logging, level.upper(), logging.INFO)
    logging.basicConfig(level=level, format=fmt, force=True)


def resolve_cache_dir(cli_value: str | None = None, config: dict | None = None) -> Path:
    """
    Resolves the KL cache directory.

    Precedence is: explicit argument, the ``HECKE_CELLS_CACHE_DIR``
    environment variable, ``cache.dir`` from the config, then the per-user
    data directory (``$XDG_DATA_HOME/hecke-cells`` or
    ``~/.local/share/hecke-cells``).

    Parameters
    ----------
    cli_value : str or None
        Value of the ``--cache-dir`` flag
    config : dict or None
        Loaded configuration

    Returns
    -------
    Path
        Directory path (not created here)
    """
    if cli_value:
        return Path(cli_value).expanduser()
    env_value = os.environ.get(CACHE_ENV_VAR)
    if env_value:
        return Path(env_value).expanduser()
    configured = ((config or {}).get("cache") or {}).get("dir")
    if configured:
        return Path(configured).expanduser()
    data_home = os.environ.get("XDG_DATA_HOME")
    base = Path(data_home) if data_home else Path.home() / ".local" / "share"
    return base / "hecke-cells"


def save_report(df: pd.DataFrame, file_name: str, dir_name: str | None = None) -> Path:
    """
    Saves a report DataFrame as CSV.

    Creates the report directory if it doesn't exist. Relative directories
    are resolved against the project root.

    Parameters
    ----------
    df : pd.DataFrame
        Report table (one row per check)
    file_name : str
        Name for the CSV file (e.g., 'verify_fast.csv')
    dir_name : str or None, default None
        Target directory, defaults to ``data/reports``

    Returns
    -------
    Path
        Path of the written file
    """
    target = Path(dir_name) if dir_name else Path("data") / "reports"
    if not target.is_absolute():
        target = PROJECT_ROOT / target
    target.mkdir(parents=True, exist_ok=True)
    file_path = target / file_name
    df.to_csv(file_path, index=False)
    return file_path


def load_report(file_path: str | Path) -> pd.DataFrame:
    """Loads a CSV report written by `save_report`."""
    return pd.read_csv(file_path)


def dump_json(payload: object) -> str:
    """Serializes to byte-deterministic JSON (sorted keys, fixed separators)."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def print_header(title: str):
    """
    Prints a formatted header for major sections.

    Parameters
    ----------
    title : str
        Header text to display
    """
    print("\n" + "=" * 80)
    print(f"  {title}")
    print("=" * 80)


def print_section(title: str):
    """
    Prints a formatted section separator.

    Parameters
    ----------
    title : str
        Section text to display
    """
    print("\n" + "-" * 80)
    print(f"  {title}")
    print("-" * 80)


def print_metrics(metrics: dict, title: str = "Metrics"):
    """
    Prints a metrics dictionary in an aligned two-column format.

    Parameters
    ----------
    metrics : dict
        Metric names (keys) and values. Floats are shown with four decimals,
        booleans as PASS/FAIL, everything else via ``str``.
    title : str, default "Metrics"
        Section title displayed above the metrics
    """
    print(f"\n📊 {title}:")
    for key, value in metrics.items():
        if isinstance(value, bool):
            print(f"   {key:.<30} {'PASS' if value else 'FAIL':>10}")
        elif isinstance(value, float):
            print(f"   {key:.<30} {value:>10.4f}")
        else:
            print(f"   {key:.<30} {str(value):>10}")
