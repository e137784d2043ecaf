"""
Plain-text configuration files for the command-line lab.

A file holds `key = value` lines named after the long flags (`t-end = 2` or
`t_end = 2`); `#` and `;` start comments. Values are handed to click as
defaults, so flags given on the command line win.
"""

import configparser
import logging
from pathlib import Path
from typing import Dict, Iterable, Mapping, Union

from ..exceptions import ConfigurationError

logger = logging.getLogger(__name__)

_SECTION = "lab"


def load_config(path: Union[str, Path]) -> Dict[str, str]:
    """
    Read a config file into {parameter_name: raw value}.

    Raises:
        ConfigurationError: If the file cannot be read or a line is malformed
    """
    parser = configparser.ConfigParser(
        delimiters=("=",),
        comment_prefixes=("#", ";"),
        inline_comment_prefixes=("#",),
        interpolation=None,
    )
    try:
        text = Path(path).read_text()
        parser.read_string(f"[{_SECTION}]\n{text}", source=str(path))
    except OSError as e:
        raise ConfigurationError(f"Cannot read config file {path}: {e}", key="config") from e
    except configparser.Error as e:
        raise ConfigurationError(f"Malformed config file {path}: {e}", key="config") from e
    values = {key.replace("-", "_"): value for key, value in parser.items(_SECTION)}
    logger.debug(f"Loaded {len(values)} settings from {path}")
    return values


def default_map(
    values: Mapping[str, str], commands: Mapping[str, Iterable[str]]
) -> Dict[str, Dict[str, str]]:
    """
    Split flat settings into click's per-command default_map.

    Args:
        values: Settings from load_config
        commands: Parameter names accepted by each subcommand

    Raises:
        ConfigurationError: If a key matches no parameter of any subcommand
    """
    accepted = {name: set(params) for name, params in commands.items()}
    known = set().union(*accepted.values()) if accepted else set()
    unknown = sorted(set(values) - known)
    if unknown:
        raise ConfigurationError(
            f"Unknown config keys: {', '.join(unknown)}", key=unknown[0]
        )
    return {
        name: {key: value for key, value in values.items() if key in params}
        for name, params in accepted.items()
    }
