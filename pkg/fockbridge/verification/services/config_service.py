import json
import logging
from pathlib import Path
from typing import Optional, Union

from pydantic import ValidationError

from ...core.exceptions import ConfigError
from ...schemas.run_config import RunConfig

logger = logging.getLogger(__name__)


def _describe(error: ValidationError) -> str:
    lines = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "<root>"
        lines.append(f"{location}: {item['msg']}")
    return "; ".join(lines)


def parse_run_config(text: str, source: str = "<string>") -> RunConfig:
    try:
        data = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as exc:
        logger.error(f"Malformed JSON in {source}")
        raise ConfigError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{source}: top level must be a JSON object, got {type(data).__name__}")
    try:
        return RunConfig.model_validate(data)
    except ValidationError as exc:
        logger.error(f"Invalid run config in {source}")
        raise ConfigError(f"{source}: {_describe(exc)}") from exc


def load_run_config(path: Optional[Union[str, Path]] = None, seed: Optional[int] = None) -> RunConfig:
    """Read a JSON run config (defaults when path is None) and apply a seed override."""
    if path is None:
        config = RunConfig()
    else:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc.strerror or exc}") from exc
        config = parse_run_config(text, str(path))
        logger.info(f"Loaded run config from {path}")
    if seed is not None:
        if seed < 0:
            raise ConfigError(f"seed must be non-negative, got {seed}")
        config = config.model_copy(update={"seed": seed})
    return config
