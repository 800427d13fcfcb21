"""Helper utilities for report values, option lists and output files."""

import os
from typing import Any, Optional, Tuple

from svsegre.models import ValidationError


def plain_rational(value) -> Any:
    """Render a rational as an int when integral, else as a ``"p/q"`` string.

    Examples:
        >>> plain_rational(QQ(-16))
        -16
        >>> plain_rational(QQ(3, 2))
        '3/2'
    """
    numerator, denominator = int(value.numerator), int(value.denominator)
    if denominator == 1:
        return numerator
    return f"{numerator}/{denominator}"


def to_plain(value: Any) -> Any:
    """Recursively turn a payload into JSON-ready builtins."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, dict):
        return {key: to_plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(item) for item in value]
    if hasattr(value, 'denominator'):
        return plain_rational(value)
    return value


def parse_int_list(text: Optional[str], option: str = 'value') -> Tuple[int, ...]:
    """Parse ``"2,2"`` into ``(2, 2)``.

    Raises:
        ValidationError: If an entry is not an integer.
    """
    if text is None or not text.strip():
        return ()
    try:
        return tuple(int(part) for part in text.split(','))
    except ValueError:
        raise ValidationError(
            f"{option} must be a comma-separated list of integers, got '{text}'"
        )


def ensure_output_dir(directory: str) -> str:
    """Ensure the output directory exists.

    Args:
        directory: Directory path.

    Returns:
        Absolute path to the directory.

    Raises:
        OSError: If directory cannot be created.
    """
    abs_directory = os.path.abspath(directory or '.')
    os.makedirs(abs_directory, exist_ok=True)
    return abs_directory


def write_report(text: str, path: str) -> str:
    """Write a rendered report, creating parent directories.

    Returns:
        Absolute path to the written file.
    """
    directory = ensure_output_dir(os.path.dirname(path))
    abs_path = os.path.join(directory, os.path.basename(path))
    with open(abs_path, 'w') as f:
        f.write(text if text.endswith('\n') else text + '\n')
    return abs_path
