"""Parsers for list-valued and key=value command-line arguments."""

import argparse
import math


def parse_float_list(text: str) -> list[float]:
    """Parse ``"0.001,0.01,0.1"``."""
    try:
        values = [float(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got '{text}'") from e
    if not values:
        raise argparse.ArgumentTypeError("expected at least one number")
    return values


def parse_int_list(text: str) -> list[int]:
    """Parse ``"4,10,100"``."""
    try:
        values = [int(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'") from e
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError(f"expected positive integers, got '{text}'")
    return values


def parse_scales(text: str) -> list[float]:
    """Parse a comma list or a decade range such as ``"1e0..1e-8"``.

    A range covers every power of ten between its endpoints, both included.
    """
    if ".." not in text:
        return parse_float_list(text)
    start_text, _, stop_text = text.partition("..")
    try:
        start, stop = float(start_text), float(stop_text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"invalid decade range '{text}'") from e
    if start <= 0 or stop <= 0:
        raise argparse.ArgumentTypeError(f"decade range endpoints must be positive, got '{text}'")
    first, last = round(math.log10(start)), round(math.log10(stop))
    step = -1 if first > last else 1
    return [10.0 ** e for e in range(first, last + step, step)]


def parse_known_coord(text: str) -> tuple[int, float]:
    """Parse ``"idx=value"``."""
    index_text, sep, value_text = text.partition("=")
    try:
        if not sep:
            raise ValueError
        return int(index_text), float(value_text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected idx=value, got '{text}'") from None
