"""
Delimiter-separated curve files.

Every number is written with Python's shortest round-trip repr, so files do
not depend on locale and reruns are byte-identical.
"""

import csv
from pathlib import Path
from typing import Any, Iterable, List, Sequence, Union

SE_COLUMNS = ["snr_db", "mcs", "pb_source", "pb", "se"]
BOUND_COLUMNS = SE_COLUMNS + ["spectral_radius", "divergent"]
SIM_COLUMNS = SE_COLUMNS + ["std_error", "bit_errors", "bits_simulated", "frames"]
LATENCY_COLUMNS = ["tau", "tau_bits", "target_ber", "required_snr_db", "attained"]
ENVELOPE_LABEL = "envelope"


def format_value(value: Any) -> str:
    """
    Round-trip text for one cell.

    Example:
        >>> format_value(0.1), format_value(float("inf")), format_value(None), format_value(True)
        ('0.1', 'inf', '', 'true')
    """
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_rows(path: Union[str, Path], columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    """Write a header row and data rows."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(v) for v in row])
    return path


def read_rows(path: Union[str, Path]) -> List[dict]:
    """Rows of a curve file as dicts of strings."""
    with open(path, "r", encoding="utf-8", newline="") as f:
        return list(csv.DictReader(f))
