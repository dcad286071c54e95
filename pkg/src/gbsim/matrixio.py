"""Text formats for complex matrices.

File format: one matrix row per line, entries separated by whitespace.
Each entry is either a Python complex literal ("0.5-0.25j", "1.5", "2j") or
a comma pair "re,im".  Writing always uses the literal form with 17
significant digits, so written files round-trip bit-exactly.
"""

from __future__ import annotations

import numpy as np

from .errors import ValidationError


def parse_complex_token(tok: str) -> complex:
    tok = tok.strip()
    if "," in tok:
        parts = tok.split(",")
        if len(parts) != 2:
            raise ValidationError(f"cannot parse complex entry {tok!r}")
        try:
            return complex(float(parts[0]), float(parts[1]))
        except ValueError:
            raise ValidationError(f"cannot parse complex entry {tok!r}") from None
    try:
        return complex(tok)
    except ValueError:
        raise ValidationError(f"cannot parse complex entry {tok!r}") from None


def format_complex(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}j"


def load_complex_matrix(path) -> np.ndarray:
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rows.append([parse_complex_token(tok) for tok in line.split()])
    if not rows:
        raise ValidationError(f"matrix file {path} is empty")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValidationError(f"matrix file {path} has ragged rows")
    return np.array(rows, dtype=complex)


def dump_complex_matrix(m) -> str:
    m = np.asarray(m, dtype=complex)
    return "\n".join(" ".join(format_complex(z) for z in row) for row in m) + "\n"


def matrix_from_json(obj) -> np.ndarray:
    """Inline config form: nested arrays of [re, im] pairs."""
    try:
        rows = [[complex(float(e[0]), float(e[1])) for e in row] for row in obj]
    except (TypeError, ValueError, IndexError):
        raise ValidationError("inline unitary must be a nested array of [re, im] pairs") from None
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise ValidationError("inline unitary must be a non-empty rectangular array")
    return np.array(rows, dtype=complex)
