import math
from typing import Sequence

_PREFIXES = {
    -24: "y",
    -21: "z",
    -18: "a",
    -15: "f",
    -12: "p",
    -9: "n",
    -6: "u",
    -3: "m",
    0: "",
    3: "k",
    6: "M",
    9: "G",
    12: "T",
    15: "P",
    18: "E",
    21: "Z",
    24: "Y",
}


def engineering(value: float | None, unit: str = "", digits: int = 3) -> str:
    """Format ``value`` with ``digits`` significant digits and an SI prefix.

    Values outside the prefix range fall back to an e-notation exponent that
    is a multiple of three.

    >>> engineering(2.03e-6, "m")
    '2.03 um'
    """
    if value is None:
        return "-"
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return ("-inf" if value < 0 else "inf") + (f" {unit}" if unit else "")
    if value == 0:
        return f"0 {unit}".rstrip()

    exponent = int(math.floor(math.log10(abs(value))))
    exponent3 = exponent - exponent % 3
    mantissa = value / 10**exponent3
    # Rounding can carry the mantissa to 1000
    decimals = max(0, digits - 1 - (exponent - exponent3))
    text = f"{mantissa:.{decimals}f}"
    if abs(float(text)) >= 1000:
        exponent3 += 3
        mantissa = value / 10**exponent3
        text = f"{mantissa:.{digits - 1}f}"

    if unit and exponent3 in _PREFIXES:
        return f"{text} {_PREFIXES[exponent3]}{unit}"
    suffix = f"e{exponent3}" if exponent3 else ""
    return f"{text}{suffix} {unit}".rstrip()


def render_table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    """Left-aligned plain-text table with a dashed rule under the header."""
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))

    def line(cells: Sequence[str]) -> str:
        return "  ".join(cell.ljust(width) for cell, width in zip(cells, widths)).rstrip()

    out = [line(headers), line(["-" * w for w in widths])]
    out.extend(line(row) for row in rows)
    return "\n".join(out)
