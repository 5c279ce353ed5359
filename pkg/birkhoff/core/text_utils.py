from typing import Any, Dict, List, Sequence, Union

import click


STYLE: Dict[str, Dict[str, Any]] = {
    "heading": {"fg": "green"},
    "key": {"fg": "bright_white", "bold": True},
    "pass": {"fg": "bright_green", "bold": True},
    "fail": {"fg": "bright_red", "bold": True},
    "unmet": {"fg": "yellow"},
    "degree": {"fg": "bright_blue"},
    "value": {"fg": "white"},
}


def format_text(text: str, style: Dict[str, Any]) -> str:
    """Return the formatted text with the given style."""
    return click.style(
        text, fg=style["fg"], bold=style.get("bold", False), dim=style.get("dim", False)
    )


def format_verdict(ok: bool) -> str:
    if ok:
        return format_text("pass", STYLE["pass"])
    return format_text("FAIL", STYLE["fail"])


def pluralize(name: str, nb: int, plural: Union[str, None] = None) -> str:
    # Note: 0 is plural in english
    if nb == 1:
        return name
    return plural or (name + "s")


def format_table(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    """Align `rows` under `headers`, floats printed with their shortest repr"""
    cells: List[List[str]] = [list(headers)]
    for row in rows:
        cells.append([repr(x) if isinstance(x, float) else str(x) for x in row])
    widths = [max(len(line[col]) for line in cells) for col in range(len(headers))]
    lines = [
        "  ".join(cell.rjust(width) for cell, width in zip(line, widths)).rstrip()
        for line in cells
    ]
    return "\n".join(lines)
