"""Plain-text facet lists.

One facet per line, whitespace separated labels, ``#`` starts a comment line.
A line reading ``---`` separates Δ from Γ in a relative complex file. A line
holding only ``{}`` stands for the empty face.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .complex import (
    ComplexError,
    Face,
    RelativeComplex,
    SimplicialComplex,
    relative,
)

SEPARATOR = "---"


class ParseError(ComplexError):
    def __init__(self, msg: str, line: int | None = None, source: str | None = None):
        where = f"{source or '<input>'}:{line}: " if line is not None else ""
        super().__init__(where + msg)
        self.line = line


def _parse_blocks(text: str, source: str | None) -> list[list[Face]]:
    blocks: list[list[Face]] = [[]]
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line == SEPARATOR:
            if len(blocks) == 2:
                raise ParseError("more than one '---' separator", lineno, source)
            blocks.append([])
            continue
        labels = [] if line == "{}" else line.split()
        try:
            blocks[-1].append(Face(labels))
        except ComplexError as exc:
            raise ParseError(str(exc), lineno, source) from None
    return blocks


def parse(text: str, source: str | None = None) -> SimplicialComplex | RelativeComplex:
    blocks = _parse_blocks(text, source)
    if not blocks[0]:
        raise ParseError("no facets", source=source)
    total = SimplicialComplex(blocks[0])
    if len(blocks) == 1:
        return total
    removed = SimplicialComplex(blocks[1]) if blocks[1] else None
    try:
        return relative(total, removed)
    except ComplexError as exc:
        raise ParseError(str(exc), source=source) from None


def parse_complex(text: str, source: str | None = None) -> SimplicialComplex:
    c = parse(text, source)
    if isinstance(c, RelativeComplex):
        raise ParseError("expected an absolute complex, found a '---' separator", source=source)
    return c


def read(path: str | Path) -> SimplicialComplex | RelativeComplex:
    p = Path(path)
    return parse(p.read_text(), str(p))


def _lines(facets: Iterable[Face]) -> list[str]:
    return [" ".join(str(v) for v in f) if f else "{}" for f in facets]


def format_complex(c: SimplicialComplex | RelativeComplex, header: str | None = None) -> str:
    """Serialize deterministically: facets in canonical order."""
    out = [f"# {header}"] if header else []
    if isinstance(c, RelativeComplex):
        out += _lines(c.total.facets)
        out.append(SEPARATOR)
        if c.removed is not None:
            out += _lines(c.removed.facets)
    else:
        out += _lines(c.facets)
    return "\n".join(out) + "\n"


def write(c: SimplicialComplex | RelativeComplex, path: str | Path, header: str | None = None) -> None:
    Path(path).write_text(format_complex(c, header))
