"""Text format for tile systems: a bit-exact emitter and a tolerant parser.

Canonical form (UTF-8, LF line endings, ``.tile`` extension)::

    num tile types=11
    num binding types=8
    binding strengths={1 1 1 1 2 2 2 2}
    seed=0
    temperature=2
    %seed tile
    {5 0 0 5}(-33554177)
    ...

``Gse=<v>`` and ``Gmc=<v>`` lines may follow ``temperature``; they are
inert pass-through values.  Each tile line is exactly ``{n e s w}(color)``
with single spaces inside the braces and the color as a signed decimal.
Tile ids are implicit: the n-th record is tile n-1.  ``%`` starts a
comment; comments are preserved and re-emitted in place.

The parser also accepts friendlier input: arbitrary whitespace inside and
around braces, blank lines, comments anywhere (including at the end of a
line), and a missing header.  A headerless file gets defaults, each
recorded as a warning: tile and glue counts inferred from the body,
strengths 1 for the lower half of the glue range and 2 for the upper half,
the first tile as seed, and temperature 2.  Anything else is rejected
with a positioned error.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .model import SystemValidationError, TileSystem, TileType, validate_system

__all__ = [
    "TileFileDoc",
    "TileFileError",
    "TileRecord",
    "canonicalize",
    "emit",
    "parse",
]

# Guards against absurd declarations blowing up allocations.
MAX_GLUE_LABEL = 10_000_000
MAX_COLOR = 2 ** 31

_HEADER_KEYS = ("num tile types", "num binding types", "binding strengths",
                "seed", "temperature", "Gse", "Gmc")


class TileFileError(ValueError):
    """A positioned parse error: ``line`` and ``col`` are 1-based."""

    def __init__(self, message: str, line: int, col: int):
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: {message}")


class TileRecord(NamedTuple):
    edges: tuple[int, int, int, int]
    color: int
    line: int


@dataclass(frozen=True)
class TileFileDoc:
    """Parsed document details, including defaults applied and warnings."""

    num_tile_types: int
    num_binding_types: int
    binding_strengths: tuple[int, ...]
    seed_index: int
    temperature: int
    gse: float | None
    gmc: float | None
    records: tuple[TileRecord, ...]
    comments: tuple[tuple[int, str], ...]  # (tile index preceded, text)
    warnings: tuple[str, ...]


def emit(system: TileSystem) -> str:
    """Canonical text for a system; raises SystemValidationError if invalid."""
    violations = validate_system(system)
    if violations:
        raise SystemValidationError(violations)
    lines = [
        f"num tile types={len(system.tiles)}",
        f"num binding types={len(system.strengths)}",
        "binding strengths={" + " ".join(map(str, system.strengths)) + "}",
        f"seed={system.seed_id}",
        f"temperature={system.temperature}",
    ]
    if system.gse is not None:
        lines.append(f"Gse={system.gse!r}")
    if system.gmc is not None:
        lines.append(f"Gmc={system.gmc!r}")
    by_index: dict[int, list[str]] = {}
    for index, text in system.comments:
        by_index.setdefault(index, []).append(text)
    for i, tile in enumerate(system.tiles):
        for text in by_index.get(i, ()):
            lines.append(f"%{text}")
        n, e, s, w = tile.edges
        lines.append(f"{{{n} {e} {s} {w}}}({tile.color})")
    for text in by_index.get(len(system.tiles), ()):
        lines.append(f"%{text}")
    return "\n".join(lines) + "\n"


def canonicalize(text: str | bytes) -> str:
    """Parse then re-emit; idempotent, and the identity on canonical input."""
    system, _ = parse(text)
    return emit(system)


class _Cursor:
    """Character scanner over one line with 1-based error positions."""

    def __init__(self, text: str, line_no: int):
        self.text = text
        self.pos = 0
        self.line_no = line_no

    def error(self, message: str) -> TileFileError:
        return TileFileError(message, self.line_no, self.pos + 1)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, char: str, what: str) -> None:
        if self.peek() != char:
            raise self.error(f"expected {what}")
        self.pos += 1

    def read_int(self, what: str) -> int:
        self.skip_ws()
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        while "0" <= self.peek() <= "9":
            self.pos += 1
        token = self.text[start:self.pos]
        if not token or token == "-":
            self.pos = start
            raise self.error(f"expected {what}")
        return int(token)


def _parse_record(cur: _Cursor) -> TileRecord:
    cur.skip_ws()
    cur.expect("{", "'{'")
    glues: list[int] = []
    while True:
        cur.skip_ws()
        if cur.peek() == "}":
            cur.pos += 1
            break
        if cur.peek() == "" or cur.peek() == "(":
            raise cur.error("expected '}'")
        at = cur.pos
        glue = cur.read_int("integer glue label")
        if glue < 0:
            cur.pos = at
            raise cur.error("glue labels must be non-negative")
        if glue > MAX_GLUE_LABEL:
            cur.pos = at
            raise cur.error(f"glue label exceeds supported maximum "
                            f"{MAX_GLUE_LABEL}")
        glues.append(glue)
        if len(glues) > 4:
            cur.pos = at
            raise cur.error("expected 4 glues, found a fifth")
    if len(glues) != 4:
        raise cur.error(f"expected 4 glues, got {len(glues)}")
    cur.skip_ws()
    cur.expect("(", "'(' before color")
    color = cur.read_int("integer color")
    if not -MAX_COLOR <= color < MAX_COLOR:
        raise cur.error("color outside signed 32-bit range")
    cur.skip_ws()
    cur.expect(")", "')' after color")
    cur.skip_ws()
    if cur.peek() not in ("", "%"):
        raise cur.error("unexpected trailing characters after tile record")
    return TileRecord((glues[0], glues[1], glues[2], glues[3]), color,
                      cur.line_no)


def _parse_strengths(cur: _Cursor) -> tuple[int, ...]:
    cur.skip_ws()
    cur.expect("{", "'{' to open the strengths list")
    values: list[int] = []
    while True:
        cur.skip_ws()
        if cur.peek() == "}":
            cur.pos += 1
            break
        if cur.peek() == "":
            raise cur.error("expected '}'")
        at = cur.pos
        value = cur.read_int("integer strength")
        if value < 0:
            cur.pos = at
            raise cur.error("strengths must be non-negative")
        values.append(value)
    cur.skip_ws()
    if cur.peek() not in ("", "%"):
        raise cur.error("unexpected trailing characters after strengths")
    return tuple(values)


def parse(text: str | bytes) -> tuple[TileSystem, TileFileDoc]:
    """Parse tile-file text into a system plus document details.

    Accepts ``bytes`` (decoded as latin-1, so arbitrary binary input
    yields a positioned error rather than a crash).  Comments on their own
    line are preserved; one trailing a record or header line is accepted
    but dropped.  Raises TileFileError on malformed input.
    """
    if isinstance(text, bytes):
        text = text.decode("latin-1")
    header: dict[str, object] = {}
    header_lines: dict[str, int] = {}
    records: list[TileRecord] = []
    comments: list[tuple[int, str]] = []
    warnings: list[str] = []

    lines = text.split("\n")
    for line_no, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        if stripped.startswith("%"):
            comments.append((len(records), stripped[1:].rstrip()))
            continue
        if stripped.startswith("{"):
            records.append(_parse_record(_Cursor(raw, line_no)))
            continue
        eq = raw.find("=")
        if eq < 0:
            cur = _Cursor(raw, line_no)
            cur.skip_ws()
            raise cur.error("expected a tile record, header line or comment")
        key = raw[:eq].strip()
        if key not in _HEADER_KEYS:
            raise TileFileError(f"unknown header key {key!r}", line_no, 1)
        if records:
            raise TileFileError(f"header line {key!r} after tile records",
                                line_no, 1)
        if key in header:
            raise TileFileError(f"duplicate header key {key!r}", line_no, 1)
        header_lines[key] = line_no
        cur = _Cursor(raw, line_no)
        cur.pos = eq + 1
        if key == "binding strengths":
            header[key] = _parse_strengths(cur)
        elif key in ("Gse", "Gmc"):
            cur.skip_ws()
            token = raw[cur.pos:].split("%")[0].strip()
            try:
                header[key] = float(token)
            except ValueError:
                raise cur.error(f"expected a number for {key}") from None
        else:
            value = cur.read_int(f"integer value for {key!r}")
            cur.skip_ws()
            if cur.peek() not in ("", "%"):
                raise cur.error(f"unexpected trailing characters after {key}")
            header[key] = value

    if not records:
        raise TileFileError("no tile records found", len(lines), 1)

    max_glue = max((g for rec in records for g in rec.edges), default=0)

    declared_types = header.get("num tile types")
    if declared_types is None:
        warnings.append(f"num tile types missing; inferred {len(records)}")
    elif declared_types != len(records):
        raise TileFileError(
            f"num tile types={declared_types} but found {len(records)} "
            f"tile records", header_lines["num tile types"], 1)

    strengths = header.get("binding strengths")
    num_glues = header.get("num binding types")
    if num_glues is None and strengths is not None:
        num_glues = len(strengths)
        warnings.append(f"num binding types missing; inferred {num_glues}")
    elif num_glues is None:
        num_glues = max_glue
        warnings.append(f"num binding types missing; inferred {num_glues}")
    elif num_glues < 0 or num_glues > MAX_GLUE_LABEL:
        raise TileFileError("num binding types outside supported range",
                            header_lines["num binding types"], 1)
    if strengths is None:
        half = num_glues // 2
        strengths = tuple(1 if g <= half else 2
                          for g in range(1, num_glues + 1))
        warnings.append("binding strengths missing; defaulted to 1 for the "
                        "lower half of the glue range and 2 for the upper")
    elif len(strengths) != num_glues:
        raise TileFileError(
            f"binding strengths lists {len(strengths)} entries but "
            f"num binding types={num_glues}",
            header_lines["binding strengths"], 1)

    for rec in records:
        for glue in rec.edges:
            if glue > num_glues:
                raise TileFileError(
                    f"glue {glue} exceeds declared binding count {num_glues}",
                    rec.line, 1)

    seed_index = header.get("seed")
    if seed_index is None:
        seed_index = 0
        warnings.append("seed missing; defaulted to the first tile")
    temperature = header.get("temperature")
    if temperature is None:
        temperature = 2
        warnings.append("temperature missing; defaulted to 2")

    tiles = tuple(TileType(i, rec.edges, rec.color)
                  for i, rec in enumerate(records))
    system = TileSystem(
        tiles=tiles,
        strengths=tuple(strengths),
        seed_id=seed_index,
        temperature=temperature,
        gse=header.get("Gse"),
        gmc=header.get("Gmc"),
        comments=tuple(comments),
    )
    doc = TileFileDoc(
        num_tile_types=len(records),
        num_binding_types=num_glues,
        binding_strengths=tuple(strengths),
        seed_index=seed_index,
        temperature=temperature,
        gse=header.get("Gse"),
        gmc=header.get("Gmc"),
        records=tuple(records),
        comments=tuple(comments),
        warnings=tuple(warnings),
    )
    return system, doc
