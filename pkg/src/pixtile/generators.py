"""Tile-system generators for cyclic pixel patterns, plus closed-form oracles.

Three families are emitted, all growing an N x N square from a seed by
cooperative temperature-2 attachment:

* uniform shift: every row is the previous row cyclically shifted by a
  constant ``S``;
* per-row (non-uniform) shift: row ``r`` is shifted from row ``r - 1`` by
  ``S[r]``, so row ``r`` equals the base row shifted by the running sum
  ``S[1] + ... + S[r]`` modulo N;
* row transformation: the per-row system with the base row pre-rotated by
  a shuffle value ``rotate_k``.

Every family uses the same scaffold: a seed tile ``{N+1 0 0 N+1}``, a
boundary row ``{X, Y, 0, Y+1}`` with ``Y = X + N - 1`` for ``2 <= X <= N``,
a boundary column ``{Y+1, 0, Y, T}`` whose W glue carries the row's pattern
input, and rule tiles ``{Op, T, X, Op}`` that read the south value X and
east value T and write ``Op`` on their N and W edges.  Pattern glues
``1..N`` have strength 1, boundary glues ``N+1..2N`` strength 2, and the
temperature is 2, so boundary tiles attach by one strong bond and rule
tiles by two cooperative weak ones.

The tile value displayed on a face (and tested by the oracles below) is
always the tile's N glue.

Colors cycle through a fixed two-entry palette keyed by value parity so
that renders alternate colors along each row; the palette extends to any N
unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import TileSystem, TileType

__all__ = [
    "ODD_COLOR",
    "EVEN_COLOR",
    "GeneratorLayout",
    "ShiftSpec",
    "color_for_value",
    "expected_tile_count",
    "gen_nonuniform",
    "gen_transform",
    "gen_uniform",
    "nonuniform_oracle",
    "uniform_oracle",
    "wrap1",
]

#: Signed 32-bit ARGB for odd tile values (0xFE0000FF, blue).
ODD_COLOR = -33554177
#: Signed 32-bit ARGB for even tile values (0xFEFF0000, red).
EVEN_COLOR = -16842752

SEED_COMMENT = "seed tile"
ROW_COMMENT = "First row. (bottom boundary row)"
COLUMN_COMMENT = "First column. (Right most column)"
RULE_COMMENT = "Rule tiles"


def color_for_value(value: int) -> int:
    """Palette entry for a tile value: odd values blue, even values red."""
    return ODD_COLOR if value % 2 else EVEN_COLOR


def wrap1(x: int, n: int) -> int:
    """Reduce ``x`` into the 1-based cyclic range ``1..n``.

    Equivalent to repeatedly adding or subtracting ``n`` until the value
    lands in ``1..n``; uses a mathematical (always non-negative) modulus,
    so negative inputs are fine.
    """
    if n < 1:
        raise ValueError(f"modulus must be >= 1, got {n}")
    return (x - 1) % n + 1


@dataclass(frozen=True)
class ShiftSpec:
    """Shift description for an N-wide pattern.

    ``kind`` is "uniform" (scalar shift in ``uniform_shift``) or "per_row"
    (``row_shifts`` holds one shift per row transition, length N-1).
    """

    n: int
    kind: str
    uniform_shift: int | None = None
    row_shifts: tuple[int, ...] | None = None

    @classmethod
    def uniform(cls, n: int, shift: int) -> "ShiftSpec":
        return cls(n=n, kind="uniform", uniform_shift=shift)

    @classmethod
    def per_row(cls, n: int, shifts: tuple[int, ...] | list[int]) -> "ShiftSpec":
        shifts = tuple(shifts)
        if len(shifts) != n - 1:
            raise ValueError(
                f"per-row spec needs {n - 1} shifts, got {len(shifts)}")
        return cls(n=n, kind="per_row", row_shifts=shifts)


@dataclass(frozen=True)
class GeneratorLayout:
    """Role bookkeeping for a generated system.

    ``roles[tile_id]`` is one of "seed", "base_row", "base_column", "rule".
    ``rule_io[tile_id]`` is the (south input X, east input T, output Op)
    triple for rule tiles.
    """

    roles: tuple[str, ...]
    rule_io: dict[int, tuple[int, int, int]]


def _check_n(n: int) -> None:
    if n < 2:
        raise ValueError(f"pattern width must be >= 2, got {n}")


def _scaffold(n: int, base_row_values, column_inputs):
    """Seed, boundary row and boundary column tiles shared by all families.

    ``base_row_values[c]`` is the displayed value at boundary-row column
    ``c + 1``; ``column_inputs[r]`` is the W glue of the boundary-column
    tile at row ``r + 1``.
    """
    tiles = [TileType(0, (n + 1, 0, 0, n + 1), color_for_value(n + 1), str(n + 1))]
    roles = ["seed"]
    for c in range(1, n):
        x = base_row_values[c - 1]
        y = c + n  # positional boundary glue, E side
        tiles.append(TileType(len(tiles), (x, y, 0, y + 1),
                              color_for_value(x), str(x)))
        roles.append("base_row")
    for r in range(1, n):
        top = n + 1 + r
        tiles.append(TileType(len(tiles), (top, 0, top - 1, column_inputs[r - 1]),
                              color_for_value(top), str(top)))
        roles.append("base_column")
    return tiles, roles


def _rule_group(n: int, shift: int, start_id: int):
    """The N rule tiles for one shift value, ordered by output value."""
    tiles = []
    io = {}
    for op in range(1, n + 1):
        x = wrap1(op + shift, n)
        t = wrap1(op - 1, n)
        tid = start_id + op - 1
        tiles.append(TileType(tid, (op, t, x, op), color_for_value(op), str(op)))
        io[tid] = (x, t, op)
    return tiles, io


def _assemble(n: int, tiles, roles, rule_io) -> tuple[TileSystem, GeneratorLayout]:
    strengths = tuple(1 if g <= n else 2 for g in range(1, 2 * n + 1))
    comments = (
        (0, SEED_COMMENT),
        (1, ROW_COMMENT),
        (n, COLUMN_COMMENT),
        (2 * n - 1, RULE_COMMENT),
    )
    system = TileSystem(tiles=tuple(tiles), strengths=strengths, seed_id=0,
                        temperature=2, comments=comments)
    return system, GeneratorLayout(roles=tuple(roles), rule_io=rule_io)


def gen_uniform(n: int, shift: int) -> tuple[TileSystem, GeneratorLayout]:
    """Tile system whose rows each shift the previous row by ``shift``.

    Emits exactly ``3n - 1`` tile types: the seed, ``n - 1`` boundary-row
    tiles, ``n - 1`` boundary-column tiles whose inputs follow
    ``T(r) = wrap1(T(r-1) - shift)`` from ``T(0) = 1``, and ``n`` rule
    tiles ``{Op, T, X, Op}`` with ``X = wrap1(Op + shift)`` and
    ``T = wrap1(Op - 1)``.
    """
    _check_n(n)
    shift = shift % n
    column_inputs = []
    t = 1
    for _ in range(1, n):
        t = wrap1(t - shift, n)
        column_inputs.append(t)
    tiles, roles = _scaffold(n, list(range(2, n + 1)), column_inputs)
    rules, io = _rule_group(n, shift, len(tiles))
    tiles.extend(rules)
    roles.extend(["rule"] * n)
    return _assemble(n, tiles, roles, io)


def gen_nonuniform(n: int, shifts) -> tuple[TileSystem, GeneratorLayout]:
    """Tile system with an individual shift per row transition.

    ``shifts`` must have length ``n - 1``; entry ``r - 1`` is the shift
    applied between rows ``r - 1`` and ``r``.  One rule-tile group is
    emitted per distinct shift value modulo n (duplicates would collide
    tile-for-tile, so they are emitted once), giving
    ``1 + 2(n - 1) + n * d`` tile types where d counts the distinct values.
    """
    _check_n(n)
    shifts = [s % n for s in shifts]
    if len(shifts) != n - 1:
        raise ValueError(f"expected {n - 1} shifts, got {len(shifts)}")
    return _per_row_system(n, shifts, rotate_k=0)


def gen_transform(n: int, shifts, rotate_k: int) -> tuple[TileSystem, GeneratorLayout]:
    """Per-row shift system with the base row pre-rotated by ``rotate_k``.

    The boundary-row values and boundary-column inputs are rotated; the
    rule groups are value-generic and unchanged.  The assembled grid
    equals the unrotated assembly with every pattern value decreased by
    ``rotate_k`` (cyclically), and ``rotate_k = 0`` reproduces
    ``gen_nonuniform`` exactly.
    """
    _check_n(n)
    shifts = [s % n for s in shifts]
    if len(shifts) != n - 1:
        raise ValueError(f"expected {n - 1} shifts, got {len(shifts)}")
    return _per_row_system(n, shifts, rotate_k=rotate_k % n)


def _per_row_system(n: int, shifts: list[int], rotate_k: int):
    base_row = [wrap1(c + 1 - rotate_k, n) for c in range(1, n)]
    column_inputs = []
    t = wrap1(1 - rotate_k, n)
    for r in range(1, n):
        t = wrap1(t - shifts[r - 1], n)
        column_inputs.append(t)
    tiles, roles = _scaffold(n, base_row, column_inputs)
    io: dict[int, tuple[int, int, int]] = {}
    seen: list[int] = []
    for s in shifts:
        if s in seen:
            continue
        seen.append(s)
        rules, group_io = _rule_group(n, s, len(tiles))
        tiles.extend(rules)
        roles.extend(["rule"] * n)
        io.update(group_io)
    return _assemble(n, tiles, roles, io)


def expected_tile_count(spec: ShiftSpec) -> int:
    """Number of tile types the matching generator emits.

    Uniform: ``3n - 1``.  Per-row: ``1 + 2(n - 1) + n * d`` with d the
    number of distinct shift values modulo n.
    """
    if spec.kind == "uniform":
        return 3 * spec.n - 1
    distinct = len({s % spec.n for s in spec.row_shifts})
    return 1 + 2 * (spec.n - 1) + spec.n * distinct


def _check_coords(n: int, row: int, col: int) -> None:
    if not (0 <= row < n and 0 <= col < n):
        raise ValueError(
            f"coordinates ({row}, {col}) outside the {n}x{n} square")


def uniform_oracle(n: int, shift: int, row: int, col: int) -> int:
    """Closed-form displayed value at (row, col) of the uniform assembly.

    Seed corner shows ``n + 1``; the boundary row shows ``col + 1``; the
    boundary column shows ``n + 1 + row``; interior sites show
    ``wrap1(col + 1 - row * shift, n)``.
    """
    _check_coords(n, row, col)
    if row == 0:
        return n + 1 if col == 0 else col + 1
    if col == 0:
        return n + 1 + row
    return wrap1(col + 1 - row * shift, n)


def nonuniform_oracle(n: int, shifts, row: int, col: int) -> int:
    """Closed-form displayed value for the per-row shift assembly.

    Interior sites show the base-row value displaced by the cumulative
    shift ``wrap1(col + 1 - sum(shifts[:row]), n)``; boundaries are as in
    ``uniform_oracle``.
    """
    _check_coords(n, row, col)
    if row == 0:
        return n + 1 if col == 0 else col + 1
    if col == 0:
        return n + 1 + row
    return wrap1(col + 1 - sum(shifts[:row]), n)
