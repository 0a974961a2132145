"""Assembly simulator: grows a tile system from its seed to completion.

Growth follows the cooperative attachment rule: a tile may occupy an empty
site once the summed strength of its matched edges reaches the system
temperature.  Site selection is deterministic; the default lexicographic
order makes repeated runs reproducible, and for directed systems the final
assembly is independent of the order (covered by tests).

The stepping loop runs in one of two interchangeable kernels: a compiled
Cython extension (``pixtile._growth``) and a pure-Python fallback
(``pixtile._growth_py``).  The extension is used when importable unless
the ``PIXTILE_PURE_PYTHON`` environment variable is set to a non-empty
value other than ``0``; individual calls can override via ``backend=``.

The optional event log is one line per attachment, ``step row col
tile_id``, space-separated and newline-terminated.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from time import perf_counter

import numpy as np

from .model import (
    ADJACENCY,
    Assembly,
    Site,
    SystemValidationError,
    TileSystem,
    attach_strength,
    validate_system,
)
from . import _growth_py

try:
    from . import _growth  # compiled extension; optional
except ImportError:  # pragma: no cover - depends on the build
    _growth = None

__all__ = [
    "NondeterminismError",
    "SimConfig",
    "SimResult",
    "available_backends",
    "check_directed",
    "default_backend",
    "eligible_tiles",
    "event_log_text",
    "frontier_sites",
    "run",
]

HALT_NAMES = {
    _growth_py.QUIESCENT: "quiescent",
    _growth_py.STEP_CAP: "step-cap",
    _growth_py.BOX_FULL: "box-full",
}

ON_NONDET_POLICIES = ("fail", "pick-lowest-tile-id")
SITE_ORDERS = ("lexicographic", "insertion")


class NondeterminismError(RuntimeError):
    """A site admitted two or more tile types under the fail policy."""

    def __init__(self, site: Site, candidates: tuple[int, ...]):
        self.site = site
        self.candidates = candidates
        super().__init__(
            f"site {tuple(site)} admits tiles {list(candidates)}")


@dataclass(frozen=True)
class SimConfig:
    """Simulation controls.

    ``bounding_box`` is inclusive (min_row, max_row, min_col, max_col) and
    must contain the seed site when given.  Without a box, halting is
    guaranteed by ``max_steps``.
    """

    max_steps: int = 1_000_000
    bounding_box: tuple[int, int, int, int] | None = None
    on_nondeterminism: str = "fail"
    site_order: str = "lexicographic"


@dataclass
class SimResult:
    """Outcome of a run.

    ``steps`` counts attachments (the seed is not an attachment);
    ``events`` holds one (row, col, tile_id) triple per attachment in
    placement order; ``nondeterministic_sites`` lists every site that ever
    admitted two or more tile types, with the candidate ids.
    """

    assembly: Assembly
    steps: int
    halted_reason: str
    nondeterministic_sites: tuple[tuple[Site, tuple[int, ...]], ...]
    wall_time: float
    events: tuple[tuple[int, int, int], ...] = field(default=())


def available_backends() -> tuple[str, ...]:
    return ("cython", "python") if _growth is not None else ("python",)


def default_backend() -> str:
    forced = os.environ.get("PIXTILE_PURE_PYTHON", "")
    if _growth is None or forced not in ("", "0"):
        return "python"
    return "cython"


def _kernel_inputs(system: TileSystem, backend: str):
    if backend == "cython":
        edges = np.ascontiguousarray(
            [t.edges for t in system.tiles], dtype=np.intc)
        strengths = np.ascontiguousarray(
            (0,) + system.strengths, dtype=np.intc)
        return _growth, edges, strengths
    edges = tuple(t.edges for t in system.tiles)
    strengths = (0,) + system.strengths
    return _growth_py, edges, strengths


def _check_config(cfg: SimConfig) -> None:
    if cfg.max_steps < 1:
        raise ValueError(f"max_steps must be >= 1, got {cfg.max_steps}")
    if cfg.on_nondeterminism not in ON_NONDET_POLICIES:
        raise ValueError(f"unknown nondeterminism policy "
                         f"{cfg.on_nondeterminism!r}")
    if cfg.site_order not in SITE_ORDERS:
        raise ValueError(f"unknown site order {cfg.site_order!r}")
    if cfg.bounding_box is not None:
        rmin, rmax, cmin, cmax = cfg.bounding_box
        if rmin > rmax or cmin > cmax:
            raise ValueError(f"empty bounding box {cfg.bounding_box}")
        if not (rmin <= 0 <= rmax and cmin <= 0 <= cmax):
            raise ValueError(
                f"bounding box {cfg.bounding_box} does not contain the seed")


def frontier_sites(asm: Assembly,
                   box: tuple[int, int, int, int] | None = None) -> set[Site]:
    """Empty sites 4-adjacent to the assembly, clipped to ``box`` if given."""
    out: set[Site] = set()
    for site in asm.placed:
        for _, _, dr, dc in ADJACENCY:
            nb = Site(site.row + dr, site.col + dc)
            if nb in asm.placed:
                continue
            if box is not None:
                rmin, rmax, cmin, cmax = box
                if not (rmin <= nb.row <= rmax and cmin <= nb.col <= cmax):
                    continue
            out.add(nb)
    return out


def eligible_tiles(system: TileSystem, asm: Assembly, site: Site) -> list[int]:
    """Ids of tiles attachable at ``site``, ascending.

    Raises ValueError when the site is occupied.
    """
    if site in asm.placed:
        raise ValueError(f"site {tuple(site)} is already occupied")
    tau = system.temperature
    return [t.id for t in system.tiles
            if attach_strength(system, asm, site, t) >= tau]


def run(system: TileSystem, cfg: SimConfig | None = None, *,
        backend: str | None = None) -> SimResult:
    """Grow ``system`` from its seed until quiescence, step cap or full box.

    Each step fills the first frontier site (per ``cfg.site_order``) that
    admits at least one tile.  A site admitting two or more tiles is
    recorded; under the ``fail`` policy it aborts the run with
    NondeterminismError, under ``pick-lowest-tile-id`` the lowest id wins.

    Raises SystemValidationError when the system fails validation.
    """
    if cfg is None:
        cfg = SimConfig()
    _check_config(cfg)
    violations = validate_system(system)
    if violations:
        raise SystemValidationError(violations)
    if backend is None:
        backend = default_backend()
    if backend not in available_backends():
        raise ValueError(f"backend {backend!r} not available "
                         f"(have {available_backends()})")
    kernel, edges, strengths = _kernel_inputs(system, backend)
    fail_fast = cfg.on_nondeterminism == "fail"
    start = perf_counter()
    rows, cols, tids, halted, nondet = kernel.grow(
        edges, strengths, system.temperature, system.seed_id,
        cfg.max_steps, cfg.bounding_box,
        cfg.site_order == "lexicographic", fail_fast)
    wall = perf_counter() - start

    nondet_sites = tuple((Site(r, c), tuple(cands)) for r, c, cands in nondet)
    if halted == _growth_py.NONDET:
        site, cands = nondet_sites[-1]
        raise NondeterminismError(site, cands)

    placed = {Site(0, 0): system.seed_id}
    events = []
    for r, c, t in zip(rows, cols, tids):
        placed[Site(int(r), int(c))] = int(t)
        events.append((int(r), int(c), int(t)))
    return SimResult(
        assembly=Assembly(placed, Site(0, 0)),
        steps=len(events),
        halted_reason=HALT_NAMES[halted],
        nondeterministic_sites=nondet_sites,
        wall_time=wall,
        events=tuple(events),
    )


def check_directed(system: TileSystem, cfg: SimConfig | None = None, *,
                   backend: str | None = None,
                   ) -> tuple[bool, tuple[tuple[Site, tuple[int, ...]], ...]]:
    """Whether a full run never offers a site two tile types.

    Runs to completion regardless of the configured nondeterminism policy
    and reports every offending site with its candidate tile ids.
    """
    if cfg is None:
        cfg = SimConfig()
    probe = SimConfig(max_steps=cfg.max_steps,
                      bounding_box=cfg.bounding_box,
                      on_nondeterminism="pick-lowest-tile-id",
                      site_order=cfg.site_order)
    result = run(system, probe, backend=backend)
    return (not result.nondeterministic_sites, result.nondeterministic_sites)


def event_log_text(result: SimResult) -> str:
    """The attachment log: one ``step row col tile_id`` line per event."""
    return "".join(f"{i} {r} {c} {t}\n"
                   for i, (r, c, t) in enumerate(result.events, start=1))
