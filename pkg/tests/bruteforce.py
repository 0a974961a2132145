"""Independent brute-force assembler used as a simulation oracle.

Re-derives growth from nothing but the attachment rule: at every step it
rescans the whole frontier, tries every tile type at every frontier site
by direct strength summation, records any site that admits two or more
tile types, and fills the lexicographically first eligible site.  It
shares no code or incremental state with the engine kernels, so agreement
between the two is meaningful.
"""

import numpy as np

DIRS = ((0, 2, 1, 0), (1, 3, 0, -1), (2, 0, -1, 0), (3, 1, 0, 1))


def eligible_at(system, placed, site):
    """Tile ids attachable at ``site`` by scanning every tile type."""
    out = []
    r, c = site
    for tile in system.tiles:
        total = 0
        for own, facing, dr, dc in DIRS:
            u = placed.get((r + dr, c + dc))
            if u is None:
                continue
            glue = tile.edges[own]
            if glue != 0 and glue == system.tiles[u].edges[facing]:
                total += system.strength(glue)
        if total >= system.temperature:
            out.append(tile.id)
    return out


def brute_assemble(system, max_steps=200_000):
    """Grow to quiescence by full rescans; returns (placed, nondet).

    ``placed`` maps (row, col) to tile id; ``nondet`` lists every
    (site, candidate ids) observation with two or more candidates.
    """
    edges = np.array([t.edges for t in system.tiles], dtype=np.int64)
    strength = np.zeros(int(edges.max()) + 2, dtype=np.int64)
    for g, s in enumerate(system.strengths, start=1):
        if g < strength.size:
            strength[g] = s
    edge_strength = strength[edges]  # [T, 4]
    tau = system.temperature
    placed = {(0, 0): system.seed_id}
    nondet = []
    for _ in range(max_steps):
        frontier = sorted({(r + dr, c + dc)
                           for (r, c) in placed
                           for _, _, dr, dc in DIRS} - placed.keys())
        nb = np.full((len(frontier), 4), -1, dtype=np.int64)
        for i, (r, c) in enumerate(frontier):
            for d, (_, facing, dr, dc) in enumerate(DIRS):
                u = placed.get((r + dr, c + dc))
                if u is not None:
                    nb[i, d] = system.tiles[u].edges[facing]
        match = (edges[None, :, :] == nb[:, None, :]) & (nb[:, None, :] > 0)
        totals = (match * edge_strength[None, :, :]).sum(axis=2)
        eligible = totals >= tau
        per_site = eligible.sum(axis=1)
        hot = np.nonzero(per_site)[0]
        if hot.size == 0:
            return placed, nondet
        for i in np.nonzero(per_site >= 2)[0]:
            nondet.append((frontier[int(i)],
                           tuple(int(t) for t in np.nonzero(eligible[i])[0])))
        first = int(hot[0])
        tid = int(np.nonzero(eligible[first])[0][0])
        placed[frontier[first]] = tid
    raise AssertionError("brute-force assembler hit its step cap")
