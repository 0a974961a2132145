"""Pure-Python growth kernel.

Same contract as the compiled extension ``pixtile._growth``; selected when
the extension is unavailable or explicitly requested.  See
``pixtile.engine`` for the public simulation API.

The kernel grows an assembly from a seed at (0, 0).  Empty sites are
re-examined whenever a neighbor is placed, which is the only event that
can change their eligible tile set; attachment strength only grows as the
assembly does, so a site once eligible stays eligible.  Site selection is
either lexicographic (a lazy min-heap over sites that became eligible) or
first-became-frontier order (a scan over an append-only queue).
"""

from heapq import heappop, heappush

QUIESCENT, STEP_CAP, BOX_FULL, NONDET = 0, 1, 2, 3

# (own edge, facing edge of the neighbor, row delta, col delta)
_DIRS = ((0, 2, 1, 0), (1, 3, 0, -1), (2, 0, -1, 0), (3, 1, 0, 1))


def grow(edges, strengths, tau, seed_id, max_steps, box, lexicographic,
         fail_on_nondet):
    """Run the attachment loop; returns (rows, cols, tids, halted, nondet).

    ``edges`` is an indexable of (N, E, S, W) glue tuples per tile id;
    ``strengths[g]`` is the strength of glue label ``g`` (index 0 unused,
    zero).  ``box`` is an inclusive (min_row, max_row, min_col, max_col)
    bound or None.  ``halted`` is one of the module's status codes and
    ``nondet`` lists (row, col, candidate ids) for every site that ever
    admitted two or more tile types.
    """
    index = ({}, {}, {}, {})
    for tid, te in enumerate(edges):
        for d in range(4):
            g = te[d]
            if g:
                index[d].setdefault(g, []).append(tid)

    occupied = {(0, 0): seed_id}
    heap = []     # lexicographic mode: sites with a nonempty eligible set
    queue = []    # insertion mode: sites in first-became-frontier order
    seen = set()
    nondet = {}
    events = []

    if box is not None:
        rmin, rmax, cmin, cmax = box
        area = (rmax - rmin + 1) * (cmax - cmin + 1)

    def in_box(r, c):
        return box is None or (rmin <= r <= rmax and cmin <= c <= cmax)

    def eligible(r, c):
        cands = []
        for own, facing, dr, dc in _DIRS:
            u = occupied.get((r + dr, c + dc))
            if u is None:
                continue
            g = edges[u][facing]
            if g:
                for tid in index[own].get(g, ()):
                    if tid not in cands:
                        cands.append(tid)
        out = []
        for tid in cands:
            te = edges[tid]
            total = 0
            for own, facing, dr, dc in _DIRS:
                u = occupied.get((r + dr, c + dc))
                if u is not None:
                    g = te[own]
                    if g and g == edges[u][facing]:
                        total += strengths[g]
            if total >= tau:
                out.append(tid)
        out.sort()
        return out

    def activate(r, c):
        """Re-examine an empty site after its neighborhood changed.

        Returns True when a nondeterministic site must abort the run.
        """
        if (r, c) in occupied or not in_box(r, c):
            return False
        if not lexicographic and (r, c) not in seen:
            seen.add((r, c))
            queue.append((r, c))
        el = eligible(r, c)
        if len(el) >= 2:
            nondet[(r, c)] = tuple(el)
            if fail_on_nondet:
                return True
        if lexicographic and el and (r, c) not in seen:
            seen.add((r, c))
            heappush(heap, (r, c))
        return False

    def select():
        if lexicographic:
            while heap:
                site = heappop(heap)
                if site not in occupied:
                    return site
            return None
        for site in queue:
            if site not in occupied and eligible(*site):
                return site
        return None

    halted = None
    for _, _, dr, dc in _DIRS:
        if activate(dr, dc):
            halted = NONDET
    steps = 0
    while halted is None:
        site = select()
        if site is None:
            if box is not None and len(occupied) == area:
                halted = BOX_FULL
            else:
                halted = QUIESCENT
            break
        if steps >= max_steps:
            halted = STEP_CAP
            break
        r, c = site
        el = eligible(r, c)
        if len(el) >= 2:
            nondet[(r, c)] = tuple(el)
            if fail_on_nondet:
                halted = NONDET
                break
        tid = el[0]
        occupied[(r, c)] = tid
        events.append((r, c, tid))
        steps += 1
        for _, _, dr, dc in _DIRS:
            if activate(r + dr, c + dc):
                halted = NONDET
                break

    rows = [e[0] for e in events]
    cols = [e[1] for e in events]
    tids = [e[2] for e in events]
    report = sorted((r, c, cands) for (r, c), cands in nondet.items())
    return rows, cols, tids, halted, report
