# cython: language_level=3
# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled attachment-loop kernel.

Contract identical to pixtile._growth_py (see its docstring); this version
keeps the grid, heap, queue and candidate index in flat C arrays.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memset

QUIESCENT, STEP_CAP, BOX_FULL, NONDET = 0, 1, 2, 3

cdef enum:
    H_QUIESCENT = 0
    H_STEP_CAP = 1
    H_BOX_FULL = 2
    H_NONDET = 3

cdef long long COFF = 1 << 30

# Per direction: own edge, facing edge of the neighbor, row/col deltas.
cdef int[4] OWN = [0, 1, 2, 3]
cdef int[4] FACE = [2, 3, 0, 1]
cdef int[4] DR = [1, 0, -1, 0]
cdef int[4] DC = [0, -1, 0, 1]


cdef inline long long _key(int r, int c) noexcept:
    return ((r + COFF) << 32) | <unsigned int>(c + COFF)


cdef class _Kernel:
    cdef int[:, ::1] edges
    cdef int[::1] strengths
    cdef int ntiles, nglues, tau, seed_id
    cdef long long max_steps
    cdef bint lexi, failfast, has_box
    cdef int rmin, rmax, cmin, cmax
    cdef long long box_area, occupied_count

    # growable window onto the lattice
    cdef int wr0, wc0, wnr, wnc
    cdef int *grid          # tile id, or -1 when empty
    cdef char *flag         # 1 once pushed (lex) / queued (insertion)

    # CSR candidate index: per direction, tiles keyed by that edge's glue
    cdef int *offs          # 4 blocks of (nglues + 2) offsets
    cdef int *ids           # 4 blocks of up to ntiles entries

    # heap (lexicographic) or append-only queue (insertion) of site keys
    cdef long long *sites
    cdef int s_size, s_cap

    cdef int *cand          # scratch, ntiles entries

    cdef int *ev_r
    cdef int *ev_c
    cdef int *ev_t
    cdef int ev_size, ev_cap

    cdef object nondet      # dict: (row, col) -> tuple of candidate ids

    def __cinit__(self):
        self.grid = NULL
        self.flag = NULL
        self.offs = NULL
        self.ids = NULL
        self.sites = NULL
        self.cand = NULL
        self.ev_r = NULL
        self.ev_c = NULL
        self.ev_t = NULL

    def __dealloc__(self):
        free(self.grid)
        free(self.flag)
        free(self.offs)
        free(self.ids)
        free(self.sites)
        free(self.cand)
        free(self.ev_r)
        free(self.ev_c)
        free(self.ev_t)

    cdef int _setup(self, box) except -1:
        cdef int t, d, g, blk, i
        cdef long long cells
        self.nondet = {}
        self.occupied_count = 0
        if box is not None:
            self.has_box = True
            self.rmin, self.rmax, self.cmin, self.cmax = box
            self.box_area = (<long long>(self.rmax - self.rmin + 1)) * \
                            (self.cmax - self.cmin + 1)
            self.wr0, self.wc0 = self.rmin, self.cmin
            self.wnr = self.rmax - self.rmin + 1
            self.wnc = self.cmax - self.cmin + 1
        else:
            self.has_box = False
            self.wr0 = self.wc0 = -8
            self.wnr = self.wnc = 17
        cells = <long long>self.wnr * self.wnc
        self.grid = <int *>malloc(cells * sizeof(int))
        self.flag = <char *>malloc(cells)
        if self.grid == NULL or self.flag == NULL:
            raise MemoryError()
        memset(self.grid, 0xFF, cells * sizeof(int))
        memset(self.flag, 0, cells)

        # candidate index (counting sort into CSR blocks; bucket for glue g
        # in direction d spans ids[offs[d*blk+g] : offs[d*blk+g+1]])
        blk = self.nglues + 2
        self.offs = <int *>malloc(4 * blk * sizeof(int))
        self.ids = <int *>malloc((4 * self.ntiles + 1) * sizeof(int))
        cdef int *cursor = <int *>malloc(4 * blk * sizeof(int))
        if self.offs == NULL or self.ids == NULL or cursor == NULL:
            free(cursor)
            raise MemoryError()
        memset(self.offs, 0, 4 * blk * sizeof(int))
        for t in range(self.ntiles):
            for d in range(4):
                g = self.edges[t, d]
                if 0 < g <= self.nglues:
                    self.offs[d * blk + g + 1] += 1
        for d in range(4):
            for g in range(1, blk):
                self.offs[d * blk + g] += self.offs[d * blk + g - 1]
        for i in range(4 * blk):
            cursor[i] = self.offs[i]
        for t in range(self.ntiles):
            for d in range(4):
                g = self.edges[t, d]
                if 0 < g <= self.nglues:
                    self.ids[d * self.ntiles + cursor[d * blk + g]] = t
                    cursor[d * blk + g] += 1
        free(cursor)

        self.s_cap = 64
        self.s_size = 0
        self.sites = <long long *>malloc(self.s_cap * sizeof(long long))
        self.cand = <int *>malloc((self.ntiles + 1) * sizeof(int))
        self.ev_cap = 256
        self.ev_size = 0
        self.ev_r = <int *>malloc(self.ev_cap * sizeof(int))
        self.ev_c = <int *>malloc(self.ev_cap * sizeof(int))
        self.ev_t = <int *>malloc(self.ev_cap * sizeof(int))
        if (self.sites == NULL or self.cand == NULL or self.ev_r == NULL or
                self.ev_c == NULL or self.ev_t == NULL):
            raise MemoryError()
        return 0

    cdef inline bint _in_box(self, int r, int c) noexcept:
        if not self.has_box:
            return True
        return self.rmin <= r <= self.rmax and self.cmin <= c <= self.cmax

    cdef inline int _get(self, int r, int c) noexcept:
        if (r < self.wr0 or r >= self.wr0 + self.wnr or
                c < self.wc0 or c >= self.wc0 + self.wnc):
            return -1
        return self.grid[(r - self.wr0) * self.wnc + (c - self.wc0)]

    cdef int _grow_window(self, int r, int c) except -1:
        cdef int nr0 = self.wr0, nr1 = self.wr0 + self.wnr - 1
        cdef int nc0 = self.wc0, nc1 = self.wc0 + self.wnc - 1
        cdef int nnr, nnc, i
        cdef long long cells
        cdef int *ngrid
        cdef char *nflag
        if r - 1 < nr0:
            nr0 = r - 1 - self.wnr
        if r + 1 > nr1:
            nr1 = r + 1 + self.wnr
        if c - 1 < nc0:
            nc0 = c - 1 - self.wnc
        if c + 1 > nc1:
            nc1 = c + 1 + self.wnc
        nnr = nr1 - nr0 + 1
        nnc = nc1 - nc0 + 1
        cells = <long long>nnr * nnc
        ngrid = <int *>malloc(cells * sizeof(int))
        nflag = <char *>malloc(cells)
        if ngrid == NULL or nflag == NULL:
            free(ngrid)
            free(nflag)
            raise MemoryError()
        memset(ngrid, 0xFF, cells * sizeof(int))
        memset(nflag, 0, cells)
        cdef int roff = self.wr0 - nr0, coff = self.wc0 - nc0
        cdef int j
        for i in range(self.wnr):
            for j in range(self.wnc):
                ngrid[(i + roff) * nnc + (j + coff)] = self.grid[i * self.wnc + j]
                nflag[(i + roff) * nnc + (j + coff)] = self.flag[i * self.wnc + j]
        free(self.grid)
        free(self.flag)
        self.grid = ngrid
        self.flag = nflag
        self.wr0, self.wc0, self.wnr, self.wnc = nr0, nc0, nnr, nnc
        return 0

    cdef int _eligible(self, int r, int c) except -1:
        """Fill self.cand with the ascending eligible tile ids; return count."""
        cdef int m = 0, k = 0
        cdef int d, u, g, i, t, total, j, key
        cdef int blk = self.nglues + 2
        for d in range(4):
            u = self._get(r + DR[d], c + DC[d])
            if u < 0:
                continue
            g = self.edges[u, FACE[d]]
            if g <= 0 or g > self.nglues:
                continue
            for i in range(self.offs[d * blk + g], self.offs[d * blk + g + 1]):
                t = self.ids[d * self.ntiles + i]
                for j in range(m):
                    if self.cand[j] == t:
                        break
                else:
                    self.cand[m] = t
                    m += 1
        for i in range(m):
            t = self.cand[i]
            total = 0
            for d in range(4):
                u = self._get(r + DR[d], c + DC[d])
                if u < 0:
                    continue
                g = self.edges[t, OWN[d]]
                if g > 0 and g == self.edges[u, FACE[d]]:
                    total += self.strengths[g]
            if total >= self.tau:
                self.cand[k] = t
                k += 1
        # insertion sort; buckets are near-sorted already
        for i in range(1, k):
            key = self.cand[i]
            j = i - 1
            while j >= 0 and self.cand[j] > key:
                self.cand[j + 1] = self.cand[j]
                j -= 1
            self.cand[j + 1] = key
        return k

    cdef int _push_site(self, long long key) except -1:
        cdef long long *ns
        cdef int i, parent
        if self.s_size == self.s_cap:
            self.s_cap *= 2
            ns = <long long *>malloc(self.s_cap * sizeof(long long))
            if ns == NULL:
                raise MemoryError()
            for i in range(self.s_size):
                ns[i] = self.sites[i]
            free(self.sites)
            self.sites = ns
        self.sites[self.s_size] = key
        self.s_size += 1
        if self.lexi:
            i = self.s_size - 1
            while i > 0:
                parent = (i - 1) // 2
                if self.sites[parent] <= self.sites[i]:
                    break
                self.sites[parent], self.sites[i] = self.sites[i], self.sites[parent]
                i = parent
        return 0

    cdef long long _pop_min(self) noexcept:
        cdef long long top = self.sites[0]
        cdef int i = 0, child
        self.s_size -= 1
        self.sites[0] = self.sites[self.s_size]
        while True:
            child = 2 * i + 1
            if child >= self.s_size:
                break
            if (child + 1 < self.s_size and
                    self.sites[child + 1] < self.sites[child]):
                child += 1
            if self.sites[i] <= self.sites[child]:
                break
            self.sites[i], self.sites[child] = self.sites[child], self.sites[i]
            i = child
        return top

    cdef int _activate(self, int r, int c) except -1:
        """Re-examine an empty site; returns 1 on a fail-fast nondet hit."""
        cdef int idx, count
        if not self._in_box(r, c):
            return 0
        if self._get(r, c) >= 0:
            return 0
        if not self.has_box:
            if (r <= self.wr0 or r >= self.wr0 + self.wnr - 1 or
                    c <= self.wc0 or c >= self.wc0 + self.wnc - 1):
                self._grow_window(r, c)
        idx = (r - self.wr0) * self.wnc + (c - self.wc0)
        if not self.lexi and not self.flag[idx]:
            self.flag[idx] = 1
            self._push_site(_key(r, c))
        count = self._eligible(r, c)
        if count >= 2:
            self._record_nondet(r, c, count)
            if self.failfast:
                return 1
        if self.lexi and count > 0 and not self.flag[idx]:
            self.flag[idx] = 1
            self._push_site(_key(r, c))
        return 0

    cdef _record_nondet(self, int r, int c, int count):
        cdef int i
        self.nondet[(r, c)] = tuple([self.cand[i] for i in range(count)])

    cdef bint _select(self, int *out_r, int *out_c) except? False:
        cdef long long key
        cdef int r, c, i
        if self.lexi:
            while self.s_size > 0:
                key = self._pop_min()
                r = <int>((key >> 32) - COFF)
                c = <int>(<long long>(key & 0xFFFFFFFF) - COFF)
                if self._get(r, c) < 0:
                    out_r[0] = r
                    out_c[0] = c
                    return True
            return False
        for i in range(self.s_size):
            key = self.sites[i]
            r = <int>((key >> 32) - COFF)
            c = <int>(<long long>(key & 0xFFFFFFFF) - COFF)
            if self._get(r, c) >= 0:
                continue
            if self._eligible(r, c) > 0:
                out_r[0] = r
                out_c[0] = c
                return True
        return False

    cdef int _append_event(self, int r, int c, int t) except -1:
        cdef int *n_r
        cdef int *n_c
        cdef int *n_t
        cdef int i
        if self.ev_size == self.ev_cap:
            self.ev_cap *= 2
            n_r = <int *>malloc(self.ev_cap * sizeof(int))
            n_c = <int *>malloc(self.ev_cap * sizeof(int))
            n_t = <int *>malloc(self.ev_cap * sizeof(int))
            if n_r == NULL or n_c == NULL or n_t == NULL:
                free(n_r)
                free(n_c)
                free(n_t)
                raise MemoryError()
            for i in range(self.ev_size):
                n_r[i] = self.ev_r[i]
                n_c[i] = self.ev_c[i]
                n_t[i] = self.ev_t[i]
            free(self.ev_r)
            free(self.ev_c)
            free(self.ev_t)
            self.ev_r, self.ev_c, self.ev_t = n_r, n_c, n_t
        self.ev_r[self.ev_size] = r
        self.ev_c[self.ev_size] = c
        self.ev_t[self.ev_size] = t
        self.ev_size += 1
        return 0

    cdef int _run(self) except -1:
        cdef int d, r, c, count, tid
        cdef long long steps = 0
        self.grid[(0 - self.wr0) * self.wnc + (0 - self.wc0)] = self.seed_id
        self.occupied_count = 1
        for d in range(4):
            if self._activate(DR[d], DC[d]):
                return H_NONDET
        while True:
            if not self._select(&r, &c):
                if self.has_box and self.occupied_count == self.box_area:
                    return H_BOX_FULL
                return H_QUIESCENT
            if steps >= self.max_steps:
                return H_STEP_CAP
            count = self._eligible(r, c)
            if count >= 2:
                self._record_nondet(r, c, count)
                if self.failfast:
                    return H_NONDET
            tid = self.cand[0]
            self.grid[(r - self.wr0) * self.wnc + (c - self.wc0)] = tid
            self.occupied_count += 1
            self._append_event(r, c, tid)
            steps += 1
            for d in range(4):
                if self._activate(r + DR[d], c + DC[d]):
                    return H_NONDET


def grow(int[:, ::1] edges, int[::1] strengths, int tau, int seed_id,
         long long max_steps, box, bint lexicographic, bint fail_on_nondet):
    """Run the attachment loop; returns (rows, cols, tids, halted, nondet).

    Same semantics as pixtile._growth_py.grow; ``strengths`` is indexed by
    glue label with entry 0 unused.
    """
    cdef _Kernel k = _Kernel()
    cdef int i
    k.edges = edges
    k.strengths = strengths
    k.ntiles = edges.shape[0]
    k.nglues = strengths.shape[0] - 1
    k.tau = tau
    k.seed_id = seed_id
    k.max_steps = max_steps
    k.lexi = lexicographic
    k.failfast = fail_on_nondet
    k._setup(box)
    cdef int halted = k._run()
    rows = [k.ev_r[i] for i in range(k.ev_size)]
    cols = [k.ev_c[i] for i in range(k.ev_size)]
    tids = [k.ev_t[i] for i in range(k.ev_size)]
    report = sorted((r, c, cands) for (r, c), cands in k.nondet.items())
    return rows, cols, tids, halted, report
