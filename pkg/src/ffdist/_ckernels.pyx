# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same semantics and search order as ``_pykernels``."""

from cpython.array cimport array, clone

cdef enum:
    EXT_STEP = 0
    CAP_STEP = 1
    INDEL_A_STEP = 2

STATUS_OPTIMAL = 0
STATUS_INFEASIBLE = 1
STATUS_LIMIT = 2

IMPLEMENTATION = "cython"

cdef array _int64 = array("q")


cdef inline array _zeros(Py_ssize_t n):
    return clone(_int64, n, True)


cdef Py_ssize_t _walk(long long[:] adj_mate, long long[:] oth_mate, long long[:] oth_kind,
                      long long[:] seen, long long[:] stats) noexcept:
    # stats receives 6 entries per cycle; returns the number of cycles
    cdef Py_ssize_t n = adj_mate.shape[0]
    cdef Py_ssize_t start, v, u, cyc = 0
    cdef long long k, first, last, changes
    cdef long long c0, c1, c2, c3
    for start in range(n):
        seen[start] = 0
    for start in range(n):
        if seen[start]:
            continue
        c0 = c1 = c2 = c3 = 0
        first = -1
        last = -1
        changes = 0
        v = start
        while True:
            seen[v] = 1
            u = adj_mate[v]
            seen[u] = 1
            k = oth_kind[u]
            if k == 0:
                c0 += 1
            elif k == 1:
                c1 += 1
            elif k == 2:
                c2 += 1
            else:
                c3 += 1
            if k >= INDEL_A_STEP:
                if first < 0:
                    first = k
                elif k != last:
                    changes += 1
                last = k
            v = oth_mate[u]
            if v == start:
                break
        if first >= 0 and first != last:
            changes += 1
        stats[6 * cyc] = c0
        stats[6 * cyc + 1] = c1
        stats[6 * cyc + 2] = c2
        stats[6 * cyc + 3] = c3
        stats[6 * cyc + 4] = 0 if first < 0 else (changes if changes > 1 else 1)
        stats[6 * cyc + 5] = changes
        cyc += 1
    return cyc


def cycle_stats(adj_mate, oth_mate, oth_kind):
    """Per-cycle ``(n_ext, n_cap, n_indel_a, n_indel_b, runs, transitions)``."""
    cdef long long[:] a = array("q", adj_mate)
    cdef long long[:] o = array("q", oth_mate)
    cdef long long[:] k = array("q", oth_kind)
    cdef Py_ssize_t n = a.shape[0]
    cdef long long[:] seen = _zeros(n)
    cdef long long[:] stats = _zeros(6 * n + 6)
    cdef Py_ssize_t c = _walk(a, o, k, seen, stats)
    return [tuple(stats[6 * i + j] for j in range(6)) for i in range(c)]


cdef void _summary(long long[:] stats, Py_ssize_t c, long long[:] out, Py_ssize_t at) noexcept:
    cdef long long cycles = 0, free = 0, singles = 0, trans = 0
    cdef Py_ssize_t i
    for i in range(c):
        if stats[6 * i] + stats[6 * i + 1] == 0:
            singles += 1
        else:
            cycles += 1
            if stats[6 * i + 4] == 0:
                free += 1
        trans += stats[6 * i + 5]
    out[at] = cycles
    out[at + 1] = free
    out[at + 2] = singles
    out[at + 3] = trans


def cycle_summary(adj_mate, oth_mate, oth_kind):
    """``(cycles, indel_free_cycles, singletons, transitions)`` of a full cycle cover."""
    cdef long long[:] a = array("q", adj_mate)
    cdef long long[:] o = array("q", oth_mate)
    cdef long long[:] k = array("q", oth_kind)
    cdef Py_ssize_t n = a.shape[0]
    cdef long long[:] seen = _zeros(n)
    cdef long long[:] stats = _zeros(6 * n + 6)
    cdef long long[:] out = _zeros(4)
    _summary(stats, _walk(a, o, k, seen, stats), out, 0)
    return out[0], out[1], out[2], out[3]


def capping_sweep(long long[:] adj_mate, long long[:] oth_mate, long long[:] oth_kind,
                  long long[:] caps_a, long long[:] caps_b, long long[:] perms, long long[:] out):
    """Fill ``out[4*k:4*k+4]`` with the cycle summary for every capping ``perms[k]``."""
    cdef Py_ssize_t width = caps_a.shape[0]
    cdef Py_ssize_t n = adj_mate.shape[0]
    cdef Py_ssize_t n_perm = perms.shape[0] // width if width else 1
    cdef Py_ssize_t k, i, a, b
    cdef long long[:] seen = _zeros(n)
    cdef long long[:] stats = _zeros(6 * n + 6)
    for k in range(n_perm):
        for i in range(width):
            a = caps_a[i]
            b = caps_b[perms[k * width + i]]
            oth_mate[a] = b
            oth_mate[b] = a
            oth_kind[a] = CAP_STEP
            oth_kind[b] = CAP_STEP
        _summary(stats, _walk(adj_mate, oth_mate, oth_kind, seen, stats), out, 4 * k)


cdef inline long long _floordiv(long long a, long long b) noexcept:
    cdef long long q = a // b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef class _Search:
    cdef long long[:] lo, hi, row_ptr, row_col, row_coef, rhs, var_ptr, var_rows, cobj, order, pref
    cdef long long[:] trail_var, trail_lo, trail_hi, queued, queue
    cdef long long[:] st_var, st_lo, st_hi, st_mark
    cdef Py_ssize_t n, m, ntrail, qhead, qtail, qcap, nstack

    cdef void tighten(self, Py_ssize_t j, long long new_lo, long long new_hi) noexcept:
        cdef Py_ssize_t p, r
        self.trail_var[self.ntrail] = j
        self.trail_lo[self.ntrail] = self.lo[j]
        self.trail_hi[self.ntrail] = self.hi[j]
        self.ntrail += 1
        self.lo[j] = new_lo
        self.hi[j] = new_hi
        for p in range(self.var_ptr[j], self.var_ptr[j + 1]):
            r = self.var_rows[p]
            if not self.queued[r]:
                self.queued[r] = 1
                self.queue[self.qtail] = r
                self.qtail = (self.qtail + 1) % self.qcap

    cdef bint propagate(self) noexcept:
        cdef bint ok = True
        cdef Py_ssize_t r, p, j
        cdef long long a, minact, res, bound
        while self.qhead != self.qtail:
            r = self.queue[self.qhead]
            self.qhead = (self.qhead + 1) % self.qcap
            self.queued[r] = 0
            if not ok:
                continue
            minact = 0
            for p in range(self.row_ptr[r], self.row_ptr[r + 1]):
                a = self.row_coef[p]
                j = self.row_col[p]
                minact += a * self.lo[j] if a > 0 else a * self.hi[j]
            if minact > self.rhs[r]:
                ok = False
                continue
            for p in range(self.row_ptr[r], self.row_ptr[r + 1]):
                a = self.row_coef[p]
                j = self.row_col[p]
                if a > 0:
                    res = self.rhs[r] - minact + a * self.lo[j]
                    bound = _floordiv(res, a)
                    if bound < self.hi[j]:
                        if bound < self.lo[j]:
                            ok = False
                            break
                        self.tighten(j, self.lo[j], bound)
                else:
                    res = self.rhs[r] - minact + a * self.hi[j]
                    bound = -_floordiv(-res, a)
                    if bound > self.lo[j]:
                        if bound > self.hi[j]:
                            ok = False
                            break
                        self.tighten(j, bound, self.hi[j])
        return ok

    cdef void undo(self, Py_ssize_t mark) noexcept:
        cdef Py_ssize_t j
        while self.ntrail > mark:
            self.ntrail -= 1
            j = self.trail_var[self.ntrail]
            self.lo[j] = self.trail_lo[self.ntrail]
            self.hi[j] = self.trail_hi[self.ntrail]

    cdef void push(self, Py_ssize_t j, long long new_lo, long long new_hi, Py_ssize_t mark) noexcept:
        self.st_var[self.nstack] = j
        self.st_lo[self.nstack] = new_lo
        self.st_hi[self.nstack] = new_hi
        self.st_mark[self.nstack] = mark
        self.nstack += 1


def bb_search(lo, hi, row_ptr, row_col, row_coef, rhs, var_ptr, var_rows, cobj, order, pref, node_limit):
    """Depth-first branch and bound over integer variables (see ``_pykernels.bb_search``)."""
    cdef _Search s = _Search()
    cdef Py_ssize_t n = len(lo), m = len(rhs), depth = 1, r, j, pick, mark
    cdef Py_ssize_t norder = len(order)
    cdef long long lb, c, limit = node_limit or 0, nodes = 0, best_value = 0
    cdef bint have_best = False, backtrack
    cdef long long[:] best = _zeros(n)
    lo_arr = array("q", lo)
    hi_arr = array("q", hi)
    s.lo = lo_arr
    s.hi = hi_arr
    s.row_ptr = array("q", row_ptr)
    s.row_col = array("q", row_col)
    s.row_coef = array("q", row_coef)
    s.rhs = array("q", rhs)
    s.var_ptr = array("q", var_ptr)
    s.var_rows = array("q", var_rows)
    s.cobj = array("q", cobj)
    s.order = array("q", order)
    s.pref = array("q", pref)
    s.n = n
    s.m = m
    for j in range(n):
        depth += s.hi[j] - s.lo[j]
    s.trail_var = _zeros(depth)
    s.trail_lo = _zeros(depth)
    s.trail_hi = _zeros(depth)
    s.st_var = _zeros(depth)
    s.st_lo = _zeros(depth)
    s.st_hi = _zeros(depth)
    s.st_mark = _zeros(depth)
    s.queued = _zeros(m + 1)
    s.qcap = m + 1
    s.queue = _zeros(m + 1)
    s.ntrail = s.nstack = s.qhead = s.qtail = 0

    for r in range(m):
        s.queued[r] = 1
        s.queue[s.qtail] = r
        s.qtail += 1
    if not s.propagate():
        _copy_back(lo, hi, s)
        return STATUS_INFEASIBLE, None, None, 0

    while True:
        nodes += 1
        backtrack = False
        if limit and nodes > limit:
            _copy_back(lo, hi, s)
            return STATUS_LIMIT, (best_value if have_best else None), (list(best) if have_best else None), nodes
        lb = 0
        for j in range(n):
            c = s.cobj[j]
            lb += c * s.lo[j] if c > 0 else c * s.hi[j]
        if have_best and lb >= best_value:
            backtrack = True
        else:
            pick = -1
            for r in range(norder):
                j = s.order[r]
                if s.lo[j] < s.hi[j]:
                    pick = j
                    break
            if pick < 0:
                best_value = lb
                have_best = True
                best[:] = s.lo
                backtrack = True
            else:
                mark = s.ntrail
                if s.pref[pick]:
                    s.push(pick, s.lo[pick], s.hi[pick] - 1, mark)
                    s.tighten(pick, s.hi[pick], s.hi[pick])
                else:
                    s.push(pick, s.lo[pick] + 1, s.hi[pick], mark)
                    s.tighten(pick, s.lo[pick], s.lo[pick])
                if not s.propagate():
                    backtrack = True
        if backtrack:
            while True:
                if s.nstack == 0:
                    _copy_back(lo, hi, s)
                    if have_best:
                        return STATUS_OPTIMAL, best_value, list(best), nodes
                    return STATUS_INFEASIBLE, None, None, nodes
                s.nstack -= 1
                s.undo(s.st_mark[s.nstack])
                s.tighten(s.st_var[s.nstack], s.st_lo[s.nstack], s.st_hi[s.nstack])
                if s.propagate():
                    break


cdef _copy_back(lo, hi, _Search s):
    cdef Py_ssize_t j
    for j in range(s.n):
        lo[j] = s.lo[j]
        hi[j] = s.hi[j]
