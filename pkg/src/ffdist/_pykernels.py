"""Pure-Python kernels. ``_ckernels.pyx`` mirrors this file line for line."""

EXT_STEP = 0
CAP_STEP = 1
INDEL_A_STEP = 2
INDEL_B_STEP = 3

STATUS_OPTIMAL = 0
STATUS_INFEASIBLE = 1
STATUS_LIMIT = 2

IMPLEMENTATION = "python"


def cycle_stats(adj_mate, oth_mate, oth_kind):
    """Per-cycle ``(n_ext, n_cap, n_indel_a, n_indel_b, runs, transitions)``.

    Every vertex has one adjacency partner ``adj_mate[v]`` and one other
    partner ``oth_mate[v]`` reached through an edge of kind ``oth_kind[v]``.
    Cycles are reported by increasing smallest vertex.
    """
    n = len(adj_mate)
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        counts = [0, 0, 0, 0]
        first = -1
        last = -1
        changes = 0
        v = start
        while True:
            seen[v] = True
            u = adj_mate[v]
            seen[u] = True
            k = oth_kind[u]
            counts[k] += 1
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
        runs = 0 if first < 0 else max(changes, 1)
        out.append((counts[0], counts[1], counts[2], counts[3], runs, changes))
    return out


def cycle_summary(adj_mate, oth_mate, oth_kind):
    """``(cycles, indel_free_cycles, singletons, transitions)`` of a full cycle cover."""
    cycles = free = singles = trans = 0
    for n_ext, n_cap, n_a, n_b, runs, changes in cycle_stats(adj_mate, oth_mate, oth_kind):
        if n_ext + n_cap == 0:
            singles += 1
        else:
            cycles += 1
            if runs == 0:
                free += 1
        trans += changes
    return cycles, free, singles, trans


def capping_sweep(adj_mate, oth_mate, oth_kind, caps_a, caps_b, perms, out):
    """Fill ``out[4*k:4*k+4]`` with :func:`cycle_summary` for every capping ``perms[k]``.

    ``perms`` is flattened, each row of length ``len(caps_a)``; ``oth_mate``
    and ``oth_kind`` are overwritten at the cap vertices.
    """
    width = len(caps_a)
    n_perm = len(perms) // width if width else 1
    for k in range(n_perm):
        for i in range(width):
            a = caps_a[i]
            b = caps_b[perms[k * width + i]]
            oth_mate[a] = b
            oth_mate[b] = a
            oth_kind[a] = CAP_STEP
            oth_kind[b] = CAP_STEP
        c, f, s, t = cycle_summary(adj_mate, oth_mate, oth_kind)
        out[4 * k] = c
        out[4 * k + 1] = f
        out[4 * k + 2] = s
        out[4 * k + 3] = t


def bb_search(lo, hi, row_ptr, row_col, row_coef, rhs, var_ptr, var_rows, cobj, order, pref, node_limit):
    """Depth-first branch and bound over integer variables.

    Constraints are ``sum(row_coef * x[row_col]) <= rhs`` in CSR form;
    ``var_ptr``/``var_rows`` list the rows of each variable.  ``order`` is
    the branching order and ``pref[j]`` is 1 when the upper value of ``j``
    is tried first.  Bounds ``lo``/``hi`` are modified in place.

    Returns ``(status, best_value, best_assignment, nodes)``.
    """
    n = len(lo)
    m = len(rhs)
    trail_var = []
    trail_lo = []
    trail_hi = []
    queued = [False] * m
    queue = []
    stack = []
    best_value = None
    best = None
    nodes = 0

    def tighten(j, new_lo, new_hi):
        trail_var.append(j)
        trail_lo.append(lo[j])
        trail_hi.append(hi[j])
        lo[j] = new_lo
        hi[j] = new_hi
        for p in range(var_ptr[j], var_ptr[j + 1]):
            r = var_rows[p]
            if not queued[r]:
                queued[r] = True
                queue.append(r)

    def propagate():
        head = 0
        ok = True
        while head < len(queue):
            r = queue[head]
            head += 1
            queued[r] = False
            if not ok:
                continue
            minact = 0
            for p in range(row_ptr[r], row_ptr[r + 1]):
                a = row_coef[p]
                j = row_col[p]
                minact += a * lo[j] if a > 0 else a * hi[j]
            if minact > rhs[r]:
                ok = False
                continue
            for p in range(row_ptr[r], row_ptr[r + 1]):
                a = row_coef[p]
                j = row_col[p]
                if a > 0:
                    res = rhs[r] - minact + a * lo[j]
                    bound = res // a
                    if bound < hi[j]:
                        if bound < lo[j]:
                            ok = False
                            break
                        tighten(j, lo[j], bound)
                else:
                    res = rhs[r] - minact + a * hi[j]
                    bound = -((-res) // a)
                    if bound > lo[j]:
                        if bound > hi[j]:
                            ok = False
                            break
                        tighten(j, bound, hi[j])
        del queue[:]
        return ok

    def undo(mark):
        while len(trail_var) > mark:
            j = trail_var.pop()
            lo[j] = trail_lo.pop()
            hi[j] = trail_hi.pop()

    for r in range(m):
        queued[r] = True
        queue.append(r)
    if not propagate():
        return STATUS_INFEASIBLE, None, None, 0

    while True:
        nodes += 1
        backtrack = False
        if node_limit and nodes > node_limit:
            return STATUS_LIMIT, best_value, best, nodes
        lb = 0
        for j in range(n):
            c = cobj[j]
            lb += c * lo[j] if c > 0 else c * hi[j]
        if best_value is not None and lb >= best_value:
            backtrack = True
        else:
            pick = -1
            for j in order:
                if lo[j] < hi[j]:
                    pick = j
                    break
            if pick < 0:
                best_value = lb
                best = list(lo)
                backtrack = True
            else:
                mark = len(trail_var)
                if pref[pick]:
                    stack.append((pick, lo[pick], hi[pick] - 1, mark))
                    tighten(pick, hi[pick], hi[pick])
                else:
                    stack.append((pick, lo[pick] + 1, hi[pick], mark))
                    tighten(pick, lo[pick], lo[pick])
                if not propagate():
                    backtrack = True
        if backtrack:
            while True:
                if not stack:
                    status = STATUS_OPTIMAL if best is not None else STATUS_INFEASIBLE
                    return status, best_value, best, nodes
                j, new_lo, new_hi, mark = stack.pop()
                undo(mark)
                tighten(j, new_lo, new_hi)
                if propagate():
                    break
