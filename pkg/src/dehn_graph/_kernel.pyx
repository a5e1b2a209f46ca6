# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled matching search.  Same algorithm and output order as ``_kernel_py``."""

from libc.stdlib cimport malloc, free


cdef struct State:
    int n
    int nv[2]
    int deg[2]
    int *vert[2]
    int *pos[2]
    int *rot[2]
    int *sign
    int *partner
    int budget[2]
    int *seen
    int *stack
    bint connected
    long limit


cdef inline int prev_placed(State *s, int g, int x):
    cdef int d = s.deg[g]
    cdef int *r = s.rot[g] + s.vert[g][x] * d
    cdef int k = s.pos[g][x]
    cdef int t, y
    for t in range(1, d):
        y = r[(k - t + d) % d]
        if s.partner[y] >= 0:
            return y
    return -1


cdef inline int next_placed(State *s, int g, int x):
    cdef int d = s.deg[g]
    cdef int *r = s.rot[g] + s.vert[g][x] * d
    cdef int k = s.pos[g][x]
    cdef int t, y
    for t in range(1, d + 1):
        y = r[(k + t) % d]
        if s.partner[y] >= 0:
            return y
    return -1


cdef bint same_component(State *s, int g, int u, int v):
    if u == v:
        return True
    cdef int nv = s.nv[g]
    cdef int d = s.deg[g]
    cdef int i, w, y, z, t, top = 0
    for i in range(nv):
        s.seen[i] = 0
    s.seen[u] = 1
    s.stack[top] = u
    top += 1
    while top > 0:
        top -= 1
        w = s.stack[top]
        for i in range(d):
            y = s.rot[g][w * d + i]
            z = s.partner[y]
            if z >= 0:
                t = s.vert[g][z]
                if t == v:
                    return True
                if not s.seen[t]:
                    s.seen[t] = 1
                    s.stack[top] = t
                    top += 1
    return False


cdef int cost(State *s, int g, int a, int b):
    cdef int xa = prev_placed(s, g, a)
    if xa < 0:
        return 0
    cdef int xb = prev_placed(s, g, b)
    if xb < 0:
        return 0
    cdef int x = xa
    while True:
        if x == xb:
            return 0
        x = s.partner[next_placed(s, g, x)]
        if x == xa:
            break
    if not same_component(s, g, s.vert[g][a], s.vert[g][b]):
        return 0
    return 1 if s.budget[g] > 0 else 2


cdef inline bint adjacent(State *s, int g, int a, int b):
    if s.vert[g][a] != s.vert[g][b]:
        return False
    cdef int d = s.deg[g]
    cdef int diff = (s.pos[g][a] - s.pos[g][b] + d) % d
    return diff == 1 or diff == d - 1


cdef bint is_connected(State *s, int g):
    cdef int v
    for v in range(1, s.nv[g]):
        if not same_component(s, g, 0, v):
            return False
    return True


cdef void rec(State *s, int start, list out):
    if s.limit >= 0 and len(out) >= s.limit:
        return
    cdef int n = s.n
    cdef int a = start
    cdef int b, cp, cq
    while a < n and s.partner[a] >= 0:
        a += 1
    if a == n:
        if s.budget[0] == 0 and s.budget[1] == 0:
            if not s.connected or (is_connected(s, 0) and is_connected(s, 1)):
                out.append(tuple([s.partner[b] for b in range(n)]))
        return
    for b in range(a + 1, n):
        if s.partner[b] >= 0 or s.sign[b] == s.sign[a]:
            continue
        if adjacent(s, 0, a, b) or adjacent(s, 1, a, b):
            continue
        cp = cost(s, 0, a, b)
        if cp == 2:
            continue
        cq = cost(s, 1, a, b)
        if cq == 2:
            continue
        s.budget[0] -= cp
        s.budget[1] -= cq
        s.partner[a] = b
        s.partner[b] = a
        rec(s, a + 1, out)
        s.partner[a] = -1
        s.partner[b] = -1
        s.budget[0] += cp
        s.budget[1] += cq


cdef int *to_c(object seq, int n) except NULL:
    cdef int *buf = <int *> malloc(max(n, 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    cdef int i
    for i in range(n):
        buf[i] = seq[i]
    return buf


def search(int n, pv, pg, qv, qg, sign, int np_, int nq, int degp, int degq,
           int budget_p, int budget_q, bint connected=True, long limit=-1):
    cdef State s
    cdef int i, g, x
    cdef list out = []
    s.n = n
    s.nv[0] = np_
    s.nv[1] = nq
    s.deg[0] = degp
    s.deg[1] = degq
    s.budget[0] = budget_p
    s.budget[1] = budget_q
    s.connected = connected
    s.limit = limit
    s.vert[0] = s.vert[1] = s.pos[0] = s.pos[1] = NULL
    s.rot[0] = s.rot[1] = NULL
    s.sign = s.partner = s.seen = s.stack = NULL
    try:
        s.vert[0] = to_c(pv, n)
        s.pos[0] = to_c(pg, n)
        s.vert[1] = to_c(qv, n)
        s.pos[1] = to_c(qg, n)
        s.sign = to_c(sign, n)
        s.partner = to_c([-1] * n, n)
        s.rot[0] = to_c([-1] * (np_ * degp), np_ * degp)
        s.rot[1] = to_c([-1] * (nq * degq), nq * degq)
        s.seen = to_c([0] * (np_ + nq), np_ + nq)
        s.stack = to_c([0] * (np_ + nq), np_ + nq)
        for x in range(n):
            s.rot[0][s.vert[0][x] * degp + s.pos[0][x]] = x
            s.rot[1][s.vert[1][x] * degq + s.pos[1][x]] = x
        rec(&s, 0, out)
    finally:
        for g in range(2):
            free(s.vert[g])
            free(s.pos[g])
            free(s.rot[g])
        free(s.sign)
        free(s.partner)
        free(s.seen)
        free(s.stack)
    return out
