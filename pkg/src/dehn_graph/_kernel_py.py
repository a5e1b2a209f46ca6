"""Pure-Python matching search; the compiled ``_kernel`` mirrors it line for line.

Points are intersection points, indexed ``0..n-1``.  Each point sits at a
vertex of both graphs (``pv``/``qv``) at a geometric, anticlockwise slot
position (``pg``/``qg``).  The search pairs points into edges, lowest
unmatched point first, and keeps every partial rotation system embeddable
in a surface of the allowed genus.
"""


def search(n, pv, pg, qv, qg, sign, np_, nq, degp, degq,
           budget_p, budget_q, connected=True, limit=-1):
    nv = (np_, nq)
    deg = (degp, degq)
    vert = (pv, qv)
    pos = (pg, qg)
    rot = ([[-1] * degp for _ in range(np_)], [[-1] * degq for _ in range(nq)])
    for x in range(n):
        rot[0][pv[x]][pg[x]] = x
        rot[1][qv[x]][qg[x]] = x
    partner = [-1] * n
    budget = [budget_p, budget_q]
    out = []

    def prev_placed(g, x):
        r = rot[g][vert[g][x]]
        d = deg[g]
        k = pos[g][x]
        for s in range(1, d):
            y = r[(k - s) % d]
            if partner[y] >= 0:
                return y
        return -1

    def next_placed(g, x):
        r = rot[g][vert[g][x]]
        d = deg[g]
        k = pos[g][x]
        for s in range(1, d + 1):
            y = r[(k + s) % d]
            if partner[y] >= 0:
                return y
        return -1

    def same_component(g, u, v):
        if u == v:
            return True
        seen = [False] * nv[g]
        seen[u] = True
        stack = [u]
        vv = vert[g]
        while stack:
            w = stack.pop()
            for y in rot[g][w]:
                z = partner[y]
                if z >= 0:
                    t = vv[z]
                    if t == v:
                        return True
                    if not seen[t]:
                        seen[t] = True
                        stack.append(t)
        return False

    def cost(g, a, b):
        # 0: stays in genus, 1: adds a handle, 2: impossible
        xa = prev_placed(g, a)
        if xa < 0:
            return 0
        xb = prev_placed(g, b)
        if xb < 0:
            return 0
        x = xa
        while True:
            if x == xb:
                return 0
            x = partner[next_placed(g, x)]
            if x == xa:
                break
        if not same_component(g, vert[g][a], vert[g][b]):
            return 0
        return 1 if budget[g] > 0 else 2

    def adjacent(g, a, b):
        if vert[g][a] != vert[g][b]:
            return False
        d = (pos[g][a] - pos[g][b]) % deg[g]
        return d == 1 or d == deg[g] - 1

    def is_connected(g):
        for v in range(1, nv[g]):
            if not same_component(g, 0, v):
                return False
        return True

    def rec(start):
        if 0 <= limit <= len(out):
            return
        a = start
        while a < n and partner[a] >= 0:
            a += 1
        if a == n:
            if budget[0] == 0 and budget[1] == 0:
                if not connected or (is_connected(0) and is_connected(1)):
                    out.append(tuple(partner))
            return
        for b in range(a + 1, n):
            if partner[b] >= 0 or sign[b] == sign[a]:
                continue
            if adjacent(0, a, b) or adjacent(1, a, b):
                continue
            cp = cost(0, a, b)
            if cp == 2:
                continue
            cq = cost(1, a, b)
            if cq == 2:
                continue
            budget[0] -= cp
            budget[1] -= cq
            partner[a] = b
            partner[b] = a
            rec(a + 1)
            partner[a] = -1
            partner[b] = -1
            budget[0] += cp
            budget[1] += cq

    rec(0)
    return out
