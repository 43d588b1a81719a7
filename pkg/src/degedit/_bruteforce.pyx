# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_bruteforce_py.solve_exact``.

Same contract and same enumeration order; the hot loops run on C integers
and 64-bit masks, which limits this backend to 64 vertices and 64 edges
(the wrapper falls back to pure Python beyond that).
"""


cdef int popcount(unsigned long long x) noexcept:
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


cdef class _Search:
    cdef int n, m, kv, ke, cbudget, optima_cap
    cdef bint connected
    cdef unsigned long long adj[64]
    cdef int eu[64]
    cdef int ew[64]
    cdef int delta[64]
    cdef int wv[64]
    cdef int cv[64]
    cdef int we[64]
    cdef int ce[64]
    cdef int best_cost, truncated
    cdef long long examined
    cdef list optima

    # per-U working state
    cdef unsigned long long kept, u_mask
    cdef int cost_u, need
    cdef int excess[64]
    cdef int removed[64]
    cdef int cand[64]
    cdef int ncand

    def run(self, n, adj, eu, ev, delta, wv, we, cv, ce,
            kv, ke, cbudget, connected, optima_cap):
        cdef int i
        self.n = n
        self.m = len(eu)
        self.kv = kv
        self.ke = ke
        self.cbudget = cbudget
        self.connected = bool(connected)
        self.optima_cap = optima_cap
        for i in range(self.n):
            self.adj[i] = adj[i]
            self.delta[i] = delta[i]
            self.wv[i] = wv[i]
            self.cv[i] = cv[i]
        for i in range(self.m):
            self.eu[i] = eu[i]
            self.ew[i] = ev[i]
            self.we[i] = we[i]
            self.ce[i] = ce[i]
        self.best_cost = -1
        self.truncated = 0
        self.examined = 0
        self.optima = []
        self._pick_vertices(0, 0, 0, 0)
        feasible = 1 if self.best_cost >= 0 else 0
        return (feasible, self.best_cost if feasible else -1, self.optima,
                self.truncated, self.examined)

    cdef void _record(self, int cost, unsigned long long um,
                      unsigned long long dm):
        if self.best_cost < 0 or cost < self.best_cost:
            self.best_cost = cost
            self.optima = [(um, dm)]
            self.truncated = 0
        elif cost == self.best_cost:
            if len(self.optima) < self.optima_cap:
                self.optima.append((um, dm))
            else:
                self.truncated = 1

    cdef void _pick_vertices(self, int start, int count, int w_used,
                             int c_used):
        cdef int v
        self._with_u(c_used)
        if count >= self.kv:
            return
        for v in range(start, self.n):
            if w_used + self.wv[v] <= self.kv:
                self.u_mask |= (<unsigned long long>1) << v
                self._pick_vertices(v + 1, count + 1, w_used + self.wv[v],
                                    c_used + self.cv[v])
                self.u_mask &= ~((<unsigned long long>1) << v)

    cdef void _with_u(self, int cost_u):
        cdef int v, i, total = 0
        cdef unsigned long long full = ((<unsigned long long>1) << self.n) - 1 \
            if self.n < 64 else <unsigned long long>0xFFFFFFFFFFFFFFFF
        self.kept = full & ~self.u_mask
        self.cost_u = cost_u
        for v in range(self.n):
            if not (self.kept >> v) & 1:
                continue
            i = popcount(self.adj[v] & self.kept) - self.delta[v]
            if i < 0:
                return
            self.excess[v] = i
            total += i
        if total & 1:
            return
        self.need = total >> 1
        if self.need > self.ke:
            return
        if self.need == 0:
            self.examined += 1
            if cost_u <= self.cbudget and self._connected_ok(0):
                self._record(cost_u, self.u_mask, 0)
            return
        self.ncand = 0
        for i in range(self.m):
            if (self.kept >> self.eu[i]) & 1 and (self.kept >> self.ew[i]) & 1 \
                    and self.excess[self.eu[i]] > 0 \
                    and self.excess[self.ew[i]] > 0:
                self.cand[self.ncand] = i
                self.ncand += 1
        if self.ncand < self.need:
            return
        for v in range(self.n):
            self.removed[v] = 0
        self._pick_edges(0, self.need, 0, cost_u, 0)

    cdef void _pick_edges(self, int start, int left, int w_used, int c_used,
                          unsigned long long dmask):
        # removed <= excess pointwise plus the exact total forces equality,
        # so a complete pick needs no final scan
        cdef int j, e, a, b
        if left == 0:
            self.examined += 1
            if c_used <= self.cbudget and self._connected_ok(dmask):
                self._record(c_used, self.u_mask, dmask)
            return
        for j in range(start, self.ncand - left + 1):
            e = self.cand[j]
            a = self.eu[e]
            b = self.ew[e]
            if self.removed[a] >= self.excess[a] \
                    or self.removed[b] >= self.excess[b]:
                continue
            if w_used + self.we[e] > self.ke:
                continue
            self.removed[a] += 1
            self.removed[b] += 1
            self._pick_edges(j + 1, left - 1, w_used + self.we[e],
                             c_used + self.ce[e],
                             dmask | ((<unsigned long long>1) << e))
            self.removed[a] -= 1
            self.removed[b] -= 1

    cdef bint _connected_ok(self, unsigned long long dmask):
        cdef unsigned long long local[64]
        cdef unsigned long long seen, frontier, bit
        cdef int v, i, a, b
        if not self.connected:
            return True
        if self.kept == 0:
            return True
        for v in range(self.n):
            local[v] = self.adj[v] & self.kept
        i = 0
        while dmask:
            if dmask & 1:
                a = self.eu[i]
                b = self.ew[i]
                local[a] &= ~((<unsigned long long>1) << b)
                local[b] &= ~((<unsigned long long>1) << a)
            dmask >>= 1
            i += 1
        bit = self.kept & (~self.kept + 1)
        seen = bit
        frontier = bit
        while frontier:
            v = 0
            bit = frontier & (~frontier + 1)
            frontier &= frontier - 1
            while not (bit >> v) & 1:
                v += 1
            new = local[v] & ~seen
            seen |= new
            frontier |= new
        return seen == self.kept


BACKEND = "c"


def solve_exact(n, adj, eu, ev, delta, wv, we, cv, ce,
                kv, ke, cbudget, connected, optima_cap):
    if n > 64 or len(eu) > 64:
        raise ValueError("compiled backend handles at most 64 vertices/edges")
    feasible, best, optima, truncated, examined = _Search().run(
        n, adj, eu, ev, delta, wv, we, cv, ce,
        kv, ke, cbudget, connected, optima_cap)
    return feasible, best, optima, truncated, examined
