"""Pure-Python kernels.

These are the reference implementations of the hot loops; the Cython module
`_fast` mirrors them bit for bit.  Everything here is deterministic: random
draws come from per-trial splitmix64 substreams derived from (seed, trial
index), so results never depend on chunking or parallelism.
"""

_M64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

BACKEND = "pure"


def mix64(z: int) -> int:
    z &= _M64
    z = ((z ^ (z >> 30)) * _MIX1) & _M64
    z = ((z ^ (z >> 27)) * _MIX2) & _M64
    return z ^ (z >> 31)


def stream_init(seed: int, trial: int) -> int:
    """Initial splitmix64 state for one trial's substream."""
    return mix64((seed & _M64) ^ mix64((trial * _GOLDEN + 1) & _M64))


def stream_next(state: int):
    state = (state + _GOLDEN) & _M64
    return state, mix64(state)


# --- union-find with parity --------------------------------------------------


class _ParityUF:
    __slots__ = ("parent", "par", "rank", "alive")

    def __init__(self, n):
        self.parent = list(range(n + 1))
        self.par = [0] * (n + 1)
        self.rank = [0] * (n + 1)
        self.alive = True

    def find(self, x):
        parent, par = self.parent, self.par
        root, parity = x, 0
        while parent[root] != root:
            parity ^= par[root]
            root = parent[root]
        # path compression with parity accumulation
        cur, cp = x, parity
        while parent[cur] != root:
            nxt, np_ = parent[cur], par[cur]
            parent[cur] = root
            par[cur] = cp
            cur, cp = nxt, cp ^ np_
        return root, parity

    def add_clause(self, v1, p1, v2, p2):
        """Clause l1 xor l2: forces value(v1)^value(v2) = 1 ^ p1 ^ p2."""
        req = 1 ^ p1 ^ p2
        r1, q1 = self.find(v1)
        r2, q2 = self.find(v2)
        if r1 == r2:
            if q1 ^ q2 != req:
                self.alive = False
            return
        if self.rank[r1] < self.rank[r2]:
            r1, r2 = r2, r1
            q1, q2 = q2, q1
        self.parent[r2] = r1
        self.par[r2] = q1 ^ q2 ^ req
        if self.rank[r1] == self.rank[r2]:
            self.rank[r1] += 1


def _block_profile(uf, n):
    sizes = {}
    for v in range(1, n + 1):
        r, _ = uf.find(v)
        sizes[r] = sizes.get(r, 0) + 1
    hist = {}
    for s in sizes.values():
        hist[s] = hist.get(s, 0) + 1
    return tuple(sorted(hist.items()))


def _canonical_sig(uf, n):
    """Per-variable (block id, parity relative to the block's minimum variable)."""
    ids = {}
    base = {}
    sig = []
    for v in range(1, n + 1):
        r, q = uf.find(v)
        if r not in ids:
            ids[r] = len(ids)
            base[r] = q
        sig.append(ids[r])
        sig.append(q ^ base[r])
    return tuple(sig)


# --- Monte Carlo kernels ------------------------------------------------------


def mc_expression_trials(n, m, start, count, seed):
    """Reduce `count` random expressions; tally FALSE and block-size profiles.

    Returns (false_count, {profile: count}) with profile a sorted tuple of
    (block size, multiplicity) pairs.
    """
    two_n = 2 * n
    n_clauses = 4 * n * n
    false_count = 0
    hist = {}
    for t in range(start, start + count):
        state = stream_init(seed, t)
        uf = _ParityUF(n)
        for _ in range(m):
            state, z = stream_next(state)
            code = z % n_clauses
            l1, l2 = code // two_n, code % two_n
            uf.add_clause(l1 // 2 + 1, l1 & 1, l2 // 2 + 1, l2 & 1)
        if not uf.alive:
            false_count += 1
            continue
        key = _block_profile(uf, n)
        hist[key] = hist.get(key, 0) + 1
    return false_count, hist


def mc_multigraph_trials(n, m, start, count, seed):
    """Multigraph process: draw 2m uniform vertices per trial, tally the
    canonical edge multiset (flattened sorted pairs)."""
    hist = {}
    for t in range(start, start + count):
        state = stream_init(seed, t)
        edges = []
        for _ in range(m):
            state, z1 = stream_next(state)
            state, z2 = stream_next(state)
            u = z1 % n + 1
            v = z2 % n + 1
            edges.append((u, v) if u <= v else (v, u))
        edges.sort()
        key = tuple(x for e in edges for x in e)
        hist[key] = hist.get(key, 0) + 1
    return hist


def oracle_scan(n, m, start, count):
    """Enumerate expression codes [start, start+count) in mixed radix over the
    4n^2 clauses, reduce each, and tally canonical function signatures.
    FALSE tallies under the empty tuple."""
    two_n = 2 * n
    n_clauses = 4 * n * n
    hist = {}
    codes = [0] * m
    for idx in range(start, start + count):
        rem = idx
        for i in range(m):
            rem, codes[i] = divmod(rem, n_clauses)
        uf = _ParityUF(n)
        for code in codes:
            l1, l2 = code // two_n, code % two_n
            uf.add_clause(l1 // 2 + 1, l1 & 1, l2 // 2 + 1, l2 & 1)
        key = _canonical_sig(uf, n) if uf.alive else ()
        hist[key] = hist.get(key, 0) + 1
    return hist


# --- modular coefficient chains ----------------------------------------------
#
# M(z,v) = e^v * G(z,v) with G = sum_j z^j T_{2j}(v) / (2^j j!), T the Touchard
# polynomials (Stirling numbers).  The chains compute, mod a word prime p,
# either H = G^sigma (kind=0) or L = log G (kind=1) as truncated z-series with
# polynomial coefficients, then harvest scaled bivariate coefficients:
#
#   kind=0:  X = 2^(m+n) m! * n![z^m v^n] M^sigma  =  2^(m+n) m! *
#            sum_d H_m[d] sigma^(n-d) n!/(n-d)!
#   kind=1:  X = 2^m m! * n![z^m v^n] log M   (m >= 1)
#
# Both X are integers; the driver CRT-reconstructs them across primes.


def chain_mod(kind, sig_num, sig_den, m_max, vcap, p, harvests):
    inv2 = pow(2, p - 2, p)
    sig = sig_num * pow(sig_den, p - 2, p) % p

    # Stirling numbers of the second kind, rows up to 2*m_max, cols up to vcap.
    qmax = 2 * m_max
    stir = [[0] * (vcap + 1) for _ in range(qmax + 1)]
    stir[0][0] = 1
    for q in range(1, qmax + 1):
        row, prev = stir[q], stir[q - 1]
        for d in range(1, min(q, vcap) + 1):
            row[d] = (prev[d - 1] + d * prev[d]) % p

    # G_b = T_{2b} / (2^b b!), truncated at v^vcap.
    g = [None] * (m_max + 1)
    scale = 1
    for b in range(1, m_max + 1):
        scale = scale * inv2 % p * pow(b, p - 2, p) % p
        deg = min(2 * b, vcap)
        g[b] = [stir[2 * b][d] * scale % p for d in range(deg + 1)]

    rows = [[1]]  # H_0 or L_0 placeholder (log uses 0; handled below)
    if kind == 1:
        rows = [[0]]
    for a in range(1, m_max + 1):
        deg = min(2 * a, vcap)
        acc = [0] * (deg + 1)
        if kind == 0:
            # a*H_a = sum_{b=1..a} (sigma*b - (a-b)) G_b H_{a-b}
            for b in range(1, a + 1):
                w = (sig * b - (a - b)) % p
                if not w:
                    continue
                gb, hb = g[b], rows[a - b]
                for i, gi in enumerate(gb):
                    if not gi:
                        continue
                    wg = w * gi % p
                    top = deg - i
                    for j, hj in enumerate(hb[: top + 1]):
                        if hj:
                            acc[i + j] = (acc[i + j] + wg * hj) % p
        else:
            # a*L_a = a*G_a - sum_{b=1..a-1} (a-b) G_b L_{a-b}
            ga = g[a]
            for i in range(min(len(ga) - 1, deg) + 1):
                acc[i] = a * ga[i] % p
            for b in range(1, a):
                w = (-(a - b)) % p
                gb, lb = g[b], rows[a - b]
                for i, gi in enumerate(gb):
                    if not gi:
                        continue
                    wg = w * gi % p
                    top = deg - i
                    for j, lj in enumerate(lb[: top + 1]):
                        if lj:
                            acc[i + j] = (acc[i + j] + wg * lj) % p
        inva = pow(a, p - 2, p)
        rows.append([x * inva % p for x in acc])

    out = []
    for m, n in harvests:
        row = rows[m]
        if kind == 0:
            dmax = min(len(row) - 1, n)
            total = 0
            sp = pow(sig, n, p)
            sinv = pow(sig, p - 2, p)
            ff = 1
            for d in range(dmax + 1):
                if d:
                    ff = ff * ((n - d + 1) % p) % p
                    sp = sp * sinv % p
                total = (total + row[d] * sp % p * ff) % p
            fact = 1
            for i in range(2, m + 1):
                fact = fact * i % p
            total = total * pow(2, m + n, p) % p * fact % p
        else:
            val = row[n] if n < len(row) else 0
            fact = 1
            for i in range(2, n + 1):
                fact = fact * i % p
            nfact = fact
            fact = 1
            for i in range(2, m + 1):
                fact = fact * i % p
            total = val * nfact % p * pow(2, m, p) % p * fact % p
        out.append(total)
    return out
