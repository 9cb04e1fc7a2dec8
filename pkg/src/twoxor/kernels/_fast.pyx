# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; semantics match twoxor.kernels.pure bit for bit.

The modular chains run in Montgomery arithmetic on 64-bit words; the Monte
Carlo and oracle loops keep union-find state in C arrays and only touch
Python objects to tally results.
"""

from libc.stdlib cimport calloc, free, malloc
from libc.string cimport memset

cdef extern from *:
    """
    typedef unsigned long long u64;
    typedef unsigned __int128 u128;
    """
    ctypedef unsigned long long u64
    ctypedef unsigned long long u128 "u128"

BACKEND = "cython"

cdef u64 _M64 = <u64>0xFFFFFFFFFFFFFFFF
cdef u64 _GOLDEN = <u64>0x9E3779B97F4A7C15
cdef u64 _MIX1 = <u64>0xBF58476D1CE4E5B9
cdef u64 _MIX2 = <u64>0x94D049BB133111EB


cdef inline u64 _mix64(u64 z) nogil:
    z = (z ^ (z >> 30)) * _MIX1
    z = (z ^ (z >> 27)) * _MIX2
    return z ^ (z >> 31)


cdef inline u64 _stream_init(u64 seed, u64 trial) nogil:
    return _mix64(seed ^ _mix64(trial * _GOLDEN + 1))


cdef inline u64 _stream_next(u64 *state) nogil:
    state[0] = state[0] + _GOLDEN
    return _mix64(state[0])


# --- union-find with parity on C arrays --------------------------------------


cdef struct UF:
    int *parent
    int *par
    int *rank
    int alive


cdef inline void _uf_reset(UF *uf, int n) nogil:
    cdef int i
    for i in range(n + 1):
        uf.parent[i] = i
        uf.par[i] = 0
        uf.rank[i] = 0
    uf.alive = 1


cdef inline int _uf_find(UF *uf, int x, int *parity_out) nogil:
    cdef int root = x, parity = 0, cur, cp, nxt, npar
    while uf.parent[root] != root:
        parity ^= uf.par[root]
        root = uf.parent[root]
    cur = x
    cp = parity
    while uf.parent[cur] != root:
        nxt = uf.parent[cur]
        npar = uf.par[cur]
        uf.parent[cur] = root
        uf.par[cur] = cp
        cur = nxt
        cp = cp ^ npar
    parity_out[0] = parity
    return root


cdef inline void _uf_add_clause(UF *uf, int v1, int p1, int v2, int p2) nogil:
    cdef int req = 1 ^ p1 ^ p2
    cdef int q1 = 0, q2 = 0
    cdef int r1 = _uf_find(uf, v1, &q1)
    cdef int r2 = _uf_find(uf, v2, &q2)
    cdef int tmp
    if r1 == r2:
        if (q1 ^ q2) != req:
            uf.alive = 0
        return
    if uf.rank[r1] < uf.rank[r2]:
        tmp = r1; r1 = r2; r2 = tmp
        tmp = q1; q1 = q2; q2 = tmp
    uf.parent[r2] = r1
    uf.par[r2] = q1 ^ q2 ^ req
    if uf.rank[r1] == uf.rank[r2]:
        uf.rank[r1] += 1


# --- Monte Carlo kernels ------------------------------------------------------


def mc_expression_trials(int n, int m, long long start, long long count, object seed):
    cdef u64 seed64 = <u64>(<object>seed & ((1 << 64) - 1))
    cdef UF uf
    uf.parent = <int *>malloc((n + 1) * sizeof(int))
    uf.par = <int *>malloc((n + 1) * sizeof(int))
    uf.rank = <int *>malloc((n + 1) * sizeof(int))
    cdef int *bsize = <int *>calloc(n + 2, sizeof(int))
    cdef int *scount = <int *>calloc(n + 2, sizeof(int))
    if not (uf.parent and uf.par and uf.rank and bsize and scount):
        raise MemoryError
    cdef long long false_count = 0
    hist = {}
    cdef long long t
    cdef int i, v, l1, l2, root, parity, s
    cdef u64 state, z
    cdef u64 n_clauses = <u64>(4 * n * n)
    cdef u64 two_n = <u64>(2 * n)
    cdef u64 code
    try:
        for t in range(start, start + count):
            state = _stream_init(seed64, <u64>t)
            _uf_reset(&uf, n)
            for i in range(m):
                z = _stream_next(&state)
                code = z % n_clauses
                l1 = <int>(code // two_n)
                l2 = <int>(code % two_n)
                _uf_add_clause(&uf, l1 // 2 + 1, l1 & 1, l2 // 2 + 1, l2 & 1)
            if not uf.alive:
                false_count += 1
                continue
            memset(bsize, 0, (n + 2) * sizeof(int))
            memset(scount, 0, (n + 2) * sizeof(int))
            for v in range(1, n + 1):
                root = _uf_find(&uf, v, &parity)
                bsize[root] += 1
            for v in range(1, n + 1):
                if bsize[v]:
                    scount[bsize[v]] += 1
            key = tuple((s, scount[s]) for s in range(1, n + 1) if scount[s])
            if key in hist:
                hist[key] += 1
            else:
                hist[key] = 1
    finally:
        free(uf.parent); free(uf.par); free(uf.rank); free(bsize); free(scount)
    return false_count, hist


def mc_multigraph_trials(int n, int m, long long start, long long count, object seed):
    cdef u64 seed64 = <u64>(<object>seed & ((1 << 64) - 1))
    hist = {}
    cdef long long t
    cdef int i, j, u, v, tmp
    cdef u64 state, z1, z2
    cdef int *eu = <int *>malloc(m * sizeof(int))
    cdef int *ev = <int *>malloc(m * sizeof(int))
    if not (eu and ev):
        raise MemoryError
    try:
        for t in range(start, start + count):
            state = _stream_init(seed64, <u64>t)
            for i in range(m):
                z1 = _stream_next(&state)
                z2 = _stream_next(&state)
                u = <int>(z1 % <u64>n) + 1
                v = <int>(z2 % <u64>n) + 1
                if u > v:
                    tmp = u; u = v; v = tmp
                eu[i] = u; ev[i] = v
            # insertion sort of edge pairs (m is small)
            for i in range(1, m):
                u = eu[i]; v = ev[i]
                j = i - 1
                while j >= 0 and (eu[j] > u or (eu[j] == u and ev[j] > v)):
                    eu[j + 1] = eu[j]; ev[j + 1] = ev[j]
                    j -= 1
                eu[j + 1] = u; ev[j + 1] = v
            key = tuple(x for i in range(m) for x in (eu[i], ev[i]))
            if key in hist:
                hist[key] += 1
            else:
                hist[key] = 1
    finally:
        free(eu); free(ev)
    return hist


def oracle_scan(int n, int m, long long start, long long count):
    cdef UF uf
    uf.parent = <int *>malloc((n + 1) * sizeof(int))
    uf.par = <int *>malloc((n + 1) * sizeof(int))
    uf.rank = <int *>malloc((n + 1) * sizeof(int))
    cdef int *ids = <int *>malloc((n + 1) * sizeof(int))
    cdef int *base = <int *>malloc((n + 1) * sizeof(int))
    cdef int *sig = <int *>malloc((2 * n) * sizeof(int))
    if not (uf.parent and uf.par and uf.rank and ids and base and sig):
        raise MemoryError
    hist = {}
    cdef long long idx, rem
    cdef int i, v, l1, l2, root, parity, nextid
    cdef long long n_clauses = 4 * n * n
    cdef long long code
    try:
        for idx in range(start, start + count):
            rem = idx
            _uf_reset(&uf, n)
            for i in range(m):
                code = rem % n_clauses
                rem = rem // n_clauses
                l1 = <int>(code // (2 * n))
                l2 = <int>(code % (2 * n))
                _uf_add_clause(&uf, l1 // 2 + 1, l1 & 1, l2 // 2 + 1, l2 & 1)
            if not uf.alive:
                key = ()
            else:
                for v in range(1, n + 1):
                    ids[v] = -1
                nextid = 0
                for v in range(1, n + 1):
                    root = _uf_find(&uf, v, &parity)
                    if ids[root] < 0:
                        ids[root] = nextid
                        base[root] = parity
                        nextid += 1
                    sig[2 * (v - 1)] = ids[root]
                    sig[2 * (v - 1) + 1] = parity ^ base[root]
                key = tuple(sig[i] for i in range(2 * n))
            if key in hist:
                hist[key] += 1
            else:
                hist[key] = 1
    finally:
        free(uf.parent); free(uf.par); free(uf.rank)
        free(ids); free(base); free(sig)
    return hist


# --- Montgomery arithmetic -----------------------------------------------------


cdef inline u64 _mont_mul(u64 a, u64 b, u64 p, u64 npinv) nogil:
    cdef u128 t = <u128>a * b
    cdef u64 mfac = (<u64>t) * npinv
    cdef u128 t2 = t + <u128>mfac * p
    cdef u64 r = <u64>(t2 >> 64)
    if r >= p:
        r -= p
    return r


cdef inline u64 _addmod(u64 a, u64 b, u64 p) nogil:
    cdef u64 s = a + b
    if s >= p or s < a:
        s -= p
    return s


cdef inline u64 _submod(u64 a, u64 b, u64 p) nogil:
    if a >= b:
        return a - b
    return a + (p - b)


cdef inline u64 _mont_pow(u64 base, u64 e, u64 p, u64 npinv, u64 one) nogil:
    cdef u64 acc = one
    while e:
        if e & 1:
            acc = _mont_mul(acc, base, p, npinv)
        base = _mont_mul(base, base, p, npinv)
        e >>= 1
    return acc


def chain_mod(int kind, object sig_num, object sig_den, int m_max, int vcap,
              object p_in, harvests):
    """Residues of the scaled bivariate coefficients mod p; see kernels.pure."""
    cdef u64 p = <u64>p_in
    # npinv = -p^{-1} mod 2^64 via Newton iteration on the odd modulus
    cdef u64 inv = p
    cdef int it
    for it in range(6):
        inv = inv * (2 - p * inv)
    cdef u64 npinv = <u64>(0) - inv
    cdef u64 r2 = <u64>((1 << 128) % <object>p_in)  # (2^64)^2 mod p
    cdef u64 one = <u64>((1 << 64) % <object>p_in)
    cdef u64 pm2 = p - 2

    cdef int q, d, a, b, i, j, jtop, deg, degb, degh, dmax
    cdef u64 w, wg, sig, inv2, scale, acc_v, sinv, ff

    # Montgomery images of small nonnegative integers, built by addition
    cdef int max_small = m_max + vcap + 2
    for mm, nn in harvests:
        if <int>nn + 2 > max_small:
            max_small = <int>nn + 2
    cdef u64 *small = <u64 *>malloc((max_small + 1) * sizeof(u64))
    if not small:
        raise MemoryError
    small[0] = 0
    for i in range(1, max_small + 1):
        small[i] = _addmod(small[i - 1], one, p)

    sig = _mont_mul(<u64>(<object>sig_num % <object>p_in), r2, p, npinv)
    sig = _mont_mul(sig, _mont_pow(
        _mont_mul(<u64>(<object>sig_den % <object>p_in), r2, p, npinv),
        pm2, p, npinv, one), p, npinv)
    inv2 = _mont_pow(small[2], pm2, p, npinv, one)

    cdef int qmax = 2 * m_max
    # rolling Stirling row (Montgomery form) and per-b block rows g[b]
    cdef u64 *stir = <u64 *>calloc(vcap + 1, sizeof(u64))
    cdef u64 *prev = <u64 *>calloc(vcap + 1, sizeof(u64))
    cdef u64 **g = <u64 **>calloc(m_max + 1, sizeof(u64 *))
    cdef u64 **h = <u64 **>calloc(m_max + 1, sizeof(u64 *))
    cdef int *glen = <int *>calloc(m_max + 1, sizeof(int))
    cdef int *hlen = <int *>calloc(m_max + 1, sizeof(int))
    if not (stir and prev and g and h and glen and hlen):
        free(small)
        raise MemoryError

    cdef u64 *acc = NULL
    cdef u64 *gb = NULL
    cdef u64 *hb = NULL

    try:
        prev[0] = one  # S(0, 0) = 1
        scale = one    # inv2^b / b!
        for q in range(1, qmax + 1):
            # stir <- row q from prev (row q-1); S(q,d) = S(q-1,d-1) + d S(q-1,d)
            stir[0] = 0
            jtop = q if q < vcap else vcap
            for d in range(1, jtop + 1):
                stir[d] = _addmod(prev[d - 1],
                                  _mont_mul(small[d], prev[d], p, npinv), p)
            for d in range(jtop + 1, vcap + 1):
                stir[d] = 0
            if q % 2 == 0:
                b = q // 2
                scale = _mont_mul(scale, inv2, p, npinv)
                scale = _mont_mul(scale, _mont_pow(small[b], pm2, p, npinv, one),
                                  p, npinv)
                deg = 2 * b if 2 * b < vcap else vcap
                g[b] = <u64 *>malloc((deg + 1) * sizeof(u64))
                if not g[b]:
                    raise MemoryError
                glen[b] = deg + 1
                for d in range(deg + 1):
                    g[b][d] = _mont_mul(stir[d], scale, p, npinv)
            # swap stir/prev
            gb = stir; stir = prev; prev = gb
            gb = NULL

        # chain rows
        h[0] = <u64 *>malloc(sizeof(u64))
        if not h[0]:
            raise MemoryError
        hlen[0] = 1
        h[0][0] = 0 if kind == 1 else one

        for a in range(1, m_max + 1):
            deg = 2 * a if 2 * a < vcap else vcap
            acc = <u64 *>calloc(deg + 1, sizeof(u64))
            if not acc:
                raise MemoryError
            if kind == 0:
                # a H_a = sum_b (sig*b - (a-b)) G_b H_{a-b}
                for b in range(1, a + 1):
                    w = _submod(_mont_mul(sig, small[b], p, npinv),
                                small[a - b], p)
                    if w == 0:
                        continue
                    gb = g[b]; hb = h[a - b]
                    degb = glen[b] - 1
                    degh = hlen[a - b] - 1
                    for i in range(degb + 1):
                        if gb[i] == 0 or i > deg:
                            continue
                        wg = _mont_mul(w, gb[i], p, npinv)
                        jtop = deg - i
                        if jtop > degh:
                            jtop = degh
                        for j in range(jtop + 1):
                            if hb[j]:
                                acc[i + j] = _addmod(
                                    acc[i + j], _mont_mul(wg, hb[j], p, npinv), p)
            else:
                # a L_a = a G_a - sum_{b<a} (a-b) G_b L_{a-b}
                gb = g[a]
                w = small[a]
                for i in range(glen[a]):
                    if i <= deg and gb[i]:
                        acc[i] = _mont_mul(w, gb[i], p, npinv)
                for b in range(1, a):
                    w = small[a - b]
                    gb = g[b]; hb = h[a - b]
                    degb = glen[b] - 1
                    degh = hlen[a - b] - 1
                    for i in range(degb + 1):
                        if gb[i] == 0 or i > deg:
                            continue
                        wg = _mont_mul(w, gb[i], p, npinv)
                        jtop = deg - i
                        if jtop > degh:
                            jtop = degh
                        for j in range(jtop + 1):
                            if hb[j]:
                                acc[i + j] = _submod(
                                    acc[i + j], _mont_mul(wg, hb[j], p, npinv), p)
            w = _mont_pow(small[a], pm2, p, npinv, one)
            h[a] = <u64 *>malloc((deg + 1) * sizeof(u64))
            if not h[a]:
                raise MemoryError
            hlen[a] = deg + 1
            for i in range(deg + 1):
                h[a][i] = _mont_mul(acc[i], w, p, npinv)
            free(acc)
            acc = NULL

        out = []
        for mm, nn in harvests:
            a = <int>mm
            q = <int>nn
            hb = h[a]
            degh = hlen[a] - 1
            if kind == 0:
                # X = 2^(m+n) m! sum_d H_m[d] sig^(n-d) (n)_d
                acc_v = 0
                dmax = q if q < degh else degh
                w = _mont_pow(sig, <u64>q, p, npinv, one)   # sig^n
                sinv = _mont_pow(sig, pm2, p, npinv, one)   # sig^-1
                ff = one                                     # falling factorial
                for i in range(dmax + 1):
                    if i:
                        ff = _mont_mul(ff, small[q - i + 1], p, npinv)
                        w = _mont_mul(w, sinv, p, npinv)
                    if hb[i]:
                        acc_v = _addmod(
                            acc_v,
                            _mont_mul(hb[i], _mont_mul(w, ff, p, npinv), p, npinv),
                            p)
                w = _mont_pow(small[2], <u64>(a + q), p, npinv, one)
                acc_v = _mont_mul(acc_v, w, p, npinv)
                ff = one
                for i in range(2, a + 1):
                    ff = _mont_mul(ff, small[i], p, npinv)
                acc_v = _mont_mul(acc_v, ff, p, npinv)
            else:
                # X = 2^m m! n! [v^n] L_m
                acc_v = hb[q] if q <= degh else 0
                ff = one
                for i in range(2, q + 1):
                    ff = _mont_mul(ff, small[i], p, npinv)
                acc_v = _mont_mul(acc_v, ff, p, npinv)
                ff = one
                for i in range(2, a + 1):
                    ff = _mont_mul(ff, small[i], p, npinv)
                acc_v = _mont_mul(acc_v, ff, p, npinv)
                w = _mont_pow(small[2], <u64>a, p, npinv, one)
                acc_v = _mont_mul(acc_v, w, p, npinv)
            # convert out of Montgomery form
            out.append(int(_mont_mul(acc_v, 1, p, npinv)))
        return out
    finally:
        free(small); free(stir); free(prev)
        if acc != NULL:
            free(acc)
        for a in range(m_max + 1):
            if g[a] != NULL:
                free(g[a])
            if h[a] != NULL:
                free(h[a])
        free(g); free(h); free(glen); free(hlen)
