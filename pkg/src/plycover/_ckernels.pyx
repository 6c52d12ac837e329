# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of :mod:`plycover._pykernels` for instances of at most 64 squares and 64 points."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

BACKEND = "cython"
MAX_BITS = 64

cdef extern from *:
    int __builtin_popcountll(unsigned long long x) nogil
    int __builtin_ctzll(unsigned long long x) nogil


cdef struct Search:
    int n_sq
    int t
    int card
    uint64_t full
    uint64_t* sq_cover
    uint64_t* pt_opts
    int n_pts
    int* cap_off
    int* cap_idx
    int* cnt
    long long nodes


cdef bint _rec(Search* st, uint64_t S, uint64_t covered, uint64_t allowed, int size,
               uint64_t* out) nogil:
    cdef uint64_t unc, low, o, best_opts = 0
    cdef int p, n, best_n, s, k
    cdef bint ok
    st.nodes += 1
    if covered == st.full:
        out[0] = S
        return True
    if size >= st.card:
        return False
    unc = st.full & ~covered
    best_n = st.n_sq + 1
    while unc:
        p = __builtin_ctzll(unc)
        unc &= unc - 1
        o = st.pt_opts[p] & allowed
        n = __builtin_popcountll(o)
        if n < best_n:
            best_n = n
            best_opts = o
            if n <= 1:
                break
    if best_n == 0:
        return False
    o = best_opts
    while o:
        s = __builtin_ctzll(o)
        low = (<uint64_t>1) << s
        o &= o - 1
        ok = True
        for k in range(st.cap_off[s], st.cap_off[s + 1]):
            if st.cnt[st.cap_idx[k]] >= st.t:
                ok = False
                break
        if ok:
            for k in range(st.cap_off[s], st.cap_off[s + 1]):
                st.cnt[st.cap_idx[k]] += 1
            if _rec(st, S | low, covered | st.sq_cover[s], allowed & ~low, size + 1, out):
                return True
            for k in range(st.cap_off[s], st.cap_off[s + 1]):
                st.cnt[st.cap_idx[k]] -= 1
        allowed &= ~low
    return False


def max_depth(mask, caps):
    cdef uint64_t m = mask
    cdef uint64_t c
    cdef int best = 0, d
    for cap in caps:
        c = cap
        d = __builtin_popcountll(m & c)
        if d > best:
            best = d
    return best


def find_cover(sq_cover, pt_opts, caps, int t, int card, forced=0, allowed=None):
    cdef int n_sq = len(sq_cover)
    cdef int n_pts = len(pt_opts)
    cdef int n_caps = len(caps)
    cdef int i, s, total = 0
    cdef uint64_t cap, m, f, al, covered = 0, out = 0
    cdef int size = 0
    cdef Search st
    cdef bint found
    if n_sq > MAX_BITS or n_pts > MAX_BITS:
        raise ValueError("compiled kernel handles at most 64 squares and 64 points")
    f = forced
    if allowed is None:
        al = (<uint64_t>0xFFFFFFFFFFFFFFFF) if n_sq == 64 else (((<uint64_t>1) << n_sq) - 1)
    else:
        al = allowed
    al |= f

    st.n_sq = n_sq
    st.n_pts = n_pts
    st.t = t
    st.card = card
    st.full = (<uint64_t>0xFFFFFFFFFFFFFFFF) if n_pts == 64 else (((<uint64_t>1) << n_pts) - 1)
    st.nodes = 0
    st.sq_cover = <uint64_t*> malloc(max(n_sq, 1) * sizeof(uint64_t))
    st.pt_opts = <uint64_t*> malloc(max(n_pts, 1) * sizeof(uint64_t))
    st.cap_off = <int*> malloc((n_sq + 1) * sizeof(int))
    st.cnt = <int*> malloc(max(n_caps, 1) * sizeof(int))
    for i in range(n_sq):
        st.sq_cover[i] = sq_cover[i]
    for i in range(n_pts):
        st.pt_opts[i] = pt_opts[i]
    for i in range(n_sq + 1):
        st.cap_off[i] = 0
    cap_list = [int(c) for c in caps]
    for i in range(n_caps):
        st.cnt[i] = 0
        m = cap_list[i]
        while m:
            s = __builtin_ctzll(m)
            m &= m - 1
            st.cap_off[s + 1] += 1
            total += 1
    for i in range(n_sq):
        st.cap_off[i + 1] += st.cap_off[i]
    st.cap_idx = <int*> malloc(max(total, 1) * sizeof(int))
    fill = [st.cap_off[i] for i in range(n_sq)]
    for i in range(n_caps):
        m = cap_list[i]
        while m:
            s = __builtin_ctzll(m)
            m &= m - 1
            st.cap_idx[fill[s]] = i
            fill[s] += 1
    try:
        m = f
        while m:
            s = __builtin_ctzll(m)
            m &= m - 1
            covered |= st.sq_cover[s]
            size += 1
            for i in range(st.cap_off[s], st.cap_off[s + 1]):
                st.cnt[st.cap_idx[i]] += 1
                if st.cnt[st.cap_idx[i]] > t:
                    return None, 0
        if size > card:
            return None, 0
        al &= ~f
        with nogil:
            found = _rec(&st, f, covered, al, size, &out)
        return (int(out) if found else None), int(st.nodes)
    finally:
        free(st.sq_cover)
        free(st.pt_opts)
        free(st.cap_off)
        free(st.cap_idx)
        free(st.cnt)
