# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: cycle counting and completion histograms.

Same interface and vertex conventions as ``_kernels_py``.
"""
from libc.stdlib cimport malloc, free, calloc


def neighbour_tables(sizes, flips=None):
    nb1, nb2 = [], []
    cdef int start = 0, b, m, t, a, c
    for b, m in enumerate(sizes):
        flip = bool(flips[b]) if flips is not None else False
        for t in range(m):
            if t % 2 == 0:
                a = start + (t + 1) % m
                c = start + (t - 1 + m) % m
            else:
                a = start + (t - 1 + m) % m
                c = start + (t + 1) % m
            if flip:
                a, c = c, a
            nb1.append(a)
            nb2.append(c)
        start += m
    return nb1, nb2


cdef struct Work:
    int n
    int *nb1
    int *nb2
    int *partner
    int *end1
    int *end2
    char *seen


cdef inline int _colour_pass(Work *w, int *nb, int *end) nogil:
    cdef int n = w.n, v, cur, nxt, cycles = 0
    cdef char *seen = w.seen
    for v in range(n):
        seen[v] = 0
    for v in range(n):
        if w.partner[v] < 0 and not seen[v]:
            seen[v] = 1
            cur = v
            while True:
                nxt = nb[cur]
                seen[nxt] = 1
                if w.partner[nxt] < 0:
                    break
                cur = w.partner[nxt]
                seen[cur] = 1
            end[v] = nxt
            end[nxt] = v
    for v in range(n):
        if not seen[v]:
            cycles += 1
            cur = v
            while True:
                seen[cur] = 1
                nxt = nb[cur]
                seen[nxt] = 1
                cur = w.partner[nxt]
                if cur == v:
                    break
    return cycles


cdef inline void _counts(Work *w, int *c01, int *c02, int *c3) nogil:
    cdef int n = w.n, v, cur, a, k = 0
    c01[0] = _colour_pass(w, w.nb1, w.end1)
    c02[0] = _colour_pass(w, w.nb2, w.end2)
    for v in range(n):
        w.seen[v] = 0
    for v in range(n):
        if w.partner[v] < 0 and not w.seen[v]:
            k += 1
            cur = v
            while True:
                a = w.end1[cur]
                w.seen[a] = 1
                cur = w.end2[a]
                w.seen[cur] = 1
                if cur == v:
                    break
    c3[0] = k


cdef Work *_alloc(int n):
    cdef Work *w = <Work *> malloc(sizeof(Work))
    w.n = n
    w.nb1 = <int *> malloc(max(n, 1) * sizeof(int))
    w.nb2 = <int *> malloc(max(n, 1) * sizeof(int))
    w.partner = <int *> malloc(max(n, 1) * sizeof(int))
    w.end1 = <int *> malloc(max(n, 1) * sizeof(int))
    w.end2 = <int *> malloc(max(n, 1) * sizeof(int))
    w.seen = <char *> calloc(max(n, 1), sizeof(char))
    return w


cdef void _release(Work *w):
    free(w.nb1)
    free(w.nb2)
    free(w.partner)
    free(w.end1)
    free(w.end2)
    free(w.seen)
    free(w)


def cycle_counts(nb1, nb2, partner):
    """Return ``(c01, c02, c3)``: two-coloured cycles per colour pair and 3-cycles."""
    cdef int n = len(partner), i, c01, c02, c3
    cdef Work *w = _alloc(n)
    try:
        for i in range(n):
            w.nb1[i] = nb1[i]
            w.nb2[i] = nb2[i]
            w.partner[i] = partner[i]
        _counts(w, &c01, &c02, &c3)
    finally:
        _release(w)
    return c01, c02, c3


cdef void _rec(Work *w, int *free_v, int nfree, int pos, int left,
               int ell, long long *hist) nogil:
    cdef int c01, c02, c3, q, v, remaining = 0, i
    if left == 0:
        _counts(w, &c01, &c02, &c3)
        hist[c01 + c02 + ell + c3] += 1
        return
    while pos < nfree and w.partner[free_v[pos]] >= 0:
        pos += 1
    for i in range(pos, nfree):
        if w.partner[free_v[i]] < 0:
            remaining += 1
    if remaining < 2 * left:
        return
    v = free_v[pos]
    for q in range(pos + 1, nfree):
        if w.partner[free_v[q]] < 0:
            w.partner[v] = free_v[q]
            w.partner[free_v[q]] = v
            _rec(w, free_v, nfree, pos + 1, left - 1, ell, hist)
            w.partner[v] = -1
            w.partner[free_v[q]] = -1
    if remaining - 1 >= 2 * left:
        w.partner[v] = -2
        _rec(w, free_v, nfree, pos + 1, left, ell, hist)
        w.partner[v] = -1


def s_histogram(sizes, partner, int extra):
    """Histogram ``{s: count}`` over all ways to add ``extra`` chords.

    ``s = c2 + c3`` is evaluated in the canonical colouring.
    """
    nb1, nb2 = neighbour_tables(sizes)
    cdef int n = len(partner), i, nfree = 0, ell = len(sizes)
    cdef int top = 2 * n + ell + 2
    cdef Work *w = _alloc(n)
    cdef int *free_v = <int *> malloc(max(n, 1) * sizeof(int))
    cdef long long *hist = <long long *> calloc(top, sizeof(long long))
    try:
        for i in range(n):
            w.nb1[i] = nb1[i]
            w.nb2[i] = nb2[i]
            w.partner[i] = partner[i]
            if partner[i] < 0:
                free_v[nfree] = i
                nfree += 1
        with nogil:
            _rec(w, free_v, nfree, 0, extra, ell, hist)
        out = {s: hist[s] for s in range(top) if hist[s]}
    finally:
        _release(w)
        free(free_v)
        free(hist)
    return out
