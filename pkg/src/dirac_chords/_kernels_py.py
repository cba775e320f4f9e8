"""Pure-Python kernels: cycle counting and completion histograms.

Vertices are 0-based here.  ``partner[v]`` is the chord partner of ``v`` or
``-1`` for a free (2-valent) vertex; ``nb1``/``nb2`` give the neighbour along
the colour-1/colour-2 base edge.  Mirrors ``_kernels.pyx`` line by line.
"""


def neighbour_tables(sizes, flips=None):
    nb1, nb2 = [], []
    start = 0
    for b, m in enumerate(sizes):
        flip = bool(flips[b]) if flips is not None else False
        for t in range(m):
            fwd = start + (t + 1) % m
            back = start + (t - 1) % m
            a, c = (fwd, back) if t % 2 == 0 else (back, fwd)
            if flip:
                a, c = c, a
            nb1.append(a)
            nb2.append(c)
        start += m
    return nb1, nb2


def cycle_counts(nb1, nb2, partner):
    """Return ``(c01, c02, c3)``: two-coloured cycles per colour pair and 3-cycles."""
    n = len(partner)
    counts = [0, 0]
    ends = ([-1] * n, [-1] * n)
    for col, nb in ((0, nb1), (1, nb2)):
        seen = [False] * n
        end = ends[col]
        for v in range(n):
            if partner[v] < 0 and not seen[v]:
                seen[v] = True
                cur = v
                while True:
                    nxt = nb[cur]
                    seen[nxt] = True
                    if partner[nxt] < 0:
                        break
                    cur = partner[nxt]
                    seen[cur] = True
                end[v] = nxt
                end[nxt] = v
        for v in range(n):
            if not seen[v]:
                counts[col] += 1
                cur = v
                while True:
                    seen[cur] = True
                    nxt = nb[cur]
                    seen[nxt] = True
                    cur = partner[nxt]
                    if cur == v:
                        break
    c3 = 0
    seen3 = [False] * n
    for v in range(n):
        if partner[v] < 0 and not seen3[v]:
            c3 += 1
            cur = v
            while True:
                a = ends[0][cur]
                seen3[a] = True
                cur = ends[1][a]
                seen3[cur] = True
                if cur == v:
                    break
    return counts[0], counts[1], c3


def s_histogram(sizes, partner, extra):
    """Histogram ``{s: count}`` over all ways to add ``extra`` chords.

    ``s = c2 + c3`` is evaluated in the canonical colouring.  Chord sets are
    unordered, so every completion is counted once.
    """
    nb1, nb2 = neighbour_tables(sizes)
    partner = list(partner)
    ell = len(sizes)
    free = [v for v in range(len(partner)) if partner[v] < 0]
    hist = {}

    def rec(pos, left):
        if left == 0:
            c01, c02, c3 = cycle_counts(nb1, nb2, partner)
            s = c01 + c02 + ell + c3
            hist[s] = hist.get(s, 0) + 1
            return
        while pos < len(free) and partner[free[pos]] >= 0:
            pos += 1
        remaining = sum(1 for v in free[pos:] if partner[v] < 0)
        if remaining < 2 * left:
            return
        v = free[pos]
        for q in range(pos + 1, len(free)):
            w = free[q]
            if partner[w] < 0:
                partner[v] = w
                partner[w] = v
                rec(pos + 1, left - 1)
                partner[v] = -1
                partner[w] = -1
        if remaining - 1 >= 2 * left:
            # leave v free
            partner[v] = -2
            rec(pos + 1, left)
            partner[v] = -1

    # -2 marks "free but skipped"; cycle_counts only tests < 0
    rec(0, extra)
    return hist
