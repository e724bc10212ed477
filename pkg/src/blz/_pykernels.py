"""Pure-Python versions of the scanning kernels in ``_kernels.pyx``.

Both modules expose the same functions with the same 0-based conventions:
``s`` and ``hops`` are integer buffers, a result pair ``(length, src)``
describes one phrase with ``src == -1`` for a literal.
"""


def _extent(s, i, src, lim):
    period = i - src
    k = 0
    while k < lim and s[i + k] == s[src + k % period]:
        k += 1
    return k


def longest_copy(s, i):
    """Longest admissible copy at ``i`` and the smallest source reaching it."""
    n = len(s)
    lim = n - i - 1
    first = s[i] if i < n else None
    best_k, best_src = 0, -1
    for src in range(i):
        if s[src] != first:
            continue
        k = _extent(s, i, src, lim)
        if k > best_k:
            best_k, best_src = k, src
            if k == lim:
                break
    return best_k, best_src


def greedy_lz76(s):
    n = len(s)
    out = []
    i = 0
    while i < n:
        k, src = longest_copy(s, i)
        out.append((k + 1, src if k else -1))
        i += k + 1
    return out


def longest_phrase_lengths(s):
    return [longest_copy(s, i)[0] + 1 for i in range(len(s))]


def greedy_blz(s, c):
    n = len(s)
    hops = [0] * n
    out = []
    i = 0
    cap = c - 1
    while i < n:
        lim = n - i - 1
        best_len, best_src, best_mh = 1, -1, 0
        if cap >= 0:
            first = s[i]
            for src in range(i):
                if s[src] != first or hops[src] > cap:
                    continue
                period = i - src
                k = 0
                mh = -1
                while k < lim:
                    q = src + k % period
                    h = hops[q]
                    if h > cap or s[i + k] != s[q]:
                        break
                    if h > mh:
                        mh = h
                    k += 1
                length = k + 1
                if length > best_len or (length == best_len and length > 1 and mh < best_mh):
                    best_len, best_src, best_mh = length, src, mh
        if best_len > 1:
            period = i - best_src
            for t in range(best_len - 1):
                hops[i + t] = hops[best_src + t % period] + 1
        out.append((best_len, best_src))
        i += best_len
    return out


def source_extents(s, hops, i, max_src_hop):
    """Copy extent from every source ``src < i`` keeping source hops bounded."""
    n = len(s)
    lim = n - i - 1
    out = [0] * i
    if max_src_hop < 0 or lim <= 0:
        return out
    first = s[i]
    for src in range(i):
        if s[src] != first or hops[src] > max_src_hop:
            continue
        period = i - src
        k = 0
        while k < lim:
            q = src + k % period
            if hops[q] > max_src_hop or s[i + k] != s[q]:
                break
            k += 1
        out[src] = k
    return out


def has_square(s):
    """True when some block occurs twice in a row (O(n^2) run scan)."""
    n = len(s)
    for period in range(1, n // 2 + 1):
        run = 0
        for i in range(n - period):
            if s[i] == s[i + period]:
                run += 1
                if run == period:
                    return True
            else:
                run = 0
    return False
