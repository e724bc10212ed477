import random
import sys
from functools import lru_cache

import pytest

from blz.core import Parsing, Phrase


def hops_oracle(s, phi):
    """Hop numbers by top-down recursion on the definition (independent of compute_hops)."""
    owner = {}
    for ph in phi:
        for p in range(ph.start, ph.end + 1):
            owner[p] = ph

    @lru_cache(maxsize=None)
    def hop(p):
        ph = owner[p]
        if p == ph.end:
            return 0
        t = p - ph.start + 1  # 1-based offset inside the phrase
        unit = ph.start - ph.source  # i_{j-1} - l + 1
        q = ph.source + ((t - 1) % unit)
        assert q < p
        return hop(q) + 1

    return [hop(p) for p in range(1, len(s) + 1)]


def valid_sources(s, start, end):
    """1-based sources that make s[start..end] a valid copy phrase."""
    out = []
    length = end - start + 1
    for src in range(1, start):
        unit = start - src
        if all(s[start - 1 + t] == s[src - 1 + t % unit] for t in range(length - 1)):
            out.append(src)
    return out


def all_parsings(s):
    """Every LZ parsing with every source choice (exponential)."""
    n = len(s)

    def rec(start):
        if start > n:
            yield ()
            return
        for end in range(start, n + 1):
            if end == start:
                choices = [None]
            else:
                choices = valid_sources(s, start, end)
            for src in choices:
                for rest in rec(end + 1):
                    yield (Phrase(start, end, src),) + rest

    for phrases in rec(1):
        yield Parsing(phrases)


def blz_bruteforce(s, c):
    best = None
    for phi in all_parsings(s):
        if max(hops_oracle(s, phi), default=0) <= c:
            if best is None or len(phi) < best:
                best = len(phi)
    return best


def random_parsing(s, rng, c=None):
    """Random valid parsing, optionally keeping every hop number <= c."""
    n = len(s)
    hops = [0] * n
    phrases = []
    start = 1
    while start <= n:
        options = [(start, None)]
        for end in range(start + 1, n + 1):
            for src in valid_sources(s, start, end):
                unit = start - src
                vec = [hops[src - 1 + t % unit] + 1 for t in range(end - start)]
                if c is None or max(vec) <= c:
                    options.append((end, src))
        end, src = rng.choice(options)
        if src is not None:
            unit = start - src
            for t in range(end - start):
                hops[start - 1 + t] = hops[src - 1 + t % unit] + 1
        hops[end - 1] = 0
        phrases.append(Phrase(start, end, src))
        start = end + 1
    return Parsing(tuple(phrases))


@pytest.fixture
def rng():
    return random.Random(20240601)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k][1])
