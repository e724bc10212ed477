import itertools

import pytest

from blz.core import Parsing, Phrase, compute_hops
from blz.parsers import exact_blz, greedy_bounded_blz, greedy_lz76
from blz.squarefree import audit_lower_bound, iroot_ceil, is_square_free, lower_bound, thue_word
from conftest import random_parsing


def squarefree_oracle(s):
    n = len(s)
    return not any(
        s[i : i + h] == s[i + h : i + 2 * h] for h in range(1, n // 2 + 1) for i in range(n - 2 * h + 1)
    )


def test_thue_prefix():
    assert thue_word(12) == (0, 1, 2, 0, 2, 1, 0, 1, 2, 1, 0, 2)
    assert thue_word(0) == ()
    with pytest.raises(ValueError):
        thue_word(-1)


def test_thue_prefix_closed():
    long = thue_word(500)
    for n in (1, 7, 81, 499):
        assert thue_word(n) == long[:n]


def test_thue_is_square_free():
    assert is_square_free(thue_word(6561))
    w = thue_word(300)
    assert squarefree_oracle(w)


@pytest.mark.parametrize("n", range(0, 9))
def test_square_check_matches_oracle(n):
    for s in itertools.product((0, 1, 2), repeat=n):
        assert is_square_free(s) == squarefree_oracle(s), s


def test_integer_roots():
    assert [iroot_ceil(n, 2) for n in (0, 1, 2, 4, 5, 80, 81, 82)] == [0, 1, 2, 2, 3, 9, 9, 10]
    # float rounding would misplace these boundaries
    big = 10**15 + 37
    assert iroot_ceil(big**3, 3) == big
    assert iroot_ceil(big**3 + 1, 3) == big + 1


def test_lower_bound_values():
    assert lower_bound(6561, 1) == 80
    assert lower_bound(729, 2) == 8
    assert lower_bound(1, 3) == 0
    assert lower_bound(81, 1) == 8


def test_audit_examples():
    for n, c, bound in ((6561, 1, 80), (729, 2, 8), (1, 1, 0)):
        w = thue_word(n)
        rep = audit_lower_bound(w, c, greedy_bounded_blz(w, c))
        assert rep.lower_bound == bound
        assert rep.passed and rep.hop_max <= c


def test_audit_refuses():
    with pytest.raises(ValueError, match="square-free"):
        audit_lower_bound((0, 1, 0, 1), 1, Parsing.singletons(4))
    w = thue_word(81)
    with pytest.raises(ValueError, match="hop_max"):
        audit_lower_bound(w, 1, greedy_bounded_blz(w, 2))
    with pytest.raises(ValueError):
        audit_lower_bound(w, 1, Parsing((Phrase(1, 1),)))


def test_bound_holds_for_random_parsings(rng):
    for n in (27, 81):
        w = thue_word(n)
        for c in (1, 2):
            for _ in range(10):
                phi = random_parsing(w, rng, c)
                assert compute_hops(w, phi).hop_max <= c
                assert len(phi) >= lower_bound(n, c)


def test_combined_bound_on_exact_sizes():
    for n in (9, 27, 40):
        w = thue_word(n)
        for c in (1, 2):
            r = exact_blz(w, c)
            assert r.proven_optimal
            assert r.size >= max(len(greedy_lz76(w)), lower_bound(n, c))


def test_ratio_grows():
    ratios = []
    for n in (81, 729, 6561):
        w = thue_word(n)
        ratios.append(len(greedy_bounded_blz(w, 1)) / len(greedy_lz76(w)))
    assert ratios == sorted(ratios)
