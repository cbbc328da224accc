import pytest

from qseries.errors import DomainError
from qseries.overpartitions import (
    Overpartition,
    count,
    count_by_smallest_part,
    count_weighted,
    crosscheck_thm11,
    enumerate_overpartitions,
    pbar_omega_series,
)

KNOWN = [1, 2, 4, 5, 10, 12, 20, 26, 41, 46, 76, 88, 130, 152, 224]


def brute_force(n):
    """Count by trying every overline pattern on every partition of n."""
    from itertools import product

    def partitions(m, cap):
        if m == 0:
            yield ()
            return
        for v in range(min(m, cap), 0, -1):
            for rest in partitions(m - v, v):
                yield (v,) + rest

    total = 0
    for parts in partitions(n, n):
        values = sorted(set(parts))
        for flags in product((False, True), repeat=len(values)):
            op = Overpartition(parts, frozenset(v for v, f in zip(values, flags) if f))
            total += not op.violations()
    return total


def test_small_cases():
    [only] = enumerate_overpartitions(1)
    assert only.parts == (1,) and only.overlined == {1}
    assert {str(o) for o in enumerate_overpartitions(2)} == {"2'", "1+1'"}
    assert {str(o) for o in enumerate_overpartitions(3)} == {"3'", "2'+1'", "2+1'", "1+1+1'"}
    assert [count_weighted(n) for n in (1, 2, 3)] == [1, 2, 4]


def test_brute_force_oracle():
    assert [brute_force(n) for n in range(1, 13)] == KNOWN[:12]


@pytest.mark.parametrize("n", range(1, 16))
def test_enumeration_invariants(n):
    objs = enumerate_overpartitions(n)
    assert len(set(objs)) == len(objs)
    for o in objs:
        assert o.total == n
        assert o.violations() == []


def test_three_counts_agree():
    for n in range(1, 41):
        e = len(enumerate_overpartitions(n)) if n <= 30 else None
        c = count(n)
        assert count_weighted(n) == c
        if e is not None:
            assert e == c
    assert [count(n) for n in range(1, 16)] == KNOWN
    assert count(40) == 30078


@pytest.mark.parametrize("n", [1, 5, 12, 25])
def test_by_smallest_part(n):
    by_s = count_by_smallest_part(n)
    assert sum(by_s.values()) == count(n)
    tally = {}
    for o in enumerate_overpartitions(n):
        tally[o.smallest] = tally.get(o.smallest, 0) + 1
    assert {s: c for s, c in by_s.items() if c} == tally
    assert by_s[n] == 1


def test_violations_reported():
    assert "smallest part is not overlined" in Overpartition((2, 1), frozenset({2})).violations()
    assert Overpartition((3, 1), frozenset({1})).violations() == [
        "an odd part is not less than twice the smallest part"]


@pytest.mark.parametrize("bad", [0, -3, 2.5])
def test_domain(bad):
    for f in (enumerate_overpartitions, count, count_weighted, count_by_smallest_part):
        with pytest.raises(DomainError):
            f(bad)


def test_generating_series():
    s = pbar_omega_series(5)
    assert [s.coeff_q(n) for n in range(6)] == [0, 1, 2, 4, 5, 10]


def test_crosscheck():
    small = crosscheck_thm11(3)
    assert small.passed
    assert [r.count for r in small.rows] == [1, 2, 4]
    assert small.constant_term == 0
    assert crosscheck_thm11(20).passed
