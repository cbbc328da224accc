"""Brute-force counting of the restricted overpartitions behind ``pbar_omega(n)``.

An object counted by ``pbar_omega(n)`` is an overpartition of ``n`` whose odd
parts are all smaller than twice the smallest part and whose smallest part
is overlined.  At most one occurrence of each part value carries an overline;
by convention it is the last occurrence.

Three independent counts are provided: :func:`enumerate_overpartitions`
materializes every object, :func:`count_by_smallest_part` counts the same
search tree without building it, and :func:`count_weighted` filters all
ordinary partitions and weighs each by ``2^(d-1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterator

from .errors import DomainError
from .gaussrat import GaussRat
from .series import XSeries, xorder


@dataclass(frozen=True)
class Overpartition:
    parts: tuple  # weakly decreasing
    overlined: frozenset = field(default_factory=frozenset)

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def smallest(self) -> int:
        return self.parts[-1]

    def violations(self) -> list[str]:
        out = []
        p = self.parts
        if not p or any(x <= 0 for x in p):
            return ["parts must be positive and nonempty"]
        if any(a < b for a, b in zip(p, p[1:])):
            out.append("parts are not weakly decreasing")
        if not self.overlined <= set(p):
            out.append("an overlined value is not a part")
        s = min(p)
        if s not in self.overlined:
            out.append("smallest part is not overlined")
        if any(x % 2 and x >= 2 * s for x in p):
            out.append("an odd part is not less than twice the smallest part")
        return out

    def __str__(self):
        marked = []
        seen = set()
        for i, v in enumerate(self.parts):
            last = i + 1 == len(self.parts) or self.parts[i + 1] != v
            if last and v in self.overlined and v not in seen:
                marked.append(f"{v}'")
                seen.add(v)
            else:
                marked.append(str(v))
        return "+".join(marked)


def _check(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")


def _allowed_parts(s: int, top: int) -> list[int]:
    """Part values usable when the smallest part is ``s``, in decreasing order."""
    return [v for v in range(top, s - 1, -1) if v % 2 == 0 or v < 2 * s]


def _decreasing(m: int, values: list[int], i: int = 0) -> Iterator[tuple]:
    if m == 0:
        yield ()
        return
    for k in range(i, len(values)):
        v = values[k]
        if v <= m:
            for tail in _decreasing(m - v, values, k):
                yield (v,) + tail


def _restricted_partitions(n: int, s: int) -> Iterator[tuple]:
    """Partitions of ``n`` with smallest part exactly ``s`` obeying the odd-part rule."""
    values = _allowed_parts(s, n - s)
    for rest in _decreasing(n - s, values):
        yield rest + (s,)


def enumerate_overpartitions(n: int) -> list[Overpartition]:
    """Every overpartition counted by ``pbar_omega(n)``, grouped by smallest part."""
    _check(n)
    out = []
    for s in range(1, n + 1):
        for parts in _restricted_partitions(n, s):
            others = sorted(set(parts) - {s})
            for r in range(len(others) + 1):
                for chosen in combinations(others, r):
                    out.append(Overpartition(parts, frozenset((s, *chosen))))
    return out


def _nth_allowed(s: int, k: int) -> int:
    # s, s+1, ..., 2s-1 are all allowed; from 2s on only even values
    return s + k if k < s else 2 * k


@lru_cache(maxsize=None)
def _count_tail(s: int, m: int, k: int) -> int:
    """Weighted partitions of ``m`` into allowed parts not below the k-th allowed value."""
    if m == 0:
        return 1
    v = _nth_allowed(s, k)
    if v > m:
        return 0
    total = _count_tail(s, m, k + 1)
    weight = 1 if v == s else 2
    used = v
    while used <= m:
        total += weight * _count_tail(s, m - used, k + 1)
        used += v
    return total


def count_by_smallest_part(n: int) -> dict[int, int]:
    """``{s: number of objects of size n with smallest part s}`` without materializing them."""
    _check(n)
    return {s: _count_tail(s, n - s, 0) for s in range(1, n + 1)}


def count(n: int) -> int:
    return sum(count_by_smallest_part(n).values())


def _partitions(n: int) -> Iterator[list[int]]:
    # Kelleher's ascending composition generator
    a = [0] * (n + 1)
    k = 1
    y = n - 1
    while k != 0:
        x = a[k - 1] + 1
        k -= 1
        while 2 * x <= y:
            a[k] = x
            y -= x
            k += 1
        l = k + 1
        while x <= y:
            a[k] = x
            a[l] = y
            yield a[:k + 2]
            x += 1
            y -= 1
        a[k] = x + y
        y = x + y - 1
        yield a[:k + 1]


def count_weighted(n: int) -> int:
    """Sum of ``2^(d-1)`` over ordinary partitions of ``n`` obeying the odd-part rule."""
    _check(n)
    total = 0
    for lam in _partitions(n):
        s = lam[0]
        if all(x % 2 == 0 or x < 2 * s for x in lam):
            total += 1 << (len(set(lam)) - 1)
    return total


def pbar_omega_series(max_n: int) -> XSeries:
    """``sum_{n=1}^{max_n} pbar_omega(n) q^n``, known through ``q^max_n``."""
    if max_n < 0:
        raise DomainError(f"max_n must be nonnegative, got {max_n}")
    return XSeries({2 * n: count(n) for n in range(1, max_n + 1)}, xorder(max_n))


@dataclass
class CrosscheckRow:
    n: int
    count: int
    rhs: GaussRat

    @property
    def match(self) -> bool:
        return self.rhs == self.count


@dataclass
class CrosscheckReport:
    max_n: int
    rows: list
    constant_term: GaussRat
    real: bool
    even: bool

    @property
    def passed(self) -> bool:
        return (self.constant_term == 0 and self.real and self.even
                and all(r.match for r in self.rows))


def crosscheck_thm11(max_n: int) -> CrosscheckReport:
    """Compare the overpartition generating-function expansion with brute-force counts."""
    from .identities import THM11, build_side

    _check(max_n)
    rhs = build_side(THM11, "rhs", max_n)
    rows = [CrosscheckRow(n, count_weighted(n), rhs.coeff_q(n)) for n in range(1, max_n + 1)]
    low = rhs.truncate(xorder(max_n))
    return CrosscheckReport(max_n, rows, rhs.coeff(0), low.is_real(), low.is_even())
