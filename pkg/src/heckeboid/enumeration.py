"""Exhaustive enumeration of q-boid graphs with n edges, with counting cross-checks."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb, factorial

from .errors import BadQ, InternalInvariantViolation, LimitExceeded
from .model import HeckeSignature
from .perms import PermutationPair, automorphism_count, canonical_form, is_transitive

DEFAULT_LIMIT = 9


@dataclass(frozen=True)
class EnumerationReport:
    q: int
    n: int
    classes: tuple[PermutationPair, ...]
    class_count: int
    transitive_pair_count: int
    all_pair_count: int
    subgroup_count: int


def involutions(n: int):
    """All permutations of 1..n with cycles of length 1 or 2."""
    img = [0] * n

    def rec(i):
        while i < n and img[i]:
            i += 1
        if i == n:
            yield tuple(img)
            return
        img[i] = i + 1
        yield from rec(i + 1)
        for j in range(i + 1, n):
            if not img[j]:
                img[i], img[j] = j + 1, i + 1
                yield from rec(i + 1)
                img[j] = 0
        img[i] = 0

    yield from rec(0)


def standard_sigmaq(q: int, n: int, k: int) -> tuple[int, ...]:
    """(1..q)(q+1..2q)... with ``k`` q-cycles, remaining points fixed."""
    img = list(range(1, n + 1))
    for c in range(k):
        block = list(range(c * q + 1, (c + 1) * q + 1))
        for a, b in zip(block, block[1:] + block[:1]):
            img[a - 1] = b
    return tuple(img)


def _classes_for_type(q: int, n: int, k: int) -> dict[tuple, PermutationPair]:
    sig = HeckeSignature(q)
    sq = standard_sigmaq(q, n, k)
    found = {}
    fixed_q = {i for i in range(1, n + 1) if sq[i - 1] == i}
    for s2 in involutions(n):
        # a point fixed by both generators is an isolated orbit
        if n > 1 and any(s2[i - 1] == i for i in fixed_q):
            continue
        if not is_transitive((s2, sq)):
            continue
        c = canonical_form(PermutationPair(sig, s2, sq))
        found.setdefault((c.sigma2, c.sigmaq), c)
    return found


def all_classes(q: int, n: int, limit: int = DEFAULT_LIMIT, workers: int = 1) -> EnumerationReport:
    """One canonical pair per isomorphism class of q-boid graphs with n edges.

    Every valid pair is conjugate to one whose sigmaq is a standard product
    of consecutive q-cycles, so only those are searched; sigma2 runs over
    all involutions and duplicates are merged through canonical forms.
    """
    HeckeSignature(q)
    if n < 1:
        raise LimitExceeded(f"n must be >= 1, got {n}")
    if n > limit:
        raise LimitExceeded(f"n={n} exceeds the enumeration limit {limit}")
    types = range(n // q + 1)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_classes_for_type, [q] * len(types), [n] * len(types), types))
    else:
        parts = [_classes_for_type(q, n, k) for k in types]
    merged = {}
    for part in parts:
        merged.update(part)
    classes = tuple(merged[key] for key in sorted(merged))

    transitive = sum(factorial(n) // automorphism_count(c) for c in classes)
    if transitive % factorial(n - 1):
        raise InternalInvariantViolation(f"{transitive} transitive pairs not divisible by {n - 1}!")
    i2, iq = count_solutions(q, n)
    return EnumerationReport(
        q=q,
        n=n,
        classes=classes,
        class_count=len(classes),
        transitive_pair_count=transitive,
        all_pair_count=i2 * iq,
        subgroup_count=transitive // factorial(n - 1),
    )


def _solutions(n: int, d: int) -> int:
    """Permutations of n points with every cycle of length 1 or d."""
    a = [0] * (n + 1)
    a[0] = 1
    for m in range(1, n + 1):
        a[m] = a[m - 1]
        if m >= d:
            falling = 1
            for j in range(1, d):
                falling *= m - j
            a[m] += falling * a[m - d]
    return a[n]


def count_solutions(q: int, n: int) -> tuple[int, int]:
    if q < 3:
        raise BadQ(f"q must be >= 3, got {q}")
    return _solutions(n, 2), _solutions(n, q)


def hall_transitive_count(q: int, n: int) -> int:
    """Number of transitive valid pairs on n points, by inclusion-exclusion over the orbit of 1."""
    h = [0] + [count_solutions(q, m)[0] * count_solutions(q, m)[1] for m in range(1, n + 1)]
    t = [0] * (n + 1)
    for m in range(1, n + 1):
        t[m] = h[m] - sum(comb(m - 1, k - 1) * t[k] * h[m - k] for k in range(1, m))
    return t[n]
