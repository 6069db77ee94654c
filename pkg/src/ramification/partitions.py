"""Integer partitions: counting and enumeration."""

from __future__ import annotations

from functools import lru_cache


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """Number of partitions of ``n``, with ``p(0) = 1``.

    Uses Euler's pentagonal recurrence.
    """
    if n < 0:
        raise ValueError(f"partition_count needs n >= 0, got {n}")
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > n:
            break
        sign = 1 if k % 2 else -1
        total += sign * partition_count(n - g1)
        g2 = k * (3 * k + 1) // 2
        if g2 <= n:
            total += sign * partition_count(n - g2)
        k += 1
    return total


def enumerate_partitions(n: int, max_part: int | None = None) -> list[tuple[int, ...]]:
    """All partitions of ``n`` as weakly decreasing tuples.

    Order is reverse lexicographic, so ``3 -> [(3,), (2, 1), (1, 1, 1)]``.
    ``enumerate_partitions(0) == [()]``.
    """
    if n < 0:
        raise ValueError(f"enumerate_partitions needs n >= 0, got {n}")
    if max_part is None:
        max_part = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in enumerate_partitions(n - first, first):
            out.append((first,) + rest)
    return out
