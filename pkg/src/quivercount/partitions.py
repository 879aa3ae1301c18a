"""Partition arithmetic: normalization, conjugates, rectangle complements.

Partitions are stored as tuples of positive integers in weakly decreasing
order; the empty tuple is the empty partition.  All constructors normalize
(sort check + trailing zeros stripped) so partitions can be used directly
as dict keys and memoization keys.
"""

from __future__ import annotations

from math import comb
from typing import Iterable, NamedTuple


class Rectangle(NamedTuple):
    """An r x c bounding box for partitions (rows tall, cols wide).

    Either side may be zero; the only partition fitting a degenerate
    rectangle is the empty one.
    """

    rows: int
    cols: int


def partition(parts: Iterable[int]) -> tuple[int, ...]:
    """Normalize an iterable of part sizes into a canonical partition.

    Zeros are stripped; raises ValueError on negative or increasing parts.
    """
    p = tuple(int(x) for x in parts if x != 0)
    for i, x in enumerate(p):
        if x < 0:
            raise ValueError(f"negative part {x} in partition {p}")
        if i > 0 and p[i - 1] < x:
            raise ValueError(f"parts not weakly decreasing: {p}")
    return p


def size(lam: tuple[int, ...]) -> int:
    return sum(lam)


def conjugate(lam: tuple[int, ...]) -> tuple[int, ...]:
    """Transpose the Young diagram: result_j = #{i : lam_i >= j+1}."""
    if not lam:
        return ()
    out = []
    for j in range(lam[0]):
        out.append(sum(1 for x in lam if x > j))
    return tuple(out)


def fits(lam: tuple[int, ...], rect: Rectangle) -> bool:
    """True iff lam has at most rect.rows parts, each at most rect.cols."""
    if len(lam) > rect.rows:
        return False
    return not lam or lam[0] <= rect.cols


def complement(lam: tuple[int, ...], rect: Rectangle) -> tuple[int, ...]:
    """180-degree rotated complement of lam inside rect.

    Entry i of the result is cols - lam[rows-1-i] (missing parts read as 0).
    Involution; sizes of lam and its complement add up to rows*cols.
    """
    if not fits(lam, rect):
        raise ValueError(f"partition {lam} does not fit in {rect.rows}x{rect.cols}")
    padded = list(lam) + [0] * (rect.rows - len(lam))
    return partition(rect.cols - padded[rect.rows - 1 - i] for i in range(rect.rows))


def partitions_in_rectangle(rect: Rectangle) -> list[tuple[int, ...]]:
    """All partitions inside rect, in graded-lexicographic order.

    Sorted by size, then lexicographically; there are
    binomial(rows+cols, rows) of them.
    """
    acc: list[tuple[int, ...]] = []

    def rec(prefix: list[int], maxpart: int, rows_left: int) -> None:
        acc.append(tuple(prefix))
        if rows_left == 0:
            return
        for p in range(1, maxpart + 1):
            prefix.append(p)
            rec(prefix, p, rows_left - 1)
            prefix.pop()

    rec([], rect.cols, rect.rows)
    acc.sort(key=lambda lam: (sum(lam), lam))
    return acc


def count_in_rectangle(rect: Rectangle) -> int:
    """Number of partitions inside rect, binomial(rows+cols, rows)."""
    return comb(rect.rows + rect.cols, rect.rows)


def contains(outer: tuple[int, ...], inner: tuple[int, ...]) -> bool:
    """Containment of Young diagrams: inner_i <= outer_i for all i."""
    if len(inner) > len(outer):
        return False
    return all(inner[i] <= outer[i] for i in range(len(inner)))


def format_partition(lam: tuple[int, ...]) -> str:
    """Render as "(p1,p2,...)"; the empty partition renders as "()"."""
    return "(" + ",".join(str(x) for x in lam) + ")"


def parse_partition(text: str) -> tuple[int, ...]:
    """Parse the textual form produced by format_partition."""
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"malformed partition {text!r}: expected (p1,p2,...)")
    body = s[1:-1].strip()
    if not body:
        return ()
    try:
        parts = [int(tok) for tok in body.split(",")]
    except ValueError:
        raise ValueError(f"malformed partition {text!r}: non-integer part") from None
    return partition(parts)
