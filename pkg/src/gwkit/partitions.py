"""Integer partitions and cohomology-weighted partitions.

A weighted partition is a multiset of ``(part, label)`` pairs where the label is
an index into the basis {1, omega_1, ..., omega_n}: 0 stands for the identity
class and k >= 1 for omega_k.
"""

from __future__ import annotations

import re
from collections import Counter
from functools import lru_cache
from itertools import product
from math import factorial, prod

from .algebra.scalars import Q

__all__ = [
    "partitions", "partition_count", "aut", "WeightedPartition", "weighted_partitions",
    "PartitionSyntaxError", "parse_weighted_partition", "parse_partition",
]


def partitions(m: int, largest: int | None = None):
    """Partitions of m as non-increasing tuples, in reverse lexicographic order."""
    if largest is None:
        largest = m
    if m == 0:
        yield ()
        return
    for first in range(min(m, largest), 0, -1):
        for rest in partitions(m - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def partition_count(m: int) -> int:
    """p(m) by Euler's pentagonal recurrence (independent of :func:`partitions`)."""
    if m < 0:
        return 0
    if m == 0:
        return 1
    total, k = 0, 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > m:
            break
        sign = 1 if k % 2 else -1
        total += sign * partition_count(m - g1)
        g2 = k * (3 * k + 1) // 2
        if g2 <= m:
            total += sign * partition_count(m - g2)
        k += 1
    return total


def aut(items) -> int:
    """Product of multiplicity factorials of a multiset."""
    return prod(factorial(c) for c in Counter(items).values())


class WeightedPartition:
    """Canonically sorted multiset of (part, label-index) pairs."""

    __slots__ = ("pairs",)

    def __init__(self, pairs=()):
        cleaned = []
        for p in pairs:
            if isinstance(p, int):
                p = (p, 0)
            part, label = int(p[0]), int(p[1])
            if part <= 0:
                raise ValueError(f"parts must be positive, got {part}")
            if label < 0:
                raise ValueError(f"label index must be >= 0, got {label}")
            cleaned.append((part, label))
        self.pairs = tuple(sorted(cleaned, key=lambda x: (-x[0], x[1])))

    @classmethod
    def unlabeled(cls, parts) -> "WeightedPartition":
        return cls((p, 0) for p in parts)

    @property
    def size(self) -> int:
        return sum(p for p, _ in self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def length(self) -> int:
        return len(self.pairs)

    @property
    def parts(self) -> tuple:
        return tuple(p for p, _ in self.pairs)

    @property
    def labels(self) -> tuple:
        return tuple(l for _, l in self.pairs)

    def aut(self) -> int:
        return aut(self.pairs)

    def z_factor(self):
        return Q(prod(self.parts) * self.aut())

    def union(self, other: "WeightedPartition") -> "WeightedPartition":
        return WeightedPartition(self.pairs + other.pairs)

    def difference(self, other: "WeightedPartition") -> "WeightedPartition":
        left = Counter(self.pairs)
        left.subtract(Counter(other.pairs))
        if any(v < 0 for v in left.values()):
            raise ValueError(f"{other} is not contained in {self}")
        return WeightedPartition(list(left.elements()))

    def without_index(self, i: int) -> "WeightedPartition":
        return WeightedPartition(self.pairs[:i] + self.pairs[i + 1:])

    def with_pair(self, part: int, label: int) -> "WeightedPartition":
        return WeightedPartition(self.pairs + ((part, label),))

    def __eq__(self, other):
        return isinstance(other, WeightedPartition) and self.pairs == other.pairs

    def __lt__(self, other):
        return (self.size, self.pairs) < (other.size, other.pairs)

    def __hash__(self):
        return hash(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __repr__(self):
        return f"WeightedPartition({self})"

    def __str__(self):
        if not self.pairs:
            return "()"
        return ",".join(f"{p}:{'1' if l == 0 else f'w{l}'}" for p, l in self.pairs)


def weighted_partitions(m: int, nlabels: int):
    """All weighted partitions of m with label indices in range(nlabels)."""
    out = []
    for lam in partitions(m):
        groups = Counter(lam)
        per_size = []
        for k in sorted(groups, reverse=True):
            c = groups[k]
            per_size.append([(k, labs) for labs in _multisets(nlabels, c)])
        for choice in product(*per_size):
            pairs = [(k, l) for k, labs in choice for l in labs]
            out.append(WeightedPartition(pairs))
    return out


def _multisets(n: int, c: int, start: int = 0):
    if c == 0:
        yield ()
        return
    for i in range(start, n):
        for rest in _multisets(n, c - 1, i):
            yield (i,) + rest


class PartitionSyntaxError(ValueError):
    """Malformed partition text; ``position`` is the 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_ITEM = re.compile(r"\s*(\d+)\s*(?::\s*(1|w\d*)\s*)?")


def parse_weighted_partition(text: str, rank: int | None = None) -> WeightedPartition:
    """Parse ``"2:w1,1:1"``; a bare part means label 1, ``w`` alone means ``w1``."""
    pairs = []
    pos = 0
    text = text.strip()
    if text in ("", "()", "0"):
        return WeightedPartition()
    while pos <= len(text):
        m = _ITEM.match(text, pos)
        if not m or m.end() == pos:
            raise PartitionSyntaxError(f"expected 'part[:label]' in {text!r}", pos)
        part = int(m.group(1))
        if part <= 0:
            raise PartitionSyntaxError("parts must be positive", m.start(1))
        lab = m.group(2)
        if lab is None or lab == "1":
            label = 0
        else:
            label = int(lab[1:]) if len(lab) > 1 else 1
            if label == 0 or (rank is not None and label > rank):
                raise PartitionSyntaxError(f"label {lab} out of range", m.start(2))
        pairs.append((part, label))
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] != ",":
            raise PartitionSyntaxError(f"unexpected character {text[pos]!r}", pos)
        pos += 1
        if pos == len(text):
            raise PartitionSyntaxError("trailing comma", pos - 1)
    return WeightedPartition(pairs)


def parse_partition(text: str) -> tuple:
    """Parse an unlabeled partition such as ``"2,1,1"``."""
    wp = parse_weighted_partition(text)
    if any(wp.labels):
        raise PartitionSyntaxError("labels are not allowed here", text.index(":"))
    return wp.parts
