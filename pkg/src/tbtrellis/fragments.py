"""The graded poset of fragments of a length-n cyclic realization.

A proper fragment is a circular interval [j,k) of constraint-code indices; its
level is the number of internal state variables, (k - j - 1) mod n.  The whole
realization is the unique level-n fragment.  Fragments are identified by
(start, level) internally and rendered as [j,k) with k = (j + level + 1) mod n,
which disambiguates [j,j) at level n-1 from [j,j+1) at level 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

__all__ = ["Fragment", "all_fragments", "leq", "covers", "covered_by", "hasse_dot"]


@dataclass(frozen=True, order=True)
class Fragment:
    """A fragment of a length-n realization: proper circular interval or the whole cycle."""

    n: int
    level: int
    start: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"realization length must be >= 1, got {self.n}")
        if not 0 <= self.level <= self.n:
            raise ValueError(f"level {self.level} out of range for n={self.n}")
        if self.is_full:
            if self.start != 0:
                raise ValueError("the full fragment has start 0 by convention")
        elif not 0 <= self.start < self.n:
            raise ValueError(f"start {self.start} out of range for n={self.n}")

    @classmethod
    def proper(cls, n: int, start: int, level: int) -> Fragment:
        if not 0 <= level < n:
            raise ValueError(f"proper fragment level must be in [0, {n - 1}], got {level}")
        return cls(n, level, start)

    @classmethod
    def full(cls, n: int) -> Fragment:
        return cls(n, n, 0)

    @classmethod
    def from_interval(cls, n: int, j: int, k: int) -> Fragment:
        """The proper fragment [j,k)."""
        return cls(n, (k - j - 1) % n, j % n)

    @property
    def is_full(self) -> bool:
        return self.level == self.n

    @property
    def end(self) -> int:
        """The k of the [j,k) rendering."""
        if self.is_full:
            raise ValueError("the full fragment has no interval endpoints")
        return (self.start + self.level + 1) % self.n

    @property
    def vertex_set(self) -> tuple[int, ...]:
        """Constraint-code indices the fragment contains, in circular order."""
        if self.is_full:
            return tuple(range(self.n))
        return tuple((self.start + d) % self.n for d in range(self.level + 1))

    @property
    def edge_set(self) -> tuple[int, ...]:
        """Internal state-variable indices, in circular order."""
        if self.is_full:
            return tuple(range(self.n))
        return tuple((self.start + d) % self.n for d in range(1, self.level + 1))

    @property
    def label(self) -> str:
        return "R" if self.is_full else f"[{self.start},{self.end})"

    @property
    def node_name(self) -> str:
        return "R" if self.is_full else f"F_{self.start}_{self.end}"

    def __repr__(self) -> str:
        return f"Fragment({self.label}, n={self.n})"


def all_fragments(n: int) -> list[Fragment]:
    """All n^2 + 1 fragments, in (level, start) order."""
    if n < 1:
        raise ValueError(f"realization length must be >= 1, got {n}")
    frags = [Fragment.proper(n, j, lv) for lv in range(n) for j in range(n)]
    frags.append(Fragment.full(n))
    return frags


def leq(f1: Fragment, f2: Fragment) -> bool:
    """Partial order: circular-interval containment, with the full fragment on top."""
    if f1.n != f2.n:
        raise ValueError("fragments belong to realizations of different lengths")
    if f2.is_full:
        return True
    if f1.is_full:
        return False
    offset = (f1.start - f2.start) % f1.n
    return offset + f1.level <= f2.level


def covers(f_lo: Fragment, f_hi: Fragment) -> bool:
    """True iff f_hi covers f_lo: f_lo < f_hi with level exactly one less."""
    return f_hi.level == f_lo.level + 1 and leq(f_lo, f_hi)


def covered_by(f: Fragment) -> Iterator[Fragment]:
    """The fragments covered by f, in canonical order.

    A proper fragment [j,k) at level >= 1 covers exactly [j,k-1) and [j+1,k);
    the full fragment covers all n level-(n-1) fragments.
    """
    if f.level == 0:
        return
    if f.is_full:
        for j in range(f.n):
            yield Fragment.proper(f.n, j, f.n - 1)
    else:
        yield Fragment.proper(f.n, f.start, f.level - 1)
        yield Fragment.proper(f.n, (f.start + 1) % f.n, f.level - 1)


def hasse_dot(n: int) -> str:
    """Deterministic DOT rendering of the fragment poset, ranked by level."""
    frags = all_fragments(n)
    lines = [
        "digraph hasse {",
        "  rankdir=BT;",
        '  node [shape=box, fontname="monospace"];',
    ]
    for lv in range(n + 1):
        row = [f for f in frags if f.level == lv]
        names = " ".join(f'"{f.node_name}" [label="{f.label}"];' for f in row)
        lines.append(f"  {{ rank=same; {names} }}")
    for f in frags:
        for lower in covered_by(f):
            lines.append(f'  "{lower.node_name}" -> "{f.node_name}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
