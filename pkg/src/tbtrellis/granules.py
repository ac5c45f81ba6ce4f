"""Subbehaviors per fragment, controller granules, and the level chain.

The subbehavior of a fragment collects the trajectories that vanish on and
outside the fragment's boundary; the granule of a fragment is the quotient of
its subbehavior by the sum of the subbehaviors of the fragments it covers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

from .abelian import (
    QuotientView,
    Subgroup,
    cross_section,
    quotient,
    subgroup_sum,
)
from .errors import UndefinedBelowError
from .fragments import Fragment, all_fragments, covered_by
from .trellis import BehaviorBundle, Realization

__all__ = [
    "GranuleRecord",
    "GranuleTable",
    "subbehavior",
    "below",
    "granule",
    "nondynamical_alphabet",
    "ell_chain",
    "build_granule_table",
]


def subbehavior(bundle: BehaviorBundle, f: Fragment) -> Subgroup:
    """Trajectories of the behavior that are all-zero on or outside f's boundary."""
    r = bundle.realization
    if f.n != r.n:
        raise ValueError("fragment length does not match the realization")
    if f.is_full:
        return bundle.behavior
    interior = set(f.edge_set)
    vertices = set(f.vertex_set)
    zero_coords: list[int] = []
    for j in range(r.n):
        if j not in interior:
            zero_coords.extend(r.state_coords(j))
        if j not in vertices:
            zero_coords.extend(r.symbol_coords(j))
    members = [
        t for t in bundle.behavior.elements if all(t.residues[i] == 0 for i in zero_coords)
    ]
    return Subgroup(bundle.behavior.ambient, tuple(members))


def below(bundle: BehaviorBundle, f: Fragment) -> Subgroup:
    """The sum of the subbehaviors of the fragments covered by f (level >= 1 only)."""
    if f.level == 0:
        raise UndefinedBelowError("level-0 fragments have no strictly smaller fragments")
    acc = Subgroup.trivial(bundle.behavior.ambient)
    for lower in covered_by(f):
        acc = subgroup_sum(acc, subbehavior(bundle, lower))
    return acc


def granule(bundle: BehaviorBundle, f: Fragment) -> QuotientView:
    """The controller granule of f: subbehavior modulo the covered sum.

    Level-0 fragments have no smaller fragments; their (nondynamical) granule
    is the subbehavior modulo the trivial subgroup.
    """
    sub = subbehavior(bundle, f)
    if f.level == 0:
        lower = Subgroup.trivial(sub.ambient)
    else:
        lower = below(bundle, f)
    return quotient(sub, lower)


def nondynamical_alphabet(r: Realization, j: int) -> Subgroup:
    """Symbols a with (0, a, 0) in C_j, as a subgroup of A_j."""
    code = r.constraint_codes[j]
    w_from = r.state_alphabets[j].ambient.rank
    w_sym = r.symbol_alphabets[j].rank
    return cross_section(code, range(w_from, w_from + w_sym))


@dataclass(frozen=True)
class GranuleRecord:
    """Everything granule-related for one fragment."""

    fragment: Fragment
    sub: Subgroup  # B_F
    lower: Subgroup  # B_{<F}; trivial for level-0 fragments
    granule: QuotientView  # B_F / B_{<F}


@dataclass(frozen=True, eq=False)
class GranuleTable:
    """All per-fragment granule records plus the level chain of a realization.

    `chain[l]` is the l-controllable behavior B_l for l = 0..n (B_n = B), and
    `factors[l]` its quotient Q_l = B_l / B_{l-1} (Q_0 = B_0 over the trivial
    subgroup).  Built once per realization and shared by downstream analyses;
    compared by identity.
    """

    bundle: BehaviorBundle
    records: Mapping[Fragment, GranuleRecord]
    chain: tuple[Subgroup, ...]
    factors: tuple[QuotientView, ...]

    @property
    def n(self) -> int:
        return self.bundle.n

    @property
    def fragments(self) -> list[Fragment]:
        return all_fragments(self.n)

    def record(self, f: Fragment) -> GranuleRecord:
        return self.records[f]

    @property
    def top(self) -> GranuleRecord:
        """The record of the full fragment; its granule is the controllability granule."""
        return self.records[Fragment.full(self.n)]

    @property
    def controllable_sub(self) -> Subgroup:
        """B^c, the controllable subbehavior (the level-(n-1) chain entry)."""
        return self.chain[self.n - 1] if self.n >= 1 else self.bundle.behavior

    @cached_property
    def nontrivial(self) -> list[GranuleRecord]:
        """Records with a nontrivial granule, in (level, start) order."""
        return [self.records[f] for f in self.fragments if self.records[f].granule.order > 1]


def _chain_from_subs(
    bundle: BehaviorBundle, subs: Mapping[Fragment, Subgroup]
) -> tuple[tuple[Subgroup, ...], tuple[QuotientView, ...]]:
    n = bundle.n
    ambient = bundle.behavior.ambient
    chain: list[Subgroup] = []
    for level in range(n):
        acc = Subgroup.trivial(ambient)
        for j in range(n):
            acc = subgroup_sum(acc, subs[Fragment.proper(n, j, level)])
        chain.append(acc)
    chain.append(bundle.behavior)
    factors = [quotient(chain[0], Subgroup.trivial(ambient))]
    factors.extend(quotient(chain[lv], chain[lv - 1]) for lv in range(1, n + 1))
    return tuple(chain), tuple(factors)


def ell_chain(bundle: BehaviorBundle) -> tuple[tuple[Subgroup, ...], tuple[QuotientView, ...]]:
    """The chain B_0 <= B_1 <= ... <= B_n = B and its factor groups Q_l.

    B_l is the sum of all level-l subbehaviors for l < n; B_n is the behavior.
    """
    n = bundle.n
    subs = {f: subbehavior(bundle, f) for f in all_fragments(n) if not f.is_full}
    return _chain_from_subs(bundle, subs)


def build_granule_table(bundle: BehaviorBundle) -> GranuleTable:
    """Compute every subbehavior, covered sum, and granule for one realization."""
    n = bundle.n
    subs = {f: subbehavior(bundle, f) for f in all_fragments(n)}
    chain, factors = _chain_from_subs(bundle, subs)
    records: dict[Fragment, GranuleRecord] = {}
    trivial = Subgroup.trivial(bundle.behavior.ambient)
    for f in all_fragments(n):
        if f.level == 0:
            lower = trivial
        elif f.is_full:
            lower = chain[n - 1]
        else:
            first, second = covered_by(f)
            lower = subgroup_sum(subs[first], subs[second])
        records[f] = GranuleRecord(f, subs[f], lower, quotient(subs[f], lower))
    return GranuleTable(bundle, records, chain, factors)
