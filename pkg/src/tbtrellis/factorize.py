"""Unique factorization of behaviors and the controller canonical realization.

Every trajectory of a reduced realization is a unique sum of one coset
representative per fragment granule; the product of all granule orders equals
the behavior order.  The canonical realization realizes the behavior as a
product of atomic per-granule trellises; it is one-to-one and minimal but its
branch sets need not be subgroups.
"""

from __future__ import annotations

import itertools
import math
import weakref
from dataclasses import dataclass
from functools import cached_property

from .abelian import (
    GroupElement,
    ProductGroup,
    Subgroup,
    invariant_factors,
    project,
    subgroup_sum,
)
from .errors import (
    InternalInvariantError,
    NotATrajectoryError,
    RequiresReducedError,
)
from .fragments import Fragment
from .granules import GranuleRecord, GranuleTable
from .trellis import BehaviorBundle, is_reduced

__all__ = [
    "FactorizationReport",
    "Decomposition",
    "SetTrellis",
    "granule_products",
    "verify_unique_factorization",
    "decompose",
    "FirstStateChain",
    "first_state_chain",
    "SizeFormulaCheck",
    "size_formulas",
    "technical_lemma_check",
    "controller_canonical",
    "is_homomorphic",
    "canonical_can_be_homomorphic",
]


@dataclass(frozen=True)
class FactorizationReport:
    """Granule-order products against the actual behavior sizes."""

    p_c: int  # product of all proper-fragment granule orders
    p: int  # p_c times the top granule order
    controllable_order: int  # |B^c|
    behavior_order: int  # |B|
    holds_c: bool
    holds: bool


def granule_products(table: GranuleTable) -> FactorizationReport:
    """Compute P^c and P = |top granule| * P^c from the granule table."""
    p_c = 1
    for f in table.fragments:
        if not f.is_full:
            p_c *= table.records[f].granule.order
    p = table.top.granule.order * p_c
    bc = table.controllable_sub.order
    b = table.bundle.behavior.order
    if bc > p_c or b > p:
        raise InternalInvariantError("behavior exceeds the granule product bound")
    return FactorizationReport(p_c, p, bc, b, holds_c=(bc == p_c), holds=(b == p))


def verify_unique_factorization(bundle: BehaviorBundle, table: GranuleTable) -> FactorizationReport:
    """Check |B^c| = P^c and |B| = P; both hold for every reduced realization."""
    if not is_reduced(bundle.realization, bundle):
        raise RequiresReducedError("verify_unique_factorization requires a reduced realization")
    return granule_products(table)


@dataclass(frozen=True)
class Decomposition:
    """A trajectory split into one granule representative per fragment."""

    trajectory: GroupElement
    parts: tuple[tuple[Fragment, GroupElement], ...]  # (level, start) order, zeros included

    def part(self, f: Fragment) -> GroupElement:
        return self.as_dict[f]

    @cached_property
    def as_dict(self) -> dict[Fragment, GroupElement]:
        return dict(self.parts)

    def total(self) -> GroupElement:
        out = self.trajectory.group.zero()
        for _, value in self.parts:
            out = out + value
        return out

    @property
    def nonzero_parts(self) -> tuple[tuple[Fragment, GroupElement], ...]:
        return tuple((f, v) for f, v in self.parts if not v.is_zero)


_SUFFIX_CACHE: weakref.WeakKeyDictionary = weakref.WeakKeyDictionary()


def _level_suffixes(table: GranuleTable, level: int) -> tuple[Subgroup, ...]:
    """suffixes[j] = chain[level-1] + sum of the level subbehaviors after j; cached per table."""
    per_table = _SUFFIX_CACHE.setdefault(table, {})
    if level not in per_table:
        n = table.n
        frags = [Fragment.proper(n, j, level) for j in range(n)]
        suffixes: list[Subgroup] = [table.chain[level - 1]]
        for f in reversed(frags[1:]):
            suffixes.append(subgroup_sum(suffixes[-1], table.records[f].sub))
        suffixes.reverse()
        per_table[level] = tuple(suffixes)
    return per_table[level]


def decompose(table: GranuleTable, t: GroupElement) -> Decomposition:
    """Peel a trajectory into granule representatives, top level first.

    At each level the representative for fragment [j, j+l] is the unique one
    whose removal leaves the residual inside the span of the not-yet-processed
    subbehaviors; after level 1 the residual is nondynamical and splits by
    symbol position.  The returned parts sum to `t` exactly.
    """
    bundle = table.bundle
    r = bundle.realization
    if not is_reduced(r, bundle):
        raise RequiresReducedError("decompose requires a reduced realization")
    if t not in bundle.behavior:
        raise NotATrajectoryError("the given vector is not in the behavior")
    n = table.n
    parts: dict[Fragment, GroupElement] = {}

    top = table.top
    rep = top.granule.representative_of(t)
    parts[top.fragment] = rep
    x = t - rep

    for level in range(n - 1, 0, -1):
        frags = [Fragment.proper(n, j, level) for j in range(n)]
        suffixes = _level_suffixes(table, level)
        for j, f in enumerate(frags):
            remaining = suffixes[j]
            view = table.records[f].granule
            for candidate in view.representatives:
                if (x - candidate) in remaining:
                    parts[f] = candidate
                    x = x - candidate
                    break
            else:
                raise InternalInvariantError(
                    f"no representative of {f.label} matches the residual"
                )
        if x not in table.chain[level - 1]:
            raise InternalInvariantError("residual left the expected chain level")

    # level 0: the residual is nondynamical and splits coordinatewise by symbol block
    tg = r.trajectory_group
    for j in range(n):
        f = Fragment.proper(n, j, 0)
        res = [0] * tg.rank
        for i in r.symbol_coords(j):
            res[i] = x.residues[i]
        piece = GroupElement(tg, tuple(res))
        if piece not in table.records[f].sub:
            raise InternalInvariantError("nondynamical residual escapes its level-0 subbehavior")
        parts[f] = piece

    ordered = tuple((f, parts[f]) for f in table.fragments)
    result = Decomposition(t, ordered)
    if result.total() != t:
        raise InternalInvariantError("decomposition does not reassemble the trajectory")
    return result


@dataclass(frozen=True)
class FirstStateChain:
    """Nested projections of the subbehaviors starting at j, with their indices."""

    j: int
    state_orders: tuple[int, ...]  # projections onto S_{j+1}, levels 0..n-1
    window_orders: tuple[int, ...]  # projections onto S_j x A_j x S_{j+1}
    granule_orders: tuple[int, ...]  # granule orders at [j, j+l], levels 0..n-1

    @property
    def state_links_ok(self) -> bool:
        if self.state_orders[0] != 1:
            return False
        return all(
            self.state_orders[lv] == self.state_orders[lv - 1] * self.granule_orders[lv]
            for lv in range(1, len(self.state_orders))
        )

    @property
    def window_links_ok(self) -> bool:
        if self.window_orders[0] != self.granule_orders[0]:
            return False
        return all(
            self.window_orders[lv] == self.window_orders[lv - 1] * self.granule_orders[lv]
            for lv in range(1, len(self.window_orders))
        )

    @property
    def state_product_ok(self) -> bool:
        return self.state_orders[-1] == math.prod(self.granule_orders[1:])

    @property
    def window_product_ok(self) -> bool:
        return self.window_orders[-1] == math.prod(self.granule_orders)

    @property
    def ok(self) -> bool:
        return (
            self.state_links_ok
            and self.window_links_ok
            and self.state_product_ok
            and self.window_product_ok
        )


def first_state_chain(bundle: BehaviorBundle, table: GranuleTable, j: int) -> FirstStateChain:
    """The first-state chain at S_{j+1} and the matching branch-window chain."""
    r = bundle.realization
    n = table.n
    if n < 2:
        raise ValueError("first_state_chain needs length >= 2")
    if not is_reduced(r, bundle):
        raise RequiresReducedError("first_state_chain requires a reduced realization")
    state_coords = r.state_coords((j + 1) % n)
    window = r.window_coords(j)
    state_orders: list[int] = []
    window_orders: list[int] = []
    granule_orders: list[int] = []
    for level in range(n):
        record = table.records[Fragment.proper(n, j, level)]
        state_orders.append(project(record.sub, state_coords).order)
        window_orders.append(project(record.sub, window).order)
        granule_orders.append(record.granule.order)
    return FirstStateChain(j, tuple(state_orders), tuple(window_orders), tuple(granule_orders))


@dataclass(frozen=True)
class SizeFormulaCheck:
    """State and constraint sizes against products of active granule orders."""

    j: int
    state_order: int
    state_product: int
    code_order: int
    code_product: int

    @property
    def ok(self) -> bool:
        return self.state_order == self.state_product and self.code_order == self.code_product


def size_formulas(table: GranuleTable) -> tuple[SizeFormulaCheck, ...]:
    """Per-j: |S_j| and |C_j| as products over the fragments where they are active."""
    bundle = table.bundle
    r = bundle.realization
    if not is_reduced(r, bundle):
        raise RequiresReducedError("size_formulas requires a reduced realization")
    n = table.n
    checks: list[SizeFormulaCheck] = []
    for j in range(n):
        state_product = 1
        code_product = 1
        for f in table.fragments:
            order = table.records[f].granule.order
            if j in f.edge_set:
                state_product *= order
            if j in f.vertex_set:
                code_product *= order
        checks.append(
            SizeFormulaCheck(
                j=j,
                state_order=r.state_alphabets[j].order,
                state_product=state_product,
                code_order=r.constraint_codes[j].order,
                code_product=code_product,
            )
        )
    return tuple(checks)


def technical_lemma_check(bundle: BehaviorBundle, table: GranuleTable) -> tuple[bool, ...]:
    """Per-j: |(C_j)^c| = |(S_j)^c| * |window projection of the cut subbehavior at j|."""
    r = bundle.realization
    n = table.n
    bc = table.controllable_sub
    out: list[bool] = []
    for j in range(n):
        code_c = project(bc, r.window_coords(j)).order
        state_c = project(bc, r.state_coords(j)).order
        cut = table.records[Fragment.proper(n, j, n - 1)].sub
        window = project(cut, r.window_coords(j)).order
        out.append(code_c == state_c * window)
    return tuple(out)


@dataclass(frozen=True)
class SetTrellis:
    """The controller canonical realization as an extensional trellis.

    States at time j are tuples of granule cosets, one slot per atom whose
    fragment has state j internal; branch sets are plain sets of
    (state tuple, symbol residues, state tuple) and need not be subgroups.
    """

    n: int
    atoms: tuple[GranuleRecord, ...]
    symbol_alphabets: tuple[ProductGroup, ...]
    edge_atoms: tuple[tuple[int, ...], ...]  # per time j: atom indices with S_j active
    state_sizes: tuple[int, ...]
    branch_sets: tuple[frozenset[tuple], ...]
    trajectories: frozenset[GroupElement]

    @property
    def trajectory_set(self) -> frozenset[GroupElement]:
        return self.trajectories


def controller_canonical(table: GranuleTable) -> SetTrellis:
    """Assemble the canonical realization from the nontrivial granules.

    Every tuple of granule cosets maps to the sum of the chosen coset
    representatives; branch sets are read off the stored representatives.
    """
    bundle = table.bundle
    r = bundle.realization
    if not is_reduced(r, bundle):
        raise RequiresReducedError("controller_canonical requires a reduced realization")
    n = table.n
    atoms = tuple(table.nontrivial)
    edge_atoms = tuple(
        tuple(i for i, a in enumerate(atoms) if j in a.fragment.edge_set) for j in range(n)
    )
    state_sizes = tuple(
        math.prod(atoms[i].granule.order for i in edge_atoms[j]) for j in range(n)
    )
    symbol_slices = [tuple(r.symbol_coords(j)) for j in range(n)]

    branch_sets: list[set[tuple]] = [set() for _ in range(n)]
    trajectories: set[GroupElement] = set()
    zero = r.trajectory_group.zero()
    for assignment in itertools.product(*(range(a.granule.order) for a in atoms)):
        element = zero
        for i, c in enumerate(assignment):
            element = element + atoms[i].granule.representatives[c]
        trajectories.add(element)
        for j in range(n):
            from_state = tuple(assignment[i] for i in edge_atoms[j])
            to_state = tuple(assignment[i] for i in edge_atoms[(j + 1) % n])
            symbol = tuple(element.residues[i] for i in symbol_slices[j])
            branch_sets[j].add((from_state, symbol, to_state))

    return SetTrellis(
        n=n,
        atoms=atoms,
        symbol_alphabets=r.symbol_alphabets,
        edge_atoms=edge_atoms,
        state_sizes=state_sizes,
        branch_sets=tuple(frozenset(b) for b in branch_sets),
        trajectories=frozenset(trajectories),
    )


def is_homomorphic(ct: SetTrellis) -> bool:
    """True iff the tuple-to-sum map is a group homomorphism for the stored
    representatives.

    The defect of the map on a pair of tuples is the sum of the per-granule
    defects rep(x) + rep(y) - rep(x + y), and granules can be probed one at a
    time, so the map is a homomorphism exactly when every granule's
    representative set is closed under addition.  (Branch sets being subgroups
    is necessary but not sufficient: a nondynamical atom can absorb a symbol
    defect branch-locally without the global map being additive.)
    """
    for atom in ct.atoms:
        reps = set(atom.granule.representatives)
        for x in atom.granule.representatives:
            for y in atom.granule.representatives:
                if (x + y) not in reps:
                    return False
    return True


def canonical_can_be_homomorphic(table: GranuleTable) -> bool:
    """Necessary condition over all representative choices: the direct product
    of the granules must be isomorphic to the behavior as an abstract group."""
    factor_multiset: list[int] = []
    for f in table.fragments:
        factor_multiset.extend(table.records[f].granule.invariant_factors())
    product = _abstract_product_factors(factor_multiset)
    return product == invariant_factors(table.bundle.behavior)


def _abstract_product_factors(cyclic_orders: list[int]) -> list[int]:
    """Invariant factors of a direct product of cyclic groups of the given orders."""
    partitions: dict[int, list[int]] = {}
    for order in cyclic_orders:
        d = 2
        rest = order
        while d * d <= rest:
            if rest % d == 0:
                e = 0
                while rest % d == 0:
                    rest //= d
                    e += 1
                partitions.setdefault(d, []).append(e)
            d += 1
        if rest > 1:
            partitions.setdefault(rest, []).append(1)
    if not partitions:
        return []
    for exps in partitions.values():
        exps.sort(reverse=True)
    width = max(len(v) for v in partitions.values())
    descending = []
    for i in range(width):
        d = 1
        for p, exps in partitions.items():
            if i < len(exps):
                d *= p ** exps[i]
        descending.append(d)
    return list(reversed(descending))
