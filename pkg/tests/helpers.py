"""Shared builders: named example realizations and a seeded random generator."""

from __future__ import annotations

import random
from dataclasses import dataclass

from tbtrellis import (
    BehaviorBundle,
    ProductGroup,
    Realization,
    Subgroup,
    close,
    compute_behavior,
    concat_groups,
    project,
    reduce_realization,
)


def z4_example(overdeclare_s2: bool = False) -> Realization:
    """Length-3 conventional realization over Z4 with behavior <(112, 012)>.

    State alphabets are trivial, Z4, and {0,2} inside Z4 (or all of Z4 when
    over-declared, which makes the realization non-state-trim at j=2).
    """
    Z1 = ProductGroup((1,))
    Z4 = ProductGroup((4,))
    s2 = Subgroup.full(Z4) if overdeclare_s2 else close(Z4, [Z4.element([2])])
    amb0 = concat_groups([Z1, Z4, Z4])
    amb1 = concat_groups([Z4, Z4, Z4])
    amb2 = concat_groups([Z4, Z4, Z1])
    return Realization.build(
        [Z4, Z4, Z4],
        [Subgroup.full(Z1), Subgroup.full(Z4), s2],
        [
            close(amb0, [amb0.element([0, 1, 1])]),
            close(amb1, [amb1.element([1, 1, 2])]),
            close(amb2, [amb2.element([2, 2, 0])]),
        ],
    )


def two_state_cycle() -> Realization:
    """n = 2, trivial symbols, diagonal Z2 constraints; uncontrollable."""
    Z1 = ProductGroup((1,))
    Z2 = ProductGroup((2,))
    amb = concat_groups([Z2, Z1, Z2])
    diag = close(amb, [amb.element([1, 0, 1])])
    return Realization.build([Z1, Z1], [Z2, Z2], [diag, diag])


def all_trivial(n: int = 3) -> Realization:
    Z1 = ProductGroup((1,))
    amb = concat_groups([Z1, Z1, Z1])
    trivial_code = Subgroup.trivial(amb)
    return Realization.build([Z1] * n, [Z1] * n, [trivial_code] * n)


def shift_cycle(n: int, m: int, with_symbols: bool = False) -> Realization:
    """States Z_m, constraints fixing the state around the cycle; uncontrollable
    with top granule of order m."""
    Zm = ProductGroup((m,))
    sym = ProductGroup((2,)) if with_symbols else ProductGroup((1,))
    amb = concat_groups([Zm, sym, Zm])
    gens = [amb.element([1, 0, 1])]
    if with_symbols:
        gens.append(amb.element([0, 1, 0]))
    code = close(amb, gens)
    return Realization.build([sym] * n, [Zm] * n, [code] * n)


BINARY_SYMBOLS: list[tuple[int, ...]] = [(1,), (2,), (2,), (2, 2)]
BINARY_STATES: list[tuple[int, ...]] = [(1,), (2,), (2,), (2, 2), (2, 2, 2)]

SYMBOL_CHOICES: list[tuple[int, ...]] = [(1,), (1,), (2,), (2,), (3,), (4,), (2, 2)]
STATE_CHOICES: list[tuple[int, ...]] = [
    (1,),
    (2,),
    (2,),
    (3,),
    (4,),
    (4,),
    (2, 2),
    (4, 2),
    (2, 2, 2),
    (3, 3),
    (4, 4),
]


@dataclass
class SuiteInstance:
    original: Realization
    reduced: Realization
    bundle: BehaviorBundle  # bundle of the reduced realization


def _random_alphabets(rng: random.Random, n: int) -> tuple[list[ProductGroup], list[ProductGroup]]:
    symbols = [ProductGroup(rng.choice(SYMBOL_CHOICES)) for _ in range(n)]
    while True:
        states = [ProductGroup(rng.choice(STATE_CHOICES)) for _ in range(n)]
        if rng.random() < 0.3:
            states[0] = ProductGroup((1,))  # conventional case
        total = 1
        for s in states:
            total *= s.order
        if total <= 4096:
            break
    return symbols, states


def random_realization(rng: random.Random, n: int) -> Realization:
    """Constraint codes generated independently; behaviors tend to be sparse."""
    symbols, states = _random_alphabets(rng, n)
    codes = []
    for j in range(n):
        amb = concat_groups([states[j], symbols[j], states[(j + 1) % n]])
        n_gens = rng.choice([1, 1, 2, 2, 3])
        gens = []
        for _ in range(n_gens):
            gens.append(amb.element([rng.randrange(m) for m in amb.moduli]))
        code = close(amb, gens)
        if code.order > 128:
            code = close(amb, gens[:1])
        codes.append(code)
    return Realization.build(symbols, states, codes)


def random_trajectory_realization(
    rng: random.Random, n: int, binary: bool = False
) -> Realization:
    """Constraint codes read off a random trajectory subgroup; behaviors are rich."""
    if binary:
        symbols = [ProductGroup(rng.choice(BINARY_SYMBOLS)) for _ in range(n)]
        states = [ProductGroup(rng.choice(BINARY_STATES)) for _ in range(n)]
    else:
        symbols, states = _random_alphabets(rng, n)
    tg = concat_groups(symbols + states)
    sym_off = [0]
    for a in symbols:
        sym_off.append(sym_off[-1] + a.rank)
    state_off = [sym_off[-1]]
    for s in states:
        state_off.append(state_off[-1] + s.rank)
    state_coords = [list(range(state_off[j], state_off[j + 1])) for j in range(n)]
    sym_coords = [list(range(sym_off[j], sym_off[j + 1])) for j in range(n)]
    gens = [
        tg.element([rng.randrange(m) for m in tg.moduli])
        for _ in range(rng.choice([1, 1, 2, 2, 3]))
    ]
    trajectories = close(tg, gens)
    new_states = [project(trajectories, state_coords[j]) for j in range(n)]
    new_codes = [
        project(trajectories, state_coords[j] + sym_coords[j] + state_coords[(j + 1) % n])
        for j in range(n)
    ]
    return Realization(tuple(symbols), tuple(new_states), tuple(new_codes))


def random_suite(seed: int, count: int, behavior_cap: int = 600) -> list[SuiteInstance]:
    """Deterministic batch of reduced realizations covering n in [1, 6].

    Every ninth instance is a known-uncontrollable shift cycle so the
    uncontrollable side of the theorems is always exercised.
    """
    rng = random.Random(seed)
    n_schedule = [1, 2, 2, 3, 3, 3, 4, 4, 5, 6]
    out: list[SuiteInstance] = []
    i = 0
    while len(out) < count:
        n = n_schedule[len(out) % len(n_schedule)]
        if len(out) % 9 == 8:
            r = shift_cycle(max(n, 2), rng.choice([2, 3, 4]), rng.random() < 0.5)
            bundle = compute_behavior(r)
        else:
            make = random_trajectory_realization if len(out) % 2 else random_realization
            attempts = 0
            while True:
                r = make(rng, n)
                bundle = compute_behavior(r)
                if bundle.behavior.order <= behavior_cap or attempts >= 30:
                    break
                attempts += 1
            if bundle.behavior.order > behavior_cap:
                r = all_trivial(n)
                bundle = compute_behavior(r)
        reduced = reduce_realization(r, bundle)
        out.append(SuiteInstance(r, reduced, compute_behavior(reduced)))
        i += 1
    return out
