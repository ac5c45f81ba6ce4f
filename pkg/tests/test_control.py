from __future__ import annotations

import pytest

from tbtrellis import (
    build_granule_table,
    component_count,
    compute_behavior,
    control_report,
    controllability_test,
    controllable_subrealization,
    is_reduced,
    lemma_quotients,
    project,
    quotient,
    syndrome_image,
)
from tbtrellis.errors import RequiresReducedError

from helpers import all_trivial, random_suite, shift_cycle, z4_example


class TestSyndromeImage:
    def test_trivial_states(self):
        r = all_trivial(3)
        assert syndrome_image(r).order == 1

    def test_two_state_cycle(self, two_state):
        r, _, _ = two_state
        image = syndrome_image(r)
        assert sorted(e.residues for e in image) == [(0, 0), (1, 1)]

    def test_z4_image_is_whole_state_product(self, z4):
        r, _, _ = z4
        assert syndrome_image(r).order == r.state_product_order == 8

    def test_image_order_equals_constraint_index(self):
        # |U| / |extended| = |S^c| for every realization, reduced or not
        for inst in random_suite(seed=31, count=20):
            for r, bundle in ((inst.original, None), (inst.reduced, inst.bundle)):
                bundle = bundle or compute_behavior(r)
                assert bundle.universe_order // bundle.extended.order == syndrome_image(r).order


class TestControllabilityTest:
    def test_z4(self, z4):
        r, bundle, _ = z4
        report = controllability_test(r, bundle)
        assert report.ratio == (8, 8)
        assert report.controllable

    def test_two_state_cycle(self, two_state):
        r, bundle, _ = two_state
        report = controllability_test(r, bundle)
        assert report.ratio == (2, 4)
        assert not report.controllable

    def test_all_trivial(self, trivial3):
        r, bundle, _ = trivial3
        report = controllability_test(r, bundle)
        assert report.ratio == (1, 1)
        assert report.controllable

    def test_uncontrollable_beats_naive_count(self, two_state):
        # dependent constraints leave strictly more than |U| / |S| trajectories
        r, bundle, _ = two_state
        assert bundle.behavior.order > bundle.universe_order // r.state_product_order


class TestControllableSubrealization:
    def test_controllable_case_keeps_behavior(self, z4):
        r, bundle, table = z4
        sub = controllable_subrealization(r, bundle, table)
        assert compute_behavior(sub).behavior.member_set == bundle.behavior.member_set

    def test_two_state_cycle_collapses(self, two_state):
        r, bundle, table = two_state
        sub = controllable_subrealization(r, bundle, table)
        assert all(s.order == 1 for s in sub.state_alphabets)
        assert compute_behavior(sub).behavior.order == 1

    def test_subrealization_is_reduced_and_controllable(self):
        for inst in random_suite(seed=32, count=25):
            table = build_granule_table(inst.bundle)
            sub = controllable_subrealization(inst.reduced, inst.bundle, table)
            sub_bundle = compute_behavior(sub)
            assert sub_bundle.behavior.member_set == table.controllable_sub.member_set
            assert is_reduced(sub, sub_bundle)
            assert controllability_test(sub, sub_bundle).controllable


class TestLemmaQuotients:
    def test_z4_all_trivial_quotients(self, z4):
        r, bundle, table = z4
        for check in lemma_quotients(r, bundle, table):
            assert check.state_index == check.code_index == 1
            assert check.ok

    def test_two_state_cycle(self, two_state):
        r, bundle, table = two_state
        for check in lemma_quotients(r, bundle, table):
            assert check.state_index == 2
            assert check.code_index == 2
            assert check.state_factors == (2,)
            assert check.ok

    def test_requires_reduced(self):
        r = z4_example(overdeclare_s2=True)
        bundle = compute_behavior(r)
        table = build_granule_table(bundle)
        with pytest.raises(RequiresReducedError):
            lemma_quotients(r, bundle, table)

    def test_randomized(self):
        for inst in random_suite(seed=33, count=25):
            table = build_granule_table(inst.bundle)
            for check in lemma_quotients(inst.reduced, inst.bundle, table):
                assert check.ok


class TestComponentCount:
    def test_z4(self, z4):
        r, bundle, _ = z4
        assert component_count(r, bundle) == 1

    def test_two_state_cycle(self, two_state):
        r, bundle, _ = two_state
        assert component_count(r, bundle) == 2

    def test_shift_cycles(self):
        for m in (2, 3, 4):
            r = shift_cycle(3, m, with_symbols=True)
            bundle = compute_behavior(r)
            assert component_count(r, bundle) == m

    def test_requires_reduced(self):
        r = z4_example(overdeclare_s2=True)
        bundle = compute_behavior(r)
        with pytest.raises(RequiresReducedError):
            component_count(r, bundle)

    def test_matches_top_granule_order(self):
        for inst in random_suite(seed=34, count=25):
            table = build_granule_table(inst.bundle)
            assert component_count(inst.reduced, inst.bundle) == table.top.granule.order


class TestNoCrossing:
    def test_components_refine_coset_labels(self):
        # states reached by different cosets of B^c always sit in different components
        for inst in random_suite(seed=35, count=12):
            r, bundle = inst.reduced, inst.bundle
            table = build_granule_table(bundle)
            top = table.top.granule
            if top.order == 1:
                continue
            # label each (j, state) with the coset of the trajectories through it
            labels: dict[tuple[int, tuple[int, ...]], set[int]] = {}
            for t in bundle.behavior.elements:
                coset = top.coset_index(t)
                for j in range(r.n):
                    key = (j, tuple(t.residues[i] for i in r.state_coords(j)))
                    labels.setdefault(key, set()).add(coset)
            for key, cosets in labels.items():
                assert len(cosets) == 1


class TestFullReport:
    def test_z4(self, z4):
        r, bundle, table = z4
        report = control_report(r, bundle, table)
        assert report.controllable
        assert report.component_count == 1
        assert report.top_granule.order == 1
        assert report.controllable_sub.member_set == bundle.behavior.member_set

    def test_lemma_quotient_isomorphism_statement(self, two_state):
        # S_j / (S_j)^c is isomorphic to the top granule, not just equinumerous
        r, bundle, table = two_state
        bc = table.controllable_sub
        for j in range(r.n):
            state_q = quotient(r.state_alphabets[j], project(bc, r.state_coords(j)))
            assert state_q.invariant_factors() == table.top.granule.invariant_factors()
