from fractions import Fraction

import pytest

from hjtoric.circle import (
    FixedPointDatum,
    TrackedClassDestroyed,
    arc_distance,
    area,
    build_cover,
    cross_level,
    default_base,
    initial_state,
    run_loop,
    validate,
)
from hjtoric.errors import DomainError, StructureError
from hjtoric.resolution import resolve_cyclic


def pair_21():
    return [
        FixedPointDatum(Fraction(0), +1, 2, 1),
        FixedPointDatum(Fraction(1, 2), -1, 2, 1),
    ]


def pair_74():
    return [
        FixedPointDatum(Fraction(0), +1, 7, 4),
        FixedPointDatum(Fraction(1, 2), -1, 7, 4),
    ]


def canonical_components(lat):
    """Multiset of connected components as normalized (self, c1) profiles."""
    n = len(lat)
    adj = {i: set() for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            if lat.pairing[i][j]:
                adj[i].add(j)
                adj[j].add(i)
    seen, comps = set(), []
    for s in range(n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        ends = [v for v in comp if len(adj[v]) <= 1]
        start = min(ends) if ends else min(comp)
        order, prev = [start], None
        while len(order) < len(comp):
            nxt = [w for w in adj[order[-1]] if w != prev]
            prev = order[-1]
            order.append(nxt[0])
        profile = tuple((lat.pairing[v][v], lat.c1[v]) for v in order)
        comps.append(min(profile, tuple(reversed(profile))))
    return sorted(comps)


class TestDatum:
    def test_validation(self):
        with pytest.raises(DomainError):
            FixedPointDatum(Fraction(3, 2), 1, 2, 1)
        with pytest.raises(DomainError):
            FixedPointDatum(Fraction(0), 2, 2, 1)
        with pytest.raises(DomainError):
            FixedPointDatum(Fraction(0), 1, 4, 2)
        with pytest.raises(DomainError):
            FixedPointDatum(Fraction(0), 1, 4, 7)


class TestValidate:
    def test_empty_is_no_obstruction(self):
        rep = validate([])
        assert rep.outcome == "no_obstruction" and rep.ok

    def test_matched_pair(self):
        rep = validate(pair_21())
        assert rep.outcome == "ok"
        assert rep.pairs == ((0, 1),)

    def test_unmatched_weights(self):
        rep = validate(
            [
                FixedPointDatum(Fraction(0), +1, 2, 1),
                FixedPointDatum(Fraction(1, 2), -1, 3, 1),
            ]
        )
        assert rep.outcome == "error"
        assert any("unmatched weights" in e for e in rep.errors)

    def test_duplicate_levels(self):
        rep = validate(
            [
                FixedPointDatum(Fraction(0), +1, 2, 1),
                FixedPointDatum(Fraction(0), -1, 2, 1),
            ]
        )
        assert rep.outcome == "error"

    def test_single_sign(self):
        rep = validate([FixedPointDatum(Fraction(0), +1, 2, 1)])
        assert rep.outcome == "error"

    def test_fifo_wraps_around(self):
        data = [
            FixedPointDatum(Fraction(1, 4), -1, 2, 1),
            FixedPointDatum(Fraction(3, 4), +1, 2, 1),
        ]
        rep = validate(data)
        assert rep.pairs == ((1, 0),)

    def test_fifo_two_pairs_same_weights(self):
        data = [
            FixedPointDatum(Fraction(0), +1, 2, 1),
            FixedPointDatum(Fraction(1, 4), +1, 2, 1),
            FixedPointDatum(Fraction(1, 2), -1, 2, 1),
            FixedPointDatum(Fraction(3, 4), -1, 2, 1),
        ]
        rep = validate(data)
        assert rep.pairs == ((0, 2), (1, 3))

    def test_explicit_matching(self):
        data = [
            FixedPointDatum(Fraction(0), +1, 2, 1, match=2),
            FixedPointDatum(Fraction(1, 4), +1, 2, 1, match=3),
            FixedPointDatum(Fraction(1, 2), -1, 2, 1, match=0),
            FixedPointDatum(Fraction(3, 4), -1, 2, 1, match=1),
        ]
        rep = validate(data)
        assert rep.pairs == ((0, 2), (1, 3))

    def test_explicit_matching_inconsistent(self):
        data = [
            FixedPointDatum(Fraction(0), +1, 2, 1, match=1),
            FixedPointDatum(Fraction(1, 2), -1, 3, 1, match=0),
        ]
        rep = validate(data)
        assert rep.outcome == "error"

    def test_partial_matching_rejected(self):
        data = [
            FixedPointDatum(Fraction(0), +1, 2, 1, match=1),
            FixedPointDatum(Fraction(1, 2), -1, 2, 1),
        ]
        assert validate(data).outcome == "error"


class TestCover:
    def test_two_levels(self):
        cov = build_cover(pair_21(), Fraction(1, 8))
        assert cov.u_arcs == ((Fraction(0), Fraction(1, 2)), (Fraction(1, 2), Fraction(0)))
        assert cov.i_arcs == (
            (Fraction(-1, 8), Fraction(1, 8)),
            (Fraction(3, 8), Fraction(5, 8)),
        )
        assert set(cov.relations) == {
            ("I1", "U1"), ("I2", "U2"), ("I2", "U1"), ("I1", "U2"),
        }

    def test_half_gap_rejected(self):
        with pytest.raises(DomainError) as err:
            build_cover(pair_21(), Fraction(1, 4))
        assert "1/4" in str(err.value)

    def test_max_overlap_two(self):
        for eps in (Fraction(1, 8), Fraction(1, 100), Fraction(24, 100)):
            assert build_cover(pair_21(), eps).max_overlap() == 2

    def test_covers_everything(self):
        cov = build_cover(pair_21(), Fraction(1, 8))
        for x in (Fraction(0), Fraction(1, 2), Fraction(1, 3), Fraction(99, 100)):
            assert len(cov.membership(x)) >= 1

    def test_four_levels_relations(self):
        data = [
            FixedPointDatum(Fraction(0), +1, 2, 1),
            FixedPointDatum(Fraction(1, 4), +1, 3, 2),
            FixedPointDatum(Fraction(1, 2), -1, 2, 1),
            FixedPointDatum(Fraction(3, 4), -1, 3, 2),
        ]
        cov = build_cover(data, Fraction(1, 16))
        assert len(cov.u_arcs) == len(cov.i_arcs) == 4
        assert ("I1", "U4") in cov.relations
        assert ("I3", "U2") in cov.relations
        assert cov.max_overlap() == 2


class TestCrossLevel:
    def test_standard_blowup(self):
        data = [
            FixedPointDatum(Fraction(0), +1, 1, 1),
            FixedPointDatum(Fraction(1, 2), -1, 1, 1),
        ]
        st = initial_state(data, base=Fraction(3, 4))
        st = cross_level(st.at(Fraction(1)), data[0])
        assert len(st.lattice) == 1
        assert st.books == ()

    def test_weighted_blowup_adds_chains_and_books(self):
        data = pair_74()
        st = initial_state(data, base=Fraction(3, 4))
        st = cross_level(st.at(Fraction(1)), data[0])
        assert len(st.lattice) == 5
        assert sorted(b[1].order for b in st.books) == [4, 7]

    def test_blowdown_removes_matched_config(self):
        data = pair_74()
        st = initial_state(data, base=Fraction(3, 4))
        st = cross_level(st.at(Fraction(1)), data[0])
        st = cross_level(st.at(Fraction(3, 2)), data[1])
        assert len(st.lattice) == 0
        assert st.books == ()

    def test_blowdown_without_candidate_fails(self):
        data = pair_74()
        st = initial_state(data, base=Fraction(1, 4))
        # the primed instance dies at 1/2; jumping to 3/2 leaves nothing
        st = cross_level(st.at(Fraction(1, 2)), data[1])
        with pytest.raises(StructureError):
            cross_level(st.at(Fraction(3, 2)), data[1])

    def test_only_counterclockwise(self):
        data = pair_21()
        st = initial_state(data, base=Fraction(1, 4))
        with pytest.raises(DomainError):
            cross_level(st.at(Fraction(1, 2)), data[1], direction="cw")

    def test_wrong_position(self):
        data = pair_21()
        st = initial_state(data, base=Fraction(1, 4))
        with pytest.raises(DomainError):
            cross_level(st, data[1])

    def test_tracked_mark_dies(self):
        data = pair_21()
        st = initial_state(data, base=Fraction(3, 4))
        st = cross_level(st.at(Fraction(1)), data[0], track="mark")
        with pytest.raises(TrackedClassDestroyed):
            cross_level(st.at(Fraction(3, 2)), data[1])


class TestArea:
    def setup_state(self):
        data = pair_21()
        st = initial_state(data, base=Fraction(3, 4))
        return cross_level(st.at(Fraction(1)), data[0]), st

    def test_exceptional_grows_at_slope(self):
        st, _ = self.setup_state()
        label = st.instances[-1].config.exceptional_label
        assert area(st, label, Fraction(1)) == 0
        assert area(st, label, Fraction(5, 4)) == Fraction(1, 8)

    def test_tent_vanishes_at_death(self):
        st, _ = self.setup_state()
        inst = st.instances[-1]
        assert area(st, inst.config.exceptional_label, inst.dies_at) == 0

    def test_chain_area_constant(self):
        data = pair_74()
        st = initial_state(data, base=Fraction(3, 4))
        st = cross_level(st.at(Fraction(1)), data[0])
        label = st.instances[-1].config.chain_labels[0]
        assert area(st, label, Fraction(1)) == st.delta
        assert area(st, label, Fraction(5, 4)) == st.delta

    def test_absent_class(self):
        st, _ = self.setup_state()
        with pytest.raises(DomainError):
            area(st, "nope", Fraction(1))
        label = st.instances[-1].config.exceptional_label
        with pytest.raises(DomainError):
            area(st, label, Fraction(1, 2))  # before creation


class TestRunLoop:
    def test_empty_no_obstruction(self):
        res = run_loop([], loops=3)
        assert res.verdict == "NO_OBSTRUCTION"
        assert res.ledger == ()

    @pytest.mark.parametrize("bound", [1, 2, 3])
    def test_contradiction_at_bound_plus_one(self, bound):
        res = run_loop(pair_21(), loops=10, bound=bound)
        assert res.verdict == "HAMILTONIAN"
        assert res.loop_of_contradiction == bound + 1

    def test_ledger_strictly_increasing_constant_increment(self):
        res = run_loop(pair_21(), loops=6, bound=5)
        diffs = {b - a for a, b in zip(res.ledger, res.ledger[1:])}
        assert all(b > a for a, b in zip(res.ledger, res.ledger[1:]))
        assert diffs == {Fraction(1, 2)}  # 1/(p*q) per unit circumference

    def test_semifree_same_shape(self):
        data = [
            FixedPointDatum(Fraction(0), +1, 1, 1),
            FixedPointDatum(Fraction(1, 2), -1, 1, 1),
        ]
        res = run_loop(data, loops=10, bound=3)
        assert res.verdict == "HAMILTONIAN"
        assert res.loop_of_contradiction == 4
        assert all(b > a for a, b in zip(res.ledger, res.ledger[1:]))

    def test_strict_mode_reports_destruction(self):
        res = run_loop(pair_21(), loops=5, bound=3, tracked_independent=False)
        assert res.verdict == "TRACKED_CLASS_DESTROYED"

    def test_inconclusive_when_loops_short(self):
        res = run_loop(pair_21(), loops=2, bound=5)
        assert res.verdict == "INCONCLUSIVE"
        assert len(res.ledger) == 2

    def test_default_bound_counts_exceptional_classes(self):
        res = run_loop(pair_21(), loops=10)
        # end of loop 1: the dynamic instance and the tracked copy
        assert res.bound == 2
        assert res.loop_of_contradiction == 3

    def test_two_pairs(self):
        data = [
            FixedPointDatum(Fraction(0), +1, 7, 4),
            FixedPointDatum(Fraction(1, 4), +1, 3, 2),
            FixedPointDatum(Fraction(1, 2), -1, 7, 4),
            FixedPointDatum(Fraction(3, 4), -1, 3, 2),
        ]
        res = run_loop(data, loops=8, bound=4)
        assert res.verdict == "HAMILTONIAN"
        assert res.loop_of_contradiction == 5
        assert all(b > a for a, b in zip(res.ledger, res.ledger[1:]))


class TestInvariants:
    def loop_lattices(self, data, loops):
        """Replicates run_loop's stepping, snapshotting each loop end."""
        st = initial_state(data)
        order = sorted(range(len(data)), key=lambda i: arc_distance(st.base, data[i].level))
        tracked = False
        snaps = []
        for loop in range(1, loops + 1):
            for i in order:
                pos = st.base + (loop - 1) + arc_distance(st.base, data[i].level)
                track = None
                if not tracked and data[i].sign == 1:
                    track, tracked = "copy", True
                st = cross_level(st.at(pos), data[i], track=track)
            snaps.append((st.lattice, canonical_components(st.lattice)))
        return snaps

    def test_loop_to_loop_isomorphism_type(self):
        for data in (pair_21(), pair_74()):
            snaps = self.loop_lattices(data, 4)
            forms = [c for _, c in snaps]
            assert forms[0] == forms[1] == forms[2] == forms[3]

    def test_class_count_conserved_between_levels(self):
        data = pair_74()
        snaps = self.loop_lattices(data, 3)
        counts = {len(lat) for lat, _ in snaps}
        assert len(counts) == 1

    def test_books_chains_embedded(self):
        data = [
            FixedPointDatum(Fraction(0), +1, 7, 4),
            FixedPointDatum(Fraction(1, 4), +1, 3, 2),
            FixedPointDatum(Fraction(1, 2), -1, 7, 4),
            FixedPointDatum(Fraction(3, 4), -1, 3, 2),
        ]
        st = initial_state(data, base=Fraction(7, 8))
        st = cross_level(st.at(Fraction(1)), data[0])
        st = cross_level(st.at(Fraction(5, 4)), data[1])
        assert len(st.books) >= 4
        for uid, sing in st.books:
            inst = next(i for i in st.instances if i.uid == uid)
            chain = (
                inst.config.chain_p
                if sing.order == inst.config.p
                else inst.config.chain_q
            )
            expect = resolve_cyclic(sing).self_intersections
            stored = tuple(
                st.lattice.self_intersection(l) for l in chain.labels
            )
            assert stored == tuple(reversed(expect)) or stored == expect
            for a, b in zip(chain.labels, chain.labels[1:]):
                assert st.lattice.pair(a, b) == 1

    def test_default_base_picks_longest_gap(self):
        data = [
            FixedPointDatum(Fraction(0), +1, 2, 1),
            FixedPointDatum(Fraction(3, 4), -1, 2, 1),
        ]
        assert default_base(data) == Fraction(3, 8)
