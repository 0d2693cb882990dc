import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from frechetgap.curve import curve1, curve2, subcurve
from frechetgap.engines import (critical_values, decide_frechet,
                                decide_partial_frechet,
                                discrete_frechet_exact,
                                discrete_weak_frechet_exact, frechet_exact,
                                partial_frechet_exact, weak_frechet_exact)
from frechetgap.gadgets import (GadgetCurvePair, OVInstance, TrivialityClass,
                                brute_force_ov, build_full_reduction,
                                build_partial_reduction, build_reduction,
                                build_vector_gadgets, build_weak_continuous_2d,
                                build_weak_discrete_1d, classify_instance,
                                ov_dumps, ov_instance, ov_loads, pair_dumps,
                                pair_loads, subdivide_for_discrete,
                                subdivide_pair_for_discrete)
from frechetgap.gadgets import _weak_p_piece_2d, _weak_q_piece_2d
from frechetgap.gapcheck import (FAMILY_VARIANTS, GapReport,
                                 campaign_instances, check_instance,
                                 random_instance, resolve_instance)

YES_INST = ov_instance(2, [(0, 1)], [(1, 0)])
NO_INST = ov_instance(2, [(1, 1)], [(1, 1)])

bits = st.integers(0, 1)


def rows(n, d):
    return st.lists(st.tuples(*[bits] * d), min_size=n, max_size=n)


class TestOVInstance:
    def test_counts(self):
        inst = ov_instance(3, [(1, 0, 1)], [(0, 1, 0), (1, 1, 1)])
        assert (inst.dim, inst.n, inst.m) == (3, 1, 2)

    def test_rejects_bad_entries(self):
        with pytest.raises(ValueError):
            OVInstance(2, ((0, 2),), ())
        with pytest.raises(ValueError):
            OVInstance(2, ((0, 1, 0),), ())
        with pytest.raises(ValueError):
            OVInstance(0, (), ())


class TestClassify:
    def test_empty_side(self):
        assert classify_instance(ov_instance(2, [], [(1, 0)])) \
            is TrivialityClass.EMPTY_SIDE

    def test_zero_vector(self):
        inst = ov_instance(2, [(0, 0), (1, 0)], [(1, 1)])
        assert classify_instance(inst) is TrivialityClass.CONTAINS_ZERO_VECTOR

    def test_threshold_zero_admits_d1(self):
        inst = ov_instance(2, [(1, 0)], [(0, 1)])
        assert classify_instance(inst, constant_d_threshold=0) \
            is TrivialityClass.NONTRIVIAL

    def test_default_threshold_catches_d1(self):
        inst = ov_instance(1, [(1,)], [(1,)])
        assert classify_instance(inst) is TrivialityClass.CONSTANT_DIMENSION

    def test_priority_order(self):
        # empty side wins over a zero vector, zero vector over dimension
        assert classify_instance(ov_instance(1, [], [(0,)])) \
            is TrivialityClass.EMPTY_SIDE
        assert classify_instance(ov_instance(1, [(0,)], [(1,)])) \
            is TrivialityClass.CONTAINS_ZERO_VECTOR

    def test_nontrivial(self):
        assert classify_instance(YES_INST) is TrivialityClass.NONTRIVIAL
        assert classify_instance(NO_INST) is TrivialityClass.NONTRIVIAL


class TestBruteForce:
    def test_finds_first_pair(self):
        assert brute_force_ov(ov_instance(2, [(1, 1), (0, 1)], [(1, 0)])) \
            == (2, 1)
        assert brute_force_ov(
            ov_instance(2, [(1, 0), (0, 1)], [(0, 1), (1, 0)])) == (1, 1)

    def test_no_pair(self):
        assert brute_force_ov(NO_INST) is None

    @given(rows(3, 3), rows(3, 3))
    def test_witness_is_orthogonal_and_first(self, u_rows, v_rows):
        inst = ov_instance(3, u_rows, v_rows)
        got = brute_force_ov(inst)
        pairs = [(i + 1, j + 1)
                 for i, u in enumerate(u_rows)
                 for j, v in enumerate(v_rows)
                 if sum(a * b for a, b in zip(u, v)) == 0]
        assert got == (min(pairs) if pairs else None)


class TestOVFormat:
    def test_dumps_layout(self):
        text = ov_dumps(ov_instance(2, [(1, 0), (0, 1)], [(1, 1)]))
        assert text == "2\nU\n10\n01\nV\n11\n"

    def test_round_trip(self):
        for inst in (YES_INST, NO_INST,
                     ov_instance(3, [], [(1, 1, 0)]),
                     ov_instance(1, [(0,), (1,)], [])):
            assert ov_loads(ov_dumps(inst)) == inst

    def test_tolerates_blank_lines(self):
        assert ov_loads("2\n\nU\n10\n\nV\n01\n\n") \
            == ov_instance(2, [(1, 0)], [(0, 1)])

    def test_format_errors(self):
        with pytest.raises(ValueError):
            ov_loads("2\nU\n10")  # missing V section
        with pytest.raises(ValueError):
            ov_loads("x\nU\nV\n")
        with pytest.raises(ValueError):
            ov_loads("2\nV\n10\nU\n01\n")
        with pytest.raises(ValueError):
            ov_loads("2\nU\n1x\nV\n01\n")
        with pytest.raises(ValueError):
            ov_loads("2\n")


class TestVectorGadgets:
    def test_p_vector_curve(self):
        got = build_vector_gadgets((0, 1, 0, 1), "P")
        assert got.verts == (0, 10, 4, 8, 4, 10, 4, 8, 0)

    def test_q_vector_curve(self):
        got = build_vector_gadgets((0, 0, 1, 1), "Q")
        assert got.verts == (1, 9, 3, 9, 3, 11, 3, 11, 1)

    def test_p_star(self):
        got = build_vector_gadgets(4, "P*")
        assert got.verts == (2, 10, 4, 10, 4, 10, 4, 10, 2)

    def test_other_separators(self):
        assert build_vector_gadgets(4, "Q*").verts \
            == (3, 9, 5, 9, 5, 9, 5, 9, 3)
        assert build_vector_gadgets(4, "P+").verts \
            == (4, 8, 6, 8, 6, 8, 6, 8, 4)
        assert build_vector_gadgets(None, "Q+").verts == (5, 7, 5)

    def test_errors(self):
        with pytest.raises(ValueError):
            build_vector_gadgets((1, 0), "X")
        with pytest.raises(ValueError):
            build_vector_gadgets(0, "P*")


def _p_marks(pair):
    return {k for k in pair.bookmarks if k.split("_")[0] in "abst"}


@pytest.fixture(scope="module")
def pair():
    inst = ov_instance(4, [(0, 1, 0, 1), (1, 1, 0, 0)],
                       [(0, 0, 1, 1), (1, 0, 1, 0), (0, 1, 1, 0)])
    return build_partial_reduction(inst), inst


class TestPartialReduction:

    def test_coordinate_ranges(self, pair):
        gp, _ = pair
        assert set(gp.p.verts) <= {0, 2, 4, 6, 8, 10}
        assert set(gp.q.verts) <= {1, 3, 5, 7, 9, 11}

    def test_entry_ramp_prefix(self, pair):
        gp, _ = pair
        assert gp.p.verts[:13] == (4, 10, 4, 10, 4, 10, 4, 10, 4, 10, 2, 8, 6)

    def test_bookmark_key_sets(self, pair):
        gp, inst = pair
        n, m = inst.n, inst.m
        want = {f"{f}_{i}" for f in "ab" for i in range(n + 1)}
        want |= {f"{f}_{i}" for f in "st" for i in range(n)}
        want |= {f"{f}_{k}" for f in ("c", "l", "r", "sq", "tq")
                 for k in range(n + m)}
        assert set(gp.bookmarks) == want

    def test_bookmark_coordinates(self, pair):
        gp, _ = pair
        values = {"a": 2, "b": 2, "s": 0, "t": 0,
                  "c": 3, "l": 5, "r": 5, "sq": 1, "tq": 1}
        for name, idx in gp.bookmarks.items():
            fam = name.split("_")[0]
            curve = gp.p if fam in "abst" else gp.q
            assert curve.verts[idx - 1] == values[fam], name

    def test_vector_gadgets_recoverable(self, pair):
        gp, inst = pair
        for i, u in enumerate(inst.u_rows):
            sub = subcurve(gp.p, gp.bookmarks[f"s_{i}"],
                           gp.bookmarks[f"t_{i}"])
            assert sub.verts == build_vector_gadgets(u, "P").verts

    def test_doubled_block_between_a_and_b(self, pair):
        gp, inst = pair
        for i in range(inst.n + 1):
            sub = subcurve(gp.p, gp.bookmarks[f"a_{i}"],
                           gp.bookmarks[f"b_{i}"])
            # the free-pass block never reaches the extreme spike levels
            assert set(sub.verts) <= {2, 4, 6, 8}

    def test_size_bounds(self):
        for n, m, d in [(1, 1, 2), (3, 2, 4), (2, 5, 3), (6, 6, 5)]:
            inst = random_instance(n, m, d, seed=n * 100 + m * 10 + d,
                                   nontrivial=True)
            gp = build_partial_reduction(inst)
            assert len(gp.p) <= 29 * n * d
            assert len(gp.q) <= 18 * (n + m) * d

    def test_yes_instance_gap(self):
        gp = build_partial_reduction(YES_INST)
        assert partial_frechet_exact(gp.p, gp.q) <= 1
        assert decide_partial_frechet(gp.p, gp.q, 1)

    def test_no_instance_gap(self):
        gp = build_partial_reduction(NO_INST)
        assert partial_frechet_exact(gp.p, gp.q) >= 3
        assert not decide_partial_frechet(gp.p, gp.q, Fraction(5, 2))

    def test_trivial_instances_rejected(self):
        for inst in (ov_instance(2, [], [(1, 0)]),
                     ov_instance(2, [(0, 0)], [(1, 0)]),
                     ov_instance(1, [(1,)], [(1,)])):
            with pytest.raises(ValueError):
                build_partial_reduction(inst)


class TestFullReduction:
    def test_q_skip1_is_q_plus(self):
        assert build_vector_gadgets(None, "Q+").verts == (5, 7, 5)

    def test_coordinate_ranges_and_parity(self):
        inst = random_instance(3, 3, 3, seed=9, nontrivial=True)
        gp = build_full_reduction(inst)
        assert set(gp.p.verts) <= {0, 2, 4, 6, 8, 10}
        assert set(gp.q.verts) <= {1, 3, 5, 7, 9, 11}

    def test_integer_critical_values(self):
        gp = build_full_reduction(random_instance(2, 2, 2, seed=3,
                                                  nontrivial=True))
        for e in critical_values(gp.p, gp.q):
            assert e == int(e) and 0 <= e <= 11

    def test_yes_instance_gap(self):
        gp = build_full_reduction(YES_INST)
        assert frechet_exact(gp.p, gp.q) <= 1
        assert decide_frechet(gp.p, gp.q, 1)

    def test_no_instance_gap(self):
        gp = build_full_reduction(NO_INST)
        assert frechet_exact(gp.p, gp.q) >= 3
        assert not decide_frechet(gp.p, gp.q, Fraction(5, 2))

    def test_partial_pair_embedded(self):
        # the guarded curves keep the partial pair's bookmarks usable
        inst = random_instance(2, 3, 3, seed=21, nontrivial=True)
        full = build_full_reduction(inst)
        part = build_partial_reduction(inst)
        for i, u in enumerate(inst.u_rows):
            sub = subcurve(full.p, full.bookmarks[f"s_{i}"],
                           full.bookmarks[f"t_{i}"])
            assert sub.verts == build_vector_gadgets(u, "P").verts
        assert set(part.bookmarks) == set(full.bookmarks)

    def test_size_bounds(self):
        for n, m, d in [(1, 1, 2), (2, 4, 3), (5, 2, 5)]:
            inst = random_instance(n, m, d, seed=n + 7 * m + 31 * d,
                                   nontrivial=True)
            gp = build_full_reduction(inst)
            assert len(gp.p) <= 40 * (n + m) * d
            assert len(gp.q) <= 33 * (n + m) * d


class TestWeakDiscrete1d:
    def test_vector_coordinate_formulas(self):
        p = build_weak_discrete_1d(ov_instance(2, [(1, 0)], [(1, 0)]))
        # P_(1,0) = <6,14> and Q_(1,0) = <9,13> appear inside the frames
        assert (6, 14) in zip(p.p.verts, p.p.verts[1:]) or \
            any(p.p.verts[i:i + 2] == (6, 14) for i in range(len(p.p) - 1))
        assert any(p.q.verts[i:i + 2] == (9, 13) for i in range(len(p.q) - 1))

    def test_pairwise_gadget_distances(self):
        # aligned vector coordinates sit at distance 1 when orthogonal at
        # that position and 3 when both bits are set
        for d in (2, 3, 5):
            for u in itertools.product((0, 1), repeat=d):
                for v in itertools.product((0, 1), repeat=d):
                    pu = [6 * i + 2 - 2 * b for i, b in enumerate(u, 1)]
                    qv = [6 * i + 1 + 2 * b for i, b in enumerate(v, 1)]
                    for i in range(d):
                        want = 3 if u[i] * v[i] == 1 else 1
                        assert abs(pu[i] - qv[i]) == want

    def test_frozen_p_sequence(self):
        gp = build_weak_discrete_1d(ov_instance(2, [(1, 0)], [(0, 1)]))
        assert gp.p.verts == (0, 3, 8, 14, 21, 12, 6, 6, 14, 12, 6,
                              3, 8, 14, 21, 24)
        assert gp.bookmarks == {}

    def test_yes_instance_gap(self):
        gp = build_weak_discrete_1d(YES_INST)
        for restricted in (True, False):
            got = discrete_weak_frechet_exact(gp.p, gp.q,
                                              endpoint_restricted=restricted)
            assert got <= 1

    def test_no_instance_gap(self):
        gp = build_weak_discrete_1d(NO_INST)
        for restricted in (True, False):
            got = discrete_weak_frechet_exact(gp.p, gp.q,
                                              endpoint_restricted=restricted)
            assert got >= 3


class TestWeakContinuous2d:
    def test_piece_formulas(self):
        assert _weak_p_piece_2d((1,)) == [(6, 1), (6, 2), (12, 2), (12, 1)]
        assert _weak_p_piece_2d((0, 1)) == [(6, 1), (6, 0), (12, 0), (12, 1),
                                            (12, 1), (12, 2), (18, 2), (18, 1)]
        assert _weak_q_piece_2d((1,)) == [(6, 0), (6, -1), (12, -1), (12, 0)]
        assert _weak_q_piece_2d((0,)) == [(6, 0), (6, 1), (12, 1), (12, 0)]

    def test_band_separation(self):
        # P stays weakly above height 0 and Q weakly below height 1, so
        # only the vector teeth can come close across the bands
        gp = build_weak_continuous_2d(
            ov_instance(3, [(1, 0, 1), (0, 1, 1)], [(1, 1, 0)]))
        assert all(y >= 0 for _, y in gp.p.verts)
        assert all(y <= 1 for _, y in gp.q.verts)

    def test_yes_instance_gap(self):
        gp = build_weak_continuous_2d(YES_INST)
        for restricted in (True, False):
            got = weak_frechet_exact(gp.p, gp.q,
                                     endpoint_restricted=restricted)
            assert got <= 1

    def test_no_instance_gap(self):
        gp = build_weak_continuous_2d(NO_INST)
        for restricted in (True, False):
            got = weak_frechet_exact(gp.p, gp.q,
                                     endpoint_restricted=restricted)
            assert got >= 3


class TestBuildReduction:
    def test_dispatch(self):
        for family in FAMILY_VARIANTS:
            gp = build_reduction(YES_INST, family)
            assert isinstance(gp, GadgetCurvePair)

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            build_reduction(YES_INST, "strong3d")

    def test_deterministic_serialization(self):
        for family in FAMILY_VARIANTS:
            a = pair_dumps(build_reduction(YES_INST, family))
            b = pair_dumps(build_reduction(YES_INST, family))
            assert a == b

    def test_round_trip(self):
        for family in FAMILY_VARIANTS:
            gp = build_reduction(NO_INST, family)
            assert pair_loads(pair_dumps(gp)) == gp


class TestSubdivision:
    def test_two_segment_example(self):
        P, Q = curve1([0, 10]), curve1([1, 9])
        SP, SQ = subdivide_for_discrete(P, Q)
        assert frechet_exact(P, Q) == 1
        assert discrete_frechet_exact(SP, SQ) == 1

    def test_matches_continuous_on_random_small_grid(self):
        rng = random.Random(1234)
        for _ in range(20):
            P = curve1([rng.randint(0, 11)
                        for _ in range(rng.randint(1, 7))])
            Q = curve1([rng.randint(0, 11)
                        for _ in range(rng.randint(1, 7))])
            SP, SQ = subdivide_for_discrete(P, Q)
            assert discrete_frechet_exact(SP, SQ) == frechet_exact(P, Q)

    def test_distance_stable_under_resubdivision(self):
        P, Q = curve1([0, 7, 2, 11]), curve1([1, 9, 4])
        SP, SQ = subdivide_for_discrete(P, Q)
        SSP, SSQ = subdivide_for_discrete(SP, SQ)
        assert discrete_frechet_exact(SSP, SSQ) \
            == discrete_frechet_exact(SP, SQ) == frechet_exact(P, Q)

    def test_only_inserts_vertices(self):
        P, Q = curve1([0, 7, 2, 11]), curve1([1, 9, 4])
        SP, SQ = subdivide_for_discrete(P, Q)
        for orig, sub in ((P, SP), (Q, SQ)):
            it = iter(sub.verts)
            assert all(v in it for v in orig.verts)  # subsequence
            assert (sub.verts[0], sub.verts[-1]) \
                == (orig.verts[0], orig.verts[-1])

    def test_requires_1d(self):
        with pytest.raises(ValueError):
            subdivide_for_discrete(curve2([(0, 0), (1, 1)]),
                                   curve2([(0, 1)]))

    def test_pair_subdivision_remaps_bookmarks(self):
        inst = random_instance(2, 2, 3, seed=5, nontrivial=True)
        gp = build_partial_reduction(inst)
        dp = subdivide_pair_for_discrete(gp)
        assert dp.variant == "dF"
        assert set(dp.bookmarks) == set(gp.bookmarks)
        for name, idx in dp.bookmarks.items():
            fam = name.split("_")[0]
            before = (gp.q if fam in ("c", "l", "r", "sq", "tq")
                      else gp.p).verts[gp.bookmarks[name] - 1]
            after = (dp.q if fam in ("c", "l", "r", "sq", "tq")
                     else dp.p).verts[idx - 1]
            assert before == after

    def test_pair_subdivision_preserves_value(self):
        gp = build_full_reduction(YES_INST)
        dp = subdivide_pair_for_discrete(gp)
        assert discrete_frechet_exact(dp.p, dp.q) \
            == frechet_exact(gp.p, gp.q)


class TestGapcheck:
    def test_yes_report(self):
        rep = check_instance(YES_INST, "partial", label="yes1")
        assert rep.passed and rep.oracle_yes
        assert rep.witness == (1, 1)
        assert rep.offset == 0
        assert set(rep.distances) == {"partialF"}
        assert rep.distances["partialF"] <= 1

    def test_no_report(self):
        rep = check_instance(NO_INST, "frechet")
        assert rep.passed and not rep.oracle_yes
        assert rep.witness is None and rep.offset is None
        assert rep.distances["F"] >= 3

    def test_weak_families_cover_both_restrictions(self):
        rep = check_instance(YES_INST, "weak1d")
        assert set(rep.distances) == {"dwF", "dwwF"}
        rep2 = check_instance(YES_INST, "weak2d")
        assert set(rep2.distances) == {"wF", "wwF"}
        assert rep.passed and rep2.passed

    def test_offset_formula(self):
        inst = ov_instance(2, [(1, 1), (0, 1)], [(1, 0), (1, 1)])
        rep = check_instance(inst, "partial")
        assert rep.witness == (2, 1)
        assert rep.offset == (1 - 2) % inst.m == 1

    def test_passed_is_derived(self):
        base = dict(family="partial", label="x", n=1, m=1, dim=2,
                    witness=None, offset=None)
        good = GapReport(oracle_yes=False, distances={"partialF": 3},
                         decisions_ok={"partialF": True}, **base)
        in_gap = GapReport(oracle_yes=False, distances={"partialF": 2},
                           decisions_ok={"partialF": True}, **base)
        bad_decide = GapReport(oracle_yes=False, distances={"partialF": 4},
                               decisions_ok={"partialF": False}, **base)
        assert good.passed
        assert not in_gap.passed
        assert not bad_decide.passed

    def test_rows_shape(self):
        rep = check_instance(YES_INST, "weak1d", label="w")
        rows = list(rep.rows())
        assert [r["variant"] for r in rows] == ["dwF", "dwwF"]
        assert all(r["oracle"] == "YES" and r["label"] == "w" for r in rows)

    def test_mini_sweep_all_families(self):
        for family in FAMILY_VARIANTS:
            for s in range(3):
                inst = random_instance(2, 2, 2, seed=900 + s,
                                       nontrivial=True)
                rep = check_instance(inst, family, label=f"s{s}")
                assert rep.passed, (family, s)
                assert rep.oracle_yes == (brute_force_ov(inst) is not None)


class TestResolveInstance:
    def test_empty_side(self):
        cls, witness = resolve_instance(ov_instance(2, [], [(1, 0)]))
        assert cls is TrivialityClass.EMPTY_SIDE and witness is None

    def test_zero_vector_witness(self):
        inst = ov_instance(2, [(1, 1), (0, 0)], [(1, 1)])
        cls, witness = resolve_instance(inst)
        assert cls is TrivialityClass.CONTAINS_ZERO_VECTOR
        assert witness == (2, 1)
        i, j = witness
        assert sum(a * b for a, b in zip(inst.u_rows[i - 1],
                                         inst.v_rows[j - 1])) == 0

    def test_constant_dimension(self):
        cls, witness = resolve_instance(ov_instance(1, [(1,)], [(1,)]))
        assert cls is TrivialityClass.CONSTANT_DIMENSION and witness is None
        cls, witness = resolve_instance(ov_instance(1, [(1,), (1,)],
                                                    [(1,)]))
        assert witness is None

    def test_nontrivial_falls_back_to_brute_force(self):
        cls, witness = resolve_instance(YES_INST)
        assert cls is TrivialityClass.NONTRIVIAL and witness == (1, 1)


class TestRandomInstances:
    def test_deterministic(self):
        a = random_instance(4, 5, 3, seed=77)
        b = random_instance(4, 5, 3, seed=77)
        assert a == b
        assert a != random_instance(4, 5, 3, seed=78)

    def test_shape(self):
        inst = random_instance(4, 5, 3, seed=1)
        assert (inst.n, inst.m, inst.dim) == (4, 5, 3)

    def test_nontrivial_rows(self):
        for s in range(30):
            inst = random_instance(3, 3, 2, seed=s, density=0.3,
                                   nontrivial=True)
            assert all(any(r) for r in inst.u_rows + inst.v_rows)

    def test_density_extremes(self):
        ones = random_instance(2, 2, 4, seed=0, density=1)
        assert set(ones.u_rows + ones.v_rows) == {(1, 1, 1, 1)}
        zeros = random_instance(2, 2, 4, seed=0, density=0)
        assert set(zeros.u_rows + zeros.v_rows) == {(0, 0, 0, 0)}

    def test_parameter_errors(self):
        with pytest.raises(ValueError):
            random_instance(2, 2, 2, seed=0, density=1.5)
        with pytest.raises(ValueError):
            random_instance(2, 2, 2, seed=0, density=0, nontrivial=True)


class TestCampaign:
    def test_cell_coverage_and_count(self):
        items = list(campaign_instances(seeds_per_cell=4))
        assert len(items) == 6 * 6 * 4 * 4 == 576
        seen = {(inst.n, inst.m, inst.dim) for _, inst in items}
        assert seen == {(n, m, d)
                        for n in range(1, 7)
                        for m in range(1, 7)
                        for d in range(2, 6)}

    def test_labels_and_nontriviality(self):
        for label, inst in campaign_instances(seeds_per_cell=1):
            assert label == f"n{inst.n}m{inst.m}d{inst.dim}s0"
            assert classify_instance(inst) is TrivialityClass.NONTRIVIAL

    def test_deterministic(self):
        a = list(campaign_instances(seeds_per_cell=2))
        b = list(campaign_instances(seeds_per_cell=2))
        assert a == b

    def test_base_seed_changes_instances(self):
        a = [i for _, i in campaign_instances(seeds_per_cell=1)]
        b = [i for _, i in campaign_instances(seeds_per_cell=1, base_seed=1)]
        assert a != b
