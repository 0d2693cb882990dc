import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from frechetgap.curve import curve1, curve2
from frechetgap.engines import (NoWitnessError, decide_discrete_weak_frechet,
                                decide_weak_frechet, discrete_frechet_exact,
                                discrete_weak_frechet_exact, extract_matching,
                                frechet_exact, hausdorff_image_1d,
                                weak_frechet_exact)
from frechetgap.exactnum import sqrt_exact
from frechetgap.freespace import square_exact

verts_1d = st.lists(st.integers(-10, 10), min_size=1, max_size=5)
eps_1d = st.fractions(min_value=0, max_value=14, max_denominator=3)


def _rand1(rng, lo=1, hi=6, span=10):
    return curve1([rng.randint(-span, span)
                   for _ in range(rng.randint(lo, hi))])


def _rand2(rng, lo=1, hi=4, span=6):
    return curve2([(rng.randint(-span, span), rng.randint(-span, span))
                   for _ in range(rng.randint(lo, hi))])


def _weak_candidates_1d(P, Q):
    cands = {Fraction(0)}
    pv, qv = P.verts, Q.verts
    for p in pv:
        for q in qv:
            cands.add(abs(Fraction(p) - q))
        for j in range(len(qv) - 1):
            cands.add(oracles.gap_1d(p, qv[j], qv[j + 1]))
    for q in qv:
        for i in range(len(pv) - 1):
            cands.add(oracles.gap_1d(q, pv[i], pv[i + 1]))
    return sorted(cands)


def _weak_candidates_sq_2d(P, Q):
    cands = {Fraction(0)}
    pv, qv = P.verts, Q.verts
    for p in pv:
        for q in qv:
            cands.add(oracles.dist_sq_2d(p, q))
        for j in range(len(qv) - 1):
            cands.add(oracles.point_seg_sq_2d(p, qv[j], qv[j + 1]))
    for q in qv:
        for i in range(len(pv) - 1):
            cands.add(oracles.point_seg_sq_2d(q, pv[i], pv[i + 1]))
    for i in range(len(pv) - 1):
        for j in range(len(qv) - 1):
            cands.add(oracles.seg_seg_sq_2d(pv[i], pv[i + 1],
                                            qv[j], qv[j + 1]))
    return sorted(cands)


class TestWeakDecide:
    def test_tight_example(self):
        P, Q = curve1([0, 10]), curve1([1, 9])
        assert decide_weak_frechet(P, Q, 1)
        assert not decide_weak_frechet(P, Q, Fraction(99, 100))

    @given(pv=verts_1d, qv=verts_1d, eps=eps_1d,
           restricted=st.booleans())
    def test_matches_connectivity_oracle_1d(self, pv, qv, eps, restricted):
        P, Q = curve1(pv), curve1(qv)
        got = decide_weak_frechet(P, Q, eps, endpoint_restricted=restricted)
        assert got == oracles.weak_decide(P, Q, eps, restricted)

    def test_matches_connectivity_oracle_2d(self):
        rng = random.Random(61)
        for _ in range(60):
            P, Q = _rand2(rng), _rand2(rng)
            eps = Fraction(rng.randint(0, 20), rng.choice([1, 2]))
            for restricted in (True, False):
                got = decide_weak_frechet(P, Q, eps,
                                          endpoint_restricted=restricted)
                want = oracles.weak_decide(P, Q, eps * eps, restricted)
                assert got == want, (P, Q, eps, restricted)

    def test_radical_eps_2d(self):
        P = curve2([(0, 0), (1, 0)])
        Q = curve2([(0, 1), (1, 1)])
        assert decide_weak_frechet(P, Q, 1)
        assert decide_weak_frechet(P, Q, sqrt_exact(1))
        assert not decide_weak_frechet(P, Q, sqrt_exact(Fraction(99, 100)))

    @given(pv=verts_1d, qv=verts_1d, e1=eps_1d, e2=eps_1d)
    def test_monotone_in_eps(self, pv, qv, e1, e2):
        P, Q = curve1(pv), curve1(qv)
        lo, hi = min(e1, e2), max(e1, e2)
        for restricted in (True, False):
            if decide_weak_frechet(P, Q, lo, endpoint_restricted=restricted):
                assert decide_weak_frechet(P, Q, hi,
                                           endpoint_restricted=restricted)


class TestWeakExact:
    def test_detour_has_zero_cost(self):
        assert weak_frechet_exact(curve1([0, 10]), curve1([0, 5, 2, 10])) == 0

    def test_tight_example(self):
        assert weak_frechet_exact(curve1([0, 10]), curve1([1, 9])) == 1

    def test_minimality_1d(self):
        rng = random.Random(67)
        for _ in range(20):
            P, Q = _rand1(rng), _rand1(rng)
            for restricted in (True, False):
                v = weak_frechet_exact(P, Q, endpoint_restricted=restricted)
                assert decide_weak_frechet(P, Q, v,
                                           endpoint_restricted=restricted)
                if v > 0:
                    below = v * Fraction(999, 1000)
                    assert not decide_weak_frechet(
                        P, Q, below, endpoint_restricted=restricted)

    def test_scan_oracle_1d(self):
        rng = random.Random(71)
        for _ in range(30):
            P, Q = _rand1(rng, hi=5), _rand1(rng, hi=5)
            cands = _weak_candidates_1d(P, Q)
            for restricted in (True, False):
                want = next(c for c in cands
                            if oracles.weak_decide(P, Q, c, restricted))
                got = weak_frechet_exact(P, Q, endpoint_restricted=restricted)
                assert got == want

    def test_scan_oracle_2d(self):
        rng = random.Random(73)
        for _ in range(20):
            P, Q = _rand2(rng), _rand2(rng)
            cands = _weak_candidates_sq_2d(P, Q)
            for restricted in (True, False):
                want_sq = next(c for c in cands
                               if oracles.weak_decide(P, Q, c, restricted))
                got = weak_frechet_exact(P, Q, endpoint_restricted=restricted)
                assert got == sqrt_exact(want_sq)

    @given(pv=verts_1d, qv=verts_1d)
    def test_unrestricted_equals_image_hausdorff_1d(self, pv, qv):
        P, Q = curve1(pv), curve1(qv)
        got = weak_frechet_exact(P, Q, endpoint_restricted=False)
        assert got == hausdorff_image_1d(P, Q)

    @given(pv=verts_1d, qv=verts_1d)
    def test_unrestricted_at_most_restricted(self, pv, qv):
        P, Q = curve1(pv), curve1(qv)
        assert weak_frechet_exact(P, Q, endpoint_restricted=False) \
            <= weak_frechet_exact(P, Q)

    def test_single_vertex_sides(self):
        # one side is a point: every weak traversal pins it, so the value is
        # the farthest vertex of the other side
        P, Q = curve1([0]), curve1([3, -5, 2])
        assert weak_frechet_exact(P, Q) == 5
        assert weak_frechet_exact(Q, P) == 5


class TestDiscreteWeak:
    def test_single_pair(self):
        assert decide_discrete_weak_frechet(curve1([0]), curve1([0]), 0)

    def test_swap_is_full_height(self):
        got = discrete_weak_frechet_exact(curve1([0, 10]), curve1([10, 0]))
        assert got == 10

    @given(pv=verts_1d, qv=verts_1d, eps=eps_1d, restricted=st.booleans())
    def test_matches_king_oracle_1d(self, pv, qv, eps, restricted):
        P, Q = curve1(pv), curve1(qv)
        got = decide_discrete_weak_frechet(P, Q, eps,
                                           endpoint_restricted=restricted)
        assert got == oracles.discrete_weak_decide(P, Q, eps, restricted)

    def test_matches_king_oracle_2d(self):
        rng = random.Random(79)
        for _ in range(40):
            P, Q = _rand2(rng), _rand2(rng)
            eps = Fraction(rng.randint(0, 18), rng.choice([1, 2]))
            for restricted in (True, False):
                got = decide_discrete_weak_frechet(
                    P, Q, eps, endpoint_restricted=restricted)
                want = oracles.discrete_weak_decide(P, Q, eps * eps,
                                                    restricted)
                assert got == want

    def test_minimality(self):
        rng = random.Random(83)
        for _ in range(20):
            P, Q = _rand1(rng), _rand1(rng)
            for restricted in (True, False):
                v = discrete_weak_frechet_exact(
                    P, Q, endpoint_restricted=restricted)
                assert decide_discrete_weak_frechet(
                    P, Q, v, endpoint_restricted=restricted)
                if v > 0:
                    assert not decide_discrete_weak_frechet(
                        P, Q, v * Fraction(999, 1000),
                        endpoint_restricted=restricted)


class TestVariantOrdering:
    @given(pv=verts_1d, qv=verts_1d)
    def test_chain_1d(self, pv, qv):
        P, Q = curve1(pv), curve1(qv)
        w = weak_frechet_exact(P, Q)
        dw = discrete_weak_frechet_exact(P, Q)
        f = frechet_exact(P, Q)
        df = discrete_frechet_exact(P, Q)
        assert w <= dw <= df
        assert w <= f <= df
        assert weak_frechet_exact(P, Q, endpoint_restricted=False) <= w
        assert discrete_weak_frechet_exact(
            P, Q, endpoint_restricted=False) <= dw

    def test_chain_2d(self):
        rng = random.Random(89)
        for _ in range(15):
            P, Q = _rand2(rng), _rand2(rng)
            w = weak_frechet_exact(P, Q)
            dw = discrete_weak_frechet_exact(P, Q)
            f = frechet_exact(P, Q)
            df = discrete_frechet_exact(P, Q)
            assert w <= dw <= df
            assert w <= f <= df


class TestWeakWitnesses:
    def _freeness(self, P, Q, eps, m):
        cost = oracles.path_cost(P, Q, m.path)
        bound = eps if P.dim == 1 else square_exact(eps)
        assert cost <= bound
        assert oracles.steps_share_cell(m.path, len(P), len(Q))

    def test_restricted_endpoints(self):
        rng = random.Random(97)
        for _ in range(15):
            P, Q = _rand1(rng, lo=2), _rand1(rng, lo=2)
            v = weak_frechet_exact(P, Q)
            m = extract_matching(P, Q, v, "wF")
            self._freeness(P, Q, v, m)
            assert m.path[0] == (1, 1)
            assert m.path[-1] == (len(P), len(Q))

    def test_restricted_2d(self):
        rng = random.Random(101)
        for _ in range(8):
            P, Q = _rand2(rng, lo=2), _rand2(rng, lo=2)
            v = weak_frechet_exact(P, Q)
            m = extract_matching(P, Q, v, "wF")
            self._freeness(P, Q, v, m)

    def test_unrestricted_touches_all_borders(self):
        rng = random.Random(103)
        for _ in range(15):
            P, Q = _rand1(rng, lo=2), _rand1(rng, lo=2)
            v = weak_frechet_exact(P, Q, endpoint_restricted=False)
            m = extract_matching(P, Q, v, "wwF")
            self._freeness(P, Q, v, m)
            xs = [x for x, _ in m.path]
            ys = [y for _, y in m.path]
            assert min(xs) == 1 and max(xs) == len(P)
            assert min(ys) == 1 and max(ys) == len(Q)

    def test_discrete_restricted_is_king_walk(self):
        rng = random.Random(107)
        for _ in range(15):
            P, Q = _rand1(rng, lo=2), _rand1(rng, lo=2)
            v = discrete_weak_frechet_exact(P, Q)
            m = extract_matching(P, Q, v, "dwF")
            assert m.path[0] == (1, 1) and m.path[-1] == (len(P), len(Q))
            for (x1, y1), (x2, y2) in zip(m.path, m.path[1:]):
                assert abs(x2 - x1) <= 1 and abs(y2 - y1) <= 1
            assert oracles.path_cost(P, Q, m.path) <= v

    def test_discrete_unrestricted_covers_grid(self):
        rng = random.Random(109)
        for _ in range(15):
            P, Q = _rand1(rng, lo=2), _rand1(rng, lo=2)
            v = discrete_weak_frechet_exact(P, Q, endpoint_restricted=False)
            m = extract_matching(P, Q, v, "dwwF")
            assert {x for x, _ in m.path} == set(range(1, len(P) + 1))
            assert {y for _, y in m.path} == set(range(1, len(Q) + 1))
            assert oracles.path_cost(P, Q, m.path) <= v

    def test_refused_below_exact(self):
        P, Q = curve1([0, 10]), curve1([1, 9])
        for variant in ("wF", "wwF", "dwF", "dwwF"):
            with pytest.raises(NoWitnessError):
                extract_matching(P, Q, Fraction(1, 2), variant)
