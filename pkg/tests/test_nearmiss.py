import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from simplicity.bits import Bits
from simplicity.errors import NotANearMissError, RankingError
from simplicity.nearmiss import (
    TIE_TOLERANCE,
    coincidence_bound,
    nearmiss_unexpectedness,
    rank_scenarios,
    rank_scores,
    teigen_intensity,
    unexpectedness,
)
from simplicity.presets import load_preset
from simplicity.scenario import Board2D, Outcome, Rect, Strip1D

F = Fraction


def u2(name):
    return nearmiss_unexpectedness(load_preset(name)[1]).scores.u_nearmiss


class TestUnexpectedness:
    def test_prior_lose_fig2b(self):
        assert unexpectedness(5.585, 5.0) == pytest.approx(0.585)
        s = nearmiss_unexpectedness(load_preset("fig2-b")[1]).scores
        assert s.u_prior_lose == Bits.log2(F(48, 32))

    def test_typical_event(self):
        assert unexpectedness(7.25, 7.25) == 0
        assert unexpectedness(Bits.log2(5), Bits.log2(5)) == Bits.zero()

    def test_prior_win_fig2b(self):
        assert unexpectedness(5.585, 4.0) == pytest.approx(1.585)
        s = nearmiss_unexpectedness(load_preset("fig2-b")[1]).scores
        assert s.u_prior_win == Bits.log2(3)


class TestNearMiss:
    @pytest.mark.parametrize("name,ratio,stated", [
        ("fig2-b", F(24), 4.6),
        ("fig2-d", F(48), 5.6),
        ("fig4-a", F(5), 2.3),
        ("fig4-d", F(160), 7.3),
    ])
    def test_golden(self, name, ratio, stated):
        u = u2(name)
        assert u == Bits.log2(ratio)
        assert abs(float(u) - stated) <= 0.05

    def test_golden_closed_forms(self):
        assert float(u2("fig2-b")) == pytest.approx(math.log2(48) - 1)
        assert float(u2("fig4-a")) == pytest.approx(math.log2(80 / 16) - 2 - math.log2(0.25))

    def test_probabilities(self):
        ev = nearmiss_unexpectedness(load_preset("fig2-b")[1])
        assert ev.scores.p_subjective == F(1, 24)
        assert ev.scores.p_ex_ante == F(1, 48)
        assert not ev.scores.clamped

    def test_clamped_when_negative(self):
        # U2 = log2(16) - log2(10) - 2 - 1 on a tiny board with a long thin region
        sc = Board2D(4, 4, 1, (Rect(0, 0, 1, 4),))
        ev = nearmiss_unexpectedness(Outcome(sc, (3, 2)))
        assert ev.scores.u_nearmiss == Bits.log2(F(16, 10 * 4 * 2))
        assert ev.scores.p_subjective == 1
        assert ev.scores.clamped

    def test_winning_outcome_rejected(self):
        sc = Strip1D(48, 1, ((32, 48),))
        with pytest.raises(NotANearMissError):
            nearmiss_unexpectedness(Outcome(sc, 40))

    def test_split_monotonicity(self):
        assert u2("fig2-b") - u2("fig2-c") == Bits.integer(2)
        assert u2("fig4-a") - u2("fig4-c") == Bits.integer(1)

    def test_delta_monotonicity(self):
        sc = Strip1D(48, 1, ((32, 48),))
        values = [nearmiss_unexpectedness(Outcome(sc, 32 - d)).scores.u_nearmiss for d in (1, 2, 4, 8, 16)]
        for a, b in zip(values, values[1:]):
            assert a - b == Bits.integer(1)

    def test_bounded_by_generation_when_move_is_at_least_a_cell(self):
        for name in ("fig2-a", "fig2-b", "fig2-c", "fig2-d", "fig4-a", "fig4-c"):
            ev = nearmiss_unexpectedness(load_preset(name)[1])
            assert ev.scores.u_nearmiss <= ev.report.c_w or ev.counterfactual.delta < 1


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_exponent_law(seed):
    import random
    from _gen import random_cases
    from simplicity.errors import NoCounterfactualError
    for sc, out in random_cases(seed, 1):
        try:
            s = nearmiss_unexpectedness(out).scores
        except NoCounterfactualError:
            return
        if s.u_nearmiss >= Bits.zero():
            assert s.p_subjective * s.u_nearmiss.ratio == 1
        else:
            assert s.p_subjective == 1 and s.clamped


class TestCoincidence:
    @pytest.mark.parametrize("args,expected", [
        ((10, 10, 10, 0), 10),
        ((10, 10, 10, 10), 0),
        ((8, 8, 5, 2), 9),
    ])
    def test_examples(self, args, expected):
        assert coincidence_bound(*args) == expected

    @given(st.floats(0, 50), st.floats(0, 50), st.floats(0, 50), st.floats(0, 50))
    def test_rederived(self, cw1, cw2, c1, c21):
        # generation is additive for independent draws; the joint description
        # is at most C(s1) + C(s2|s1), so U is at least the difference
        joint_description_upper = c1 + c21
        assert coincidence_bound(cw1, cw2, c1, c21) == pytest.approx((cw1 + cw2) - joint_description_upper)


class TestTeigen:
    @pytest.mark.parametrize("dv,d,expected", [(1000, 1, 1000), (1000, 5, 200), (0, 3, 0)])
    def test_examples(self, dv, d, expected):
        assert teigen_intensity(dv, d) == expected

    def test_zero_distance(self):
        with pytest.raises(ValueError):
            teigen_intensity(1000, 0)


class TestRanking:
    def test_fig2(self):
        pairs = [load_preset(n) for n in ("fig2-b", "fig2-c", "fig2-d")]
        r = rank_scenarios(pairs)
        assert r.order() == ["fig2-d", "fig2-b", "fig2-c"]
        assert [e.rank for e in r.entries] == [1, 2, 3]

    def test_fig4(self):
        r = rank_scenarios([load_preset("fig4-c"), load_preset("fig4-a")])
        assert r.order()[0] == "fig4-a"

    def test_single(self):
        r = rank_scenarios([load_preset("fig2-b")])
        assert [(e.scenario_id, e.rank) for e in r.entries] == [("fig2-b", 1)]
        assert r.tie_groups == ()

    def test_dense_ranks_and_ties(self):
        r = rank_scores([("c", 2.0), ("a", 3.0), ("b", 2.0 + TIE_TOLERANCE / 2), ("d", 1.0)])
        assert [(e.scenario_id, e.rank) for e in r.entries] == [("a", 1), ("b", 2), ("c", 2), ("d", 3)]
        assert r.tie_groups == (("b", "c"),)

    def test_ties_broken_by_id(self):
        a = Strip1D(48, 1, ((32, 48),), id="zeta")
        b = Strip1D(48, 1, ((32, 48),), id="alpha")
        r = rank_scenarios([(a, Outcome(a, 31)), (b, Outcome(b, 31))])
        assert r.order() == ["alpha", "zeta"]
        assert r.tie_groups == (("alpha", "zeta"),)

    def test_invalid_pair_names_scenario(self):
        bad = Strip1D(48, 1, ((32, 48),), id="broken")
        with pytest.raises(RankingError, match="broken"):
            rank_scenarios([load_preset("fig2-b"), (bad, Outcome(bad, 40))])

    def test_score_selection(self):
        pairs = [load_preset(n) for n in ("fig2-b", "fig2-c")]
        r = rank_scenarios(pairs, score="u2s")
        assert r.order() == ["fig2-b", "fig2-c"]
        assert r.score_name == "u2s"

    def test_input_order_irrelevant(self):
        names = ["fig2-a", "fig2-b", "fig2-c", "fig2-d", "fig4-a", "fig4-c", "fig4-d"]
        forward = rank_scenarios([load_preset(n) for n in names])
        backward = rank_scenarios([load_preset(n) for n in reversed(names)])
        assert forward == backward

    def test_documented_misprediction(self):
        r = rank_scenarios([load_preset("fig2-a"), load_preset("fig2-c")])
        assert r.order() == ["fig2-a", "fig2-c"]
