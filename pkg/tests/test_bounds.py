"""Bound evaluators on the confidence square.

Checks the closed forms against frozen references, the region split,
the ordering chain between the bounds, and linear scaling in hbar.
"""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from confunc.bounds import (
    BoundReport,
    ConfidencePair,
    Region,
    angular_target,
    bbm_reference,
    classify_region,
    donoho_stark_bound,
    elementary_bound,
    gaussian_interval_product,
    log_asymptote,
    lp_interval_bound,
    lp_measurable_bound,
    report,
)
from confunc.errors import BoundDivergenceError, DomainError

# frozen references for the (0.9, 0.9) pair at quadrature order 400
LP_INTERVAL_99 = 4.6226058990312655
LP_MEASURABLE_99 = 4.0212385965949355
DONOHO_STARK_99 = 0.8487888174145405
GAUSSIAN_AT_09 = 5.411086908190828

unit = st.floats(min_value=0.0, max_value=1.0)


class TestConfidencePair:
    def test_swapped(self):
        pair = ConfidencePair(0.3, 0.8)
        assert pair.swapped() == ConfidencePair(0.8, 0.3)

    @pytest.mark.parametrize("bad", [(-0.1, 0.5), (0.5, 1.2), (math.nan, 0.5)])
    def test_rejects_out_of_square(self, bad):
        with pytest.raises(DomainError):
            ConfidencePair(*bad)


class TestRegionAndTarget:
    def test_region_split(self):
        assert classify_region((0.4, 0.6)) is Region.TRIVIAL
        assert classify_region((0.5, 0.5)) is Region.TRIVIAL
        assert classify_region((0.6, 0.6)) is Region.BOUNDED

    def test_target_zero_in_trivial_region(self):
        assert angular_target((0.3, 0.3)) == 0.0
        assert angular_target((0.5, 0.5)) == 0.0

    def test_target_at_certain_confidence(self):
        # theta_x = 1 collapses the target to theta_p
        for tp in (0.2, 0.5, 0.9):
            assert abs(angular_target((1.0, tp)) - tp) <= 1e-15

    def test_target_continuous_at_boundary(self):
        eps = 1e-9
        assert angular_target((0.5 + eps, 0.5 + eps)) <= 1e-8

    @given(unit, unit)
    @settings(max_examples=200)
    def test_target_symmetric(self, tx, tp):
        assert angular_target((tx, tp)) == angular_target((tp, tx))

    @given(unit, unit)
    @settings(max_examples=200)
    def test_target_in_unit_interval(self, tx, tp):
        value = angular_target((tx, tp))
        assert 0.0 <= value <= 1.0


class TestClosedForms:
    def test_lp_measurable_frozen(self):
        assert abs(lp_measurable_bound((0.9, 0.9)) - LP_MEASURABLE_99) <= 1e-12
        assert abs(lp_measurable_bound((0.9, 0.9)) - 2 * math.pi * 0.64) <= 1e-12

    def test_donoho_stark_frozen_and_clamped(self):
        assert abs(donoho_stark_bound((0.9, 0.9)) - DONOHO_STARK_99) <= 1e-12
        assert donoho_stark_bound((0.4, 0.4)) == 0.0

    def test_elementary_domain(self):
        # defined only when 2*theta_x + theta_p > 2
        assert elementary_bound((0.5, 0.9)) is None
        assert elementary_bound((0.55, 0.9)) is None
        assert elementary_bound((0.95, 0.95)) is not None

    def test_elementary_frozen(self):
        assert abs(elementary_bound((0.95, 0.95)) - 1.7385769889082032) <= 1e-12

    def test_elementary_at_certain_position(self):
        # theta_x = 1 reduces to pi * theta_p
        for tp in (0.3, 0.7, 0.99):
            assert abs(elementary_bound((1.0, tp)) - math.pi * tp) <= 1e-12

    def test_elementary_monotone_in_theta_p(self):
        tx = 0.9
        values = [elementary_bound((tx, tp)) for tp in (0.25, 0.5, 0.75, 0.99)]
        assert all(v is not None for v in values)
        assert values == sorted(values)

    def test_gaussian_product_frozen(self):
        assert abs(gaussian_interval_product(0.9) - GAUSSIAN_AT_09) <= 1e-10

    @pytest.mark.parametrize("bad", [0.0, 1.0, -0.2, 1.3])
    def test_gaussian_product_domain(self, bad):
        with pytest.raises(DomainError):
            gaussian_interval_product(bad)

    def test_log_asymptote(self):
        assert abs(log_asymptote(0.5) - 2 * math.log(2)) <= 1e-14
        with pytest.raises(DomainError):
            log_asymptote(0.0)
        with pytest.raises(DomainError):
            log_asymptote(1.0)

    def test_bbm_reference(self):
        assert abs(bbm_reference() - math.log(math.pi * math.e)) <= 1e-15
        assert abs(bbm_reference() - 2.1447298858494002) <= 1e-12


class TestLpIntervalBound:
    def test_trivial_region_is_zero(self):
        assert lp_interval_bound((0.5, 0.5)) == 0.0
        assert lp_interval_bound((0.2, 0.7)) == 0.0

    def test_frozen_value(self):
        assert abs(lp_interval_bound((0.9, 0.9)) - LP_INTERVAL_99) <= 1e-9

    def test_diverges_at_double_certainty(self):
        with pytest.raises(BoundDivergenceError):
            lp_interval_bound((1.0, 1.0))

    def test_dominates_measurable_bound(self):
        for pair in [(0.7, 0.7), (0.9, 0.8), (0.99, 0.6)]:
            assert lp_interval_bound(pair, order=160) > lp_measurable_bound(pair)

    def test_monotone_on_diagonal(self):
        thetas = (0.55, 0.7, 0.85, 0.95)
        values = [lp_interval_bound((t, t), order=120) for t in thetas]
        assert values == sorted(values)

    def test_hbar_scaling(self):
        base = lp_interval_bound((0.8, 0.8), order=120)
        scaled = lp_interval_bound((0.8, 0.8), hbar=3.5, order=120)
        assert abs(scaled - 3.5 * base) <= 1e-9 * scaled


class TestReport:
    def test_trivial_region_fields(self):
        rep = report((0.4, 0.5))
        assert rep.region is Region.TRIVIAL
        assert rep.lp_measurable == 0.0
        assert rep.lp_interval is None
        assert rep.donoho_stark == 0.0

    def test_bounded_region_fields(self):
        rep = report((0.9, 0.9), order=160)
        assert rep.region is Region.BOUNDED
        assert rep.lp_interval is not None
        assert rep.lp_interval >= rep.lp_measurable >= rep.donoho_stark
        assert abs(rep.angular_target - 0.64) <= 1e-15

    def test_gaussian_product_edge_cases(self):
        assert report((1.0, 0.9), order=120).gaussian_product == math.inf
        assert report((0.0, 0.9)).gaussian_product == 0.0

    def test_divergent_pair_raises(self):
        with pytest.raises(BoundDivergenceError):
            report((1.0, 1.0))

    def test_invariant_enforced_on_construction(self):
        with pytest.raises(DomainError):
            BoundReport(
                pair=ConfidencePair(0.9, 0.9),
                region=Region.BOUNDED,
                angular_target=0.64,
                lp_measurable=1.0,
                lp_interval=0.5,
                donoho_stark=0.1,
                elementary=None,
                gaussian_product=2.0,
            )

    def test_region_tag_must_match_pair(self):
        with pytest.raises(DomainError):
            BoundReport(
                pair=ConfidencePair(0.2, 0.2),
                region=Region.BOUNDED,
                angular_target=0.0,
                lp_measurable=0.0,
                lp_interval=None,
                donoho_stark=0.0,
                elementary=None,
                gaussian_product=0.5,
            )


@given(st.floats(min_value=0.55, max_value=0.99), st.floats(min_value=0.1, max_value=10.0))
@settings(max_examples=60, deadline=None)
def test_measurable_bound_scales_linearly_in_hbar(theta, hbar):
    pair = (theta, theta)
    base = lp_measurable_bound(pair)
    scaled = lp_measurable_bound(pair, hbar=hbar)
    assert abs(scaled - hbar * base) <= 1e-12 * max(1.0, scaled)


@given(st.floats(min_value=0.0, max_value=1.0), st.floats(min_value=0.0, max_value=1.0))
@settings(max_examples=200)
def test_donoho_stark_never_exceeds_measurable(tx, tp):
    slack = 1e-12
    assert donoho_stark_bound((tx, tp)) <= lp_measurable_bound((tx, tp)) + slack
