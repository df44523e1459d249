"""Bound evaluators over the confidence square.

Each function takes a pair of confidence levels (theta_x, theta_p) and
returns a lower bound on an uncertainty product. Below the line
theta_x + theta_p = 1 both confidence uncertainties can vanish
simultaneously, so every bound is zero there (the trivial region); above
it the products are bounded away from zero. The tight interval bound is
implicit through the inverse concentration eigenvalue; the remaining
bounds are closed forms used for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import BoundDivergenceError, DomainError
from .numerics import erf_inverse
from .slepian import DEFAULT_ORDER, lambda0_inverse

__all__ = [
    "Region",
    "ConfidencePair",
    "BoundReport",
    "classify_region",
    "angular_target",
    "lp_measurable_bound",
    "lp_interval_bound",
    "log_asymptote",
    "donoho_stark_bound",
    "elementary_bound",
    "gaussian_interval_product",
    "bbm_reference",
    "report",
]

# ordering of the computed bounds is exact mathematics; this slack only
# absorbs the root-finding tolerance inside the inverse eigenvalue
_ORDER_SLACK = 1e-8


class Region(Enum):
    """Classification of a confidence pair."""

    TRIVIAL = "trivial"
    BOUNDED = "bounded"


def _check_hbar(hbar: float) -> float:
    if not (math.isfinite(hbar) and hbar > 0):
        raise DomainError(f"hbar must be positive and finite, got {hbar}")
    return float(hbar)


@dataclass(frozen=True)
class ConfidencePair:
    """Confidence levels (theta_x, theta_p), each in [0, 1]."""

    theta_x: float
    theta_p: float

    def __post_init__(self) -> None:
        for name, value in (("theta_x", self.theta_x), ("theta_p", self.theta_p)):
            if not 0.0 <= value <= 1.0:
                raise DomainError(f"{name} must lie in [0, 1], got {value}")

    def swapped(self) -> "ConfidencePair":
        return ConfidencePair(self.theta_p, self.theta_x)


def _as_pair(pair: ConfidencePair | tuple[float, float]) -> ConfidencePair:
    if isinstance(pair, ConfidencePair):
        return pair
    return ConfidencePair(*pair)


def classify_region(pair: ConfidencePair | tuple[float, float]) -> Region:
    """Trivial iff theta_x + theta_p <= 1, bounded otherwise."""
    p = _as_pair(pair)
    return Region.TRIVIAL if p.theta_x + p.theta_p <= 1.0 else Region.BOUNDED


def angular_target(pair: ConfidencePair | tuple[float, float]) -> float:
    """Squared-cosine target T = (sqrt(tx*tp) - sqrt((1-tx)(1-tp)))^2.

    T is the squared cosine of the minimal angle budget left by the two
    projection overlaps; it is the argument fed to the inverse
    eigenvalue. Returns 0 in the trivial region, where no constraint
    survives, and satisfies T(1, tp) = tp.
    """
    p = _as_pair(pair)
    if p.theta_x + p.theta_p <= 1.0:
        return 0.0
    root = math.sqrt(p.theta_x * p.theta_p) - math.sqrt(
        (1.0 - p.theta_x) * (1.0 - p.theta_p)
    )
    return root * root


def lp_measurable_bound(
    pair: ConfidencePair | tuple[float, float], hbar: float = 1.0
) -> float:
    """Lower bound 2*pi*hbar*T on the measurable-set uncertainty product.

    Applies to confidence uncertainties over arbitrary measurable sets;
    zero in the trivial region.
    """
    return 2.0 * math.pi * _check_hbar(hbar) * angular_target(pair)


def lp_interval_bound(
    pair: ConfidencePair | tuple[float, float],
    hbar: float = 1.0,
    order: int = DEFAULT_ORDER,
) -> float:
    """Tight lower bound 4*hbar*lambda0_inverse(T) on the interval product.

    Strictly larger than the measurable-set bound in the interior of the
    bounded region. Zero in the trivial region (T = 0).

    Raises
    ------
    BoundDivergenceError
        At full confidence in both variables (T = 1), where a state
        supported on one interval cannot be fully band-limited and the
        bound grows without limit.
    """
    h = _check_hbar(hbar)
    target = angular_target(pair)
    if target == 0.0:
        return 0.0
    if target >= 1.0:
        raise BoundDivergenceError(
            "the interval bound diverges at full confidence in both variables"
        )
    return 4.0 * h * float(lambda0_inverse(target, order=order))


def log_asymptote(theta_p: float, hbar: float = 1.0) -> float:
    """High-confidence asymptote -2*hbar*ln(1-theta_p) of the interval bound.

    Leading behaviour of lp_interval_bound((1, theta_p)) as theta_p -> 1;
    the approach is logarithmically slow, so at moderate theta_p this
    undershoots the exact bound noticeably.
    """
    h = _check_hbar(hbar)
    if not 0.0 < theta_p < 1.0:
        raise DomainError(f"log_asymptote requires 0 < theta_p < 1, got {theta_p}")
    return -2.0 * h * math.log1p(-theta_p)


def donoho_stark_bound(
    pair: ConfidencePair | tuple[float, float], hbar: float = 1.0
) -> float:
    """Hilbert-Schmidt bound 2*pi*hbar*(1 - sqrt(1-tx) - sqrt(1-tp))^2_+.

    Valid for arbitrary measurable sets but never larger than the
    measurable-set bound above; clamps to zero where the bracket goes
    negative.
    """
    h = _check_hbar(hbar)
    p = _as_pair(pair)
    root = 1.0 - math.sqrt(1.0 - p.theta_x) - math.sqrt(1.0 - p.theta_p)
    if root <= 0.0:
        return 0.0
    return 2.0 * math.pi * h * root * root


def elementary_bound(pair: ConfidencePair | tuple[float, float]) -> float | None:
    """Elementary floor on the coefficient-matrix norm, where it applies.

    Returns (pi/tx) * (tp - 2*sqrt((tx+tp-1)(1-tx))) when
    2*tx + tp > 2, and None otherwise (absence is a value here, not an
    error). At tx = 1 this reduces to pi*tp, meeting the defining
    relation of the tight bound on that edge; away from it the bound
    degrades quickly.
    """
    p = _as_pair(pair)
    if 2.0 * p.theta_x + p.theta_p <= 2.0:
        return None
    inner = (p.theta_x + p.theta_p - 1.0) * (1.0 - p.theta_x)
    return (math.pi / p.theta_x) * (p.theta_p - 2.0 * math.sqrt(inner))


def gaussian_interval_product(theta: float, hbar: float = 1.0) -> float:
    """Interval uncertainty product 4*hbar*erf_inverse(theta)^2 of a
    minimum-uncertainty Gaussian at equal confidences.

    Raises
    ------
    DomainError
        If theta is outside (0, 1).
    """
    h = _check_hbar(hbar)
    if not 0.0 < theta < 1.0:
        raise DomainError(
            f"gaussian_interval_product requires 0 < theta < 1, got {theta}"
        )
    root = erf_inverse(theta)
    return 4.0 * h * root * root


def bbm_reference(hbar: float = 1.0) -> float:
    """Entropic floor ln(pi * e * hbar) on h(x) + h(p)."""
    return math.log(math.pi * math.e * _check_hbar(hbar))


@dataclass(frozen=True)
class BoundReport:
    """All applicable bounds at one confidence pair, for table emission.

    ``lp_interval`` is None in the trivial region, where the interval
    bound carries no information; ``elementary`` is None outside its
    validity domain 2*theta_x + theta_p > 2. All products are in units
    of hbar as passed to :func:`report`.
    """

    pair: ConfidencePair
    region: Region
    angular_target: float
    lp_measurable: float
    lp_interval: float | None
    donoho_stark: float
    elementary: float | None
    gaussian_product: float

    def __post_init__(self) -> None:
        trivial = self.pair.theta_x + self.pair.theta_p <= 1.0
        if trivial != (self.region is Region.TRIVIAL):
            raise DomainError("region tag contradicts theta_x + theta_p")
        if self.region is Region.TRIVIAL and self.lp_measurable != 0.0:
            raise DomainError("the measurable bound must vanish in the trivial region")
        slack = _ORDER_SLACK * max(1.0, self.lp_measurable)
        if self.lp_measurable < self.donoho_stark - slack:
            raise DomainError("bound ordering violated: measurable < Donoho-Stark")
        if self.lp_interval is not None and self.lp_interval < self.lp_measurable - slack:
            raise DomainError("bound ordering violated: interval < measurable")


def report(
    pair: ConfidencePair | tuple[float, float],
    hbar: float = 1.0,
    order: int = DEFAULT_ORDER,
) -> BoundReport:
    """Evaluate every bound at one pair and package the result.

    The Gaussian product generalises the equal-confidence formula to
    4*hbar*erf_inverse(tx)*erf_inverse(tp) and is +inf when either
    confidence is 1 (a Gaussian needs an infinite window for certainty).

    Raises
    ------
    BoundDivergenceError
        At (1, 1), propagated from the interval bound.
    """
    p = _as_pair(pair)
    h = _check_hbar(hbar)
    region = classify_region(p)
    if region is Region.TRIVIAL:
        interval = None
    else:
        interval = lp_interval_bound(p, hbar=h, order=order)
    if p.theta_x == 1.0 or p.theta_p == 1.0:
        gaussian = math.inf
    elif p.theta_x == 0.0 or p.theta_p == 0.0:
        gaussian = 0.0
    else:
        gaussian = 4.0 * h * erf_inverse(p.theta_x) * erf_inverse(p.theta_p)
    return BoundReport(
        pair=p,
        region=region,
        angular_target=angular_target(p),
        lp_measurable=lp_measurable_bound(p, hbar=h),
        lp_interval=interval,
        donoho_stark=donoho_stark_bound(p, hbar=h),
        elementary=elementary_bound(p),
        gaussian_product=gaussian,
    )
