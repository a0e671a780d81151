"""Exponent-scale primitives for the half-duplex relay network.

The network has a single-antenna source, a single-antenna half-duplex
relay and a two-antenna destination. The source-relay link is stronger
than the direct links: its average SNR is rho**eta (eta >= 1) when every
other link has average SNR rho. At high SNR a fading realization
collapses to three exponents (alpha1, alpha2, alpha_sr) -- the growth
rates of the two parallel streams seen by the destination and of the
source-relay gain -- and the relay schedule collapses to the fraction f
of time it spends listening.

This module holds the closed forms: the optimal tradeoff curve d(r), the
2x2 MIMO reference curve, the static-schedule curve for r <= 1, the
decay exponent of the joint density of the channel exponents, the two
cut exponents, outage membership, and the per-realization optimal listen
fraction. All functions are pure and safe for concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass

# Absolute tolerance for equality checks on the exponent scale. Values
# are O(eta + 4), so this sits far below any branch gap.
EQ_TOL = 1e-12

STRATEGIES = ("global", "local", "blind", "mimo2x2")


class DomainError(ValueError):
    """An input lies outside the supported domain of an operation."""


@dataclass(frozen=True)
class NetworkParams:
    """Model constants for one network instance.

    eta is the dimensionless proximity gain: the source-relay average
    SNR is rho**eta when the source-destination SNR is rho. Any real
    eta >= 1 is accepted.
    """

    eta: float

    def __post_init__(self):
        if not self.eta >= 1.0:
            raise DomainError(f"eta must be >= 1, got {self.eta}")


@dataclass(frozen=True)
class ChannelExponents:
    """A realization point in exponent space.

    alpha1 and alpha2 are the exponents of the two parallel-stream gains
    obtained from the MMSE-SIC decomposition of the destination channel;
    alpha_sr is the exponent of the source-relay link. alpha1 and alpha2
    live in [0, 1]; alpha_sr lives in [0, eta], with the upper bound
    checked wherever eta is available.
    """

    alpha1: float
    alpha2: float
    alpha_sr: float

    def __post_init__(self):
        if not (-EQ_TOL <= self.alpha1 <= 1.0 + EQ_TOL):
            raise DomainError(f"alpha1 must be in [0, 1], got {self.alpha1}")
        if not (-EQ_TOL <= self.alpha2 <= 1.0 + EQ_TOL):
            raise DomainError(f"alpha2 must be in [0, 1], got {self.alpha2}")
        if not self.alpha_sr >= -EQ_TOL:
            raise DomainError(f"alpha_sr must be >= 0, got {self.alpha_sr}")


@dataclass(frozen=True)
class Schedule:
    """A listen-transmit schedule: the relay listens a fraction f of the
    time and transmits the remaining 1 - f."""

    f: float

    def __post_init__(self):
        if not (-EQ_TOL <= self.f <= 1.0 + EQ_TOL):
            raise DomainError(f"listen fraction f must be in [0, 1], got {self.f}")


@dataclass(frozen=True)
class TradeoffCurve:
    """Ordered (r, d) samples of one strategy's tradeoff curve."""

    eta: float
    strategy: str
    points: tuple[tuple[float, float], ...]
    r_step: float

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise DomainError(f"unknown strategy {self.strategy!r}")
        rs = [p[0] for p in self.points]
        ds = [p[1] for p in self.points]
        if any(b - a <= 0 for a, b in zip(rs, rs[1:])):
            raise DomainError("curve r values must be strictly increasing")
        if any(d < -EQ_TOL for d in ds):
            raise DomainError("curve d values must be non-negative")
        if any(b - a > EQ_TOL for a, b in zip(ds, ds[1:])):
            raise DomainError("curve d values must be non-increasing")


def r_star(params: NetworkParams) -> float:
    """Largest multiplexing gain with positive diversity: 2 - 1/eta."""
    return 2.0 - 1.0 / params.eta


def d_closed(r: float, params: NetworkParams) -> float:
    """Optimal diversity exponent at multiplexing gain r.

    Equals min(eta + 2, 4) - 3 r on [0, 1]. Past r = 1 the curve bends
    to (2 eta - eta r - 1)/(eta - r) when eta >= 2 and to
    eta - 1/(2 - r) when 1 <= eta <= 2, reaching zero at r = 2 - 1/eta.
    Continuous at r = 1.
    """
    eta = params.eta
    rs = r_star(params)
    if not (-EQ_TOL <= r <= rs + EQ_TOL):
        raise DomainError(
            f"r must be in [0, {rs:.12g}] (= 2 - 1/eta for eta={eta:.12g}), got {r}"
        )
    r = min(max(r, 0.0), rs)
    if r <= 1.0:
        return min(eta + 2.0, 4.0) - 3.0 * r
    if eta >= 2.0:
        return (2.0 * eta - eta * r - 1.0) / (eta - r)
    return eta - 1.0 / (2.0 - r)


def d_mimo_2x2(r: float) -> float:
    """Reference 2x2 MIMO tradeoff: piecewise linear through the corner
    points (0, 4), (1, 1) and (2, 0)."""
    if not (-EQ_TOL <= r <= 2.0 + EQ_TOL):
        raise DomainError(f"r must be in [0, 2], got {r}")
    r = min(max(r, 0.0), 2.0)
    if r <= 1.0:
        return 4.0 - 3.0 * r
    return 2.0 - r


def d_blind_closed(r: float, params: NetworkParams) -> float:
    """Diversity of the static (statistics-only) schedule for r <= 1,
    where the listen fraction 1/3 is optimal: min(eta + 2, 4) - 3 r.

    No closed form exists for r > 1; use the numerical optimizer there.
    """
    if not (-EQ_TOL <= r <= 1.0 + EQ_TOL):
        raise DomainError(
            f"r must be in [0, 1] (beyond that only the numerical optimizer "
            f"applies), got {r}"
        )
    return min(params.eta + 2.0, 4.0) - 3.0 * min(max(r, 0.0), 1.0)


def s_exponent(alpha: ChannelExponents, params: NetworkParams) -> float:
    """Decay exponent of the joint density of (alpha1, alpha2, alpha_sr):
    the density falls off as rho**(-s).

    s = eta + 4 - 3 alpha1 - 2 alpha2 - alpha_sr  when alpha1 + alpha2 <= 1,
    s = eta + 3 - 2 alpha1 -   alpha2 - alpha_sr  otherwise.
    The two branches agree on the plane alpha1 + alpha2 = 1; s >= 0 on
    the support box and vanishes only at (1, 1, eta).
    """
    eta = params.eta
    if not alpha.alpha_sr <= eta + EQ_TOL:
        raise DomainError(
            f"alpha_sr must be <= eta={eta:.12g}, got {alpha.alpha_sr}"
        )
    a1, a2, asr = alpha.alpha1, alpha.alpha2, alpha.alpha_sr
    if a1 + a2 <= 1.0:
        return eta + 4.0 - 3.0 * a1 - 2.0 * a2 - asr
    return eta + 3.0 - 2.0 * a1 - a2 - asr


def cut_exponents(alpha: ChannelExponents, sched: Schedule) -> tuple[float, float]:
    """Exponents of the two cut mutual informations under schedule f.

    Source-side cut:      i_cs = alpha1 + f * max(alpha_sr - alpha1, 0)
    Destination-side cut: i_cd = alpha1 + (1 - f) * alpha2
    i_cs is non-decreasing and i_cd non-increasing in f.
    """
    a1, a2, asr = alpha.alpha1, alpha.alpha2, alpha.alpha_sr
    f = sched.f
    i_cs = a1 + f * max(asr - a1, 0.0)
    i_cd = a1 + (1.0 - f) * a2
    return i_cs, i_cd


def in_outage(alpha: ChannelExponents, sched: Schedule, r: float) -> bool:
    """Whether the realization fails to support multiplexing gain r under
    schedule f: min(i_cs, i_cd) <= r, boundary included."""
    i_cs, i_cd = cut_exponents(alpha, sched)
    return min(i_cs, i_cd) <= r + EQ_TOL


def f_global(alpha: ChannelExponents) -> Schedule:
    """Listen fraction that equalizes the two cut exponents for a known
    realization: f = alpha2 / ((alpha_sr - alpha1)^+ + alpha2).

    When the denominator vanishes (alpha_sr <= alpha1 and alpha2 = 0)
    both cuts equal alpha1 for every f and the choice is value-free;
    f = 1 is returned by convention.
    """
    gain = max(alpha.alpha_sr - alpha.alpha1, 0.0)
    den = gain + alpha.alpha2
    if den <= 0.0:
        return Schedule(1.0)
    return Schedule(alpha.alpha2 / den)


def equalized_cut_exponent(alpha: ChannelExponents) -> float:
    """Value of min(i_cs, i_cd) at the equalizing schedule; this is the
    best min-cut exponent achievable over all schedules for the given
    realization: alpha1 + g*alpha2/(g + alpha2) with g = (alpha_sr - alpha1)^+."""
    gain = max(alpha.alpha_sr - alpha.alpha1, 0.0)
    den = gain + alpha.alpha2
    if den <= 0.0:
        return alpha.alpha1
    return alpha.alpha1 + gain * alpha.alpha2 / den
