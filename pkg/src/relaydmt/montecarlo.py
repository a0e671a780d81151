"""Finite-SNR empirical engine for the half-duplex relay network.

Samples Rayleigh fading realizations, splits the destination channel
into two parallel streams with an MMSE-SIC decomposition, evaluates the
exact cut mutual informations, estimates outage probabilities across an
SNR sweep, fits the high-SNR decay slope, and measures the tail
exponents of the channel-exponent distribution against their predicted
values.

Reproducibility contract: sampling is organized in fixed-size blocks,
each driven by its own counter-based Philox stream keyed by
(seed, SNR index, block index). Results are therefore bit-identical for
a given seed and unchanged by the worker count, which only controls how
blocks are spread over a thread pool.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import DomainError, NetworkParams
from .optimize import local_schedule_table

log = logging.getLogger(__name__)

_BLOCK = 1 << 16
_LN2 = math.log(2.0)
_LN10 = math.log(10.0)


class InsufficientDataError(ValueError):
    """Too few usable points to fit a slope."""


@dataclass(frozen=True)
class ChannelDraw:
    """One fading realization: scalar source-relay gain and length-2
    gain vectors from source and relay to the two destination antennas."""

    h_sr: complex
    h_s: np.ndarray
    h_r: np.ndarray


@dataclass(frozen=True)
class ScheduleRule:
    """How the relay picks its listen fraction in the simulator.

    kind is one of "fixed", "blind" (both take an explicit f), "global"
    (equalizing f recomputed from each realization's exponents) or
    "local" (f from the realized source-relay exponent only, via the
    schedule optimizer's lookup table).
    """

    kind: str
    f: float | None = None

    def __post_init__(self):
        if self.kind not in ("fixed", "blind", "global", "local"):
            raise DomainError(f"unknown schedule rule {self.kind!r}")
        if self.kind in ("fixed", "blind"):
            if self.f is None or not (0.0 <= self.f <= 1.0):
                raise DomainError(
                    f"rule {self.kind!r} needs an explicit f in [0, 1], got {self.f}"
                )
        elif self.f is not None:
            raise DomainError(f"rule {self.kind!r} does not take an f")

    @staticmethod
    def parse(text: str) -> "ScheduleRule":
        """Parse "fixed:<f>", "blind:<f>", "global" or "local"."""
        kind, sep, arg = text.partition(":")
        if kind in ("fixed", "blind"):
            if not sep:
                raise DomainError(f"rule {kind!r} needs a listen fraction, e.g. {kind}:0.3333")
            try:
                return ScheduleRule(kind, float(arg))
            except ValueError as exc:
                raise DomainError(f"bad listen fraction {arg!r}") from exc
        if sep:
            raise DomainError(f"rule {kind!r} does not take an argument")
        return ScheduleRule(kind)


@dataclass(frozen=True)
class McConfig:
    """One outage-estimation run."""

    eta: float
    r: float
    schedule_rule: ScheduleRule
    snr_db_list: tuple[float, ...]
    samples_per_point: int
    seed: int
    workers: int = 1

    def __post_init__(self):
        NetworkParams(self.eta)
        if self.r < 0:
            raise DomainError(f"r must be >= 0, got {self.r}")
        if self.samples_per_point < 1:
            raise DomainError(
                f"samples_per_point must be >= 1, got {self.samples_per_point}"
            )
        if any(b <= a for a, b in zip(self.snr_db_list, self.snr_db_list[1:])):
            raise DomainError("snr_db_list must be strictly increasing")
        if self.workers < 1:
            raise DomainError(f"workers must be >= 1, got {self.workers}")


@dataclass(frozen=True)
class OutageEstimate:
    """Outage probability at one SNR with its binomial 95% interval."""

    snr_db: float
    p_out: float
    n_samples: int
    n_outages: int
    ci95_halfwidth: float


@dataclass(frozen=True)
class TailSlope:
    """Fitted decay slope of one tail probability against its target."""

    label: str
    expected: float
    slope: float | None
    stderr: float | None
    usable_points: int
    counts: tuple[int, ...]

    @property
    def usable(self) -> bool:
        return self.slope is not None


# ---------------------------------------------------------------------------
# channel sampling and decomposition
# ---------------------------------------------------------------------------


def _block_rng(seed: int, stream: int, block: int) -> np.random.Generator:
    key = (int(seed) & (2**64 - 1)) + (((stream << 32) + block) << 64)
    return np.random.Generator(np.random.Philox(key=key))


def _draw_block(rng: np.random.Generator, n: int):
    """n realizations as arrays: |h_sr|^2, h_s (2, n), h_r (2, n)."""
    z = rng.standard_normal((10, n))
    hsr_sq = 0.5 * (z[0] ** 2 + z[1] ** 2)
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    h_s = (z[2:6:2] + 1j * z[3:6:2]) * inv_sqrt2
    h_r = (z[6:10:2] + 1j * z[7:10:2]) * inv_sqrt2
    return hsr_sq, h_s, h_r


def _sic_batch(h_s, h_r, rho):
    """Parallel-stream gains g1^2, g2^2 for batches of column vectors."""
    g1_sq = np.abs(h_s[0]) ** 2 + np.abs(h_s[1]) ** 2
    inner = np.conj(h_s[0]) * h_r[0] + np.conj(h_s[1]) * h_r[1]
    hr_sq = np.abs(h_r[0]) ** 2 + np.abs(h_r[1]) ** 2
    safe = np.where(g1_sq > 0.0, g1_sq, 1.0)
    par_sq = np.where(g1_sq > 0.0, np.abs(inner) ** 2 / safe, 0.0)
    perp_sq = np.maximum(hr_sq - par_sq, 0.0)
    return g1_sq, perp_sq + par_sq / (1.0 + rho * g1_sq)


def sic_decompose(draw: ChannelDraw, rho: float) -> tuple[float, float]:
    """Split the 2x2 destination channel [h_s h_r] into two parallel
    streams via MMSE successive interference cancellation.

    g1^2 = |h_s|^2 and g2^2 = |h_r perp|^2 + |h_r par|^2 / (1 + rho |h_s|^2),
    where h_r is decomposed against h_s. The split is exact:
    log2 det(I + rho H H*) = log2(1 + rho g1^2) + log2(1 + rho g2^2).
    A zero h_s (probability zero) degenerates to g2^2 = |h_r|^2.
    """
    if not rho > 0:
        raise DomainError(f"rho must be > 0, got {rho}")
    h_s = np.asarray(draw.h_s, dtype=complex).reshape(2, 1)
    h_r = np.asarray(draw.h_r, dtype=complex).reshape(2, 1)
    g1_sq, g2_sq = _sic_batch(h_s, h_r, rho)
    return float(g1_sq[0]), float(g2_sq[0])


def _cut_mi_bits(hsr_sq, g1_sq, g2_sq, rho, eta, f, max_approx=False):
    """Cut mutual informations in bits; log-domain safe for rho**eta."""
    ln_rho = math.log(rho)
    with np.errstate(divide="ignore"):
        relay_term = eta * ln_rho + np.log(hsr_sq)  # ln(rho^eta |h_sr|^2)
    direct = np.log1p(rho * g1_sq)
    if max_approx:
        listen = np.maximum(np.logaddexp(0.0, relay_term), direct)
    else:
        listen = np.logaddexp(direct, relay_term)  # ln(1 + rho^eta|h_sr|^2 + rho g1^2)
    i_cs = (f * listen + (1.0 - f) * direct) / _LN2
    i_cd = (direct + (1.0 - f) * np.log1p(rho * g2_sq)) / _LN2
    return i_cs, i_cd


def cut_mutual_info(
    draw: ChannelDraw,
    rho: float,
    eta: float,
    f: float,
    max_approx: bool = False,
) -> tuple[float, float]:
    """Exact mutual information across the two cuts, in bits.

    i_cs = f log2(1 + rho^eta |h_sr|^2 + rho |h_s|^2) + (1-f) log2(1 + rho |h_s|^2)
    i_cd = log2(1 + rho g1^2) + (1-f) log2(1 + rho g2^2)

    The exact sums are used by default; max_approx replaces the listen
    term of i_cs by the max of its two contributions, which is tight
    only within one bit and exposed for studying that gap.
    """
    g1_sq, g2_sq = sic_decompose(draw, rho)
    hsr_sq = np.array([abs(draw.h_sr) ** 2])
    i_cs, i_cd = _cut_mi_bits(
        hsr_sq, np.array([g1_sq]), np.array([g2_sq]), rho, eta, f, max_approx
    )
    return float(i_cs[0]), float(i_cd[0])


# ---------------------------------------------------------------------------
# outage estimation
# ---------------------------------------------------------------------------


def _realized_exponents(hsr_sq, g1_sq, g2_sq, rho, eta):
    ln_rho = math.log(rho)
    with np.errstate(divide="ignore"):
        relay_term = eta * ln_rho + np.log(hsr_sq)
    a_sr = np.logaddexp(0.0, relay_term) / ln_rho
    a1 = np.log1p(rho * g1_sq) / ln_rho
    a2 = np.log1p(rho * g2_sq) / ln_rho
    return a1, a2, a_sr


def _schedule_for_block(rule, hsr_sq, g1_sq, g2_sq, rho, eta, local_table):
    if rule.kind in ("fixed", "blind"):
        return rule.f
    if rho <= 1.0:
        # Exponents are undefined at rho = 1; the rate target is zero
        # there, so the schedule is immaterial.
        return 1.0 / 3.0
    a1, a2, a_sr = _realized_exponents(hsr_sq, g1_sq, g2_sq, rho, eta)
    if rule.kind == "global":
        gain = np.maximum(a_sr - a1, 0.0)
        den = gain + a2
        return np.where(den > 0.0, a2 / np.where(den > 0.0, den, 1.0), 1.0)
    grid, ftab = local_table
    return np.interp(np.clip(a_sr, 0.0, eta), grid, ftab)


def _count_outages_block(seed, snr_index, block, n, rho, eta, r, rule, local_table):
    rng = _block_rng(seed, snr_index, block)
    hsr_sq, h_s, h_r = _draw_block(rng, n)
    g1_sq, g2_sq = _sic_batch(h_s, h_r, rho)
    f = _schedule_for_block(rule, hsr_sq, g1_sq, g2_sq, rho, eta, local_table)
    i_cs, i_cd = _cut_mi_bits(hsr_sq, g1_sq, g2_sq, rho, eta, f)
    target = r * (math.log2(10.0) * math.log10(rho))  # r * log2(rho) bits
    return int(np.count_nonzero(np.minimum(i_cs, i_cd) <= target))


def _blocks(total: int):
    full, rem = divmod(total, _BLOCK)
    sizes = [_BLOCK] * full + ([rem] if rem else [])
    return list(enumerate(sizes))


def estimate_outage(cfg: McConfig) -> list[OutageEstimate]:
    """Empirical outage probability of the exact cut bounds at each SNR.

    The rate target at SNR rho is r log2(rho) bits; a draw is in outage
    when the smaller cut falls at or below it under the configured
    schedule rule. Deterministic for a fixed seed; the worker count does
    not affect the sampled stream.
    """
    local_table = None
    if cfg.schedule_rule.kind == "local":
        local_table = local_schedule_table(cfg.r, NetworkParams(cfg.eta))
    results = []
    for snr_index, snr_db in enumerate(cfg.snr_db_list):
        rho = 10.0 ** (snr_db / 10.0)
        blocks = _blocks(cfg.samples_per_point)

        def run(item):
            block, n = item
            return _count_outages_block(
                cfg.seed, snr_index, block, n, rho, cfg.eta, cfg.r,
                cfg.schedule_rule, local_table,
            )

        if cfg.workers > 1:
            with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
                counts = list(pool.map(run, blocks))
        else:
            counts = [run(item) for item in blocks]
        k = int(sum(counts))
        n = cfg.samples_per_point
        p = k / n
        results.append(
            OutageEstimate(
                snr_db=float(snr_db),
                p_out=p,
                n_samples=n,
                n_outages=k,
                ci95_halfwidth=1.96 * math.sqrt(max(p * (1.0 - p), 0.0) / n),
            )
        )
    return results


# ---------------------------------------------------------------------------
# slope fitting
# ---------------------------------------------------------------------------


def _wls_decay_slope(log10_rho, p, n):
    """Weighted LS fit of log10 p against log10 rho; returns the decay
    exponent (negated slope) and its standard error.

    Weights are inverse delta-method variances of log10 p; saturated
    points (p = 1) are clipped to keep the variance positive.
    """
    x = np.asarray(log10_rho, dtype=float)
    p = np.asarray(p, dtype=float)
    n = np.asarray(n, dtype=float)
    y = np.log10(p)
    pc = np.minimum(p, 1.0 - 0.25 / n)
    var = (1.0 - pc) / (n * pc) / _LN10**2
    w = 1.0 / var
    xm = np.sum(w * x) / np.sum(w)
    sxx = np.sum(w * (x - xm) ** 2)
    slope = np.sum(w * (x - xm) * y) / sxx
    return -float(slope), float(math.sqrt(1.0 / sxx))


def fit_slope(estimates: list[OutageEstimate]) -> tuple[float, float]:
    """High-SNR decay exponent of the outage curve: weighted LS fit of
    log10 p_out against log10 rho, returning (d_hat, stderr).

    Zero-outage points carry no slope information; they are dropped and
    reported through the module logger. Fewer than three usable points
    raise InsufficientDataError.
    """
    usable = [e for e in estimates if e.n_outages > 0]
    dropped = [e.snr_db for e in estimates if e.n_outages == 0]
    if dropped:
        log.warning(
            "excluding %d zero-outage point(s) at SNR dB %s from the slope fit",
            len(dropped),
            dropped,
        )
    if len(usable) < 3:
        raise InsufficientDataError(
            f"need >= 3 SNR points with outages to fit a slope, have {len(usable)}"
        )
    return _wls_decay_slope(
        [e.snr_db / 10.0 for e in usable],
        [e.p_out for e in usable],
        [e.n_samples for e in usable],
    )


# ---------------------------------------------------------------------------
# tail-exponent validation
# ---------------------------------------------------------------------------


def _count_tails_block(seed, snr_index, block, n, rho, t1, tsr, tj1, tj2):
    rng = _block_rng(seed, snr_index, block)
    hsr_sq, h_s, h_r = _draw_block(rng, n)
    g1_sq, g2_sq = _sic_batch(h_s, h_r, rho)
    return np.array(
        [
            np.count_nonzero(g1_sq <= t1),
            np.count_nonzero(hsr_sq <= tsr),
            np.count_nonzero((g1_sq <= tj1) & (g2_sq <= tj2)),
        ],
        dtype=np.int64,
    )


def validate_lemma1_tails(
    eta: float,
    snr_db_list: list[float],
    samples: int,
    seed: int,
    a1_probe: float = 0.5,
    asr_probe: float = 0.5,
    joint_probe: tuple[float, float] = (0.25, 0.25),
) -> list[TailSlope]:
    """Measure the decay of the channel-exponent tails and compare with
    the predicted exponents.

    Probed events threshold the gains at their exponent targets:
    g1^2 <= rho^(a1-1), |h_sr|^2 <= rho^(a_sr-eta), and jointly
    g1^2 <= rho^(a1-1), g2^2 <= rho^(a2-1). Predicted decays are
    2 (1 - a1) for the first stream, eta - a_sr for the relay link, and
    4 - 3 a1 - 2 a2 (or 3 - 2 a1 - a2 past a1 + a2 = 1) for the joint
    tail. Zero-count cells are excluded; a probe with fewer than three
    usable SNR points is reported unusable.
    """
    NetworkParams(eta)
    if samples < 1:
        raise DomainError(f"samples must be >= 1, got {samples}")
    ja1, ja2 = joint_probe
    counts = {"a1": [], "a_sr": [], "joint": []}
    for snr_index, snr_db in enumerate(snr_db_list):
        rho = 10.0 ** (snr_db / 10.0)
        t1 = rho ** (a1_probe - 1.0)
        tsr = rho ** (asr_probe - eta)
        tj1 = rho ** (ja1 - 1.0)
        tj2 = rho ** (ja2 - 1.0)
        totals = np.zeros(3, dtype=np.int64)
        for block, n in _blocks(samples):
            totals += _count_tails_block(
                seed, snr_index, block, n, rho, t1, tsr, tj1, tj2
            )
        counts["a1"].append(int(totals[0]))
        counts["a_sr"].append(int(totals[1]))
        counts["joint"].append(int(totals[2]))

    if ja1 + ja2 <= 1.0:
        joint_expected = 4.0 - 3.0 * ja1 - 2.0 * ja2
    else:
        joint_expected = 3.0 - 2.0 * ja1 - ja2
    spec = [
        ("a1", 2.0 * (1.0 - a1_probe)),
        ("a_sr", eta - asr_probe),
        ("joint", joint_expected),
    ]
    report = []
    for label, expected in spec:
        ks = counts[label]
        pts = [
            (snr / 10.0, k / samples, samples)
            for snr, k in zip(snr_db_list, ks)
            if k > 0
        ]
        if len(pts) >= 3:
            slope, stderr = _wls_decay_slope(*zip(*pts))
        else:
            slope, stderr = None, None
        report.append(
            TailSlope(
                label=label,
                expected=expected,
                slope=slope,
                stderr=stderr,
                usable_points=len(pts),
                counts=tuple(ks),
            )
        )
    return report
