"""Numerical solvers for the three schedule-optimization problems.

The outage region at rate r under schedule f is a union of polyhedra in
(alpha1, alpha2, alpha_sr) space, and the density decay exponent s is
piecewise linear there, so the inner minimization is an exact linear
program solved by vertex enumeration. On top of that sit:

  * the full-knowledge optimum d(r): the schedule is equalized per
    realization, which pins the worst alpha_sr analytically and leaves a
    2-D scan over (alpha1, alpha2);
  * the statistics-only optimum d_blind(r): a single f maximizing the
    inner minimum, found by an f-grid plus golden-section refinement;
  * the relay-link-aware optimum d_local(r): worst case over alpha_sr of
    the best f for that alpha_sr, with the remaining 2-D inner minimum
    solved exactly per (alpha_sr, f).

A brute-force grid mode of the inner minimization is kept as an
independent cross-check oracle for the exact solver.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    EQ_TOL,
    ChannelExponents,
    DomainError,
    NetworkParams,
    Schedule,
    TradeoffCurve,
    d_closed,
    d_mimo_2x2,
    f_global,
    r_star,
)

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_FEAS_TOL = 1e-9
_TIE_TOL = 1e-9
_ZERO_D = 1e-6  # curve termination threshold


class InternalSolverError(RuntimeError):
    """The solver reached a state that the problem structure rules out."""


@dataclass(frozen=True)
class OptimizerConfig:
    """Resolution knobs for the numerical solvers."""

    f_grid_step: float = 1e-3
    alpha_grid_step: float = 0.01
    refine_iters: int = 40
    mode: str = "exact_lp"  # "exact_lp" or "grid"

    def __post_init__(self):
        if not self.f_grid_step > 0:
            raise DomainError(f"f_grid_step must be > 0, got {self.f_grid_step}")
        if not self.alpha_grid_step > 0:
            raise DomainError(
                f"alpha_grid_step must be > 0, got {self.alpha_grid_step}"
            )
        if self.refine_iters < 0:
            raise DomainError(f"refine_iters must be >= 0, got {self.refine_iters}")
        if self.mode not in ("exact_lp", "grid"):
            raise DomainError(f"mode must be 'exact_lp' or 'grid', got {self.mode!r}")


@dataclass(frozen=True)
class ScheduleResult:
    """Optimal listen fraction and achieved exponent at one query point.

    alpha_sr_worst is filled only by the local strategy (the relay-link
    exponent attaining the outer minimum).
    """

    f_opt: float
    d_value: float
    strategy: str
    r: float
    eta: float
    alpha_sr_worst: float | None = None

    def __post_init__(self):
        if not (-EQ_TOL <= self.f_opt <= 1.0 + EQ_TOL):
            raise DomainError(f"f_opt must be in [0, 1], got {self.f_opt}")
        if self.d_value < -EQ_TOL:
            raise DomainError(f"d_value must be >= 0, got {self.d_value}")


# ---------------------------------------------------------------------------
# exact piecewise-LP inner solver
# ---------------------------------------------------------------------------

_COMBOS_CACHE: dict[tuple[int, int], np.ndarray] = {}


def _combos(m: int, d: int) -> np.ndarray:
    key = (m, d)
    if key not in _COMBOS_CACHE:
        _COMBOS_CACHE[key] = np.array(
            list(itertools.combinations(range(m), d)), dtype=np.intp
        )
    return _COMBOS_CACHE[key]


def _vertex_min_batch(c, c0, A, b):
    """Minimize c . x + c0 over {x : A x <= b} for a batch of systems.

    A has shape (..., m, d) and b (..., m); c is a length-d vector shared
    by the batch. Vertices are enumerated as intersections of d of the m
    bounding hyperplanes; infeasible systems yield +inf. Returns
    (values (...,), argmins (..., d)) where the argmin is the first
    feasible vertex attaining the minimum in enumeration order.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    m, d = A.shape[-2:]
    combos = _combos(m, d)
    sub_A = A[..., combos, :]  # (..., nc, d, d)
    sub_b = b[..., combos]  # (..., nc, d)
    dets = np.linalg.det(sub_A)
    singular = np.abs(dets) < 1e-12
    safe_A = np.where(singular[..., None, None], np.eye(d), sub_A)
    verts = np.linalg.solve(safe_A, sub_b[..., None])[..., 0]  # (..., nc, d)
    # Feasibility against the full system; singular combinations are out.
    slack = np.einsum("...md,...nd->...nm", A, verts) - b[..., None, :]
    feasible = np.all(slack <= _FEAS_TOL, axis=-1) & ~singular
    vals = verts @ np.asarray(c, dtype=float) + c0
    vals = np.where(feasible, vals, np.inf)
    idx = np.argmin(vals, axis=-1)
    best_vals = np.take_along_axis(vals, idx[..., None], axis=-1)[..., 0]
    best_verts = np.take_along_axis(verts, idx[..., None, None], axis=-2)[..., 0, :]
    return best_vals, best_verts


def _vertex_candidates(c, c0, A, b):
    """All feasible vertices of one system with their objective values."""
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    m, d = A.shape
    combos = _combos(m, d)
    sub_A = A[combos, :]
    sub_b = b[combos]
    dets = np.linalg.det(sub_A)
    singular = np.abs(dets) < 1e-12
    safe_A = np.where(singular[:, None, None], np.eye(d), sub_A)
    verts = np.linalg.solve(safe_A, sub_b[..., None])[..., 0]
    feasible = np.all(verts @ A.T <= b + _FEAS_TOL, axis=-1) & ~singular
    verts = verts[feasible]
    vals = verts @ np.asarray(c, dtype=float) + c0
    return vals, verts


def _outage_cases(r: float, f: float, eta: float):
    """The outage region split into linear programs.

    Three binary splits: the branch of the objective (alpha1 + alpha2
    below or above 1), which cut is violated, and the sign of
    alpha_sr - alpha1 (which linearizes the source-side cut). Each case
    is (c, c0, A, b) with the box faces included in (A, b).
    """
    box_A = [
        [-1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0],
    ]
    box_b = [0.0, 1.0, 0.0, 1.0, 0.0, eta]
    for low_branch in (True, False):
        if low_branch:
            c, c0 = (-3.0, -2.0, -1.0), eta + 4.0
            branch_row, branch_rhs = [1.0, 1.0, 0.0], 1.0
        else:
            c, c0 = (-2.0, -1.0, -1.0), eta + 3.0
            branch_row, branch_rhs = [-1.0, -1.0, 0.0], -1.0
        for sr_above in (True, False):
            if sr_above:
                sign_row, sign_rhs = [1.0, 0.0, -1.0], 0.0  # alpha1 <= alpha_sr
                cs_row, cs_rhs = [1.0 - f, 0.0, f], r
            else:
                sign_row, sign_rhs = [-1.0, 0.0, 1.0], 0.0  # alpha_sr <= alpha1
                cs_row, cs_rhs = [1.0, 0.0, 0.0], r
            for cut_row, cut_rhs in ((cs_row, cs_rhs), ([1.0, 1.0 - f, 0.0], r)):
                A = np.array(box_A + [branch_row, sign_row, cut_row])
                b = np.array(box_b + [branch_rhs, sign_rhs, cut_rhs])
                yield np.array(c), c0, A, b


def _lex_best(vals: np.ndarray, verts: np.ndarray) -> tuple[float, np.ndarray]:
    """Minimum value with the lexicographically smallest witnessing vertex."""
    best = float(np.min(vals))
    tied = verts[vals <= best + _TIE_TOL]
    order = np.lexsort((tied[:, 2], tied[:, 1], tied[:, 0]))
    return best, tied[order[0]]


def _min_s_exact(r: float, f: float, eta: float) -> tuple[float, np.ndarray]:
    all_vals = []
    all_verts = []
    for c, c0, A, b in _outage_cases(r, f, eta):
        vals, verts = _vertex_candidates(c, c0, A, b)
        if len(vals):
            all_vals.append(vals)
            all_verts.append(verts)
    if not all_vals:
        raise InternalSolverError(
            f"outage region empty at r={r}, f={f}, eta={eta}; the origin "
            "is always in outage for r >= 0, so this cannot happen"
        )
    return _lex_best(np.concatenate(all_vals), np.concatenate(all_verts))


def _s_values(a1, a2, asr, eta):
    low = a1 + a2 <= 1.0
    return np.where(
        low,
        eta + 4.0 - 3.0 * a1 - 2.0 * a2 - asr,
        eta + 3.0 - 2.0 * a1 - a2 - asr,
    )


def _outage_mask(a1, a2, asr, r, f):
    i_cs = a1 + f * np.maximum(asr - a1, 0.0)
    i_cd = a1 + (1.0 - f) * a2
    return np.minimum(i_cs, i_cd) <= r + EQ_TOL


def _grid_axes(lo, hi, step):
    n = max(int(round((hi - lo) / step)), 1) + 1
    return np.linspace(lo, hi, n)


def _min_s_grid(r, f, eta, step):
    """Brute-force scan of the outage region plus two local refinements.

    The alpha_sr axis is processed in slabs to bound peak memory.
    """

    def scan(a1_ax, a2_ax, asr_ax):
        best, arg = np.inf, None
        a1, a2 = np.meshgrid(a1_ax, a2_ax, indexing="ij")
        for lo in range(0, len(asr_ax), 32):
            asr = asr_ax[lo : lo + 32][None, None, :]
            a1s, a2s = a1[..., None], a2[..., None]
            mask = _outage_mask(a1s, a2s, asr, r, f)
            if not mask.any():
                continue
            s = np.where(mask, _s_values(a1s, a2s, asr, eta), np.inf)
            k = np.unravel_index(np.argmin(s), s.shape)
            if s[k] < best:
                best = float(s[k])
                arg = np.array([a1[k[0], k[1]], a2[k[0], k[1]], asr[0, 0, k[2]]])
        return best, arg

    best, arg = scan(_grid_axes(0, 1, step), _grid_axes(0, 1, step), _grid_axes(0, eta, step))
    if arg is None:
        raise InternalSolverError(
            f"outage region missed by grid at r={r}, f={f}, eta={eta}"
        )
    span = step
    for _ in range(2):
        axes = []
        for center, hi in zip(arg, (1.0, 1.0, eta)):
            lo_w = max(0.0, center - span)
            hi_w = min(hi, center + span)
            axes.append(np.linspace(lo_w, hi_w, 21))
        cand, cand_arg = scan(*axes)
        if cand < best:
            best, arg = cand, cand_arg
        span /= 10.0
    return best, arg


def min_s_over_outage(
    r: float,
    sched: Schedule,
    params: NetworkParams,
    cfg: OptimizerConfig = OptimizerConfig(),
) -> tuple[float, ChannelExponents]:
    """Smallest density-decay exponent over the outage region at rate r
    under a fixed schedule, with a witnessing realization.

    In exact_lp mode the region is split into at most eight polyhedra
    with linear objectives and the minimum is read off the polytope
    vertices; in grid mode the box is scanned exhaustively at
    alpha_grid_step and refined locally. Ties between witnesses are
    broken toward the lexicographically smallest (alpha1, alpha2,
    alpha_sr).
    """
    if r < -EQ_TOL:
        raise DomainError(f"r must be >= 0, got {r}")
    eta = params.eta
    if cfg.mode == "grid":
        val, arg = _min_s_grid(max(r, 0.0), sched.f, eta, cfg.alpha_grid_step)
    else:
        val, arg = _min_s_exact(max(r, 0.0), sched.f, eta)
    arg = np.clip(arg, [0.0, 0.0, 0.0], [1.0, 1.0, eta])
    witness = ChannelExponents(float(arg[0]), float(arg[1]), float(arg[2]))
    return max(float(val), 0.0), witness


# ---------------------------------------------------------------------------
# global strategy: equalized schedule, 2-D reduction
# ---------------------------------------------------------------------------


def _global_surface(a1, a2, r, eta):
    """Exponent at the worst admissible alpha_sr for each (alpha1, alpha2).

    A realization defeats every schedule iff its equalized min-cut
    exponent is <= r. For fixed (alpha1, alpha2) with alpha1 <= r that
    admits alpha_sr up to alpha1 + u with
    u = (r - alpha1) alpha2 / (alpha2 - (r - alpha1)) (unbounded when
    alpha1 + alpha2 <= r), and s decreases in alpha_sr, so the worst
    case sits at the largest admissible alpha_sr (capped by eta).
    Returns (s values, alpha_sr values) with +inf where alpha1 > r.
    """
    q = r - a1
    feas = q >= -EQ_TOL
    qc = np.maximum(q, 0.0)
    den = a2 - qc
    unbounded = den <= EQ_TOL  # alpha1 + alpha2 <= r (or alpha2 = 0 <= q)
    u = np.where(unbounded, np.inf, qc * a2 / np.where(unbounded, 1.0, den))
    asr = np.minimum(eta, a1 + u)
    asr = np.where(a2 <= EQ_TOL, eta, asr)  # alpha2 = 0: both cuts equal alpha1
    s = _s_values(a1, a2, asr, eta)
    return np.where(feas, s, np.inf), np.where(feas, asr, np.nan)


def d_global_numeric(
    r: float, params: NetworkParams, cfg: OptimizerConfig = OptimizerConfig()
) -> ScheduleResult:
    """Best achievable diversity at rate r when the relay adapts its
    schedule to the full realization.

    The equalizing schedule is optimal per realization, which pins the
    worst alpha_sr in closed form; the remaining 2-D problem over
    (alpha1, alpha2) is solved by a coarse scan followed by shrinking
    local grids around the best candidates.
    """
    eta = params.eta
    rs = r_star(params)
    if not (-EQ_TOL <= r <= rs + EQ_TOL):
        raise DomainError(
            f"r must be in [0, {rs:.12g}] (= 2 - 1/eta for eta={eta:.12g}), got {r}"
        )
    r = min(max(r, 0.0), rs)
    a1_hi = min(1.0, r)

    def scan(a1_ax, a2_ax):
        a1, a2 = np.meshgrid(a1_ax, a2_ax, indexing="ij")
        s, asr = _global_surface(a1, a2, r, eta)
        flat = np.argsort(s, axis=None)
        return a1, a2, s, asr, flat

    step = cfg.alpha_grid_step
    a1g, a2g, s, asr, order = scan(_grid_axes(0.0, a1_hi, step), _grid_axes(0.0, 1.0, step))
    seeds = [
        (a1g.flat[k], a2g.flat[k], s.flat[k], asr.flat[k]) for k in order[:8]
    ]
    best = min(seeds, key=lambda t: t[2])
    for sa1, sa2, *_ in seeds:
        span = step
        center = (sa1, sa2)
        for _ in range(3):
            a1_ax = np.linspace(
                max(0.0, center[0] - span), min(a1_hi, center[0] + span), 21
            )
            a2_ax = np.linspace(
                max(0.0, center[1] - span), min(1.0, center[1] + span), 21
            )
            a1g, a2g, s, asr, order = scan(a1_ax, a2_ax)
            k = order[0]
            cand = (a1g.flat[k], a2g.flat[k], s.flat[k], asr.flat[k])
            center = (cand[0], cand[1])
            if cand[2] < best[2]:
                best = cand
            span /= 5.0
    a1, a2, d_val, asr_val = best[0], best[1], best[2], best[3]
    witness = ChannelExponents(float(a1), float(a2), float(min(asr_val, eta)))
    return ScheduleResult(
        f_opt=f_global(witness).f,
        d_value=max(float(d_val), 0.0),
        strategy="global",
        r=r,
        eta=eta,
    )


# ---------------------------------------------------------------------------
# blind strategy: one f for all realizations
# ---------------------------------------------------------------------------


def _blind_route_values(
    r: float, eta: float, fvals: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Inner outage minima split by violated cut, for a vector of schedules.

    Returns (source-cut route, destination-cut route) minima per f; the
    overall inner minimum is their pointwise min. Same case split as
    _outage_cases, with the f-dependent cut row instantiated per grid
    point.
    """
    fvals = np.asarray(fvals, dtype=float)
    nf = len(fvals)
    box_A = np.array(
        [
            [-1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, -1.0],
            [0.0, 0.0, 1.0],
        ]
    )
    box_b = np.array([0.0, 1.0, 0.0, 1.0, 0.0, eta])
    out = {"cs": np.full(nf, np.inf), "cd": np.full(nf, np.inf)}
    for low_branch in (True, False):
        if low_branch:
            c, c0 = np.array([-3.0, -2.0, -1.0]), eta + 4.0
            branch_row, branch_rhs = [1.0, 1.0, 0.0], 1.0
        else:
            c, c0 = np.array([-2.0, -1.0, -1.0]), eta + 3.0
            branch_row, branch_rhs = [-1.0, -1.0, 0.0], -1.0
        for sr_above in (True, False):
            sign_row = [1.0, 0.0, -1.0] if sr_above else [-1.0, 0.0, 1.0]
            for cut in ("cs", "cd"):
                A = np.empty((nf, 9, 3))
                b = np.empty((nf, 9))
                A[:, :6, :] = box_A
                b[:, :6] = box_b
                A[:, 6, :] = branch_row
                b[:, 6] = branch_rhs
                A[:, 7, :] = sign_row
                b[:, 7] = 0.0
                if cut == "cd":
                    A[:, 8, 0] = 1.0
                    A[:, 8, 1] = 1.0 - fvals
                    A[:, 8, 2] = 0.0
                elif sr_above:
                    A[:, 8, 0] = 1.0 - fvals
                    A[:, 8, 1] = 0.0
                    A[:, 8, 2] = fvals
                else:
                    A[:, 8, :] = [1.0, 0.0, 0.0]
                b[:, 8] = r
                vals, _ = _vertex_min_batch(c, c0, A, b)
                out[cut] = np.minimum(out[cut], vals)
    return out["cs"], out["cd"]


def _blind_inner_values(r: float, eta: float, fvals: np.ndarray) -> np.ndarray:
    """min_s_over_outage for a whole vector of schedules at once."""
    cs_vals, cd_vals = _blind_route_values(r, eta, fvals)
    return np.minimum(cs_vals, cd_vals)


def _golden_max(fun, lo: float, hi: float, iters: int) -> tuple[float, float]:
    """Golden-section maximization tracking the best probe seen."""
    best_x, best_v = lo, fun(lo)
    for x in (hi,):
        v = fun(x)
        if v > best_v:
            best_x, best_v = x, v
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = fun(c), fun(d)
    for _ in range(iters):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = fun(d)
        x, v = (c, fc) if fc > fd else (d, fd)
        if v > best_v:
            best_x, best_v = x, v
    return best_x, best_v


def _blind_solve(r: float, eta: float, cfg: OptimizerConfig, depth: int) -> tuple[float, float]:
    nf = max(int(round(1.0 / cfg.f_grid_step)), 1) + 1
    fgrid = np.linspace(0.0, 1.0, nf)
    cs_vals, cd_vals = _blind_route_values(r, eta, fgrid)
    vals = np.minimum(cs_vals, cd_vals)
    vmax = float(np.max(vals))
    tied = np.flatnonzero(vals >= vmax - _TIE_TOL)
    if len(tied) <= 3:
        k = int(np.argmax(vals))
        lo = fgrid[max(k - 1, 0)]
        hi = fgrid[min(k + 1, nf - 1)]
        f_ref, v_ref = _golden_max(
            lambda f: float(_blind_inner_values(r, eta, np.array([f]))[0]),
            lo,
            hi,
            cfg.refine_iters,
        )
        return (f_ref, v_ref) if v_ref > vmax else (float(fgrid[k]), vmax)
    slack = np.maximum(cs_vals, cd_vals)[tied]
    sharp = tied[slack >= float(np.max(slack)) - _TIE_TOL]
    if len(sharp) <= 3:
        return float(fgrid[sharp[len(sharp) // 2]]), vmax
    if r > 1e-3 and depth < 3:
        f_sub, _ = _blind_solve(r - 1e-3, eta, cfg, depth + 1)
        return f_sub, vmax
    return float(fgrid[sharp[len(sharp) // 2]]), vmax


def d_blind_numeric(
    r: float, params: NetworkParams, cfg: OptimizerConfig = OptimizerConfig()
) -> ScheduleResult:
    """Best diversity at rate r for a schedule fixed before the fading is
    known: maximize the inner outage minimum over f in [0, 1].

    A coarse f-grid brackets the peak and golden-section refines it.
    The maximizer is often a whole interval of schedules; on such a
    plateau the reported f is refined lexicographically: among the tied
    schedules, prefer the one whose slack cut (the failure route not
    attaining the minimum) has the largest exponent, i.e. whose second
    most likely failure mode is least likely. Where even that ties, the
    schedule optimal at a marginally smaller rate is reported, so the
    choice stays robust near the support endpoint where every schedule
    is outage-equivalent.
    """
    if not (-EQ_TOL <= r <= 2.0 + EQ_TOL):
        raise DomainError(f"r must be in [0, 2], got {r}")
    r = min(max(r, 0.0), 2.0)
    f_opt, d_val = _blind_solve(r, params.eta, cfg, 0)
    return ScheduleResult(
        f_opt=float(f_opt),
        d_value=max(float(d_val), 0.0),
        strategy="blind",
        r=r,
        eta=params.eta,
    )


# ---------------------------------------------------------------------------
# local strategy: f adapted to alpha_sr only
# ---------------------------------------------------------------------------


def _local_cases(r: float, eta: float, asr: float):
    """2-D linear programs over (alpha1, alpha2) for a pinned alpha_sr.

    The f-dependent cut row is returned symbolically as
    (row0, row1, rhs0, drow0_df, drhs_df) so callers can instantiate a
    whole f-grid at once: row = base + f * slope.
    """
    box_A = [[-1.0, 0.0], [1.0, 0.0], [0.0, -1.0], [0.0, 1.0]]
    box_b = [0.0, 1.0, 0.0, 1.0]
    for low_branch in (True, False):
        if low_branch:
            c, c0 = (-3.0, -2.0), eta + 4.0 - asr
            branch = ([1.0, 1.0], 1.0)
        else:
            c, c0 = (-2.0, -1.0), eta + 3.0 - asr
            branch = ([-1.0, -1.0], -1.0)
        # Source cut, alpha1 <= alpha_sr: (1-f) alpha1 <= r - f alpha_sr
        yield (
            np.array(c),
            c0,
            np.array(box_A + [branch[0], [1.0, 0.0]]),
            np.array(box_b + [branch[1], min(asr, 1.0)]),
            (np.array([1.0, 0.0]), r, np.array([-1.0, 0.0]), -asr),
        )
        # Source cut, alpha1 >= alpha_sr: alpha1 <= r, f drops out
        yield (
            np.array(c),
            c0,
            np.array(box_A + [branch[0], [-1.0, 0.0]]),
            np.array(box_b + [branch[1], -asr]),
            (np.array([1.0, 0.0]), r, np.array([0.0, 0.0]), 0.0),
        )
        # Destination cut: alpha1 + (1-f) alpha2 <= r
        yield (
            np.array(c),
            c0,
            np.array(box_A + [branch[0]]),
            np.array(box_b + [branch[1]]),
            (np.array([1.0, 1.0]), r, np.array([0.0, -1.0]), 0.0),
        )


def _local_inner_values(
    r: float, eta: float, asr: float, fvals: np.ndarray
) -> np.ndarray:
    """min over (alpha1, alpha2) of s, for every f in fvals, at one alpha_sr."""
    nf = len(fvals)
    out = np.full(nf, np.inf)
    for c, c0, A_fix, b_fix, (row, rhs, drow, drhs) in _local_cases(r, eta, asr):
        m = A_fix.shape[0] + 1
        A = np.empty((nf, m, 2))
        b = np.empty((nf, m))
        A[:, :-1, :] = A_fix
        b[:, :-1] = b_fix
        A[:, -1, :] = row + fvals[:, None] * drow
        b[:, -1] = rhs + fvals * drhs
        vals, _ = _vertex_min_batch(c, c0, A, b)
        out = np.minimum(out, vals)
    return out


def d_local_numeric(
    r: float, params: NetworkParams, cfg: OptimizerConfig = OptimizerConfig()
) -> ScheduleResult:
    """Best diversity at rate r when the relay knows only its own
    incoming link: worst case over alpha_sr of the best schedule for
    that alpha_sr.

    alpha_sr is scanned at alpha_grid_step; the schedule search uses a
    plain fine f-grid (no unimodality is assumed for this problem).
    """
    if not (-EQ_TOL <= r <= 2.0 + EQ_TOL):
        raise DomainError(f"r must be in [0, 2], got {r}")
    r = min(max(r, 0.0), 2.0)
    eta = params.eta
    asr_grid = _grid_axes(0.0, eta, cfg.alpha_grid_step)
    nf = max(int(round(1.0 / cfg.f_grid_step)), 1) + 1
    fgrid = np.linspace(0.0, 1.0, nf)
    best = (math.inf, 0.0, 0.0)  # (d, f, alpha_sr)
    for asr in asr_grid:
        vals = _local_inner_values(r, eta, float(asr), fgrid)
        k = int(np.argmax(vals))
        if vals[k] < best[0] - EQ_TOL:
            best = (float(vals[k]), float(fgrid[k]), float(asr))
    return ScheduleResult(
        f_opt=best[1],
        d_value=max(best[0], 0.0),
        strategy="local",
        r=r,
        eta=eta,
        alpha_sr_worst=best[2],
    )


def local_schedule_table(
    r: float,
    params: NetworkParams,
    asr_step: float = 0.02,
    f_step: float = 0.005,
) -> tuple[np.ndarray, np.ndarray]:
    """Optimal listen fraction as a function of the relay-link exponent.

    Used by the finite-SNR simulator to map a realized alpha_sr to a
    schedule; returns (alpha_sr grid, f values).
    """
    eta = params.eta
    asr_grid = _grid_axes(0.0, eta, asr_step)
    nf = max(int(round(1.0 / f_step)), 1) + 1
    fgrid = np.linspace(0.0, 1.0, nf)
    fopt = np.empty_like(asr_grid)
    for i, asr in enumerate(asr_grid):
        vals = _local_inner_values(r, eta, float(asr), fgrid)
        fopt[i] = fgrid[int(np.argmax(vals))]
    return asr_grid, fopt


# ---------------------------------------------------------------------------
# tradeoff curves
# ---------------------------------------------------------------------------


def compute_curve(
    strategy: str,
    params: NetworkParams,
    r_step: float = 0.01,
    cfg: OptimizerConfig = OptimizerConfig(),
) -> TradeoffCurve:
    """Sample one strategy's tradeoff curve on the grid r = 0, r_step, ...
    until the diversity reaches zero.

    The full-knowledge strategy and the 2x2 MIMO reference use their
    closed forms (with an exact zero appended at the known end of the
    support); the blind and local strategies run their numerical
    optimizers and report zero beyond their support.
    """
    if strategy not in ("global", "local", "blind", "mimo2x2"):
        raise DomainError(f"unknown strategy {strategy!r}")
    if not r_step > 0:
        raise DomainError(f"r_step must be > 0, got {r_step}")
    eta = params.eta
    if strategy == "global":
        r_end = r_star(params)
        evaluate = lambda r: d_closed(r, params)
    elif strategy == "mimo2x2":
        r_end = 2.0
        evaluate = d_mimo_2x2
    elif strategy == "blind":
        r_end = 2.0
        evaluate = lambda r: d_blind_numeric(r, params, cfg).d_value
    else:
        r_end = 2.0
        evaluate = lambda r: d_local_numeric(r, params, cfg).d_value

    points: list[tuple[float, float]] = []
    k = 0
    while True:
        r = min(k * r_step, r_end)
        d = evaluate(r)
        if d < _ZERO_D:
            if strategy in ("global", "mimo2x2"):
                r = r_end  # the zero is analytically known
            if not points or r > points[-1][0] + EQ_TOL:
                points.append((r, 0.0))
            break
        points.append((r, d))
        if r >= r_end:
            break
        k += 1
    return TradeoffCurve(eta=eta, strategy=strategy, points=tuple(points), r_step=r_step)
