"""Numeric bracket for E_n(alpha): semi-infinite LP and random search.

E_n(alpha) = sup{ ||P||_bidisk : deg P <= n, ||P||_K <= 1 } is estimated
from both sides:

  * en_lp_estimate discretizes the constraint ||P||_K <= 1 to circle
    points t_i and replaces each modulus constraint |f(t_i)| <= 1 by S
    half-planes Re(e^{i phi_s} f(t_i)) <= 1 (an outer polygon), then for
    each torus candidate (z0, w0) and objective phase maximizes
    Re(e^{i theta} P(z0, w0)).  Finitely many constraint points plus the
    outer polygon make this a relaxation of the candidate restriction,
    so refining the constraint grid can only shrink the value.
  * en_random_search evaluates feasible points: random coefficient
    vectors (plus the deterministic candidates z, w, and the witness)
    scored by ln(bidisk grid max / certified K upper), a true lower
    bound up to the bidisk grid's resolution.

Two reductions keep the LP tractable.  First, rotating all coefficients
by e^{2 pi i/S} permutes the constraint set, so objective phases that
differ by a multiple of 2 pi/S give equal optima; only Q/gcd(S,Q)
residue phases are solved (one, at the defaults).  Second, constraints
are activated lazily per candidate: each LP starts from a fixed coarse
row pattern plus the previous candidate's active rows, violated rows
are added until no row of the full discretization is violated beyond
FEASIBILITY_TOL, and solver hiccups fall back through a retry chain
(tight tolerances, then solver defaults, then interior point, then a
deterministic densification of the working set).  Feasibility of the
accepted point is certified by the explicit scan over all rows, not by
the solver's internal tolerance.

The LP layer runs in float64 (the estimates are grid-resolution-bound
far above rounding error); analytic and witness quantities come from
the extended-precision modules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from .analytic_bounds import theorem2_bounds
from .construct import build_witness, required_witness_bits, witness_certificate
from .core import (
    DEFAULT_BITS,
    AlphaParam,
    canonical_indices,
    monomial_nodes,
    space_dimension,
)

DEFAULT_MAX_DEGREE = 8
FEASIBILITY_TOL = 1e-9
SOLVER_OPTIONS = {
    "primal_feasibility_tolerance": 1e-9,
    "dual_feasibility_tolerance": 1e-9,
}
_BASE_POINTS = 32
_BASE_DIRECTIONS = 8
_CUTS_PER_ROUND = 64
_MAX_ROUNDS = 200
_ACTIVE_SLACK = 1e-7


class SolverGridError(RuntimeError):
    """The constraint discretization cannot bound the LP; raise circle_points."""


@dataclass(frozen=True)
class LPConfig:
    """Discretization sizes for the semi-infinite LP."""

    circle_points: int = 512
    polygon_sides: int = 64
    torus_points: int = 32
    phase_samples: int = 16

    def __post_init__(self) -> None:
        if self.polygon_sides < 8:
            raise ValueError(f"polygon_sides must be >= 8, got {self.polygon_sides}")
        if self.torus_points < 8:
            raise ValueError(f"torus_points must be >= 8, got {self.torus_points}")
        if self.phase_samples < 4:
            raise ValueError(f"phase_samples must be >= 4, got {self.phase_samples}")
        if self.circle_points < 8:
            raise ValueError(f"circle_points must be >= 8, got {self.circle_points}")

    def slack(self) -> float:
        """Discretization allowance in the oracle <= lp + slack invariant.

        A feasible P scoring the oracle value has some sampled phase
        within pi/Q of its candidate-point argument, so the LP objective
        sees at least cos(pi/Q) of the oracle's modulus.
        """
        return -math.log(math.cos(math.pi / self.phase_samples))


@dataclass(frozen=True)
class EnEstimate:
    """Three-way estimate report for one (n, alpha)."""

    n: int
    alpha: AlphaParam
    lp_log_value: float
    oracle_log_value: float
    witness_log_value: float
    analytic_lower: float
    analytic_upper: float
    config: LPConfig
    trials: int
    seed: int
    precision_bits: int
    flags: tuple = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.flags


def phase_residues(polygon_sides: int, phase_samples: int):
    """Distinct objective phases modulo the 2 pi/S rotation symmetry."""
    S, Q = polygon_sides, phase_samples
    residues = sorted({(q * S) % Q for q in range(Q)})
    return [2 * math.pi * r / (S * Q) for r in residues]


def _candidate_guard(n: int, cfg: LPConfig, max_degree: int) -> None:
    if n < 1:
        raise ValueError(f"degree must be >= 1, got {n}")
    if n > max_degree:
        raise ValueError(
            f"n={n} exceeds the LP size guard ({max_degree}); "
            f"pass a higher max_degree to override"
        )
    N = space_dimension(n)
    if cfg.circle_points < 4 * N:
        raise ValueError(
            f"circle_points={cfg.circle_points} below 4N={4 * N}; "
            f"the constraint grid cannot resolve degree {n}"
        )


def _nodes_f64(n: int, alpha: AlphaParam, bits: int) -> np.ndarray:
    return np.array(
        [complex(e.value) for e in monomial_nodes(n, alpha, bits)], dtype=np.complex128
    )


def _solve_chain(d: np.ndarray, A: np.ndarray, b: np.ndarray):
    """linprog retry chain: tight tolerances, solver defaults, interior point."""
    res = linprog(
        -d, A_ub=A, b_ub=b, bounds=(None, None), method="highs", options=SOLVER_OPTIONS
    )
    if res.status == 4:
        res = linprog(-d, A_ub=A, b_ub=b, bounds=(None, None), method="highs")
    if res.status == 4:
        res = linprog(-d, A_ub=A, b_ub=b, bounds=(None, None), method="highs-ipm")
    return res


class _WorkingSetLP:
    """Row-generation solver over one circle/polygon discretization.

    Rows are indexed i*S + s for circle point i and polygon direction s.
    Each maximize() call warm-starts from a fixed coarse pattern plus
    the active rows of the previous call, which makes sweeping many
    nearby objectives cheap.
    """

    def __init__(self, E: np.ndarray, S: int):
        self.E = E
        self.M1 = E.shape[0]
        self.S = S
        self.phases = np.exp(2j * np.pi * np.arange(S) / S)
        self.base = self._pattern(min(_BASE_POINTS, self.M1), min(_BASE_DIRECTIONS, S))
        self.prev_active: set = set()
        self.last_solution: np.ndarray | None = None

    def _pattern(self, pts: int, dirs: int) -> set:
        return {
            i * self.S + s
            for i in range(0, self.M1, max(1, self.M1 // pts))
            for s in range(0, self.S, max(1, self.S // dirs))
        }

    def _rows(self, ids: np.ndarray) -> np.ndarray:
        i, s = ids // self.S, ids % self.S
        u = self.E[i] * self.phases[s][:, None]
        return np.concatenate([u.real, -u.imag], axis=1)

    def maximize(self, d: np.ndarray, abandon_below: float | None = None) -> float | None:
        """max d.x over the full discretization, via lazy row generation.

        The relaxation value only decreases as cut rows are added, so
        when abandon_below is given and an intermediate solve already
        sits at or under it, the final value cannot beat that incumbent
        and the search stops early, returning None.
        """
        ncoef = d.shape[0] // 2
        working = self.base | self.prev_active
        densify_level = 0
        for _ in range(_MAX_ROUNDS):
            ids = np.array(sorted(working))
            A = self._rows(ids)
            res = _solve_chain(d, A, np.ones(len(ids)))
            if res.status in (3, 4) or res.x is None:
                densify_level += 1
                extra = self._pattern(
                    min(self.M1, _BASE_POINTS * 2**densify_level),
                    min(self.S, _BASE_DIRECTIONS * 2**densify_level),
                )
                if not extra - working:
                    raise SolverGridError(
                        f"LP not solvable on the full constraint grid "
                        f"(solver status {res.status}); increase circle_points"
                    )
                working |= extra
                continue
            if res.status != 0:
                raise SolverGridError(f"LP solver failed with status {res.status}")
            x = res.x
            self.last_solution = x
            if abandon_below is not None and float(d @ x) <= abandon_below:
                self.prev_active = set(ids[A @ x > 1 - _ACTIVE_SLACK].tolist())
                return None
            c = x[:ncoef] + 1j * x[ncoef:]
            g = self.E @ c
            ang = np.angle(g)
            # nearest polygon direction maximizes Re(e^{i phi_s} g_i) over s
            sstar = np.mod(np.round(-ang * self.S / (2 * np.pi)), self.S).astype(int)
            vals = np.abs(g) * np.cos(ang + 2 * np.pi * sstar / self.S)
            bad = np.flatnonzero(vals > 1 + FEASIBILITY_TOL)
            if bad.size:
                order = bad[np.argsort(-vals[bad], kind="stable")][:_CUTS_PER_ROUND]
                new = {int(i) * self.S + int(s) for i, s in zip(order, sstar[order])}
                if new - working:
                    working |= new
                    continue
                # every violated row is already in the working set: the
                # solver's attainable feasibility floor; accept the point
            self.prev_active = set(ids[A @ x > 1 - _ACTIVE_SLACK].tolist())
            return float(d @ x)
        raise SolverGridError("constraint generation did not converge")


def en_lp_estimate(
    n: int,
    alpha: AlphaParam,
    cfg: LPConfig = LPConfig(),
    bits: int = DEFAULT_BITS,
    max_degree: int = DEFAULT_MAX_DEGREE,
) -> float:
    """ln of the discretized-LP maximum over torus candidates and phases."""
    _candidate_guard(n, cfg, max_degree)
    if alpha.im == 0.0:
        raise ValueError("LP estimate requires Im(alpha) != 0")
    nodes = _nodes_f64(n, alpha, bits)
    idx = canonical_indices(n)
    M1, S = cfg.circle_points, cfg.polygon_sides
    t = np.exp(2j * np.pi * np.arange(M1) / M1)
    E = np.exp(np.outer(t, nodes))
    lp = _WorkingSetLP(E, S)
    thetas = phase_residues(S, cfg.phase_samples)

    M2 = cfg.torus_points
    zgrid = np.exp(2j * np.pi * np.arange(M2) / M2)
    jpow = np.array([[z ** jk.j for jk in idx] for z in zgrid])
    kpow = np.array([[z ** jk.k for jk in idx] for z in zgrid])
    objectives = np.stack([
        np.concatenate([dm.real, -dm.imag])
        for pz in range(M2)
        for pw in range(M2)
        for dm in ((jpow[pz] * kpow[pw]) * np.exp(1j * np.array(thetas))[:, None])
    ])

    # One candidate is solved to convergence up front; its solution
    # scores every other objective, and sweeping in descending score
    # order lets the incumbent abandon most candidates after a single
    # solve (the relaxation value never rises as cuts accumulate).
    best = lp.maximize(objectives[0])
    if best is None:  # pragma: no cover - no incumbent on the first call
        raise SolverGridError("initial LP candidate did not converge")
    scores = objectives[1:] @ lp.last_solution
    order = 1 + np.argsort(-scores, kind="stable")
    for pos in order:
        val = lp.maximize(objectives[pos], abandon_below=best)
        if val is not None and val > best:
            best = val
    if best <= 0:
        raise SolverGridError("LP produced a nonpositive maximum; grid degenerate")
    return math.log(best)


def en_random_search(
    n: int,
    alpha: AlphaParam,
    trials: int,
    seed: int,
    grid_points: int = 32,
    norm_grid: int = 512,
    bits: int = DEFAULT_BITS,
) -> float:
    """Best feasible ratio ln(bidisk grid max / certified K upper).

    Samples coefficient vectors uniformly on the unit sphere of
    R^{2(N+1)} and always includes the deterministic candidates z, w,
    and the witness.  The K norm is certified by the first-order bound
    grid_max + (pi/M) sum |c||a|e^{|a|}, so every reported ratio is a
    true lower bound on e_n(alpha) up to bidisk grid resolution.
    """
    if n < 1:
        raise ValueError(f"degree must be >= 1, got {n}")
    if trials < 0:
        raise ValueError(f"trials must be >= 0, got {trials}")
    if alpha.im == 0.0:
        raise ValueError("random search requires Im(alpha) != 0")
    idx = canonical_indices(n)
    ncoef = len(idx)
    nodes = _nodes_f64(n, alpha, bits)

    M2 = grid_points
    zgrid = np.exp(2j * np.pi * np.arange(M2) / M2)
    B = np.empty((M2 * M2, ncoef), dtype=np.complex128)
    for p, jk in enumerate(idx):
        B[:, p] = np.outer(zgrid**jk.j, zgrid**jk.k).ravel()

    MK = norm_grid
    tK = np.exp(2j * np.pi * np.arange(MK) / MK)
    EK = np.exp(np.outer(tK, nodes))
    deriv_weight = np.abs(nodes) * np.exp(np.abs(nodes))

    def score(c: np.ndarray) -> float:
        top = np.abs(B @ c).max()
        gridk = np.abs(EK @ c).max()
        certk = gridk + (np.pi / MK) * float(np.abs(c) @ deriv_weight)
        if top == 0 or certk == 0:
            return -math.inf
        return math.log(top) - math.log(certk)

    fixed = []
    ez = np.zeros(ncoef, dtype=np.complex128)
    ez[idx.index((1, 0))] = 1.0
    fixed.append(ez)
    ew = np.zeros(ncoef, dtype=np.complex128)
    ew[idx.index((0, 1))] = 1.0
    fixed.append(ew)
    wbits = max(bits, required_witness_bits(n))
    witness = build_witness(n, alpha, wbits)
    fixed.append(np.array([complex(witness.p.coefficient(jk.j, jk.k)) for jk in idx]))

    best = max(score(c) for c in fixed)
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        v = rng.standard_normal(2 * ncoef)
        norm = math.sqrt(float(v @ v))
        if norm == 0:
            continue
        v /= norm
        val = score(v[:ncoef] + 1j * v[ncoef:])
        if val > best:
            best = val
    return best


def en_bracket(
    n: int,
    alpha: AlphaParam,
    cfg: LPConfig = LPConfig(),
    trials: int = 1000,
    seed: int = 0,
    bits: int = DEFAULT_BITS,
    max_degree: int = DEFAULT_MAX_DEGREE,
    witness_grid: int = 512,
) -> EnEstimate:
    """Assemble LP, oracle, witness, and analytic endpoints for (n, alpha).

    Invariant violations (a lower estimate exceeding an upper bound plus
    its stated allowance) are recorded in flags, never silently dropped.
    """
    lo, up = theorem2_bounds(n, alpha, bits)
    wbits = max(bits, required_witness_bits(n))
    _, _, _, wlower = witness_certificate(n, alpha, grid=witness_grid, bits=wbits)
    lp_val = en_lp_estimate(n, alpha, cfg, bits, max_degree)
    oracle_val = en_random_search(
        n, alpha, trials, seed, grid_points=cfg.torus_points, bits=bits
    )
    analytic_lower, analytic_upper = float(lo), float(up)
    witness_log = float(wlower)

    flags = []
    slack = cfg.slack()
    if oracle_val > lp_val + slack + 1e-9:
        flags.append(
            f"oracle {oracle_val:.6f} exceeds lp {lp_val:.6f} + slack {slack:.6f}"
        )
    if witness_log > analytic_upper + 1e-6:
        flags.append(
            f"witness {witness_log:.6f} exceeds analytic upper {analytic_upper:.6f}"
        )
    if oracle_val > analytic_upper + 1e-6:
        flags.append(
            f"oracle {oracle_val:.6f} exceeds analytic upper {analytic_upper:.6f}"
        )
    return EnEstimate(
        n,
        alpha,
        lp_val,
        oracle_val,
        witness_log,
        analytic_lower,
        analytic_upper,
        cfg,
        trials,
        seed,
        bits,
        tuple(flags),
    )
