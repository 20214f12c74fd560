"""Log-barrier interior-point solver for the co-design problem.

Minimizes the scalarized cost J over the design box plus two nonlinear
inequality constraints:

    g1(x) = A * l   - volume_min          >= 0   (vehicle volume floor)
    g2(x) = eta / A - tolerance_ratio_min >= 0   (tolerance grows with size)

The solver works in box-normalized coordinates z in (0, 1)^5 and runs a
standard barrier continuation: for a decreasing barrier weight mu, the
barrier objective

    B(z, mu) = J(x(z)) - mu * sum(log(scaled slacks))

is minimized by damped Newton steps on the exact (closed-form, 5x5)
barrier Hessian with Armijo backtracking, shrinking any step that would
leave the strict interior.  Slack arguments are scaled by the variable
ranges (bounds) or by the constraint thresholds, so mu acts uniformly
across heterogeneous units.  First-order optimality is measured with
primal multiplier estimates lambda_i = mu / slack_i; the reported KKT
residual is max(stationarity, mu), mu being the complementarity gap the
barrier leaves against the original problem.

Multi-start globalization draws Latin-hypercube start points over the
box (deterministic in the seed), repairs them to the interior, and
returns the best converged run.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import qmc

from .domain import DesignBounds, DesignVector, WeightVector
from .objective import (ObjectiveCoefficients, ObjectiveValues, gradient_at,
                        total_cost, total_cost_arrays)

_VAR_NAMES = ("A", "l", "u", "e", "eta")
_MIN_STEP = 1e-16
_ACTIVE_SLACK = 1e-6


@dataclass(frozen=True)
class ConstraintSet:
    """Nonlinear inequality thresholds: minimum hull volume A*l (m^3) and
    minimum docking-tolerance-to-area ratio eta/A (1/m^2)."""

    volume_min: float = 0.025
    tolerance_ratio_min: float = 1.5

    def __post_init__(self) -> None:
        if self.volume_min < 0.0 or self.tolerance_ratio_min < 0.0:
            raise ValueError("constraint thresholds must be >= 0")

    def values(self, x: DesignVector) -> tuple[float, float]:
        """Raw constraint values (g1, g2); feasible iff both >= 0."""
        return (x.A * x.l - self.volume_min,
                x.eta / x.A - self.tolerance_ratio_min)


@dataclass(frozen=True)
class SolverSettings:
    barrier_initial: float = 1.0
    barrier_shrink: float = 0.1
    barrier_floor: float = 1e-10
    kkt_tolerance: float = 1e-8
    max_outer_iterations: int = 50
    max_inner_iterations: int = 200
    armijo_c: float = 1e-4
    backtrack_factor: float = 0.5
    multistart_count: int = 16
    seed: int = 0

    def __post_init__(self) -> None:
        positive = ("barrier_initial", "barrier_shrink", "barrier_floor",
                    "kkt_tolerance", "max_outer_iterations",
                    "max_inner_iterations", "armijo_c", "backtrack_factor",
                    "multistart_count")
        for name in positive:
            if getattr(self, name) <= 0:
                raise ValueError(f"solver setting {name} must be positive")
        if self.barrier_shrink >= 1.0:
            raise ValueError("barrier_shrink must be in (0, 1)")
        if self.backtrack_factor >= 1.0:
            raise ValueError("backtrack_factor must be in (0, 1)")


class SolverStatus(enum.Enum):
    Converged = "Converged"
    IterationLimit = "IterationLimit"
    LineSearchFailure = "LineSearchFailure"


@dataclass(frozen=True)
class BarrierStage:
    """One continuation stage: barrier weight, J at the stage solution,
    stationarity of the barrier objective, inner iterations spent."""

    mu: float
    cost: float
    stationarity: float
    inner_iterations: int


@dataclass(frozen=True)
class SolveResult:
    x_star: DesignVector
    objective: ObjectiveValues
    kkt_residual: float
    constraint_values: tuple[float, float]
    active_set: tuple[str, ...]
    iterations: int
    status: SolverStatus
    start_index: int = 0
    basin_agreement: float = 1.0
    multimodal: bool = False
    outer_trace: tuple[BarrierStage, ...] = field(default=(), repr=False)

    @property
    def converged(self) -> bool:
        return self.status is SolverStatus.Converged


class _BarrierProblem:
    """Barrier objective and gradient in box-normalized coordinates."""

    def __init__(self, w: WeightVector, coeff: ObjectiveCoefficients,
                 bounds: DesignBounds, cons: ConstraintSet) -> None:
        self.w = w
        self.coeff = coeff
        self.cons = cons
        self.lb = np.array(bounds.lower.as_tuple())
        self.ub = np.array(bounds.upper.as_tuple())
        self.range = self.ub - self.lb
        self.g1_scale = cons.volume_min if cons.volume_min > 0.0 else 1.0
        self.g2_scale = cons.tolerance_ratio_min if cons.tolerance_ratio_min > 0.0 else 1.0

    def x_of_z(self, z: np.ndarray) -> np.ndarray:
        return self.lb + z * self.range

    def z_of_x(self, x: np.ndarray) -> np.ndarray:
        return (x - self.lb) / self.range

    def constraints(self, x: np.ndarray) -> tuple[float, float]:
        g1 = x[0] * x[1] - self.cons.volume_min
        g2 = x[4] / x[0] - self.cons.tolerance_ratio_min
        return float(g1), float(g2)

    def interior(self, z: np.ndarray) -> bool:
        if not np.all(np.isfinite(z)) or np.any(z <= 0.0) or np.any(z >= 1.0):
            return False
        g1, g2 = self.constraints(self.x_of_z(z))
        return g1 > 0.0 and g2 > 0.0

    def cost(self, z: np.ndarray) -> float:
        x = self.x_of_z(z)
        return float(total_cost_arrays(x[0], x[1], x[2], x[3], x[4],
                                       self.w, self.coeff))

    def scaled_slacks(self, z: np.ndarray) -> np.ndarray:
        """Slacks of all 12 inequality faces, each scaled to O(1):
        5 lower bounds, 5 upper bounds, g1, g2."""
        x = self.x_of_z(z)
        g1, g2 = self.constraints(x)
        return np.concatenate([z, 1.0 - z,
                               [g1 / self.g1_scale, g2 / self.g2_scale]])

    def value(self, z: np.ndarray, mu: float) -> float:
        slacks = self.scaled_slacks(z)
        if np.any(slacks <= 0.0):
            bad = _slack_names()[int(np.argmin(slacks))]
            raise ValueError(f"point is not strictly interior: slack on "
                             f"{bad} is non-positive")
        base = self.cost(z)
        if mu == 0.0:
            return base
        return base - mu * float(np.sum(np.log(slacks)))

    def value_grad(self, z: np.ndarray, mu: float) -> tuple[float, np.ndarray]:
        x = self.x_of_z(z)
        g1, g2 = self.constraints(x)
        cost = float(total_cost_arrays(x[0], x[1], x[2], x[3], x[4],
                                       self.w, self.coeff))
        grad = gradient_at(x[0], x[1], x[2], x[3], x[4], self.w, self.coeff) \
            * self.range
        if mu == 0.0:
            return cost, grad
        value = cost - mu * (float(np.sum(np.log(z))) + float(np.sum(np.log1p(-z)))
                             + math.log(g1 / self.g1_scale)
                             + math.log(g2 / self.g2_scale))
        grad = grad - mu / z + mu / (1.0 - z)
        grad -= mu / g1 * self._g1_grad_z(x)
        grad -= mu / g2 * self._g2_grad_z(x)
        return value, grad

    def _g1_grad_z(self, x: np.ndarray) -> np.ndarray:
        g = np.zeros(5)
        g[0] = x[1] * self.range[0]
        g[1] = x[0] * self.range[1]
        return g

    def _g2_grad_z(self, x: np.ndarray) -> np.ndarray:
        g = np.zeros(5)
        g[0] = -x[4] / x[0]**2 * self.range[0]
        g[4] = 1.0 / x[0] * self.range[4]
        return g

    def _cost_hessian_diag(self) -> np.ndarray:
        """Diagonal of the (separable) cost Hessian in z coordinates."""
        c = self.coeff
        w = self.w
        quad = np.array([
            w.p * 2.0 * c.kA / (c.A_max**2 * (c.kA + c.kl)),
            w.p * 2.0 * c.kl / (c.l_max**2 * (c.kA + c.kl)),
            w.q * 2.0 * c.ku / (c.ku + c.ke + c.k_eta),
            w.q * 2.0 * c.ke / (c.ku + c.ke + c.k_eta),
            w.q * 2.0 * c.k_eta / (c.ku + c.ke + c.k_eta),
        ])
        return quad * self.range**2

    def hessian(self, z: np.ndarray, mu: float) -> np.ndarray:
        """Exact barrier Hessian in z coordinates (5x5, closed form)."""
        x = self.x_of_z(z)
        g1, g2 = self.constraints(x)
        hess = np.diag(self._cost_hessian_diag()
                       + mu * (1.0 / z**2 + 1.0 / (1.0 - z)**2))

        u1 = self._g1_grad_z(x)
        hess += mu / g1**2 * np.outer(u1, u1)
        cross = mu / g1 * self.range[0] * self.range[1]  # d2(A*l)/dAdl = 1
        hess[0, 1] -= cross
        hess[1, 0] -= cross

        u2 = self._g2_grad_z(x)
        hess += mu / g2**2 * np.outer(u2, u2)
        hess[0, 0] -= mu / g2 * 2.0 * x[4] / x[0]**3 * self.range[0]**2
        cross = mu / g2 * (-1.0 / x[0]**2) * self.range[0] * self.range[4]
        hess[0, 4] -= cross
        hess[4, 0] -= cross
        return hess


def _slack_names() -> tuple[str, ...]:
    lower = tuple(f"{n}_lower" for n in _VAR_NAMES)
    upper = tuple(f"{n}_upper" for n in _VAR_NAMES)
    return lower + upper + ("volume_min", "tolerance_ratio_min")


def barrier_objective(x: DesignVector, mu: float, w: WeightVector,
                      coeff: ObjectiveCoefficients, cons: ConstraintSet,
                      bounds: DesignBounds) -> float:
    """Barrier-augmented cost at a strictly interior design.

    With mu = 0 this is exactly J(x).  Raises ValueError naming the
    violated slack if x touches or crosses any bound or constraint.
    """
    if mu < 0.0:
        raise ValueError("mu must be >= 0")
    problem = _BarrierProblem(w, coeff, bounds, cons)
    z = problem.z_of_x(np.array(x.as_tuple()))
    return problem.value(z, mu)


def _repair_to_interior(problem: _BarrierProblem, z: np.ndarray,
                        margin: float = 1e-3) -> np.ndarray:
    """Clip into the box with a range-relative margin, then pull along a
    segment toward a feasibility anchor until the nonlinear constraints
    hold strictly.  Deterministic; raises if no anchor is feasible."""
    z = np.clip(z, margin, 1.0 - margin)
    if problem.interior(z):
        return z

    # Anchors ordered by preference: low-A / long / high-eta corner favors
    # both constraints; box center and its high-A twin cover odd boxes.
    anchors = (np.array([0.05, 0.95, 0.5, 0.5, 0.95]),
               np.array([0.5, 0.5, 0.5, 0.5, 0.5]),
               np.array([0.95, 0.95, 0.5, 0.5, 0.95]))
    for anchor in anchors:
        if not problem.interior(anchor):
            continue
        for t in np.linspace(0.0, 1.0, 65):
            candidate = (1.0 - t) * z + t * anchor
            if problem.interior(candidate):
                return candidate
        return anchor
    raise ValueError("could not repair start point to a strictly feasible "
                     "interior point; check bounds against constraints")


def _line_search(problem: _BarrierProblem, z: np.ndarray, f: float,
                 g: np.ndarray, p: np.ndarray, mu: float,
                 settings: SolverSettings, boundary_fraction: float,
                 ) -> tuple[np.ndarray, float, np.ndarray, float] | None:
    """Armijo backtracking, starting from the largest box-respecting step;
    trial points outside the strict interior shrink the step further."""
    gp = float(g @ p)
    alpha = 1.0
    with np.errstate(divide="ignore"):
        limits = np.where(p < 0.0, z / -p, (1.0 - z) / p)
    finite = limits[np.isfinite(limits) & (limits > 0.0)]
    if finite.size:
        alpha = min(1.0, boundary_fraction * float(np.min(finite)))

    while alpha > _MIN_STEP:
        z_trial = z + alpha * p
        if problem.interior(z_trial):
            f_trial, g_trial = problem.value_grad(z_trial, mu)
            if f_trial <= f + settings.armijo_c * alpha * gp:
                assert problem.interior(z_trial), \
                    "accepted iterate left the interior"
                return z_trial, f_trial, g_trial, alpha
        alpha *= settings.backtrack_factor
    return None


def _newton_direction(problem: _BarrierProblem, z: np.ndarray, mu: float,
                      g: np.ndarray) -> np.ndarray:
    """Damped-Newton direction on the exact barrier Hessian.

    The nonlinear constraints are not concave, so the Hessian can lose
    positive definiteness away from their boundaries; Levenberg damping
    escalates until the solve yields a descent direction.
    """
    hess = problem.hessian(z, mu)
    damping = 0.0
    scale = float(np.max(np.abs(np.diag(hess)))) or 1.0
    identity = np.eye(5)
    for _ in range(24):
        try:
            p = np.linalg.solve(hess + damping * identity, -g)
        except np.linalg.LinAlgError:
            p = None
        if p is not None and np.all(np.isfinite(p)) and float(g @ p) < 0.0:
            return p
        damping = max(damping * 100.0, 1e-12 * scale)
    return -g  # last resort: steepest descent


def _newton_stage(problem: _BarrierProblem, z: np.ndarray, mu: float,
                  tol: float, settings: SolverSettings,
                  ) -> tuple[np.ndarray, np.ndarray, int, bool]:
    """Minimize the barrier objective at fixed mu by damped Newton with
    Armijo backtracking.

    Returns the iterate, its gradient, iterations used, and whether the
    line search stalled.  Near-active slacks are position-quantized at
    f64 resolution, so a stall with a vanishing step means the numerical
    floor was reached, not that the direction failed.
    """
    f, g = problem.value_grad(z, mu)
    stalled = False
    iterations = 0

    while float(np.max(np.abs(g))) > tol \
            and iterations < settings.max_inner_iterations:
        p = _newton_direction(problem, z, mu, g)
        step = _line_search(problem, z, f, g, p, mu, settings,
                            boundary_fraction=0.995)
        if step is None:
            stalled = True
            break
        z_new, f_new, g_new, _ = step
        moved = float(np.max(np.abs(z_new - z)))
        z, f, g = z_new, f_new, g_new
        iterations += 1
        if moved < 1e-15:
            break  # below position resolution; no progress possible

    return z, g, iterations, stalled


def _solve_from_z(problem: _BarrierProblem, z0: np.ndarray,
                  settings: SolverSettings, start_index: int) -> SolveResult:
    z = _repair_to_interior(problem, z0)
    mu = settings.barrier_initial
    trace: list[BarrierStage] = []
    total_inner = 0
    stalled_last = False
    best_residual = math.inf
    best_z = z
    best_mu = mu

    exited_by_stall = False
    for _ in range(settings.max_outer_iterations):
        inner_tol = max(0.3 * settings.kkt_tolerance, 0.1 * mu)
        z, g, inner, stalled_last = _newton_stage(problem, z, mu, inner_tol,
                                                  settings)
        total_inner += inner
        stationarity = float(np.max(np.abs(g)))
        # Primal multiplier estimates give lambda_i * slack_i = mu exactly,
        # so mu itself is the complementarity gap against the true problem.
        residual = max(stationarity, mu)
        trace.append(BarrierStage(mu=mu, cost=problem.cost(z),
                                  stationarity=stationarity,
                                  inner_iterations=inner))
        if residual < best_residual:
            best_residual, best_z, best_mu = residual, z, mu
        if stalled_last and residual > best_residual:
            # Position-quantized slack: smaller mu only raises the
            # stationarity floor, so stop the continuation here.
            exited_by_stall = True
            break
        if best_residual <= settings.kkt_tolerance \
                and residual > 10.0 * best_residual:
            break  # refinement exhausted; keep the best stage
        if mu <= settings.barrier_floor:
            break
        mu *= settings.barrier_shrink
        # Snap accumulated float dust so the default schedule lands exactly
        # on the tolerance instead of a few ulps above it.
        if abs(mu - settings.kkt_tolerance) <= 1e-6 * settings.kkt_tolerance:
            mu = settings.kkt_tolerance

    if best_residual <= settings.kkt_tolerance:
        status = SolverStatus.Converged
    elif exited_by_stall or stalled_last:
        status = SolverStatus.LineSearchFailure
    else:
        status = SolverStatus.IterationLimit

    x = problem.x_of_z(best_z)
    x_star = DesignVector(*[float(v) for v in x])
    slacks = problem.scaled_slacks(best_z)
    active = tuple(name for name, s in zip(_slack_names(), slacks)
                   if s < _ACTIVE_SLACK)
    return SolveResult(
        x_star=x_star,
        objective=total_cost(x_star, problem.w, problem.coeff),
        kkt_residual=best_residual,
        constraint_values=problem.constraints(x),
        active_set=active,
        iterations=total_inner,
        status=status,
        start_index=start_index,
        outer_trace=tuple(trace),
    )


def solve(w: WeightVector, coeff: ObjectiveCoefficients, bounds: DesignBounds,
          cons: ConstraintSet, x_init: DesignVector,
          settings: SolverSettings = SolverSettings()) -> SolveResult:
    """Barrier continuation from a single start point.

    A non-interior x_init is repaired by clipping into the box with a
    1e-3-range margin and, if a nonlinear constraint is violated, pulling
    along a feasibility segment toward an interior anchor.
    """
    problem = _BarrierProblem(w, coeff, bounds, cons)
    z0 = problem.z_of_x(np.array(x_init.as_tuple()))
    return _solve_from_z(problem, z0, settings, start_index=0)


def multi_start_solve(w: WeightVector, coeff: ObjectiveCoefficients,
                      bounds: DesignBounds, cons: ConstraintSet,
                      settings: SolverSettings = SolverSettings()) -> SolveResult:
    """Run the solver from Latin-hypercube start points and keep the best.

    Converged runs win over non-converged ones; ties in J (within 1e-12)
    break toward the lowest start index for determinism.  The returned
    result carries the fraction of converged starts that agree with the
    winner within 1e-4 (infinity norm on x); agreement below 80% flags
    the problem as multimodal.
    """
    if settings.multistart_count < 1:
        raise ValueError("multistart_count must be >= 1")
    problem = _BarrierProblem(w, coeff, bounds, cons)
    sampler = qmc.LatinHypercube(d=5, seed=settings.seed)
    starts = sampler.random(settings.multistart_count)

    results = [_solve_from_z(problem, starts[i], settings, start_index=i)
               for i in range(settings.multistart_count)]

    converged = [r for r in results if r.converged]
    pool = converged if converged else results
    best = pool[0]
    for r in pool[1:]:
        if r.objective.J < best.objective.J - 1e-12:
            best = r

    agreement = 1.0
    if converged:
        best_x = np.array(best.x_star.as_tuple())
        same = sum(1 for r in converged
                   if np.max(np.abs(np.array(r.x_star.as_tuple()) - best_x)) <= 1e-4)
        agreement = same / len(converged)
    return SolveResult(
        x_star=best.x_star,
        objective=best.objective,
        kkt_residual=best.kkt_residual,
        constraint_values=best.constraint_values,
        active_set=best.active_set,
        iterations=best.iterations,
        status=best.status,
        start_index=best.start_index,
        basin_agreement=agreement,
        multimodal=agreement < 0.8,
        outer_trace=best.outer_trace,
    )
