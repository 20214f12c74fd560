"""Objective surrogates for the co-design cost function.

Four normalized polynomial surrogates map a design vector to objective
scores in [0, 1]:

* hydrodynamic loss  h = [kA (A/A_max)^2 + kl (l/l_max)^2] / (kA + kl)
* monetary cost      c = [ku u^2 + ke e^2 + k_eta eta^2] / (ku + ke + k_eta)
* docking reliability d = [au u + ae e + a_eta eta] / (au + ae + a_eta)
* system versatility  v = [bA (A/A_max) + bl (l/l_max) + bu u] / (bA + bl + bu)

and the scalarized total is J = p h + q c - r d - s v, so reliability and
versatility are maximized while loss and cost are minimized.  All
coefficients are exposed for calibration; the convex-combination form
keeps every score inside [0, 1] on any design within the normalizers.

The helpers suffixed ``_terms``/``_arrays`` accept numpy arrays for
vectorized evaluation over design grids.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .domain import DesignVector, WeightVector


@dataclass(frozen=True)
class ObjectiveCoefficients:
    """Surrogate coefficients and dimension normalizers.

    kA/kl weigh the frontal-area and skin-friction terms of h; ku/ke/k_eta
    the quadratic cost terms; au/ae/a_eta the linear reliability terms;
    bA/bl/bu the versatility terms.  A_max and l_max nondimensionalize
    area and length (defaults match the standard search box uppers).
    """

    kA: float = 1.0
    kl: float = 1.0
    ku: float = 1.0
    ke: float = 1.0
    k_eta: float = 1.0
    au: float = 1.0
    ae: float = 1.0
    a_eta: float = 1.0
    bA: float = 1.0
    bl: float = 1.0
    bu: float = 1.0
    A_max: float = 1.0
    l_max: float = 3.0

    def __post_init__(self) -> None:
        for name in ("kA", "kl", "ku", "ke", "k_eta", "au", "ae", "a_eta",
                     "bA", "bl", "bu"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"coefficient {name} must be >= 0")
        if self.kA + self.kl <= 0.0:
            raise ValueError("hydrodynamic coefficients kA + kl must be positive")
        if self.ku + self.ke + self.k_eta <= 0.0:
            raise ValueError("cost coefficients ku + ke + k_eta must be positive")
        if self.au + self.ae + self.a_eta <= 0.0:
            raise ValueError("reliability coefficients au + ae + a_eta must be positive")
        if self.bA + self.bl + self.bu <= 0.0:
            raise ValueError("versatility coefficients bA + bl + bu must be positive")
        if self.A_max <= 0.0 or self.l_max <= 0.0:
            raise ValueError("normalizers A_max, l_max must be positive")

    def as_dict(self) -> dict[str, float]:
        return {name: float(getattr(self, name)) for name in (
            "kA", "kl", "ku", "ke", "k_eta", "au", "ae", "a_eta",
            "bA", "bl", "bu", "A_max", "l_max")}

    def replace(self, **changes: float) -> "ObjectiveCoefficients":
        return replace(self, **changes)


@dataclass(frozen=True)
class ObjectiveValues:
    """Objective breakdown at one design: the four scores and the total."""

    h: float
    c: float
    d: float
    v: float
    J: float


def hydro_loss(x: DesignVector, coeff: ObjectiveCoefficients) -> float:
    """Normalized hydrodynamic loss: quadratic in frontal area (form drag)
    and in length (skin friction), with the area term dominating through
    its coefficient."""
    h, _, _, _ = objective_terms(x.A, x.l, x.u, x.e, x.eta, coeff)
    return float(h)


def monetary_cost(x: DesignVector, coeff: ObjectiveCoefficients) -> float:
    """Normalized build cost: quadratic in control fidelity, entry area,
    and docking tolerance."""
    _, c, _, _ = objective_terms(x.A, x.l, x.u, x.e, x.eta, coeff)
    return float(c)


def docking_reliability(x: DesignVector, coeff: ObjectiveCoefficients) -> float:
    """Normalized docking success score: linear in control fidelity,
    entry area, and docking tolerance."""
    _, _, d, _ = objective_terms(x.A, x.l, x.u, x.e, x.eta, coeff)
    return float(d)


def versatility(x: DesignVector, coeff: ObjectiveCoefficients) -> float:
    """Normalized versatility score: rewards size and control fidelity,
    countering the shrink pressure of the loss and cost terms."""
    _, _, _, v = objective_terms(x.A, x.l, x.u, x.e, x.eta, coeff)
    return float(v)


def total_cost(x: DesignVector, w: WeightVector,
               coeff: ObjectiveCoefficients) -> ObjectiveValues:
    """Evaluate all four surrogates and the scalarized total J."""
    h, c, d, v = objective_terms(x.A, x.l, x.u, x.e, x.eta, coeff)
    return ObjectiveValues(h=float(h), c=float(c), d=float(d), v=float(v),
                           J=w.p * float(h) + w.q * float(c)
                             - w.r * float(d) - w.s * float(v))


def objective_terms(A, l, u, e, eta, coeff: ObjectiveCoefficients):
    """Vectorized surrogate evaluation; accepts scalars or numpy arrays."""
    An = np.asarray(A) / coeff.A_max
    ln = np.asarray(l) / coeff.l_max
    u = np.asarray(u)
    e = np.asarray(e)
    eta = np.asarray(eta)

    h = (coeff.kA * An**2 + coeff.kl * ln**2) / (coeff.kA + coeff.kl)
    c = (coeff.ku * u**2 + coeff.ke * e**2 + coeff.k_eta * eta**2) \
        / (coeff.ku + coeff.ke + coeff.k_eta)
    d = (coeff.au * u + coeff.ae * e + coeff.a_eta * eta) \
        / (coeff.au + coeff.ae + coeff.a_eta)
    v = (coeff.bA * An + coeff.bl * ln + coeff.bu * u) \
        / (coeff.bA + coeff.bl + coeff.bu)
    return h, c, d, v


def total_cost_arrays(A, l, u, e, eta, w: WeightVector,
                      coeff: ObjectiveCoefficients):
    """Vectorized J = p h + q c - r d - s v."""
    h, c, d, v = objective_terms(A, l, u, e, eta, coeff)
    return w.p * h + w.q * c - w.r * d - w.s * v


def gradient(x: DesignVector, w: WeightVector,
             coeff: ObjectiveCoefficients) -> np.ndarray:
    """Analytic dJ/d[A, l, u, e, eta].

    Every surrogate is polynomial, so the gradient is exact closed form
    and defined on all of the positive orthant, not just inside bounds.
    """
    return gradient_at(x.A, x.l, x.u, x.e, x.eta, w, coeff)


def gradient_at(A, l, u, e, eta, w: WeightVector,
                coeff: ObjectiveCoefficients) -> np.ndarray:
    """Gradient of J at raw component values (vectorized over the last axis)."""
    sum_h = coeff.kA + coeff.kl
    sum_c = coeff.ku + coeff.ke + coeff.k_eta
    sum_d = coeff.au + coeff.ae + coeff.a_eta
    sum_v = coeff.bA + coeff.bl + coeff.bu

    dA = w.p * 2.0 * coeff.kA * A / (coeff.A_max**2 * sum_h) \
        - w.s * coeff.bA / (coeff.A_max * sum_v)
    dl = w.p * 2.0 * coeff.kl * l / (coeff.l_max**2 * sum_h) \
        - w.s * coeff.bl / (coeff.l_max * sum_v)
    du = w.q * 2.0 * coeff.ku * u / sum_c - w.r * coeff.au / sum_d \
        - w.s * coeff.bu / sum_v
    de = w.q * 2.0 * coeff.ke * e / sum_c - w.r * coeff.ae / sum_d
    deta = w.q * 2.0 * coeff.k_eta * eta / sum_c - w.r * coeff.a_eta / sum_d
    return np.array([dA, dl, du, de, deta], dtype=float)


def gradient_bound(w: WeightVector, coeff: ObjectiveCoefficients,
                   A_hi: float, l_hi: float) -> np.ndarray:
    """Componentwise Lipschitz bound on J over a box with the given upper
    corner (lower corner at the origin).  Used for grid-resolution slack."""
    sum_h = coeff.kA + coeff.kl
    sum_c = coeff.ku + coeff.ke + coeff.k_eta
    sum_d = coeff.au + coeff.ae + coeff.a_eta
    sum_v = coeff.bA + coeff.bl + coeff.bu

    LA = w.p * 2.0 * coeff.kA * A_hi / (coeff.A_max**2 * sum_h) \
        + w.s * coeff.bA / (coeff.A_max * sum_v)
    Ll = w.p * 2.0 * coeff.kl * l_hi / (coeff.l_max**2 * sum_h) \
        + w.s * coeff.bl / (coeff.l_max * sum_v)
    Lu = w.q * 2.0 * coeff.ku / sum_c + w.r * coeff.au / sum_d \
        + w.s * coeff.bu / sum_v
    Le = w.q * 2.0 * coeff.ke / sum_c + w.r * coeff.ae / sum_d
    Leta = w.q * 2.0 * coeff.k_eta / sum_c + w.r * coeff.a_eta / sum_d
    return np.array([LA, Ll, Lu, Le, Leta])
