"""Limit operators turning fitted trace differences into anomalies.

With the reduced trace difference fitted as w(Lambda) ~ c Lambda^-gamma,
the two regularized limits are evaluated analytically on the fit:

    number anomaly  a_n = -2 lim Lambda^2 dw/dLambda = 2 c gamma lim Lambda^(1-gamma)
    energy anomaly  a_e =  2 lim Lambda^2 (1 + Lambda d/dLambda) w
                        = 2 c (1-gamma) lim Lambda^(2-gamma)

The overall factor 2 is the spin degeneracy, which the trace difference
itself deliberately excludes.  Each limit either converges (exponent < 0),
stays finite (exponent 0), or diverges (exponent > 0 with a nonzero
coefficient); divergent channels report a growth exponent instead of a
value.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import NotPowerLawError
from .perturbation import Order, TraceSamples, sample_w
from .potentials import CaseLabel, PotentialSpec, classify, coulomb_tail_coefficient
from .quadrature import PowerLawFit, QuadratureBudget, fit_power_law
from .units import UnitSystem

#: treat |value| below this (reduced, atomic-like units) as numerically zero
ZERO_TOLERANCE = 1e-6
#: snap window for identifying the fitted exponent with a limit-critical integer
EXPONENT_TOLERANCE = 0.1
#: residual ceiling above which the power-law description is rejected
RESIDUAL_MAX = 0.05


class Status(enum.Enum):
    FINITE = "finite"
    ZERO = "zero"
    DIVERGENT = "divergent"


@dataclass(frozen=True)
class AnomalyResult:
    """Reduced anomalies with finite/zero/divergent classification.

    ``a_n`` is dimensionless, ``a_e`` carries energy units; both are the
    anomaly divided by (2 pi hbar)^3.  A divergent channel reports no
    finite value: the field is None and the growth exponent and amplitude
    describe the leading Lambda power instead.
    """

    a_n: float | None
    a_e: float | None
    status_n: Status
    status_e: Status
    a_n_err: float
    a_e_err: float
    case_label: CaseLabel
    fit: PowerLawFit | None
    growth_exponent_n: float | None = None
    growth_exponent_e: float | None = None
    growth_amplitude_n: float | None = None
    growth_amplitude_e: float | None = None

    def __post_init__(self):
        if self.status_n is Status.DIVERGENT and self.a_n is not None:
            raise ValueError("divergent number channel must not report a value")
        if self.status_e is Status.DIVERGENT and self.a_e is not None:
            raise ValueError("divergent energy channel must not report a value")
        if self.status_n is Status.ZERO and not abs(self.a_n) < max(self.a_n_err, ZERO_TOLERANCE):
            raise ValueError("zero-status number value exceeds its uncertainty")
        if self.status_e is Status.ZERO and not abs(self.a_e) < max(self.a_e_err, ZERO_TOLERANCE):
            raise ValueError("zero-status energy value exceeds its uncertainty")


def _status_for(value: float, err: float) -> Status:
    if abs(value) < max(err, ZERO_TOLERANCE):
        return Status.ZERO
    return Status.FINITE


def zero_result(case_label: CaseLabel, fit: PowerLawFit | None = None) -> AnomalyResult:
    return AnomalyResult(0.0, 0.0, Status.ZERO, Status.ZERO, 0.0, 0.0, case_label, fit)


def extract_anomalies(samples: TraceSamples, fit: PowerLawFit, units: UnitSystem, *,
                      residual_max: float = RESIDUAL_MAX,
                      exponent_tol: float = EXPONENT_TOLERANCE) -> AnomalyResult:
    """Apply the two limit operators to a fitted power law.

    Requires the fit to actually describe the samples (residual below
    ``residual_max``); otherwise the large-Lambda limits are meaningless
    and NotPowerLawError is raised.
    """
    if fit.residual > residual_max:
        raise NotPowerLawError(
            f"fit residual {fit.residual:.3g} exceeds {residual_max:.3g}; "
            "samples are not a single power law"
        )
    case_label = classify(samples.spec).case_label
    c = fit.amplitude
    gamma = fit.gamma
    lam_mid = math.sqrt(fit.lambda_range[0] * fit.lambda_range[1])
    log_mid = abs(math.log(lam_mid))
    sigma_c = fit.amplitude_err
    sigma_g = fit.gamma_err

    # number channel: 2 c gamma Lambda^(1-gamma)
    a_n = a_n_err = None
    status_n = growth_n = amp_n = None
    if abs(gamma - 1.0) <= exponent_tol:
        val = 2.0 * c
        err = 2.0 * math.hypot(sigma_c, abs(c) * sigma_g * log_mid)
        status_n = _status_for(val, err)
        a_n, a_n_err = val, err
    elif gamma > 1.0:
        a_n, a_n_err, status_n = 0.0, 0.0, Status.ZERO
    else:
        status_n = Status.DIVERGENT
        growth_n = 1.0 - gamma
        amp_n = 2.0 * c * gamma

    # energy channel: 2 c (1-gamma) Lambda^(2-gamma)
    a_e = a_e_err = None
    status_e = growth_e = amp_e = None
    if abs(gamma - 2.0) <= exponent_tol:
        val = -2.0 * c
        err = 2.0 * math.hypot(sigma_c, abs(c) * sigma_g * log_mid)
        status_e = _status_for(val, err)
        a_e, a_e_err = val, err
    elif gamma > 2.0:
        a_e, a_e_err, status_e = 0.0, 0.0, Status.ZERO
    elif abs(gamma - 1.0) <= exponent_tol:
        # the (1-gamma) coefficient vanishes identically on the snapped fit
        a_e, a_e_err, status_e = 0.0, 0.0, Status.ZERO
    else:
        status_e = Status.DIVERGENT
        growth_e = 2.0 - gamma
        amp_e = 2.0 * c * (1.0 - gamma)

    return AnomalyResult(
        a_n=a_n, a_e=a_e, status_n=status_n, status_e=status_e,
        a_n_err=a_n_err if a_n_err is not None else 0.0,
        a_e_err=a_e_err if a_e_err is not None else 0.0,
        case_label=case_label, fit=fit,
        growth_exponent_n=growth_n, growth_exponent_e=growth_e,
        growth_amplitude_n=amp_n, growth_amplitude_e=amp_e,
    )


def delta_an_case_a_closed_form(alpha: float, units: UnitSystem) -> float:
    """Published closed-form reduced number anomaly for the x^-2 case:
    -sqrt(2 m alpha) / (36 hbar)."""
    if alpha < 0.0:
        raise ValueError("alpha must be nonnegative")
    return -math.sqrt(2.0 * units.m * alpha) / (36.0 * units.hbar)


def delta_ae_case_b_closed_form(Z: float, units: UnitSystem) -> float:
    """Closed-form reduced energy anomaly for the Coulomb-singular case:
    Z^2 e^2 / (4 a0)."""
    if Z < 0.0:
        raise ValueError("Z must be nonnegative")
    return Z * Z * units.e2 / (4.0 * units.a0)


def classify_divergence_first_order(spec: PotentialSpec, units: UnitSystem,
                                    lambda_grid, budget: QuadratureBudget | None = None
                                    ) -> AnomalyResult:
    """First-order anomaly classification.

    Screened tails have an identically vanishing first order, so both
    channels are Zero.  An unscreened Coulomb tail decays as
    Lambda^(-3/2): the number channel limit vanishes while the energy
    channel grows like Lambda^(1/2) and is reported Divergent with its
    fitted growth exponent.
    """
    if coulomb_tail_coefficient(spec, units) == 0.0:
        return zero_result(classify(spec).case_label)
    samples = sample_w(spec, units, lambda_grid, Order.FIRST, budget)
    fit = fit_power_law(samples)
    return extract_anomalies(samples, fit, units)
