"""Nonperturbative trace difference from radial spectra in a spherical box.

The reduced trace difference

    w(Lambda) = sum_n (Lambda + E_n)^-1 - (2 pi hbar)^-3 int d3x d3p (Lambda + H_cl)^-1

is evaluated channel by channel with Dirichlet walls at r = R.  Two box
artifacts must be cancelled before the infinite-volume physics emerges:

* the wall term: each channel's quantum-minus-classical difference tends
  to a nonzero constant at large R, and the channel sum of these constants
  diverges.  It is independent of the potential, so subtracting the same-box
  free spectra removes it exactly.
* the first-order term: in infinite space the coupling-linear part of the
  trace difference vanishes identically (the one-potential trace is the
  same quantum and classically), but the box keeps a finite linear
  artifact from levels near the wall.  The oracle measures the linear
  response of its own assembly and subtracts it.

For the inverse-square family the box spectra are exact Bessel zeros and
the channel resolvent sums collapse to modified-Bessel-function ratios,
so the whole evaluation is closed-form up to the ratio itself.  Screened
families use symmetric tridiagonal grid spectra.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal
from scipy.optimize import brentq
from scipy.special import digamma, ive, jv

from .errors import TailDivergentError, UnsupportedPotentialError
from .perturbation import Source, TraceSamples
from .potentials import Family, PotentialSpec, evaluate
from .quadrature import QuadratureBudget, integrate_adaptive
from .units import UnitSystem


@dataclass(frozen=True)
class OracleConfig:
    box_radius: float = 40.0
    ell_max: int = 60
    levels_per_channel: int = 120
    grid_points: int = 2400
    richardson_levels: tuple = (20.0, 40.0)

    def __post_init__(self):
        if not (self.box_radius > 0.0):
            raise ValueError("box_radius must be positive")
        if self.ell_max < 10:
            raise ValueError("ell_max must be at least 10")
        if self.levels_per_channel < 20:
            raise ValueError("levels_per_channel must be at least 20")
        if self.grid_points < 200:
            raise ValueError("grid_points must be at least 200")
        radii = self.richardson_levels
        if len(radii) < 2 or any(radii[i] >= radii[i + 1] for i in range(len(radii) - 1)):
            raise ValueError("richardson_levels needs >= 2 strictly increasing radii")


@dataclass(frozen=True)
class ChannelSpectrum:
    ell: int
    nu: float
    eigenvalues: tuple
    # hbar^2 pi^2 / (2 m R^2): prefactor of the asymptotic level ladder
    # E_n ~ level_scale * (n + nu/2 - 1/4)^2, used for analytic tails.
    level_scale: float

    def __post_init__(self):
        ev = self.eigenvalues
        if any(not (ev[i] < ev[i + 1]) for i in range(len(ev) - 1)):
            raise ValueError("eigenvalues must be strictly increasing")


def bessel_order(spec: PotentialSpec, units: UnitSystem, ell: int) -> float:
    """Effective Bessel order of the radial channel.

    sqrt(2 m alpha / hbar^2 + (l+1/2)^2) for the inverse-square family,
    l+1/2 otherwise.
    """
    nu_l = ell + 0.5
    if spec.family is Family.INVERSE_SQUARE:
        return math.sqrt(2.0 * units.m * spec.alpha / units.hbar**2 + nu_l * nu_l)
    return nu_l


def jnu_zeros(nu: float, count: int) -> np.ndarray:
    """First ``count`` positive zeros of J_nu, by scan-and-bisect."""
    if nu < 0.0:
        raise ValueError("order must be nonnegative")
    zeros = []
    # start safely below the first zero
    x = max(1.0, nu + 1.85 * nu ** (1.0 / 3.0) - 1.0) if nu > 0 else 1.0
    step = 0.8
    f_prev = jv(nu, x)
    while len(zeros) < count:
        x_next = x + step
        f_next = jv(nu, x_next)
        if f_prev == 0.0:
            zeros.append(x)
            f_prev = f_next
            x = x_next
            continue
        if f_prev * f_next < 0.0:
            zeros.append(brentq(lambda t: jv(nu, t), x, x_next, xtol=1e-14))
        x, f_prev = x_next, f_next
    return np.array(zeros)


def _grid_channel_levels(vfun, ell: int, box_radius: float, n_points: int,
                         units: UnitSystem) -> np.ndarray:
    """All eigenvalues of the Dirichlet tridiagonal radial discretization."""
    hbar, m = units.hbar, units.m
    h = box_radius / n_points
    r = h * np.arange(1, n_points)
    kin = hbar * hbar / (m * h * h)
    diag = kin + hbar * hbar * ell * (ell + 1) / (2.0 * m * r * r) + vfun(r)
    off = np.full(n_points - 2, -0.5 * kin)
    return eigvalsh_tridiagonal(diag, off, lapack_driver="sterf")


def channel_spectrum(spec: PotentialSpec, units: UnitSystem, ell: int,
                     config: OracleConfig | None = None, *,
                     check_discretization: bool = True) -> ChannelSpectrum:
    """Box eigenvalues of one angular channel, up to the per-channel cap.

    Inverse-square channels are exact (Bessel zeros of the effective
    order); screened families are discretized on a uniform radial grid.
    Coulomb is rejected: its tail decays too slowly for a finite box.
    """
    if config is None:
        config = OracleConfig()
    if spec.family is Family.COULOMB:
        raise UnsupportedPotentialError(
            "bare Coulomb tail is not representable in a finite box oracle"
        )
    hbar, m = units.hbar, units.m
    r_box = config.box_radius
    scale = hbar * hbar * math.pi**2 / (2.0 * m * r_box * r_box)
    nu = bessel_order(spec, units, ell)
    n_lv = config.levels_per_channel
    if spec.family is Family.INVERSE_SQUARE:
        z = jnu_zeros(nu, n_lv)
        ev = hbar * hbar * z * z / (2.0 * m * r_box * r_box)
        return ChannelSpectrum(ell, nu, tuple(ev), scale)

    vfun = radial_profile(spec, units)
    ev = _grid_channel_levels(vfun, ell, r_box, config.grid_points, units)[:n_lv]
    if check_discretization:
        ev2 = _grid_channel_levels(vfun, ell, r_box, 2 * config.grid_points, units)[:n_lv]
        shift = np.max(np.abs(ev2 - ev) / np.maximum(np.abs(ev2), 1e-300))
        if shift > 1e-6:
            warnings.warn(
                f"channel (l={ell}) discretization unconverged: doubling the grid "
                f"moves retained eigenvalues by {shift:.2e} relative",
                stacklevel=2,
            )
        ev = ev2
    return ChannelSpectrum(ell, nu, tuple(ev), scale)


def _ladder_tail(n_from: int, delta: float, lam: float, level_scale: float) -> float:
    """sum_{n > n_from} (lam + level_scale (n+delta)^2)^-1, in digamma closed form."""
    y = math.sqrt(lam / level_scale)
    z = complex(n_from + 1 + delta, y)
    return float(digamma(z).imag) / (y * level_scale)


def quantum_channel_trace(chspec: ChannelSpectrum, lam: float) -> float:
    """(2l+1) sum_n (Lambda+E_n)^-1 with the beyond-cap tail added analytically.

    The tail uses the asymptotic ladder E_n ~ level_scale (n + nu/2 - 1/4)^2.
    Emits a precision warning when the tail exceeds 1% of the partial sum.
    """
    if not (lam > 0.0):
        raise ValueError(f"Lambda must be positive, got {lam}")
    ev = np.asarray(chspec.eigenvalues)
    partial = float(np.sum(1.0 / (lam + ev)))
    delta = chspec.nu / 2.0 - 0.25
    tail = _ladder_tail(len(ev), delta, lam, chspec.level_scale)
    if partial > 0.0 and tail > 0.01 * partial:
        warnings.warn(
            f"channel (l={chspec.ell}) tail is {tail/partial:.1%} of the partial "
            "sum; raise levels_per_channel for full precision",
            stacklevel=2,
        )
    return (2 * chspec.ell + 1) * (partial + tail)


def matched_cutoff(chspec: ChannelSpectrum) -> float:
    """Spectral cutoff halfway up the asymptotic ladder above the level cap."""
    n = len(chspec.eigenvalues)
    delta = chspec.nu / 2.0 - 0.25
    return chspec.level_scale * (n + delta + 0.5) ** 2


def classical_channel_trace(spec: PotentialSpec | None, units: UnitSystem, ell: int,
                            lam: float, config: OracleConfig | None = None, *,
                            e_cut: float | None = None,
                            n_cap: int | None = None) -> float:
    """Phase-space value of one channel with the Langer centrifugal term.

    (2l+1)/(pi hbar) * int_0^R dr int_0^{p_max(r)} dp_r
        (Lambda + p_r^2/2m + hbar^2 (l+1/2)^2/(2 m r^2) + U(r))^-1
    cut at the same spectral energy as the quantum ladder, with the
    identical asymptotic tail added back, so the two traces can be
    subtracted without any residual ultraviolet mismatch.
    """
    if config is None:
        config = OracleConfig()
    if not (lam > 0.0):
        raise ValueError(f"Lambda must be positive, got {lam}")
    hbar, m = units.hbar, units.m
    r_box = config.box_radius
    nu_l = ell + 0.5
    scale = hbar * hbar * math.pi**2 / (2.0 * m * r_box * r_box)
    nu = bessel_order(spec, units, ell) if spec is not None else nu_l
    n_lv = n_cap if n_cap is not None else config.levels_per_channel
    delta = nu / 2.0 - 0.25
    if e_cut is None:
        e_cut = scale * (n_lv + delta + 0.5) ** 2

    b2 = hbar * hbar * nu_l * nu_l / (2.0 * m)

    def w_eff(r):
        v = b2 / (r * r)
        if spec is not None:
            v += evaluate(spec, units, r)
        return v

    def integrand(r):
        w = w_eff(r)
        gap = e_cut - w
        if gap <= 0.0:
            return 0.0
        a = lam + w
        return math.sqrt(2.0 * m / a) * math.atan(math.sqrt(gap / a))

    # knot at the classical turning point W(r) = e_cut
    knots = [0.0]
    if w_eff(r_box) < e_cut:
        lo = 1e-12 * r_box
        if w_eff(lo) > e_cut:
            knots.append(brentq(lambda r: w_eff(r) - e_cut, lo, r_box))
    knots.append(r_box)
    budget = QuadratureBudget(abs_tol=1e-13, rel_tol=1e-10, max_evals=200_000)
    total = 0.0
    for a, b in zip(knots[:-1], knots[1:]):
        if b > a:
            total += integrate_adaptive(integrand, (a, b), budget).value
    tail = _ladder_tail(n_lv, delta, lam, scale)
    return (2 * ell + 1) * (total / (math.pi * hbar) + tail)


# ---------------------------------------------------------------------------
# Inverse-square fast path: exact Bessel-ratio channel sums
# ---------------------------------------------------------------------------

def _bessel_ratio(nu: np.ndarray, x: float) -> np.ndarray:
    """I_{nu+1}(x) / I_nu(x), stable for all orders.

    Uses scaled Bessel functions where they do not underflow and a seeded
    backward recurrence (equivalent to the ratio continued fraction)
    elsewhere.
    """
    nu = np.asarray(nu, dtype=float)
    out = np.empty_like(nu)
    den = ive(nu, x)
    num = ive(nu + 1.0, x)
    ok = np.isfinite(den) & (den > 1e-280)
    out[ok] = num[ok] / den[ok]
    bad = ~ok
    if np.any(bad):
        nb = nu[bad]
        steps = 400 + int(6.5 * math.sqrt(x))
        n = nb + steps
        r = x / (n + 1.0 + np.sqrt((n + 1.0) ** 2 + x * x))
        for j in range(steps, 0, -1):
            r = 1.0 / (2.0 * (nb + j) / x + r)
        out[bad] = r
    return out


def exact_channel_sum(nu: float, lam: float, box_radius: float,
                      units: UnitSystem) -> float:
    """Closed form of sum_n (lam + E_n)^-1 over all Bessel-zero box levels.

    From the pole expansion of J_{nu+1}/J_nu:
    sum_n (z_{nu,n}^2 + X^2)^-1 = I_{nu+1}(X) / (2 X I_nu(X)),
    X = sqrt(2 m lam) R / hbar.
    """
    x = math.sqrt(2.0 * units.m * lam) * box_radius / units.hbar
    ratio = float(_bessel_ratio(np.array([nu]), x)[0])
    return x * ratio / (2.0 * lam)


def _case_a_w_at_radius(beta2: float, lam: float, r_box: float,
                        units: UnitSystem) -> tuple[float, float]:
    """Counterterm-subtracted w(Lambda) for U = alpha/r^2 at one box radius.

    Returns (value, residual-tail estimate).  Quantum channel sums use the
    exact Bessel-ratio form with effective orders sqrt((l+1/2)^2 + beta2);
    the classical phase-space difference is closed-form; the coupling-linear
    box artifact is removed through the measured linear response at zero
    coupling.
    """
    hbar, m = units.hbar, units.m
    x = math.sqrt(2.0 * m * lam) * r_box / hbar
    n_ch = int(math.ceil(6.0 * x)) + 200
    nu_l = np.arange(n_ch, dtype=float) + 0.5
    nu_q = np.sqrt(nu_l * nu_l + beta2)
    deg = 2.0 * nu_l

    def q(nu):
        return 0.5 * x * _bessel_ratio(nu, x)

    quantum = float(np.sum(deg * (q(nu_q) - q(nu_l))))

    beta = math.sqrt(beta2)
    j = float(n_ch)

    def classical_free_subtracted(j_top):
        return ((x * x + j_top * j_top + beta2) ** 1.5
                - (x * x + beta2) ** 1.5
                - (x * x + j_top * j_top) ** 1.5 + x**3
                - (j_top * j_top + beta2) ** 1.5 + beta**3 + j_top**3) / 3.0

    classical = classical_free_subtracted(j)

    h = 0.25
    qp = (q(nu_l + h) - q(nu_l - h)) / (2.0 * h)
    c_of = lambda nu: 0.5 * (math.sqrt(x * x + nu * nu) - nu)
    linear_response = float(np.sum(qp)) - (c_of(j) - c_of(0.0))

    w = (quantum - classical - beta2 * linear_response) / lam
    tail_resid = x * x * beta2 * beta2 / (8.0 * (j * j + x * x) ** 2) / lam
    return w, tail_resid


# ---------------------------------------------------------------------------
# Grid path for screened families
# ---------------------------------------------------------------------------

def radial_profile(spec: PotentialSpec, units: UnitSystem):
    """Vectorized U(r) for grid assembly (r strictly positive arrays)."""
    fam = spec.family
    s = spec.sign
    if fam is Family.INVERSE_SQUARE:
        alpha = spec.alpha
        return lambda r: alpha / (r * r)
    ze2 = spec.Z * units.e2
    if fam is Family.COULOMB:
        return lambda r: s * ze2 / r
    if fam is Family.YUKAWA:
        kappa = spec.kappa
        return lambda r: s * ze2 * np.exp(-kappa * r) / r
    r_cut = spec.r_cut
    return lambda r: s * ze2 / np.maximum(r, r_cut)


def _scaled_potential(spec: PotentialSpec, units: UnitSystem, factor: float):
    base = radial_profile(spec, units)
    return lambda r: factor * base(np.asarray(r, dtype=float))


def _classical_difference(spec: PotentialSpec, units: UnitSystem, factor: float,
                          lam: float, r_box: float) -> float:
    """(2 pi hbar)^-3 int d3x d3p [(lam+p^2/2m+f U)^-1 - (lam+p^2/2m)^-1].

    The radial momentum integral is closed-form; the principal value over
    the region where lam + f U < 0 contributes zero, leaving
    (2 m sqrt(2m)/hbar^3) int r^2 [sqrt(lam) - sqrt(max(lam + f U, 0))] dr.
    """
    hbar, m = units.hbar, units.m
    sqrt_lam = math.sqrt(lam)

    def integrand(r):
        u = factor * evaluate(spec, units, r)
        inside = lam + u
        root = math.sqrt(inside) if inside > 0.0 else 0.0
        return r * r * (sqrt_lam - root)

    knots = [0.0]
    probe = 1e-12 * r_box
    if lam + factor * evaluate(spec, units, probe) < 0.0:
        r0 = brentq(lambda r: lam + factor * evaluate(spec, units, r), probe, r_box)
        knots += [r0, min(10.0 * r0, r_box)]
    if spec.family is Family.CUTOFF_COULOMB and spec.r_cut < r_box:
        knots.append(spec.r_cut)
    knots = sorted(set(knots + [r_box]))
    budget = QuadratureBudget(abs_tol=1e-15, rel_tol=1e-11, max_evals=300_000)
    total = 0.0
    for a, b in zip(knots[:-1], knots[1:]):
        if b > a:
            total += integrate_adaptive(integrand, (a, b), budget).value
    return 2.0 * m * math.sqrt(2.0 * m) / hbar**3 * total


_COUPLING_FACTORS = (1.0, -1.0, 0.5, -0.5, 0.0)


def _grid_spectra(spec, units, r_box, n_points, ell_max):
    """Eigenvalues for every channel and coupling factor on one grid."""
    out = {}
    for factor in _COUPLING_FACTORS:
        vfun = _scaled_potential(spec, units, factor)
        out[factor] = [
            _grid_channel_levels(vfun, ell, r_box, n_points, units)
            for ell in range(ell_max + 1)
        ]
    return out


def _fit_channel_tail(terms: np.ndarray, ell_max: int, floor: float) -> tuple[float, float]:
    """Extrapolate the channel series past ell_max with a fitted power law.

    Returns (tail, tail_error).  Raises TailDivergentError when the terms
    do not decay.
    """
    nu = np.arange(ell_max + 1, dtype=float) + 0.5
    n_fit = max(6, (ell_max + 1) // 5)
    t = terms[-n_fit:]
    v = nu[-n_fit:]
    if np.all(np.abs(t) < floor):
        return 0.0, floor
    sign = np.sign(t[np.argmax(np.abs(t))])
    if np.any(t * sign <= 0.0):
        # alternating or noisy tail: bound it by the last magnitudes
        bound = float(np.max(np.abs(t))) * 2.0
        return 0.0, bound
    y = np.log(np.abs(t))
    xd = np.log(v)
    a = np.column_stack([np.ones_like(xd), xd])
    coef, *_ = np.linalg.lstsq(a, y, rcond=None)
    q = -float(coef[1])
    amp = sign * math.exp(float(coef[0]))
    if q <= 1.0:
        if np.abs(t[-1]) < 1e3 * floor:
            return 0.0, float(np.abs(t[-1])) * (ell_max + 1)
        raise TailDivergentError(
            f"channel terms decay like nu^-{q:.2f}; the tail sum does not converge"
        )
    nu_tail = np.arange(ell_max + 1, ell_max + 1 + 200_000, dtype=float) + 0.5
    tail_terms = amp * nu_tail ** (-q)
    tail = float(np.sum(tail_terms))
    return tail, abs(tail) * 0.3


def _grid_w_once(spec, units, lams, r_box, n_points, ell_max, tail_floor,
                 classical):
    """Coupling-even w(lam) for each lam from one set of grid spectra.

    The even projection [W(+U) + W(-U)]/2 cancels the coupling-linear wall
    and grid artifacts to all odd orders; the discarded genuine odd content
    (third order and beyond, the linear term being identically zero in
    infinite space) is estimated from half-coupling runs and returned as an
    error component.  ``classical`` maps coupling factor -> per-lam values
    of the phase-space difference (grid independent, so computed once).
    """
    spectra = _grid_spectra(spec, units, r_box, n_points, ell_max)
    values, tail_errs, odd_resids = [], [], []
    for i, lam in enumerate(lams):
        def channel_terms(factor):
            free = spectra[0.0]
            pot = spectra[factor]
            return np.array([
                (2 * ell + 1) * float(np.sum(1.0 / (lam + pot[ell]) - 1.0 / (lam + free[ell])))
                for ell in range(ell_max + 1)
            ])

        t_p1, t_m1 = channel_terms(1.0), channel_terms(-1.0)
        t_ph, t_mh = channel_terms(0.5), channel_terms(-0.5)
        c_p1, c_m1 = classical[1.0][i], classical[-1.0][i]
        c_ph, c_mh = classical[0.5][i], classical[-0.5][i]
        terms = 0.5 * (t_p1 + t_m1)
        tail, tail_err = _fit_channel_tail(terms, ell_max, tail_floor)
        values.append(float(np.sum(terms)) + tail - 0.5 * (c_p1 + c_m1))
        tail_errs.append(tail_err)
        # cubic-and-beyond odd content: [W(1)-W(-1)]/2 - [W(1/2)-W(-1/2)]
        w_odd_full = 0.5 * (float(np.sum(t_p1 - t_m1)) - (c_p1 - c_m1))
        w_odd_half = float(np.sum(t_ph - t_mh)) - (c_ph - c_mh)
        odd_resids.append(abs(w_odd_full - w_odd_half) * 4.0 / 3.0)
    return np.array(values), np.array(tail_errs), np.array(odd_resids)


# ---------------------------------------------------------------------------
# Assembly
# ---------------------------------------------------------------------------

def _richardson_r2(radii, values):
    """Extrapolate w(R) = w_inf + a/R^2 over increasing radii.

    Returns (w_inf, error estimate from the extrapolation spread).
    """
    radii = np.asarray(radii, dtype=float)
    values = np.asarray(values, dtype=float)
    pair = []
    for i in range(len(radii) - 1):
        r1, r2 = radii[i], radii[i + 1]
        w1, w2 = values[i], values[i + 1]
        pair.append((r2 * r2 * w2 - r1 * r1 * w1) / (r2 * r2 - r1 * r1))
    if len(pair) == 1:
        err = abs(pair[0] - values[-1]) / 3.0
        return pair[0], err
    return pair[-1], abs(pair[-1] - pair[-2])


def oracle_trace(spec: PotentialSpec, units: UnitSystem, lambda_grid,
                 config: OracleConfig | None = None) -> TraceSamples:
    """Nonperturbative reduced trace difference over a Lambda grid.

    Builds the box spectra once per radius and reuses them across the
    grid.  The returned samples carry combined extrapolation, tail and
    discretization error estimates.
    """
    if config is None:
        config = OracleConfig()
    lams = [float(l) for l in lambda_grid]
    if not lams:
        raise ValueError("lambda_grid must not be empty")
    if any(l <= 0.0 for l in lams):
        raise ValueError("Lambda values must be positive")

    fam = spec.family
    if fam is Family.COULOMB:
        raise UnsupportedPotentialError(
            "bare Coulomb tail is not representable in a finite box oracle"
        )

    if fam is Family.INVERSE_SQUARE:
        beta2 = 2.0 * units.m * spec.alpha / units.hbar**2
        vals, errs = [], []
        for lam in lams:
            per_radius = [_case_a_w_at_radius(beta2, lam, r, units)
                          for r in config.richardson_levels]
            wr = [v for v, _ in per_radius]
            resid = max(t for _, t in per_radius)
            w_inf, err = _richardson_r2(config.richardson_levels, wr)
            vals.append(float(w_inf))
            errs.append(float(err + resid))
        return TraceSamples(tuple(lams), tuple(vals), tuple(errs),
                            Source.ORACLE, spec, units)

    # screened families: grid spectra, coarse/fine step Richardson,
    # radius spread as the box error component
    r_ref = config.richardson_levels[0]
    tail_floor = 1e-16
    vals_by_radius = []
    errs_by_radius = []
    for r_box in config.richardson_levels:
        n_fine = int(round(config.grid_points * r_box / r_ref))
        n_coarse = max(n_fine // 2, 200)
        classical = {
            f: np.array([_classical_difference(spec, units, f, lam, r_box)
                         for lam in lams])
            for f in _COUPLING_FACTORS if f != 0.0
        }
        w_fine, tail_err, odd_resid = _grid_w_once(spec, units, lams, r_box, n_fine,
                                                   config.ell_max, tail_floor, classical)
        w_coarse, _, _ = _grid_w_once(spec, units, lams, r_box, n_coarse,
                                      config.ell_max, tail_floor, classical)
        w_h = (4.0 * w_fine - w_coarse) / 3.0
        h_err = np.abs(w_fine - w_coarse) / 3.0
        vals_by_radius.append(w_h)
        errs_by_radius.append(tail_err + h_err + odd_resid)
    vals_by_radius = np.array(vals_by_radius)
    # screened potentials die long before the wall: take the largest box,
    # use the spread across radii as the box error
    w_best = vals_by_radius[-1]
    box_err = np.max(np.abs(np.diff(vals_by_radius, axis=0)), axis=0) if len(
        vals_by_radius) > 1 else np.zeros_like(w_best)
    err = errs_by_radius[-1] + box_err
    return TraceSamples(tuple(lams), tuple(float(v) for v in w_best),
                        tuple(float(e) for e in err), Source.ORACLE, spec, units)


def oracle_w(spec: PotentialSpec, units: UnitSystem, lam: float,
             config: OracleConfig | None = None) -> tuple[float, float]:
    """Reduced trace difference w(Lambda) and its error estimate."""
    samples = oracle_trace(spec, units, [lam], config)
    return samples.values[0], samples.errors[0]
