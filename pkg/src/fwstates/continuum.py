"""Continuous-spectrum limit: the generalized nu-function and friends.

Sums over the Fock index k become integrals over E >= 0:

    rho_tilde(E)  continuous interpolation of rho(k),
    nu(zeta) = integral_0^inf  zeta^E / rho_tilde(E)  dE,

and the continuous states have density z^E / sqrt(rho_tilde(E) nu(|z|^2)).
Since margin > 0 the integrand decays superexponentially (the 1/Gamma(E+1)
factor wins), so the infinite range truncates at the point where the
log-integrand has dropped e_max_drop below its peak.

Two independent quadrature schemes are provided on purpose: "gk"
(adaptive Gauss-Kronrod via QUADPACK) and "ts" (an in-package tanh-sinh
rule).  Their agreement is the correctness check for every nu value.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate as _si

from .bicomplex import Hyperbolic
from .coherent import BCCoherentModel, CoherentModel
from .errors import QuadratureFailure, ValidationError
from .gammafn import log_gamma_vec


@dataclass(frozen=True)
class QuadConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_subdivisions: int = 200
    e_max_drop: float = 40.0

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValidationError("quadrature tolerances must be > 0")


DEFAULT_QUAD = QuadConfig()

SCHEMES = ("gk", "ts")


def log_rho_tilde(model: CoherentModel, E: float) -> float:
    if E < 0:
        raise ValidationError("E must be >= 0")
    s = math.lgamma(E + 1.0)
    for a, A in model.params.upper:
        s += math.lgamma(a.real) - math.lgamma(a.real + E * A)
    for b, B in model.params.lower:
        s += math.lgamma(b.real + E * B) - math.lgamma(b.real)
    return s


def _log_rho_tilde_vec(model: CoherentModel, Es: np.ndarray) -> np.ndarray:
    s = log_gamma_vec(Es + 1.0).real
    for a, A in model.params.upper:
        s += math.lgamma(a.real) - log_gamma_vec(a.real + Es * A).real
    for b, B in model.params.lower:
        s += log_gamma_vec(b.real + Es * B).real - math.lgamma(b.real)
    return s


def rho_tilde(model: CoherentModel, E: float) -> float:
    """Continuous interpolation of rho; equals rho(k) at integer E."""
    lr = log_rho_tilde(model, E)
    if lr > math.log(np.finfo(float).max):
        raise OverflowError(f"rho_tilde({E}) overflows float64; use log_rho_tilde")
    return math.exp(lr)


def _e_max(model: CoherentModel, log_zeta: float, drop: float) -> float:
    """Upper truncation: log-integrand fallen `drop` below its peak."""
    hi = 8.0
    for _ in range(80):
        grid = np.linspace(0.0, hi, 257)
        logf = grid * log_zeta - _log_rho_tilde_vec(model, grid)
        peak = logf.max()
        if logf[-1] <= peak - drop:
            return hi
        hi *= 1.5
    raise QuadratureFailure("could not locate a decaying tail for the nu integrand")


def _tanh_sinh(f, a: float, b: float, rel_tol: float, abs_tol: float, max_level: int = 12):
    """Tanh-sinh rule on [a, b]; f must accept numpy arrays.

    Returns (value, error_estimate).  The double-exponential substitution
    x = mid + half*tanh((pi/2) sinh t) concentrates nodes at both ends;
    halving the step h reuses nothing but converges roughly quadratically
    in digits, so a handful of levels suffices for smooth integrands.
    """
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    t_cap = 4.0

    def level_nodes(h, only_odd):
        j = np.arange(1, int(t_cap / h) + 1)
        if only_odd:
            j = j[j % 2 == 1]
        t = j * h
        u = 0.5 * math.pi * np.sinh(t)
        x_off = half * np.tanh(u)
        w = half * 0.5 * math.pi * np.cosh(t) / np.cosh(u) ** 2
        return x_off, w

    h = 1.0
    x_off, w = level_nodes(h, only_odd=False)
    w0 = half * 0.5 * math.pi
    total = w0 * f(np.array([mid]))[0] + np.sum(
        w * (f(mid + x_off) + f(mid - x_off))
    )
    value = h * total
    err = math.inf
    for _ in range(max_level):
        h *= 0.5
        x_off, w = level_nodes(h, only_odd=True)
        # total excludes the step h, so the halved h rescales old nodes for us
        total = total + np.sum(w * (f(mid + x_off) + f(mid - x_off)))
        new_value = h * total
        err = abs(new_value - value)
        value = new_value
        if err <= max(abs_tol, rel_tol * abs(value)):
            return value, err
    raise QuadratureFailure(
        f"tanh-sinh did not reach tolerance (last step error {err:.3g})"
    )


def _integrate(f, a, b, cfg: QuadConfig, scheme: str):
    if scheme == "gk":
        out = _si.quad(
            lambda x: f(np.array([x]))[0],
            a,
            b,
            epsabs=cfg.abs_tol,
            epsrel=cfg.rel_tol,
            limit=cfg.max_subdivisions,
            full_output=1,
        )
        value, err = out[0], out[1]
        if len(out) > 3:
            raise QuadratureFailure(f"Gauss-Kronrod failed: {out[3]}")
        return value, err
    if scheme == "ts":
        return _tanh_sinh(f, a, b, cfg.rel_tol, cfg.abs_tol)
    raise ValidationError(f"unknown quadrature scheme {scheme!r}; use one of {SCHEMES}")


def nu_with_error(
    model: CoherentModel,
    zeta: float,
    cfg: QuadConfig = DEFAULT_QUAD,
    scheme: str = "gk",
) -> tuple[float, float]:
    """nu value together with the scheme's error estimate."""
    zeta = float(zeta)
    if zeta < 0:
        raise ValidationError("zeta must be >= 0")
    if zeta == 0.0:
        return 0.0, 0.0
    log_zeta = math.log(zeta)
    e_hi = _e_max(model, log_zeta, cfg.e_max_drop)

    def integrand(Es):
        with np.errstate(under="ignore"):
            return np.exp(Es * log_zeta - _log_rho_tilde_vec(model, Es))

    return _integrate(integrand, 0.0, e_hi, cfg, scheme)


def nu(
    model: CoherentModel,
    zeta: float,
    cfg: QuadConfig = DEFAULT_QUAD,
    scheme: str = "gk",
) -> float:
    """nu(zeta) = integral_0^inf zeta^E / rho_tilde(E) dE."""
    return nu_with_error(model, zeta, cfg, scheme)[0]


def nu_bicomplex(
    model: BCCoherentModel,
    W: Hyperbolic,
    cfg: QuadConfig = DEFAULT_QUAD,
    scheme: str = "gk",
) -> Hyperbolic:
    """Componentwise nu on a hyperbolic argument in D+."""
    if not isinstance(W, Hyperbolic):
        W = Hyperbolic.from_scalar(W)
    if not W.in_dplus():
        raise ValidationError(f"nu_bicomplex argument must lie in D+, got {W!r}")
    values = []
    for p, wp in zip((1, 2), W.decompose()):
        try:
            values.append(nu(model.component_model(p), wp, cfg, scheme))
        except QuadratureFailure as exc:
            raise QuadratureFailure(f"component {p}: {exc}") from exc
    return Hyperbolic(values[0], values[1])


def overlap_tilde(
    model: CoherentModel,
    z: complex,
    zp: complex,
    cfg: QuadConfig = DEFAULT_QUAD,
    scheme: str = "gk",
) -> complex:
    """Continuous-state overlap nu(conj(z) z') / sqrt(nu(|z|^2) nu(|z'|^2)).

    The complex-argument nu uses the principal branch zeta^E =
    exp(E Log zeta) in the integrand.
    """
    z = complex(z)
    zp = complex(zp)
    if z == 0 or zp == 0:
        raise ValidationError("overlap_tilde needs |z|, |z'| > 0")
    zeta_c = z.conjugate() * zp
    log_zeta = cmath.log(zeta_c)
    e_hi = _e_max(model, log_zeta.real, cfg.e_max_drop)

    def integrand(Es):
        with np.errstate(under="ignore"):
            return np.exp(Es * log_zeta - _log_rho_tilde_vec(model, Es))

    if scheme == "gk":
        value, err = _si.quad(
            lambda x: integrand(np.array([x]))[0],
            0.0,
            e_hi,
            epsabs=cfg.abs_tol,
            epsrel=cfg.rel_tol,
            limit=cfg.max_subdivisions,
            complex_func=True,
        )
        num = value
    elif scheme == "ts":
        num, _ = _tanh_sinh(integrand, 0.0, e_hi, cfg.rel_tol, cfg.abs_tol)
    else:
        raise ValidationError(f"unknown quadrature scheme {scheme!r}; use one of {SCHEMES}")

    den = math.sqrt(
        nu(model, abs(z) ** 2, cfg, scheme) * nu(model, abs(zp) ** 2, cfg, scheme)
    )
    return num / den


def state_density(
    model: CoherentModel,
    z: complex,
    E: float,
    cfg: QuadConfig = DEFAULT_QUAD,
) -> complex:
    """Continuous-state coefficient density z^E / sqrt(rho_tilde(E) nu(|z|^2))."""
    z = complex(z)
    if z == 0:
        raise ValidationError("state_density needs z != 0")
    if E < 0:
        raise ValidationError("E must be >= 0")
    log_z = cmath.log(z)
    log_nu = math.log(nu(model, abs(z) ** 2, cfg))
    return cmath.exp(E * log_z - 0.5 * log_rho_tilde(model, E) - 0.5 * log_nu)
