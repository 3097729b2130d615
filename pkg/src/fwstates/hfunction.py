"""Mellin-Barnes evaluation of the measure kernels.

The radial weight behind the resolution of unity is W(x) = psi(x) H(x),
where psi is the model's Fox-Wright function and H is the inverse Mellin
transform

    H(x) = (1/2pi i) integral  Gamma(s) prod Gamma(beta + sB)
                               / prod Gamma(alpha + sA)  x^{-s} ds

over a vertical line right of every numerator pole.  The parameter block
comes from the model by a fixed shift: upper (a-A, A), lower (0,1) then
(b-B, B).  That shift makes the Mellin transform of H at s = k+1 equal
Gamma(k+1) prod Gamma(b+kB) / prod Gamma(a+kA), which is what turns the
moment integral into rho(k).

The contour integrand decays like exp(-(pi/2)(1+sum B-sum A)|t|), so a
trapezoid rule on a truncated line converges spectrally; nodes are cached
per parameter block and refined by doubling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy import integrate as _si

from .bicomplex import Hyperbolic
from .coherent import BCCoherentModel, CoherentModel, rho
from .continuum import DEFAULT_QUAD, QuadConfig
from .errors import (
    ContourFailure,
    DomainError,
    QuadratureFailure,
    ValidationError,
)
from .foxwright import evaluate as fw_evaluate
from .gammafn import gamma, is_gamma_pole, log_gamma_vec

_LOG_DECAY_TARGET = math.log(1e-18)
_REL_STOP = 1e-10
_EPS = float(np.finfo(float).eps)


def _real_pairs(entries, what: str) -> tuple[tuple[float, float], ...]:
    out = []
    for entry in entries:
        g, w = entry
        g = float(g)
        w = float(w)
        if not (math.isfinite(g) and math.isfinite(w)):
            raise ValidationError(f"{what} entry {entry!r} is not finite")
        if w <= 0:
            raise ValidationError(f"{what} weight must be > 0, got {w}")
        out.append((g, w))
    return tuple(out)


@dataclass(frozen=True)
class HWeightParams:
    """Parameter block of the H kernel: gamma factors on a vertical line."""

    upper: tuple[tuple[float, float], ...]
    lower: tuple[tuple[float, float], ...]

    def __init__(self, upper=(), lower=()):
        object.__setattr__(self, "upper", _real_pairs(upper, "upper"))
        object.__setattr__(self, "lower", _real_pairs(lower, "lower"))
        decay = sum(B for _, B in self.lower) - sum(A for _, A in self.upper)
        if decay <= 0:
            raise ValidationError(
                "kernel does not decay on vertical lines "
                f"(sum of lower weights - sum of upper weights = {decay:g} <= 0)"
            )

    @classmethod
    def from_model(cls, model: CoherentModel) -> "HWeightParams":
        p = model.params
        upper = [(a.real - A, A) for a, A in p.upper]
        lower = [(0.0, 1.0)] + [(b.real - B, B) for b, B in p.lower]
        return cls(upper=upper, lower=lower)

    def rightmost_pole(self) -> float:
        """Largest real pole of the numerator gamma product."""
        return max(-beta / B for beta, B in self.lower)

    def log_mellin(self, s: complex) -> complex:
        return complex(_log_mellin_vec(self, np.array([s], dtype=complex))[0])

    def mellin(self, s: complex) -> complex:
        """The Mellin transform of the kernel at s."""
        return complex(np.exp(self.log_mellin(s)))


def _log_mellin_vec(hp: HWeightParams, s: np.ndarray) -> np.ndarray:
    out = np.zeros(s.shape, dtype=complex)
    for beta, B in hp.lower:
        out += log_gamma_vec(beta + s * B)
    for alpha, A in hp.upper:
        out -= log_gamma_vec(alpha + s * A)
    return out


@dataclass(frozen=True)
class ContourConfig:
    c_offset: float = 0.5
    t_max: float | None = None
    n_nodes: int = 64
    max_nodes: int = 1 << 20

    def __post_init__(self):
        if self.c_offset <= 0:
            raise ValidationError("c_offset must be > 0 to clear the pole at the abscissa")
        if self.t_max is not None and self.t_max <= 0:
            raise ValidationError("t_max must be > 0")
        if self.n_nodes < 8 or self.max_nodes < self.n_nodes:
            raise ValidationError("need 8 <= n_nodes <= max_nodes")


DEFAULT_CONTOUR = ContourConfig()


_ABSCISSA_STEP = 4.0  # quantization of the saddle-following abscissa


def _base_abscissa(hp: HWeightParams, cc: ContourConfig) -> float:
    return max(0.0, hp.rightmost_pole()) + cc.c_offset


def _abscissa_level(hp: HWeightParams, cc: ContourConfig, x: float) -> int:
    """Quantized shift of the contour toward the saddle point.

    For large x the integrand M(s) x^{-s} peaks at a saddle sigma with
    roughly mu*log(sigma) + log(kappa) = log(x), where mu and kappa come
    from the weight sums.  The kernel is analytic right of its poles, so
    the line may sit anywhere; at the fixed base abscissa the bracket
    integral for large x is pure cancellation (the true value is
    exponentially small against the node sum), while near the saddle the
    integrand is single-signed and full relative accuracy survives.  The
    shift is quantized in steps of _ABSCISSA_STEP so nearby x share one
    cached contour.
    """
    mu = sum(B for _, B in hp.lower) - sum(A for _, A in hp.upper)
    log_kappa = sum(B * math.log(B) for _, B in hp.lower) - sum(
        A * math.log(A) for _, A in hp.upper
    )
    sigma = math.exp((math.log(x) - log_kappa) / mu)
    base = _base_abscissa(hp, cc)
    if sigma <= base:
        return 0
    return math.ceil((sigma - base) / _ABSCISSA_STEP)


class _ContourState:
    """One vertical line: abscissa, truncation height, cached node values.

    Node values are stored scaled by the on-axis peak M(c), so the arrays
    stay inside float range even when the shifted abscissa makes M(c)
    astronomically large; the log of the scale is reapplied at the end.
    """

    def __init__(self, hp: HWeightParams, cc: ContourConfig, level: int):
        self.hp = hp
        self.c = _base_abscissa(hp, cc) + _ABSCISSA_STEP * level
        self.log_m0 = hp.log_mellin(complex(self.c, 0.0)).real
        if cc.t_max is not None:
            self.T = cc.t_max
        else:
            T = 8.0
            for _ in range(120):
                top = _log_mellin_vec(hp, np.array([complex(self.c, T)]))[0].real
                if top <= self.log_m0 + _LOG_DECAY_TARGET:
                    break
                T *= 1.5
            else:
                raise ContourFailure("could not truncate the contour; kernel decays too slowly")
            self.T = T
        self._vals: dict[int, np.ndarray] = {}

    def _scaled(self, t: np.ndarray) -> np.ndarray:
        with np.errstate(under="ignore"):
            return np.exp(_log_mellin_vec(self.hp, self.c + 1j * t) - self.log_m0)

    def values(self, n: int) -> np.ndarray:
        """Scaled kernel M(c+it)/M(c) on the n+1 point grid over [0, T]."""
        if n in self._vals:
            return self._vals[n]
        if n // 2 in self._vals:
            coarse = self._vals[n // 2]
            t_odd = (2 * np.arange(n // 2) + 1) * (self.T / n)
            vals = np.empty(n + 1, dtype=complex)
            vals[0::2] = coarse
            vals[1::2] = self._scaled(t_odd)
        else:
            vals = self._scaled(np.linspace(0.0, self.T, n + 1))
        self._vals[n] = vals
        return vals


@lru_cache(maxsize=256)
def _contour_state(hp: HWeightParams, cc: ContourConfig, level: int) -> _ContourState:
    return _ContourState(hp, cc, level)


def eval_h(hp: HWeightParams, x: float, cc: ContourConfig = DEFAULT_CONTOUR) -> float:
    """Kernel value H(x) for x > 0 by trapezoid rule on a vertical line.

    The parameters are real, so M(c-it) = conj(M(c+it)) and the two
    half-lines combine into twice the real part of the upper one.  Node
    doubling stops when successive values agree to 1e-10 relative; a
    secondary stop fires if the difference reaches the roundoff floor of
    the node sum, where further refinement cannot change the float64
    answer.
    """
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"eval_h requires x > 0, got {x}")
    st = _contour_state(hp, cc, _abscissa_level(hp, cc, x))
    log_x = math.log(x)
    log_scale = st.log_m0 - st.c * log_x - math.log(math.pi)
    n = cc.n_nodes
    prev = None
    while n <= cc.max_nodes:
        vals = st.values(n)
        t = np.linspace(0.0, st.T, n + 1)
        h = st.T / n
        f = vals * np.exp(-1j * (t * log_x))
        bracket = float(np.trapezoid(f, dx=h).real)
        if prev is not None:
            floor = 16.0 * _EPS * float(np.trapezoid(np.abs(vals), dx=h))
            if abs(bracket - prev) <= max(_REL_STOP * abs(bracket), floor):
                if bracket == 0.0:
                    return 0.0
                with np.errstate(under="ignore"):
                    return float(bracket * np.exp(log_scale))
        prev = bracket
        n *= 2
    raise ContourFailure(f"node doubling stalled below tolerance at n={n // 2} for x={x:g}")


def _h_at_zero(model: CoherentModel) -> float:
    """Limit of H at the origin: residue of the kernel at s = 0.

    The structural Gamma(s) factor contributes residue 1; the limit is
    finite only when every remaining lower gamma is regular at 0, i.e.
    every b > B.
    """
    log_num = 0.0
    for b, B in model.params.lower:
        beta = b.real - B
        if beta <= 0.0:
            raise DomainError(
                "weight has no finite limit at x = 0 (needs b > B in every lower pair)"
            )
        log_num += math.lgamma(beta)
    den = 1.0
    for a, A in model.params.upper:
        alpha = complex(a.real - A, 0.0)
        if is_gamma_pole(alpha):
            return 0.0
        den *= gamma(alpha).real
    return math.exp(log_num) / den


def weight(model: CoherentModel, x: float, cc: ContourConfig = DEFAULT_CONTOUR) -> float:
    """Radial weight W(x) = psi(x) H(x) of the resolution-of-unity measure."""
    x = float(x)
    if not math.isfinite(x) or x < 0.0:
        raise DomainError(f"weight requires x >= 0, got {x}")
    psi = fw_evaluate(model.params, x).value.real
    if x == 0.0:
        return psi * _h_at_zero(model)
    hp = HWeightParams.from_model(model)
    return psi * eval_h(hp, x, cc)


def measure_density(model: CoherentModel, x: float, cc: ContourConfig = DEFAULT_CONTOUR) -> float:
    """Density of the measure over x = |z|^2, angular factor integrated out."""
    return weight(model, x, cc)


def measure_density_b(
    model: BCCoherentModel, X: Hyperbolic, cc: ContourConfig = DEFAULT_CONTOUR
) -> Hyperbolic:
    """Componentwise measure density on a hyperbolic radius pair in D+."""
    if not isinstance(X, Hyperbolic):
        X = Hyperbolic.from_scalar(X)
    if not X.in_dplus():
        raise ValidationError(f"measure density needs a radius pair in D+, got {X!r}")
    values = []
    for p, xp in zip((1, 2), X.decompose()):
        try:
            values.append(measure_density(model.component_model(p), xp, cc))
        except (DomainError, ContourFailure) as exc:
            raise type(exc)(f"component {p}: {exc}") from exc
    return Hyperbolic(values[0], values[1])


class MomentResult(NamedTuple):
    lhs: float
    rhs: float
    rel_err: float


def _density_scan(density, k: int) -> float:
    """Truncation point: x^k * density fallen below 1e-16 of its peak."""
    x = 0.25
    peak = 0.0
    for _ in range(64):
        g = (x ** k) * density(x)
        peak = max(peak, abs(g))
        if peak > 0.0 and abs(g) < 1e-16 * peak:
            return x
        x *= 2.0
    raise QuadratureFailure("moment integrand does not decay below 1e-16 of its peak")


def moment_check(
    model: CoherentModel,
    k: int,
    cfg: QuadConfig = DEFAULT_QUAD,
    cc: ContourConfig = DEFAULT_CONTOUR,
) -> MomentResult:
    """Check the moment identity integral x^k W(x)/N(x) dx = rho(k).

    The Fox-Wright factor of W cancels against the normalization N, so
    the integrand reduces to the gamma prefactor times the bare kernel H.
    """
    k = int(k)
    if not 0 <= k <= 8:
        raise ValidationError("moment order k must lie in 0..8")
    p = model.params
    log_pref = sum(math.lgamma(a.real) for a, _ in p.upper) - sum(
        math.lgamma(b.real) for b, _ in p.lower
    )
    pref = math.exp(log_pref)
    hp = HWeightParams.from_model(model)

    def density(x: float) -> float:
        return pref * eval_h(hp, x, cc)

    x_max = _density_scan(density, k)
    out = _si.quad(
        lambda x: (x ** k) * density(x),
        0.0,
        x_max,
        epsabs=cfg.abs_tol,
        epsrel=cfg.rel_tol,
        limit=cfg.max_subdivisions,
        full_output=1,
    )
    if len(out) > 3:
        raise QuadratureFailure(f"outer moment quadrature failed: {out[3]}")
    lhs = out[0]
    rhs = rho(model, k)
    return MomentResult(lhs, rhs, abs(lhs - rhs) / abs(rhs))
