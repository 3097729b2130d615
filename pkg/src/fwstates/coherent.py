"""Coherent states built on Fox-Wright normalization, complex and bicomplex.

The parameter function

    rho(k) = Gamma(k+1) * [prod Gamma(a) / prod Gamma(b)]
                        * [prod Gamma(b + k B) / prod Gamma(a + k A)]

generalizes k! (the p = q = 0 case).  States are

    |z> = N(|z|^2)^(-1/2) sum_k z^k / sqrt(rho(k)) |k>,

with N(zeta) = sum_k zeta^k / rho(k), a Fox-Wright series up to a gamma
prefactor.  The ladder strength f(s) = sqrt(rho(s+1)/rho(s)) is computed
from its own gamma-ratio formula, not from rho differences, so the
recurrence rho(k+1) = rho(k) f(k)^2 and the eigenstate property are
genuine cross-checks rather than tautologies.

Parameters are restricted to real a_l, b_r > 0 with positive margin;
that keeps rho positive and N entire.  Bicomplex models delegate per
idempotent component.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .bicomplex import Bicomplex, Hyperbolic
from .errors import TruncationError, ValidationError
from .foxwright import CLASSIFY_TOL, FWParams, margin
from .foxwright import evaluate as fw_evaluate
from .foxwright_bc import BCFWParams
from .gammafn import log_gamma_ratio, log_gamma_vec

K_MAX = 1 << 16
_LOG_FLOAT_MAX = math.log(np.finfo(float).max)


def _real_positive_pairs(params: FWParams, side: str) -> tuple[tuple[float, float], ...]:
    pairs = params.upper if side == "upper" else params.lower
    out = []
    for v, w in pairs:
        if v.imag != 0.0 or v.real <= 0.0:
            raise ValidationError(
                f"coherent models need real {side} parameters > 0, got {v}"
            )
        out.append((v.real, w))
    return tuple(out)


@dataclass(frozen=True)
class CoherentModel:
    params: FWParams
    K: int = 32

    def __post_init__(self):
        _real_positive_pairs(self.params, "upper")
        _real_positive_pairs(self.params, "lower")
        if margin(self.params) <= CLASSIFY_TOL:
            raise ValidationError(
                f"coherent model needs margin > 0, got {margin(self.params)}"
            )
        if self.K < 1:
            raise ValidationError("truncation K must be >= 1")


@dataclass(frozen=True)
class StateVector:
    coeffs: tuple[complex, ...]
    norm_prefactor: float  # 1/sqrt(N(|z|^2))
    z: complex
    tail_mass: float

    def to_json(self) -> dict:
        return {
            "z": [self.z.real, self.z.imag],
            "coeffs": [[c.real, c.imag] for c in self.coeffs],
            "tail": self.tail_mass,
        }


@dataclass(frozen=True)
class BCStateVector:
    components: tuple[StateVector, StateVector]
    z: Bicomplex


def _log_prefactor(model: CoherentModel) -> float:
    """log[prod Gamma(b) / prod Gamma(a)], the normalization prefactor."""
    s = 0.0
    for b, _ in model.params.lower:
        s += math.lgamma(b.real)
    for a, _ in model.params.upper:
        s -= math.lgamma(a.real)
    return s


def log_rho(model: CoherentModel, k: int) -> float:
    if k < 0:
        raise ValidationError("k must be >= 0")
    s = math.lgamma(k + 1.0)
    for a, A in model.params.upper:
        s += math.lgamma(a.real) - math.lgamma(a.real + k * A)
    for b, B in model.params.lower:
        s += math.lgamma(b.real + k * B) - math.lgamma(b.real)
    return s


def _log_rho_vec(model: CoherentModel, ks: np.ndarray) -> np.ndarray:
    kf = ks.astype(float)
    s = log_gamma_vec(kf + 1.0).real
    for a, A in model.params.upper:
        s += math.lgamma(a.real) - log_gamma_vec(a.real + kf * A).real
    for b, B in model.params.lower:
        s += log_gamma_vec(b.real + kf * B).real - math.lgamma(b.real)
    return s


def rho(model: CoherentModel, k: int) -> float:
    """Parameter function rho(k); raises when it leaves the float range."""
    lr = log_rho(model, k)
    if lr > _LOG_FLOAT_MAX:
        raise OverflowError(
            f"rho({k}) = exp({lr:.1f}) overflows float64; use log_rho"
        )
    return math.exp(lr)


def f_factor(model: CoherentModel, s: int) -> float:
    """Ladder factor f(s) = sqrt[(s+1) prod ratios], from the gamma-ratio form."""
    if s < 0:
        raise ValidationError("s must be >= 0")
    acc = math.log(s + 1.0)
    for b, B in model.params.lower:
        acc += log_gamma_ratio(b.real, B, s).real
    for a, A in model.params.upper:
        acc -= log_gamma_ratio(a.real, A, s).real
    return math.exp(0.5 * acc)


def normalization_at(model: CoherentModel, zeta: complex) -> complex:
    """N extended to complex argument by the same series."""
    zeta = complex(zeta)
    if zeta == 0:
        return 1.0 + 0j  # rho(0) = 1: prefactor cancels the k=0 term exactly
    res = fw_evaluate(model.params, zeta)
    return cmath.exp(_log_prefactor(model)) * res.value


def normalization(model: CoherentModel, zeta: float) -> float:
    """N(zeta) = sum_k zeta^k / rho(k) for zeta >= 0."""
    zeta = float(zeta)
    if zeta < 0:
        raise ValidationError("normalization argument must be >= 0")
    return normalization_at(model, zeta).real


def make_state(model: CoherentModel, z: complex, tail_target: float = 1e-12) -> StateVector:
    """Truncated coefficient vector of |z>, auto-extended to the tail target.

    K doubles geometrically from the model's K until the missing
    probability mass 1 - sum |c_k|^2 drops below tail_target, capped at
    K_MAX.
    """
    z = complex(z)
    zeta = abs(z) ** 2
    log_n = math.log(normalization(model, zeta))
    pref = math.exp(-0.5 * log_n)

    K = model.K
    if zeta == 0.0:
        coeffs = (1.0 + 0j,) + (0j,) * K
        return StateVector(coeffs=coeffs, norm_prefactor=pref, z=z, tail_mass=0.0)

    log_zeta = math.log(zeta)
    while True:
        ks = np.arange(K + 1)
        log_rho_k = _log_rho_vec(model, ks)
        with np.errstate(under="ignore"):
            probs = np.exp(ks * log_zeta - log_rho_k - log_n)
        tail = max(1.0 - float(probs.sum()), 0.0)
        if tail <= tail_target:
            break
        if K >= K_MAX:
            raise TruncationError(
                f"tail mass {tail:.3g} above target {tail_target:g} at K={K}"
            )
        K = min(2 * K, K_MAX)

    log_z = cmath.log(z)
    with np.errstate(under="ignore"):
        coeffs = np.exp(ks * log_z - 0.5 * log_rho_k - 0.5 * log_n)
    return StateVector(
        coeffs=tuple(coeffs.tolist()),
        norm_prefactor=pref,
        z=z,
        tail_mass=tail,
    )


def overlap(model: CoherentModel, z: complex, zp: complex) -> complex:
    """<z|z'> = N(conj(z) z') / sqrt(N(|z|^2) N(|z'|^2))."""
    z = complex(z)
    zp = complex(zp)
    num = normalization_at(model, z.conjugate() * zp)
    den = math.sqrt(normalization(model, abs(z) ** 2) * normalization(model, abs(zp) ** 2))
    return num / den


def ladder_elements(model: CoherentModel, k: int) -> tuple[float, float, float, float]:
    """(f(k-1), f(k), f(k)^2, f(k-1)^2) with f(-1) = 0: the diagonal ladder data."""
    if k < 0:
        raise ValidationError("k must be >= 0")
    f_up = f_factor(model, k)
    f_down = f_factor(model, k - 1) if k > 0 else 0.0
    return (f_down, f_up, f_up * f_up, f_down * f_down)


def annihilation_residual(model: CoherentModel, state: StateVector) -> float:
    """l2 norm of (A- c)_k - z c_k over rows fully inside the truncation.

    (A- c)_k = f(k) c_{k+1}; rows k = 0 .. K-1 use only stored
    coefficients, so the residual measures the eigenstate property, not
    the truncation cut.
    """
    K = len(state.coeffs) - 1
    if K == 0:
        return 0.0
    c = np.asarray(state.coeffs)
    fs = np.array([f_factor(model, k) for k in range(K)])
    r = fs * c[1:] - state.z * c[:-1]
    return float(np.linalg.norm(r))


def photon_distribution(state: StateVector) -> list[float]:
    """|c_k|^2 occupation probabilities; sums to 1 - tail_mass."""
    return [abs(c) ** 2 for c in state.coeffs]


# -- bicomplex counterparts ---------------------------------------------


@dataclass(frozen=True)
class BCCoherentModel:
    params: BCFWParams
    K: int = 32
    _components: tuple[CoherentModel, CoherentModel] = field(
        init=False, repr=False, compare=False, default=None
    )

    def __post_init__(self):
        comps = tuple(
            CoherentModel(self.params.component_params(p), self.K) for p in (1, 2)
        )
        object.__setattr__(self, "_components", comps)

    def component_model(self, p: int) -> CoherentModel:
        if p not in (1, 2):
            raise ValidationError("component index must be 1 or 2")
        return self._components[p - 1]


def rho_b(model: BCCoherentModel, k: int) -> Hyperbolic:
    return Hyperbolic(
        rho(model.component_model(1), k), rho(model.component_model(2), k)
    )


def log_rho_b(model: BCCoherentModel, k: int) -> Hyperbolic:
    return Hyperbolic(
        log_rho(model.component_model(1), k), log_rho(model.component_model(2), k)
    )


def f_b(model: BCCoherentModel, s: int) -> Hyperbolic:
    return Hyperbolic(
        f_factor(model.component_model(1), s), f_factor(model.component_model(2), s)
    )


def normalization_b(model: BCCoherentModel, W) -> "Hyperbolic | Bicomplex":
    """Per-component normalization; hyperbolic in, hyperbolic out."""
    if isinstance(W, Hyperbolic):
        if not W.in_dplus():
            raise ValidationError(f"normalization argument must lie in D+, got {W!r}")
        return Hyperbolic(
            normalization(model.component_model(1), W.c1),
            normalization(model.component_model(2), W.c2),
        )
    if not isinstance(W, Bicomplex):
        W = Bicomplex.from_scalar(W)
    return Bicomplex(
        normalization_at(model.component_model(1), W.z1),
        normalization_at(model.component_model(2), W.z2),
    )


def make_state_b(model: BCCoherentModel, Z: Bicomplex, tail_target: float = 1e-12) -> BCStateVector:
    if not isinstance(Z, Bicomplex):
        Z = Bicomplex.from_scalar(Z)
    s1 = make_state(model.component_model(1), Z.z1, tail_target)
    s2 = make_state(model.component_model(2), Z.z2, tail_target)
    return BCStateVector(components=(s1, s2), z=Z)


def overlap_b(model: BCCoherentModel, Z: Bicomplex, Zp: Bicomplex) -> Bicomplex:
    """<Z|Z'> with conj per component, so overlap_b(Z, Z) = 1 exactly in structure."""
    if not isinstance(Z, Bicomplex):
        Z = Bicomplex.from_scalar(Z)
    if not isinstance(Zp, Bicomplex):
        Zp = Bicomplex.from_scalar(Zp)
    return Bicomplex(
        overlap(model.component_model(1), Z.z1, Zp.z1),
        overlap(model.component_model(2), Z.z2, Zp.z2),
    )
