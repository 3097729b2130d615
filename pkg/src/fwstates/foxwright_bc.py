"""Bicomplex Fox-Wright function: nine-case convergence classifier and evaluation.

With hyperbolic weights M_i, N_j (both idempotent components strictly
positive) the series behaves independently in each idempotent component,
and each component is an ordinary complex Fox-Wright series with margin
Upsilon_p + 1 where Upsilon = sum N - sum M.  The sign pattern of
(Upsilon_1 + 1, Upsilon_2 + 1) therefore selects one of nine convergence
domains, from all of BC^2 down to the single point 0.

On the finite-radius circles the boundary exponent

    lambda_p = sum_j nu_pj - sum_i mu_pi - (n - m)/2

decides absolute convergence: both components need Re(lambda_p) > 1/2,
which in cartesian form reads Re(Lambda_1) - 1/2 > |Im(Lambda_2)|.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .bicomplex import Bicomplex, Hyperbolic
from .errors import DomainViolation, ValidationError
from .foxwright import CLASSIFY_TOL, DEFAULT_MAX_TERMS, DEFAULT_TOL, FWParams
from .foxwright import evaluate as evaluate_complex


class Domain(enum.Enum):
    ENTIRE_BC = "EntireBC"
    DISK1_PLANE2 = "Disk1xPlane2"
    PLANE1_DISK2 = "Plane1xDisk2"
    DISK1_ZERO2 = "Disk1xZero2"
    ZERO1_DISK2 = "Zero1xDisk2"
    PLANE1_ZERO2 = "Plane1xZero2"
    ZERO1_PLANE2 = "Zero1xPlane2"
    HYPERBOLIC_BALL = "HyperbolicBall"
    DIVERGENT = "DivergentEverywhere"


_DOMAIN_BY_SIGNS = {
    (1, 1): Domain.ENTIRE_BC,
    (0, 1): Domain.DISK1_PLANE2,
    (1, 0): Domain.PLANE1_DISK2,
    (0, -1): Domain.DISK1_ZERO2,
    (-1, 0): Domain.ZERO1_DISK2,
    (1, -1): Domain.PLANE1_ZERO2,
    (-1, 1): Domain.ZERO1_PLANE2,
    (0, 0): Domain.HYPERBOLIC_BALL,
    (-1, -1): Domain.DIVERGENT,
}


@dataclass(frozen=True)
class BCFWParams:
    """Upper ((mu_i, M_i)) and lower ((nu_j, N_j)) bicomplex parameter lists."""

    upper: tuple[tuple[Bicomplex, Hyperbolic], ...]
    lower: tuple[tuple[Bicomplex, Hyperbolic], ...]

    def __init__(self, upper=(), lower=()):
        object.__setattr__(self, "upper", _normalize_bc_pairs(upper, "upper"))
        object.__setattr__(self, "lower", _normalize_bc_pairs(lower, "lower"))
        # per-component restriction must give two valid complex parameter sets
        self.component_params(1)
        self.component_params(2)

    @property
    def m(self) -> int:
        return len(self.upper)

    @property
    def n(self) -> int:
        return len(self.lower)

    def component_params(self, p: int) -> FWParams:
        """Complex FWParams seen by idempotent component p (1 or 2)."""
        if p not in (1, 2):
            raise ValidationError("component index must be 1 or 2")
        pick_c = (lambda Z: Z.z1) if p == 1 else (lambda Z: Z.z2)
        pick_h = (lambda P: P.c1) if p == 1 else (lambda P: P.c2)
        return FWParams(
            upper=[(pick_c(mu), pick_h(M)) for mu, M in self.upper],
            lower=[(pick_c(nu), pick_h(N)) for nu, N in self.lower],
        )

    def to_json(self) -> dict:
        return {
            "upper": [
                {"value": mu.to_json(), "weight": M.to_json()} for mu, M in self.upper
            ],
            "lower": [
                {"value": nu.to_json(), "weight": N.to_json()} for nu, N in self.lower
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BCFWParams":
        try:
            upper = [
                (Bicomplex.from_json(e["value"]), Hyperbolic.from_json(e["weight"]))
                for e in obj["upper"]
            ]
            lower = [
                (Bicomplex.from_json(e["value"]), Hyperbolic.from_json(e["weight"]))
                for e in obj["lower"]
            ]
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"bad BCFWParams encoding: {exc}") from exc
        return cls(upper, lower)


def _normalize_bc_pairs(pairs, side):
    out = []
    for entry in pairs:
        try:
            value, weight = entry
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"{side} entries must be (value, weight) pairs") from exc
        if not isinstance(value, Bicomplex):
            value = Bicomplex.from_scalar(value)
        if isinstance(weight, (int, float)):
            weight = Hyperbolic.from_scalar(weight)
        if not isinstance(weight, Hyperbolic):
            raise ValidationError(f"{side} weight must be hyperbolic, got {weight!r}")
        if not weight.strictly_positive():
            raise ValidationError(
                f"{side} weight must have both components > 0, got {weight!r}"
            )
        out.append((value, weight))
    return tuple(out)


@dataclass(frozen=True)
class ConvergenceReport:
    upsilon: Hyperbolic
    v_radius: tuple[float, float]  # effective per-component radius; inf allowed
    lambda_idem: tuple[complex, complex]
    lambda_cart: tuple[complex, complex]
    domain: Domain
    boundary_abs_convergent: bool
    sign_tol: float = CLASSIFY_TOL

    def to_json(self) -> dict:
        def enc_r(v):
            return "inf" if math.isinf(v) else v

        def enc_c(c):
            return [c.real, c.imag]

        return {
            "upsilon": self.upsilon.to_json(),
            "v_radius": [enc_r(self.v_radius[0]), enc_r(self.v_radius[1])],
            "lambda_idem": [enc_c(self.lambda_idem[0]), enc_c(self.lambda_idem[1])],
            "lambda_cart": [enc_c(self.lambda_cart[0]), enc_c(self.lambda_cart[1])],
            "domain": self.domain.value,
            "boundary_abs_convergent": self.boundary_abs_convergent,
            "sign_tol": self.sign_tol,
        }


def _sign_with_tol(x: float, tol: float) -> int:
    if x > tol:
        return 1
    if x < -tol:
        return -1
    return 0


def classify(params: BCFWParams) -> ConvergenceReport:
    """Convergence report: Upsilon, effective radii, lambda, domain variant."""
    upsilon = Hyperbolic(0.0, 0.0)
    for _, N in params.lower:
        upsilon = upsilon + N
    for _, M in params.upper:
        upsilon = upsilon - M

    signs = (
        _sign_with_tol(upsilon.c1 + 1.0, CLASSIFY_TOL),
        _sign_with_tol(upsilon.c2 + 1.0, CLASSIFY_TOL),
    )
    domain = _DOMAIN_BY_SIGNS[signs]

    radii = []
    for p, s in zip((1, 2), signs):
        if s > 0:
            radii.append(math.inf)
        elif s < 0:
            radii.append(0.0)
        else:
            pick = (lambda P: P.c1) if p == 1 else (lambda P: P.c2)
            log_v = sum(pick(N) * math.log(pick(N)) for _, N in params.lower) - sum(
                pick(M) * math.log(pick(M)) for _, M in params.upper
            )
            radii.append(math.exp(log_v))

    lam = []
    for p in (1, 2):
        pick = (lambda Z: Z.z1) if p == 1 else (lambda Z: Z.z2)
        lam.append(
            sum((pick(nu) for nu, _ in params.lower), 0j)
            - sum((pick(mu) for mu, _ in params.upper), 0j)
            - (params.n - params.m) / 2.0
        )
    lam1, lam2 = lam
    lambda_cart = ((lam1 + lam2) / 2.0, 0.5j * (lam1 - lam2))

    return ConvergenceReport(
        upsilon=upsilon,
        v_radius=(radii[0], radii[1]),
        lambda_idem=(lam1, lam2),
        lambda_cart=lambda_cart,
        domain=domain,
        boundary_abs_convergent=(lam1.real > 0.5 and lam2.real > 0.5),
    )


def contains_abs(report: ConvergenceReport, r1: float, r2: float) -> bool:
    """Strict membership test on idempotent magnitudes (|z1|, |z2|)."""
    for r, v in zip((r1, r2), report.v_radius):
        if r < 0:
            raise ValidationError("magnitudes must be nonnegative")
        if math.isinf(v):
            continue
        if v == 0.0:
            if r != 0.0:
                return False
        elif r >= v:
            return False
    return True


def evaluate(
    params: BCFWParams,
    Z: Bicomplex,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
    allow_boundary: bool = False,
) -> Bicomplex:
    """Componentwise evaluation inside the classified domain.

    Equals the direct bicomplex partial sums by the idempotent
    homomorphism.  Points with a component on its convergence circle are
    rejected unless allow_boundary is set; for the hyperbolic-ball
    domain a mixed point (one component on the circle, the other
    strictly inside) is rejected either way, the boundary statement only
    covers the full sphere.
    """
    if not isinstance(Z, Bicomplex):
        Z = Bicomplex.from_scalar(Z)
    report = classify(params)

    status = []
    for p, zp in zip((1, 2), Z.decompose()):
        v = report.v_radius[p - 1]
        az = abs(zp)
        if math.isinf(v) or az == 0.0:
            status.append("inside")
        elif v == 0.0:
            status.append("outside")
        elif az > v * (1.0 + 1e-12):
            status.append("outside")
        elif az >= v * (1.0 - 1e-12):
            status.append("boundary")
        else:
            status.append("inside")

    for p, st in zip((1, 2), status):
        if st == "outside":
            raise DomainViolation(
                f"component {p}: |z{p}|={abs(Z.decompose()[p - 1]):.6g} outside "
                f"radius {report.v_radius[p - 1]:.6g} ({report.domain.value})"
            )
    if "boundary" in status:
        if report.domain is Domain.HYPERBOLIC_BALL and status != ["boundary", "boundary"]:
            raise DomainViolation(
                "mixed boundary point of the hyperbolic ball (one component on its "
                "circle, one inside) is not covered by the convergence theorem"
            )
        if not allow_boundary:
            raise DomainViolation(
                "component on its convergence circle; pass allow_boundary to evaluate "
                "under the Re(lambda) > 1/2 condition"
            )

    values = []
    for p, zp in zip((1, 2), Z.decompose()):
        try:
            res = evaluate_complex(
                params.component_params(p),
                zp,
                tol=tol,
                max_terms=max_terms,
                allow_boundary=allow_boundary,
            )
        except DomainViolation as exc:
            raise DomainViolation(f"component {p}: {exc}") from exc
        values.append(res.value)
    return Bicomplex(values[0], values[1])


@dataclass(frozen=True)
class GridSpec:
    r1_max: float
    r2_max: float
    n1: int = 21
    n2: int = 21

    def __post_init__(self):
        if self.r1_max < 0 or self.r2_max < 0 or self.n1 < 2 or self.n2 < 2:
            raise ValidationError("grid needs nonnegative extents and >= 2 points per axis")


def region_sample(params: BCFWParams, grid_spec: GridSpec) -> list[tuple[float, float, bool]]:
    """Deterministic membership grid over idempotent magnitudes, CSV-ready."""
    report = classify(params)
    rows = []
    for i in range(grid_spec.n1):
        r1 = grid_spec.r1_max * i / (grid_spec.n1 - 1)
        for j in range(grid_spec.n2):
            r2 = grid_spec.r2_max * j / (grid_spec.n2 - 1)
            rows.append((r1, r2, contains_abs(report, r1, r2)))
    return rows
