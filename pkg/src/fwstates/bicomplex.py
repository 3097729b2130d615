"""Bicomplex and hyperbolic number arithmetic in idempotent coordinates.

A bicomplex number Z = a + jb (a, b complex, j a second imaginary unit
commuting with i, j^2 = -1) decomposes uniquely as

    Z = z1*e1 + z2*e2,   e1 = (1 + ij)/2,  e2 = (1 - ij)/2,

with z1 = a - ib and z2 = a + ib.  The idempotents satisfy e1+e2 = 1,
e1*e2 = 0, e1^2 = e1, e2^2 = e2, so every ring operation acts
componentwise on (z1, z2).  That makes the idempotent pair the right
internal representation; the cartesian (a, b) form is a derived view.

Zero divisors are exactly the nonzero elements with one idempotent
component equal to zero.  Hyperbolic numbers are the subring with both
components real; they carry the partial order `leq_h` and host norms,
exponent weights and convergence radii.
"""

from __future__ import annotations

import math
from typing import Union

from .errors import DomainError, SingularElement, ValidationError

Scalar = Union[int, float, complex]


def _check_finite_complex(value: complex, what: str) -> complex:
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValidationError(f"{what} must be finite, got {z!r}")
    return z


def _check_finite_real(value: float, what: str) -> float:
    x = float(value)
    if not math.isfinite(x):
        raise ValidationError(f"{what} must be finite, got {x!r}")
    return x


class Bicomplex:
    """Bicomplex number stored as the idempotent pair (z1, z2)."""

    __slots__ = ("z1", "z2")

    def __init__(self, z1: Scalar, z2: Scalar):
        object.__setattr__(self, "z1", _check_finite_complex(z1, "z1"))
        object.__setattr__(self, "z2", _check_finite_complex(z2, "z2"))

    def __setattr__(self, name, value):
        raise AttributeError("Bicomplex is immutable")

    # -- constructors and views ------------------------------------------

    @classmethod
    def from_cartesian(cls, a: Scalar, b: Scalar = 0) -> "Bicomplex":
        """Build from the a + jb form."""
        a = complex(a)
        b = complex(b)
        return cls(a - 1j * b, a + 1j * b)

    @classmethod
    def from_scalar(cls, c: Scalar) -> "Bicomplex":
        """Embed a complex scalar diagonally (a = c, b = 0)."""
        c = complex(c)
        return cls(c, c)

    @property
    def cartesian(self) -> tuple[complex, complex]:
        """The (a, b) pair with Z = a + jb."""
        return ((self.z1 + self.z2) / 2, 0.5j * (self.z1 - self.z2))

    def decompose(self) -> tuple[complex, complex]:
        return (self.z1, self.z2)

    # -- ring structure --------------------------------------------------

    def _coerce(self, other) -> "Bicomplex | None":
        if isinstance(other, Bicomplex):
            return other
        if isinstance(other, (int, float, complex)):
            return Bicomplex.from_scalar(other)
        if isinstance(other, Hyperbolic):
            return other.as_bicomplex()
        return None

    def __add__(self, other):
        w = self._coerce(other)
        if w is None:
            return NotImplemented
        return Bicomplex(self.z1 + w.z1, self.z2 + w.z2)

    __radd__ = __add__

    def __sub__(self, other):
        w = self._coerce(other)
        if w is None:
            return NotImplemented
        return Bicomplex(self.z1 - w.z1, self.z2 - w.z2)

    def __rsub__(self, other):
        w = self._coerce(other)
        if w is None:
            return NotImplemented
        return Bicomplex(w.z1 - self.z1, w.z2 - self.z2)

    def __mul__(self, other):
        w = self._coerce(other)
        if w is None:
            return NotImplemented
        return Bicomplex(self.z1 * w.z1, self.z2 * w.z2)

    __rmul__ = __mul__

    def __neg__(self):
        return Bicomplex(-self.z1, -self.z2)

    def __eq__(self, other):
        w = self._coerce(other)
        if w is None:
            return NotImplemented
        return self.z1 == w.z1 and self.z2 == w.z2

    def __hash__(self):
        return hash((self.z1, self.z2))

    def inverse(self) -> "Bicomplex":
        """Multiplicative inverse; zero divisors (and zero) have none."""
        if self.z1 == 0 or self.z2 == 0:
            raise SingularElement(
                f"cannot invert singular element (z1={self.z1}, z2={self.z2})"
            )
        return Bicomplex(1.0 / self.z1, 1.0 / self.z2)

    def conj(self) -> "Bicomplex":
        """Componentwise conjugate, the involution with conj(Z)*Z = |Z|_h^2."""
        return Bicomplex(self.z1.conjugate(), self.z2.conjugate())

    # -- predicates and norms --------------------------------------------

    def is_zero(self) -> bool:
        return self.z1 == 0 and self.z2 == 0

    def is_zero_divisor(self) -> bool:
        """True iff exactly one idempotent component vanishes."""
        return (self.z1 == 0) != (self.z2 == 0)

    def hyper_norm(self) -> "Hyperbolic":
        """Hyperbolic norm |Z|_h = |z1| e1 + |z2| e2, always in D+."""
        return Hyperbolic(abs(self.z1), abs(self.z2))

    def __repr__(self):
        return f"Bicomplex({self.z1!r}, {self.z2!r})"

    # -- JSON ------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "z1": [self.z1.real, self.z1.imag],
            "z2": [self.z2.real, self.z2.imag],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Bicomplex":
        try:
            z1 = complex(obj["z1"][0], obj["z1"][1])
            z2 = complex(obj["z2"][0], obj["z2"][1])
        except (KeyError, TypeError, IndexError) as exc:
            raise ValidationError(f"bad bicomplex encoding {obj!r}") from exc
        return cls(z1, z2)


class Hyperbolic:
    """Hyperbolic number: both idempotent components real."""

    __slots__ = ("c1", "c2")

    def __init__(self, c1: float, c2: float):
        object.__setattr__(self, "c1", _check_finite_real(c1, "c1"))
        object.__setattr__(self, "c2", _check_finite_real(c2, "c2"))

    def __setattr__(self, name, value):
        raise AttributeError("Hyperbolic is immutable")

    @classmethod
    def from_cartesian(cls, x1: float, x4: float = 0.0) -> "Hyperbolic":
        """Build from x1 + ij*x4 form."""
        return cls(x1 + x4, x1 - x4)

    @classmethod
    def from_scalar(cls, x: float) -> "Hyperbolic":
        x = float(x)
        return cls(x, x)

    @property
    def cartesian(self) -> tuple[float, float]:
        return ((self.c1 + self.c2) / 2, (self.c1 - self.c2) / 2)

    def decompose(self) -> tuple[float, float]:
        return (self.c1, self.c2)

    def as_bicomplex(self) -> Bicomplex:
        return Bicomplex(self.c1, self.c2)

    def _coerce(self, other) -> "Hyperbolic | None":
        if isinstance(other, Hyperbolic):
            return other
        if isinstance(other, (int, float)):
            return Hyperbolic.from_scalar(other)
        return None

    def __add__(self, other):
        w = self._coerce(other)
        if w is None:
            return NotImplemented
        return Hyperbolic(self.c1 + w.c1, self.c2 + w.c2)

    __radd__ = __add__

    def __sub__(self, other):
        w = self._coerce(other)
        if w is None:
            return NotImplemented
        return Hyperbolic(self.c1 - w.c1, self.c2 - w.c2)

    def __rsub__(self, other):
        w = self._coerce(other)
        if w is None:
            return NotImplemented
        return Hyperbolic(w.c1 - self.c1, w.c2 - self.c2)

    def __mul__(self, other):
        w = self._coerce(other)
        if w is None:
            return NotImplemented
        return Hyperbolic(self.c1 * w.c1, self.c2 * w.c2)

    __rmul__ = __mul__

    def __neg__(self):
        return Hyperbolic(-self.c1, -self.c2)

    def __eq__(self, other):
        w = self._coerce(other)
        if w is None:
            return NotImplemented
        return self.c1 == w.c1 and self.c2 == w.c2

    def __hash__(self):
        return hash((self.c1, self.c2))

    def in_dplus(self) -> bool:
        """Membership in D+ (both components nonnegative)."""
        return self.c1 >= 0 and self.c2 >= 0

    def strictly_positive(self) -> bool:
        """Membership in D+ minus the zero divisors (both components > 0)."""
        return self.c1 > 0 and self.c2 > 0

    def __repr__(self):
        return f"Hyperbolic({self.c1!r}, {self.c2!r})"

    def to_json(self) -> dict:
        return {"c1": self.c1, "c2": self.c2}

    @classmethod
    def from_json(cls, obj: dict) -> "Hyperbolic":
        try:
            return cls(float(obj["c1"]), float(obj["c2"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"bad hyperbolic encoding {obj!r}") from exc


# unit constants
E1 = Bicomplex(1.0, 0.0)
E2 = Bicomplex(0.0, 1.0)
ONE = Bicomplex(1.0, 1.0)
ZERO = Bicomplex(0.0, 0.0)


def compose_idempotent(z1: Scalar, z2: Scalar) -> Bicomplex:
    """Assemble Z = z1*e1 + z2*e2 from its idempotent components."""
    return Bicomplex(z1, z2)


def decompose(Z: Bicomplex) -> tuple[complex, complex]:
    """Idempotent components (z1, z2) of Z."""
    return Z.decompose()


def leq_h(P: Hyperbolic, Q: Hyperbolic) -> bool:
    """Partial order: P <=_h Q iff Q - P lies in D+ (componentwise)."""
    return Q.c1 - P.c1 >= 0 and Q.c2 - P.c2 >= 0


def lt_h(P: Hyperbolic, Q: Hyperbolic) -> bool:
    """Strict variant: componentwise strict inequality."""
    return Q.c1 - P.c1 > 0 and Q.c2 - P.c2 > 0


def pow_real(P: Hyperbolic, t: Union[Hyperbolic, float]) -> Hyperbolic:
    """Componentwise real power (c1^t1, c2^t2); base must be strictly positive."""
    if not isinstance(t, Hyperbolic):
        t = Hyperbolic.from_scalar(t)
    if not P.strictly_positive():
        raise DomainError(f"pow_real base must be strictly positive, got {P!r}")
    return Hyperbolic(P.c1 ** t.c1, P.c2 ** t.c2)
