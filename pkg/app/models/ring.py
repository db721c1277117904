"""Commutative rings with an involution sigma.

Three backends stand in for the ring of integers of an unramified quadratic
extension and its residue field:

* ``finite-field-quadratic``: F_p[w] with w^2 = d, d a non-residue mod p.
* ``truncated-series-quadratic``: F_p[w][[pi]] / pi^N, sigma acting on coefficients.
* ``rational-quadratic``: Q(i), sigma the complex conjugation.

Elements are immutable and canonical, so ``==`` is exact equality.
"""
import logging
from abc import ABC, abstractmethod
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterator, Tuple, Union

import numpy as np
from sympy import isprime
from sympy.ntheory import legendre_symbol

from app.schemas.ring import BackendTag, DescriptorSchema
from app.utils.errors import (
    DescriptorMismatchError,
    InvalidDescriptorError,
    InvalidElementError,
    NonInvertibleError,
    NonInvertibleTwoError,
    NoValidAlphaError,
)

logger = logging.getLogger(__name__)

# Range of numerators / denominators for random rationals.
RATIONAL_NUMERATOR_BOUND = 9
RATIONAL_DENOMINATOR_BOUND = 6

Operand = Union["RingElement", int]


def smallest_non_residue(p: int) -> int:
    """Least d in [2, p) with (d / p) = -1."""
    for d in range(2, p):
        if legendre_symbol(d, p) == -1:
            return d
    raise InvalidDescriptorError(f"No quadratic non-residue modulo {p}", p=p)


class RingElement(ABC):
    __slots__ = ("ring",)

    def __init__(self, ring: "InvolutiveRing"):
        object.__setattr__(self, "ring", ring)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @abstractmethod
    def _key(self) -> Tuple: ...

    @abstractmethod
    def _add(self, other: "RingElement") -> "RingElement": ...

    @abstractmethod
    def _mul(self, other: "RingElement") -> "RingElement": ...

    @abstractmethod
    def _neg(self) -> "RingElement": ...

    @abstractmethod
    def _inverse(self) -> "RingElement": ...

    @abstractmethod
    def sigma(self) -> "RingElement": ...

    @abstractmethod
    def is_unit(self) -> bool: ...

    @abstractmethod
    def to_dict(self) -> dict: ...

    def _coerce(self, other: Operand) -> "RingElement":
        if isinstance(other, RingElement):
            if other.ring is not self.ring and other.ring != self.ring:
                raise DescriptorMismatchError(
                    "Operands belong to different rings",
                    left=self.ring.descriptor.to_json_dict(),
                    right=other.ring.descriptor.to_json_dict(),
                )
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other: Operand) -> "RingElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._add(other)

    __radd__ = __add__

    def __sub__(self, other: Operand) -> "RingElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._add(other._neg())

    def __rsub__(self, other: Operand) -> "RingElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other._add(self._neg())

    def __mul__(self, other: Operand) -> "RingElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._mul(other)

    __rmul__ = __mul__

    def __neg__(self) -> "RingElement":
        return self._neg()

    def __pow__(self, exponent: int) -> "RingElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.ring.one()
        base = self
        while exponent > 0:
            if exponent & 1:
                result = result._mul(base)
            base = base._mul(base)
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring == other.ring and self._key() == other._key()

    def __hash__(self) -> int:
        return hash((self.ring.descriptor, self._key()))

    def inverse(self) -> "RingElement":
        if not self.is_unit():
            raise NonInvertibleError(f"{self!r} is not a unit", element=self.to_dict())
        return self._inverse()

    def is_zero(self) -> bool:
        return self == self.ring.zero()

    def trace(self) -> "RingElement":
        return self._add(self.sigma())

    def norm(self) -> "RingElement":
        return self._mul(self.sigma())

    def is_fixed(self) -> bool:
        return self.sigma() == self

    def is_trace_zero(self) -> bool:
        return self.trace().is_zero()

    def has_parity(self, i: int) -> bool:
        """sigma(x) == (-1)^i x."""
        return self.sigma() == (self if i % 2 == 0 else self._neg())


class InvolutiveRing(ABC):
    def __init__(self, descriptor: DescriptorSchema):
        self.descriptor = descriptor

    def __eq__(self, other: object) -> bool:
        return isinstance(other, InvolutiveRing) and self.descriptor == other.descriptor

    def __hash__(self) -> int:
        return hash(self.descriptor)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.descriptor.to_json_dict()})"

    @property
    @abstractmethod
    def residue_char(self) -> int: ...

    @abstractmethod
    def from_int(self, k: int) -> RingElement: ...

    @abstractmethod
    def omega(self) -> RingElement:
        """The generator whose sigma-image is its negative."""

    @abstractmethod
    def decode(self, payload: Any) -> RingElement: ...

    @abstractmethod
    def random_element(self, rng: np.random.Generator) -> RingElement: ...

    @abstractmethod
    def random_fixed(self, rng: np.random.Generator) -> RingElement: ...

    @abstractmethod
    def random_trace_zero(self, rng: np.random.Generator) -> RingElement: ...

    def zero(self) -> RingElement:
        return self.from_int(0)

    def one(self) -> RingElement:
        return self.from_int(1)

    def random_parity(self, rng: np.random.Generator, i: int) -> RingElement:
        """Random a with sigma(a) = (-1)^i a."""
        return self.random_trace_zero(rng) if i % 2 else self.random_fixed(rng)

    def two_inverse(self) -> RingElement:
        two = self.from_int(2)
        if not two.is_unit():
            raise NonInvertibleTwoError(
                "2 is not a unit: residue characteristic 2 is excluded",
                descriptor=self.descriptor.to_json_dict(),
            )
        return two.inverse()

    def choose_alpha(self) -> RingElement:
        """Canonical trace-zero unit."""
        alpha = self.omega()
        if not alpha.is_unit() or not alpha.is_trace_zero() or alpha.is_fixed():
            raise NoValidAlphaError(
                "No trace-zero unit outside the fixed subring",
                descriptor=self.descriptor.to_json_dict(),
            )
        return alpha

    def uniformizer(self) -> RingElement:
        raise InvalidDescriptorError(
            f"{self.descriptor.backend.value} has no uniformizer",
            descriptor=self.descriptor.to_json_dict(),
        )

    def elements(self) -> Iterator[RingElement]:
        raise InvalidDescriptorError(
            f"{self.descriptor.backend.value} cannot be enumerated",
            descriptor=self.descriptor.to_json_dict(),
        )


# ---------------------------------------------------------------------------
# F_p[w] arithmetic on raw (x, y) pairs, shared by the finite-field and series backends.

def _fq_add(p: int, a: Tuple[int, int], b: Tuple[int, int]) -> Tuple[int, int]:
    return (a[0] + b[0]) % p, (a[1] + b[1]) % p


def _fq_mul(p: int, d: int, a: Tuple[int, int], b: Tuple[int, int]) -> Tuple[int, int]:
    return (a[0] * b[0] + d * a[1] * b[1]) % p, (a[0] * b[1] + a[1] * b[0]) % p


def _fq_inv(p: int, d: int, a: Tuple[int, int]) -> Tuple[int, int]:
    # (x + yw)^-1 = (x - yw) / (x^2 - d y^2); the norm vanishes only at 0
    norm = (a[0] * a[0] - d * a[1] * a[1]) % p
    norm_inv = pow(norm, -1, p)
    return (a[0] * norm_inv) % p, (-a[1] * norm_inv) % p


def _parse_pair(payload: Any) -> Tuple[int, int]:
    if isinstance(payload, dict):
        payload = (payload.get("x"), payload.get("y"))
    if isinstance(payload, int) and not isinstance(payload, bool):
        return payload, 0
    if isinstance(payload, (list, tuple)) and len(payload) == 2 and all(
        isinstance(c, int) and not isinstance(c, bool) for c in payload
    ):
        return payload[0], payload[1]
    raise InvalidElementError(f"Cannot read {payload!r} as x + y*w", payload=repr(payload))


class FiniteFieldElement(RingElement):
    __slots__ = ("x", "y")

    def __init__(self, ring: "FiniteFieldQuadratic", x: int, y: int):
        super().__init__(ring)
        object.__setattr__(self, "x", x % ring.p)
        object.__setattr__(self, "y", y % ring.p)

    def __repr__(self) -> str:
        return f"{self.x}+{self.y}w"

    def _key(self) -> Tuple:
        return (self.x, self.y)

    def _make(self, pair: Tuple[int, int]) -> "FiniteFieldElement":
        return FiniteFieldElement(self.ring, pair[0], pair[1])

    def _add(self, other):
        return self._make(_fq_add(self.ring.p, self._key(), other._key()))

    def _mul(self, other):
        return self._make(_fq_mul(self.ring.p, self.ring.d, self._key(), other._key()))

    def _neg(self):
        return FiniteFieldElement(self.ring, -self.x, -self.y)

    def _inverse(self):
        return self._make(_fq_inv(self.ring.p, self.ring.d, self._key()))

    def sigma(self):
        # equals the Frobenius x -> x^p, since w^p = d^((p-1)/2) w = -w
        return FiniteFieldElement(self.ring, self.x, -self.y)

    def is_unit(self) -> bool:
        return (self.x, self.y) != (0, 0)

    def to_dict(self) -> dict:
        return {"x": self.x, "y": self.y}


class FiniteFieldQuadratic(InvolutiveRing):
    def __init__(self, descriptor: DescriptorSchema):
        super().__init__(descriptor)
        self.p = descriptor.p
        self.d = descriptor.d

    @property
    def residue_char(self) -> int:
        return self.p

    def from_int(self, k: int) -> FiniteFieldElement:
        return FiniteFieldElement(self, k, 0)

    def make(self, x: int, y: int) -> FiniteFieldElement:
        return FiniteFieldElement(self, x, y)

    def omega(self) -> FiniteFieldElement:
        return FiniteFieldElement(self, 0, 1)

    def decode(self, payload: Any) -> FiniteFieldElement:
        x, y = _parse_pair(payload)
        return FiniteFieldElement(self, x, y)

    def random_element(self, rng):
        return FiniteFieldElement(self, int(rng.integers(0, self.p)), int(rng.integers(0, self.p)))

    def random_fixed(self, rng):
        return FiniteFieldElement(self, int(rng.integers(0, self.p)), 0)

    def random_trace_zero(self, rng):
        return FiniteFieldElement(self, 0, int(rng.integers(0, self.p)))

    def elements(self) -> Iterator[FiniteFieldElement]:
        for x in range(self.p):
            for y in range(self.p):
                yield FiniteFieldElement(self, x, y)


class SeriesElement(RingElement):
    """sum_k c_k pi^k mod pi^N, each c_k = (x, y) in F_p[w]."""
    __slots__ = ("coeffs",)

    def __init__(self, ring: "TruncatedSeriesQuadratic", coeffs):
        super().__init__(ring)
        p = ring.p
        object.__setattr__(self, "coeffs", tuple((x % p, y % p) for x, y in coeffs))

    def __repr__(self) -> str:
        return " + ".join(f"({x}+{y}w)pi^{k}" for k, (x, y) in enumerate(self.coeffs))

    def _key(self) -> Tuple:
        return self.coeffs

    def _add(self, other):
        p = self.ring.p
        return SeriesElement(self.ring, [_fq_add(p, a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def _mul(self, other):
        p, d, precision = self.ring.p, self.ring.d, self.ring.precision
        out = [(0, 0)] * precision
        for i, a in enumerate(self.coeffs):
            if a == (0, 0):
                continue
            for j in range(precision - i):
                b = other.coeffs[j]
                if b != (0, 0):
                    out[i + j] = _fq_add(p, out[i + j], _fq_mul(p, d, a, b))
        return SeriesElement(self.ring, out)

    def _neg(self):
        return SeriesElement(self.ring, [(-x, -y) for x, y in self.coeffs])

    def _inverse(self):
        p, d = self.ring.p, self.ring.d
        lead_inv = _fq_inv(p, d, self.coeffs[0])
        out = [lead_inv]
        for k in range(1, self.ring.precision):
            acc = (0, 0)
            for i in range(1, k + 1):
                acc = _fq_add(p, acc, _fq_mul(p, d, self.coeffs[i], out[k - i]))
            out.append(_fq_mul(p, d, (-lead_inv[0], -lead_inv[1]), acc))
        return SeriesElement(self.ring, out)

    def sigma(self):
        return SeriesElement(self.ring, [(x, -y) for x, y in self.coeffs])

    def is_unit(self) -> bool:
        return self.coeffs[0] != (0, 0)

    def to_dict(self) -> dict:
        return {"coeffs": [[x, y] for x, y in self.coeffs]}


class TruncatedSeriesQuadratic(InvolutiveRing):
    def __init__(self, descriptor: DescriptorSchema):
        super().__init__(descriptor)
        self.p = descriptor.p
        self.d = descriptor.d
        self.precision = descriptor.precision

    @property
    def residue_char(self) -> int:
        return self.p

    def _constant(self, pair: Tuple[int, int]) -> SeriesElement:
        return SeriesElement(self, [pair] + [(0, 0)] * (self.precision - 1))

    def from_int(self, k: int) -> SeriesElement:
        return self._constant((k, 0))

    def omega(self) -> SeriesElement:
        return self._constant((0, 1))

    def uniformizer(self) -> SeriesElement:
        coeffs = [(0, 0)] * self.precision
        if self.precision > 1:
            coeffs[1] = (1, 0)
        return SeriesElement(self, coeffs)

    def decode(self, payload: Any) -> SeriesElement:
        if isinstance(payload, dict) and "coeffs" in payload:
            payload = payload["coeffs"]
        if isinstance(payload, int) and not isinstance(payload, bool):
            return self.from_int(payload)
        if not isinstance(payload, (list, tuple)):
            raise InvalidElementError(f"Cannot read {payload!r} as a truncated series", payload=repr(payload))
        pairs = [_parse_pair(c) for c in payload][: self.precision]
        pairs += [(0, 0)] * (self.precision - len(pairs))
        return SeriesElement(self, pairs)

    def _draw(self, rng, fixed: bool, trace_zero: bool) -> SeriesElement:
        coeffs = []
        for _ in range(self.precision):
            x = 0 if trace_zero else int(rng.integers(0, self.p))
            y = 0 if fixed else int(rng.integers(0, self.p))
            coeffs.append((x, y))
        return SeriesElement(self, coeffs)

    def random_element(self, rng):
        return self._draw(rng, fixed=False, trace_zero=False)

    def random_fixed(self, rng):
        return self._draw(rng, fixed=True, trace_zero=False)

    def random_trace_zero(self, rng):
        return self._draw(rng, fixed=False, trace_zero=True)


class GaussianRationalElement(RingElement):
    """x + y*i with i^2 = -1."""
    __slots__ = ("x", "y")

    def __init__(self, ring: "RationalQuadratic", x, y):
        super().__init__(ring)
        object.__setattr__(self, "x", Fraction(x))
        object.__setattr__(self, "y", Fraction(y))

    def __repr__(self) -> str:
        return f"{self.x}+{self.y}i"

    def _key(self) -> Tuple:
        return (self.x, self.y)

    def _add(self, other):
        return GaussianRationalElement(self.ring, self.x + other.x, self.y + other.y)

    def _mul(self, other):
        return GaussianRationalElement(
            self.ring,
            self.x * other.x - self.y * other.y,
            self.x * other.y + self.y * other.x,
        )

    def _neg(self):
        return GaussianRationalElement(self.ring, -self.x, -self.y)

    def _inverse(self):
        norm = self.x * self.x + self.y * self.y
        return GaussianRationalElement(self.ring, self.x / norm, -self.y / norm)

    def sigma(self):
        return GaussianRationalElement(self.ring, self.x, -self.y)

    def is_unit(self) -> bool:
        return self.x != 0 or self.y != 0

    def to_dict(self) -> dict:
        return {
            "x": f"{self.x.numerator}/{self.x.denominator}",
            "y": f"{self.y.numerator}/{self.y.denominator}",
        }


class RationalQuadratic(InvolutiveRing):
    @property
    def residue_char(self) -> int:
        return 0

    def from_int(self, k: int) -> GaussianRationalElement:
        return GaussianRationalElement(self, k, 0)

    def omega(self) -> GaussianRationalElement:
        return GaussianRationalElement(self, 0, 1)

    def decode(self, payload: Any) -> GaussianRationalElement:
        if isinstance(payload, dict):
            payload = (payload.get("x"), payload.get("y"))
        if isinstance(payload, (int, str)) and not isinstance(payload, bool):
            payload = (payload, 0)
        try:
            x, y = payload
            return GaussianRationalElement(self, Fraction(x), Fraction(y))
        except (TypeError, ValueError, ZeroDivisionError, OverflowError) as e:
            raise InvalidElementError(f"Cannot read {payload!r} as x + y*i: {str(e)}", payload=repr(payload))

    def _fraction(self, rng) -> Fraction:
        numerator = int(rng.integers(-RATIONAL_NUMERATOR_BOUND, RATIONAL_NUMERATOR_BOUND + 1))
        denominator = int(rng.integers(1, RATIONAL_DENOMINATOR_BOUND + 1))
        return Fraction(numerator, denominator)

    def random_element(self, rng):
        return GaussianRationalElement(self, self._fraction(rng), self._fraction(rng))

    def random_fixed(self, rng):
        return GaussianRationalElement(self, self._fraction(rng), 0)

    def random_trace_zero(self, rng):
        return GaussianRationalElement(self, 0, self._fraction(rng))


def _validated(descriptor: DescriptorSchema) -> DescriptorSchema:
    if descriptor.backend == BackendTag.RATIONAL:
        return DescriptorSchema(backend=BackendTag.RATIONAL)

    p = descriptor.p
    if p is None:
        raise InvalidDescriptorError(f"{descriptor.backend.value} requires p")
    if p == 2:
        raise NonInvertibleTwoError(
            "p = 2 is excluded: the section requires residue characteristic other than 2",
            descriptor=descriptor.to_json_dict(),
        )
    if not isprime(p):
        raise InvalidDescriptorError(f"p = {p} is not prime", descriptor=descriptor.to_json_dict())

    d = smallest_non_residue(p) if descriptor.d is None else descriptor.d % p
    if legendre_symbol(d, p) != -1:
        raise InvalidDescriptorError(
            f"d = {descriptor.d} is not a quadratic non-residue modulo {p}",
            descriptor=descriptor.to_json_dict(),
        )

    precision = None
    if descriptor.backend == BackendTag.SERIES:
        precision = descriptor.precision
        if precision is None or precision < 1:
            raise InvalidDescriptorError(
                "The series backend needs a precision N >= 1",
                descriptor=descriptor.to_json_dict(),
            )
    return DescriptorSchema(backend=descriptor.backend, p=p, d=d, precision=precision)


_BACKENDS = {
    BackendTag.FINITE_FIELD: FiniteFieldQuadratic,
    BackendTag.SERIES: TruncatedSeriesQuadratic,
    BackendTag.RATIONAL: RationalQuadratic,
}


@lru_cache(maxsize=None)
def _build(descriptor: DescriptorSchema) -> InvolutiveRing:
    ring = _BACKENDS[descriptor.backend](descriptor)
    logger.debug(f"Constructed ring {ring!r}")
    return ring


def make_ring(descriptor: DescriptorSchema) -> InvolutiveRing:
    """Validate a descriptor and return the (shared) ring it names.

    Raises:
        NonInvertibleTwoError: p = 2 on a quadratic backend
        InvalidDescriptorError: p not prime, d a square, or N missing
    """
    return _build(_validated(descriptor))
