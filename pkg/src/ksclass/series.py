"""
Truncated complex power series.

A :class:`TruncatedSeries` stores the coefficients c_0..c_N of
f(z) = sum c_n z^n. Everything beyond index N is unknown, so binary
operations never report more coefficients than both operands determine.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Iterable, Union

import numpy as np

from .errors import DivisionByNonUnit, InvariantViolation, NonDivisibleByZPower

DEFAULT_ORDER = 64
UNIT_TOL = 1e-12
TAG_TOL = 1e-10

Number = Union[int, float, complex]


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Coefficients c_0..c_N of a power series, immutable.

    ``tag`` is a free-form role label. The tags ``"normalized"``
    (c_0 = 0, c_1 = 1) and ``"P-candidate"`` (c_0 = 1) are checked on
    construction.
    """

    coeffs: np.ndarray
    tag: str = ""

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128).ravel()
        if c.size == 0:
            raise ValueError("a series needs at least one coefficient")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)
        if self.tag == "normalized":
            if c.size < 2 or abs(c[0]) > TAG_TOL or abs(c[1] - 1) > TAG_TOL:
                raise InvariantViolation("normalized series needs c_0 = 0 and c_1 = 1")
        elif self.tag == "P-candidate":
            if abs(c[0] - 1) > TAG_TOL:
                raise InvariantViolation("P-candidate series needs c_0 = 1")

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Number], order: int | None = None,
                    tag: str = "") -> "TruncatedSeries":
        """Build from a coefficient list, zero-padding (exactly) up to ``order``."""
        c = np.asarray(list(coeffs), dtype=np.complex128)
        if order is not None:
            if order + 1 < c.size:
                raise ValueError(f"{c.size} coefficients do not fit order {order}")
            c = np.concatenate([c, np.zeros(order + 1 - c.size, dtype=np.complex128)])
        return cls(c, tag)

    @classmethod
    def constant(cls, value: Number, order: int = DEFAULT_ORDER, tag: str = "") -> "TruncatedSeries":
        return cls.from_coeffs([value], order, tag)

    @classmethod
    def monomial(cls, n: int, order: int = DEFAULT_ORDER, coeff: Number = 1.0,
                 tag: str = "") -> "TruncatedSeries":
        c = np.zeros(order + 1, dtype=np.complex128)
        c[n] = coeff
        return cls(c, tag)

    def with_tag(self, tag: str) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs, tag)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1], self.tag)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __repr__(self):
        head = ", ".join(f"{c:.6g}" for c in self.coeffs[:6])
        more = ", ..." if self.order >= 6 else ""
        return f"TruncatedSeries(order={self.order}, tag={self.tag!r}, [{head}{more}])"

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            return add(self, other)
        c = self.coeffs.copy()
        c[0] += other
        return TruncatedSeries(c)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        return TruncatedSeries(self.coeffs * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return divide(self, other)
        return TruncatedSeries(self.coeffs / other)

    def max_abs_diff(self, other: "TruncatedSeries") -> float:
        """Largest coefficient difference over the common index range."""
        n = min(self.order, other.order) + 1
        return float(np.max(np.abs(self.coeffs[:n] - other.coeffs[:n])))

    def to_dict(self) -> dict[str, Any]:
        return {
            "order": self.order,
            "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs],
            "tag": self.tag,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "TruncatedSeries":
        try:
            order = int(data["order"])
            raw = data["coeffs"]
            coeffs = [complex(float(re), float(im)) for re, im in raw]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed series JSON: {exc}") from exc
        if len(coeffs) != order + 1:
            raise ValueError(f"series JSON lists {len(coeffs)} coefficients for order {order}")
        return cls(np.array(coeffs), str(data.get("tag", "")))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "TruncatedSeries":
        return cls.from_dict(json.loads(text))


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Coefficientwise sum; the shorter operand is zero-padded."""
    n = max(a.order, b.order) + 1
    c = np.zeros(n, dtype=np.complex128)
    c[: a.order + 1] += a.coeffs
    c[: b.order + 1] += b.coeffs
    return TruncatedSeries(c)


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, truncated to ``min(a.order, b.order)``."""
    n = min(a.order, b.order) + 1
    return TruncatedSeries(np.convolve(a.coeffs[:n], b.coeffs[:n])[:n])


def divide(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Quotient q with ``mul(q, b) == a`` to truncation order.

    Common factors z^m must be removed with :func:`shift` first; the
    divisor's constant term has to be a unit.
    """
    b0 = b.coeffs[0]
    if abs(b0) <= UNIT_TOL:
        raise DivisionByNonUnit(f"divisor constant term {b0!r} is not a unit")
    n = min(a.order, b.order) + 1
    ac, bc = a.coeffs[:n], b.coeffs[:n]
    q = np.zeros(n, dtype=np.complex128)
    q[0] = ac[0] / b0
    for i in range(1, n):
        q[i] = (ac[i] - np.dot(bc[1 : i + 1], q[i - 1 :: -1])) / b0
    return TruncatedSeries(q)


def differentiate(a: TruncatedSeries) -> TruncatedSeries:
    if a.order < 1:
        raise ValueError("differentiate needs order >= 1")
    n = np.arange(1, a.order + 1)
    return TruncatedSeries(a.coeffs[1:] * n)


def shift(a: TruncatedSeries, m: int, tol: float = UNIT_TOL) -> TruncatedSeries:
    """Multiply by z^m (m >= 0) or divide by z^|m| (m < 0)."""
    if m >= 0:
        return TruncatedSeries(np.concatenate([np.zeros(m, dtype=np.complex128), a.coeffs]))
    m = -m
    if m > a.order:
        raise NonDivisibleByZPower(f"cannot divide an order-{a.order} series by z^{m}")
    low = np.abs(a.coeffs[:m])
    if np.any(low > tol):
        raise NonDivisibleByZPower(
            f"coefficient of modulus {low.max():.3g} below index {m} blocks division by z^{m}"
        )
    return TruncatedSeries(a.coeffs[m:])


def rotate(a: TruncatedSeries, theta: float) -> TruncatedSeries:
    """e^{-i theta} a(e^{i theta} z), i.e. c_n -> e^{i(n-1)theta} c_n."""
    n = np.arange(a.order + 1)
    return TruncatedSeries(a.coeffs * np.exp(1j * (n - 1) * theta))


def binomial_series(c: float, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Coefficients of (1 - z)^{-c}."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    out = np.empty(order + 1, dtype=np.complex128)
    out[0] = 1.0
    for n in range(order):
        out[n + 1] = out[n] * (c + n) / (n + 1)
    return TruncatedSeries(out)
