"""Exact integer Laurent polynomials in q, with the bar involution q <-> q^-1.

Every coefficient appearing in this package (operator actions, canonical
basis entries, verification identities) lives in Z[q, q^-1], so the ring is
kept deliberately small and exact: sparse integer exponent->coefficient
maps, arbitrary-precision ints, no floats, no rational functions.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Tuple, Union


class ExactDivisionError(ArithmeticError):
    """A division that must be exact was not.  Always a bug signal upstream."""


Scalar = Union[int, "LaurentPoly"]


class LaurentPoly:
    """Immutable sparse Laurent polynomial with integer coefficients."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Union[dict, Iterable[Tuple[int, int]], int, None] = None):
        d: dict = {}
        if isinstance(coeffs, int):
            if coeffs:
                d[0] = coeffs
        elif coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for e, c in items:
                c = d.get(e, 0) + c
                if c:
                    d[e] = c
                elif e in d:
                    del d[e]
        object.__setattr__(self, "coeffs", d)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def q_power(cls, e: int, c: int = 1) -> "LaurentPoly":
        return cls({e: c})

    # -- ring structure ----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(tuple(sorted(self.coeffs.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __add__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly(other)
        d = dict(self.coeffs)
        for e, c in other.coeffs.items():
            c = d.get(e, 0) + c
            if c:
                d[e] = c
            elif e in d:
                del d[e]
        out = LaurentPoly()
        object.__setattr__(out, "coeffs", d)
        return out

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly(other)
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentPoly({e: c * other for e, c in self.coeffs.items()})
        d: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                c = d.get(e, 0) + c1 * c2
                if c:
                    d[e] = c
                elif e in d:
                    del d[e]
        out = LaurentPoly()
        object.__setattr__(out, "coeffs", d)
        return out

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative powers not supported; use bar() or q_power")
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    # -- involution and evaluation ------------------------------------------

    def bar(self) -> "LaurentPoly":
        """The bar involution q -> q^-1 (exponent negation)."""
        return LaurentPoly({-e: c for e, c in self.coeffs.items()})

    def evaluate(self, v: int = 1):
        """Evaluate at a nonzero integer, honouring negative exponents exactly.

        For v in {1, -1} the result is an int; otherwise the value must come
        out integral or a ValueError is raised.
        """
        if v == 0:
            raise ZeroDivisionError("cannot evaluate a Laurent polynomial at 0")
        if v == 1:
            return sum(self.coeffs.values())
        if v == -1:
            return sum(c if e % 2 == 0 else -c for e, c in self.coeffs.items())
        from fractions import Fraction

        total = sum(Fraction(v) ** e * c for e, c in self.coeffs.items())
        if total.denominator != 1:
            raise ValueError(f"evaluation at {v} is not integral")
        return int(total)

    # -- structure queries ---------------------------------------------------

    def degree(self):
        """Largest exponent, or None for the zero polynomial."""
        return max(self.coeffs) if self.coeffs else None

    def valuation(self):
        """Smallest exponent, or None for the zero polynomial."""
        return min(self.coeffs) if self.coeffs else None

    def is_bar_symmetric(self) -> bool:
        return all(self.coeffs.get(-e) == c for e, c in self.coeffs.items())

    def in_q_poly(self) -> bool:
        """True iff every exponent is strictly positive (element of q.Z[q])."""
        return all(e > 0 for e in self.coeffs)

    def has_negative_coefficient(self) -> bool:
        return any(c < 0 for c in self.coeffs.values())

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    # -- rendering -----------------------------------------------------------

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()!r})"

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self) -> str:
        """Sorted monomial list, e.g. ``q^-1 + 2 + 5*q``."""
        if not self.coeffs:
            return "0"
        pieces = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                body = str(abs(c))
            else:
                p = "q" if e == 1 else f"q^{e}"
                body = p if abs(c) == 1 else f"{abs(c)}*{p}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    def to_json(self) -> list:
        """Canonical form: [exponent, coefficient] pairs sorted by exponent."""
        return [[e, self.coeffs[e]] for e in sorted(self.coeffs)]

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        return cls([(int(e), int(c)) for e, c in data])


ZERO = LaurentPoly()
ONE = LaurentPoly(1)
Q = LaurentPoly.q_power(1)
QINV = LaurentPoly.q_power(-1)


def bar(p: LaurentPoly) -> LaurentPoly:
    return p.bar()


def quantum_int(m: int) -> LaurentPoly:
    """Balanced quantum integer q^(1-m) + q^(3-m) + ... + q^(m-1)."""
    if m < 1:
        raise ValueError(f"quantum integer needs m >= 1, got {m}")
    return LaurentPoly({e: 1 for e in range(1 - m, m, 2)})


def quantum_factorial(m: int) -> LaurentPoly:
    if m < 0:
        raise ValueError(f"quantum factorial needs m >= 0, got {m}")
    out = ONE
    for k in range(2, m + 1):
        out = out * quantum_int(k)
    return out


def quantum_binom(m: int, k: int) -> LaurentPoly:
    """Gaussian binomial coefficient; the division is exact by construction."""
    if not 0 <= k <= m:
        raise ValueError(f"quantum binomial needs 0 <= k <= m, got ({m}, {k})")
    return exact_div(quantum_factorial(m), quantum_factorial(k) * quantum_factorial(m - k))


def exact_div(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Quotient num/den, valid only when den divides num exactly in Z[q,q^-1].

    Inexact division raises ExactDivisionError with both operands; callers
    treat that as an internal fault, never as an expected outcome.
    """
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    if not num:
        return ZERO
    rem = dict(num.coeffs)
    den_c = den.coeffs
    den_deg = den.degree()
    den_lead = den_c[den_deg]
    min_quot_exp = num.valuation() - den.valuation()
    out: dict = {}
    while rem:
        deg = max(rem)
        qexp = deg - den_deg
        qc, r = divmod(rem[deg], den_lead)
        if r or qexp < min_quot_exp:
            raise ExactDivisionError(f"({num}) not divisible by ({den})")
        out[qexp] = qc
        for e, c in den_c.items():
            e2 = e + qexp
            v = rem.get(e2, 0) - c * qc
            if v:
                rem[e2] = v
            elif e2 in rem:
                del rem[e2]
    result = LaurentPoly(out)
    if result * den != num:
        raise ExactDivisionError(f"({num}) not divisible by ({den})")
    return result


def symmetric_truncation(p: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    """Split p = alpha + rest with bar(alpha) = alpha and rest in q.Z[q].

    The pair is unique: alpha is forced to contain every exponent <= 0 of p
    together with its mirror image.
    """
    alpha: dict = {}
    for e, c in p.coeffs.items():
        if e < 0:
            alpha[e] = c
            alpha[-e] = c
        elif e == 0:
            alpha[0] = c
    sym = LaurentPoly(alpha)
    return sym, p - sym


def positive_part_of_antisymmetric(p: LaurentPoly) -> LaurentPoly:
    """For bar-antisymmetric p (bar(p) = -p), the unique x in q.Z[q] with
    x - bar(x) = p."""
    if p.bar() != -p:
        raise ValueError(f"({p}) is not bar-antisymmetric")
    return LaurentPoly({e: c for e, c in p.coeffs.items() if e > 0})
