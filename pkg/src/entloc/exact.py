"""Exact ring arithmetic and sparse multivariate polynomials.

Coefficients are Gaussian rationals (complex numbers with rational real and
imaginary parts), optionally extended by sqrt(2) where symmetrized pair
amplitudes require it.  Polynomials store a map from exponent tuples to
coefficients and support the handful of ring operations the certificates
need; nothing is ever rounded.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeOverflowError


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, numbers.Integral):
        return Fraction(int(v))
    if isinstance(v, numbers.Real) and float(v).is_integer():
        return Fraction(int(float(v)))
    raise TypeError(f"cannot coerce {v!r} to an exact rational")


@dataclass(frozen=True)
class GaussianRational:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @classmethod
    def coerce(cls, v) -> "GaussianRational":
        if isinstance(v, GaussianRational):
            return v
        if isinstance(v, numbers.Complex) and not isinstance(v, numbers.Real):
            return cls(_frac(v.real), _frac(v.imag))
        return cls(_frac(v))

    def __add__(self, other) -> "GaussianRational":
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other) -> "GaussianRational":
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other) -> "GaussianRational":
        return GaussianRational.coerce(other) + (-self)

    def __mul__(self, other) -> "GaussianRational":
        o = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __str__(self) -> str:
        return f"({self.re})+({self.im})i"


GR_ZERO = GaussianRational()
GR_ONE = GaussianRational(Fraction(1))
GR_I = GaussianRational(Fraction(0), Fraction(1))


@dataclass(frozen=True)
class RootTwoRational:
    """Element ``rat + irr*sqrt(2)`` of the quadratic extension of the ring."""

    rat: GaussianRational = GR_ZERO
    irr: GaussianRational = GR_ZERO

    @classmethod
    def coerce(cls, v) -> "RootTwoRational":
        if isinstance(v, RootTwoRational):
            return v
        return cls(GaussianRational.coerce(v))

    def __add__(self, other) -> "RootTwoRational":
        o = RootTwoRational.coerce(other)
        return RootTwoRational(self.rat + o.rat, self.irr + o.irr)

    __radd__ = __add__

    def __neg__(self) -> "RootTwoRational":
        return RootTwoRational(-self.rat, -self.irr)

    def __sub__(self, other) -> "RootTwoRational":
        return self + (-RootTwoRational.coerce(other))

    def __rsub__(self, other) -> "RootTwoRational":
        return RootTwoRational.coerce(other) + (-self)

    def __mul__(self, other) -> "RootTwoRational":
        o = RootTwoRational.coerce(other)
        return RootTwoRational(
            self.rat * o.rat + GaussianRational(Fraction(2)) * self.irr * o.irr,
            self.rat * o.irr + self.irr * o.rat,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "RootTwoRational":
        # complex conjugation; sqrt(2) is real
        return RootTwoRational(self.rat.conjugate(), self.irr.conjugate())

    @property
    def is_zero(self) -> bool:
        return self.rat.is_zero and self.irr.is_zero

    def to_complex(self) -> complex:
        return self.rat.to_complex() + (2.0**0.5) * self.irr.to_complex()

    def __str__(self) -> str:
        return f"{self.rat}+[{self.irr}]sqrt2"


SQRT2 = RootTwoRational(GR_ZERO, GR_ONE)
HALF_SQRT2 = RootTwoRational(GR_ZERO, GaussianRational(Fraction(1, 2)))


def conjugate_name(name: str) -> str:
    return name[:-1] if name.endswith("*") else name + "*"


class MultiPoly:
    """Sparse exact polynomial in named variables.

    Conjugated variables are independent variables whose names end in ``*``;
    :meth:`conjugate` swaps each pair and conjugates coefficients.  A degree
    bound, when set, is enforced after every product and propagated to
    results: exceeding it raises, because in this package any overflow means
    a construction bug rather than a legitimate polynomial.
    """

    __slots__ = ("variables", "terms", "max_degree")

    def __init__(self, variables: tuple[str, ...], terms: dict | None = None,
                 max_degree: int | None = None):
        self.variables = tuple(variables)
        self.max_degree = max_degree
        clean = {}
        for exps, coeff in (terms or {}).items():
            if len(exps) != len(self.variables):
                raise ValueError("exponent tuple does not match the variable list")
            if not coeff.is_zero:
                clean[tuple(int(e) for e in exps)] = coeff
        self.terms = clean
        if max_degree is not None:
            for exps in clean:
                if sum(exps) > max_degree:
                    raise DegreeOverflowError(
                        f"monomial degree {sum(exps)} exceeds bound {max_degree}"
                    )

    # -- constructors --------------------------------------------------
    @classmethod
    def zero(cls, variables, max_degree=None) -> "MultiPoly":
        return cls(variables, {}, max_degree)

    @classmethod
    def const(cls, variables, coeff, max_degree=None) -> "MultiPoly":
        return cls(variables, {(0,) * len(variables): coeff}, max_degree)

    @classmethod
    def variable(cls, variables, name, coeff, max_degree=None) -> "MultiPoly":
        exps = [0] * len(variables)
        exps[tuple(variables).index(name)] = 1
        return cls(variables, {tuple(exps): coeff}, max_degree)

    # -- ring operations -------------------------------------------------
    def _check_compatible(self, other: "MultiPoly") -> None:
        if self.variables != other.variables:
            raise ValueError("polynomials are over different variable lists")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_compatible(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = terms.get(exps)
            terms[exps] = coeff if acc is None else acc + coeff
        return MultiPoly(self.variables, terms, self._merge_degree(other))

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(
            self.variables, {e: -c for e, c in self.terms.items()}, self.max_degree
        )

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_compatible(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                acc = terms.get(exps)
                terms[exps] = prod if acc is None else acc + prod
        return MultiPoly(self.variables, terms, self._merge_degree(other))

    def _merge_degree(self, other: "MultiPoly") -> int | None:
        if self.max_degree is None:
            return other.max_degree
        if other.max_degree is None:
            return self.max_degree
        return max(self.max_degree, other.max_degree)

    def conjugate(self) -> "MultiPoly":
        order = []
        for name in self.variables:
            partner = conjugate_name(name)
            if partner not in self.variables:
                raise ValueError(f"variable {name!r} has no conjugate partner")
            order.append(self.variables.index(partner))
        terms = {}
        for exps, coeff in self.terms.items():
            new = tuple(exps[order[k]] for k in range(len(exps)))
            terms[new] = coeff.conjugate()
        return MultiPoly(self.variables, terms, self.max_degree)

    # -- queries ---------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def leading_monomial(self) -> tuple[tuple[int, ...], object] | None:
        """First nonzero term in lexicographic exponent order."""
        items = self.sorted_terms()
        return items[0] if items else None

    def evaluate(self, values: dict[str, object]):
        """Exact evaluation; every variable (starred ones too) needs a value."""
        coerce = type(next(iter(self.terms.values()))) if self.terms else GaussianRational
        acc = coerce.coerce(0)
        for exps, coeff in self.terms.items():
            term = coeff
            for name, e in zip(self.variables, exps):
                v = coerce.coerce(values[name])
                for _ in range(e):
                    term = term * v
            acc = acc + term
        return acc

    def evaluate_complex(self, values: dict[str, complex]) -> complex:
        acc = 0j
        for exps, coeff in self.terms.items():
            term = coeff.to_complex()
            for name, e in zip(self.variables, exps):
                term *= values[name] ** e
            acc += term
        return acc

    def canonical_text(self) -> str:
        """Deterministic text form: sorted exponent tuples, exact coefficients."""
        if self.is_zero:
            return "0"
        parts = []
        for exps, coeff in self.sorted_terms():
            mono = " ".join(
                f"{name}^{e}" for name, e in zip(self.variables, exps) if e
            )
            parts.append(f"{mono or '1'}: {coeff}")
        return "; ".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({self.variables}, {len(self.terms)} terms)"
