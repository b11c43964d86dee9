"""Exact arithmetic over Z2 x Z-graded supercommuting variables.

Conventions, fixed once and used everywhere:

* parity (0 = even, 1 = odd) drives every sign; weight is a bookkeeping
  integer and never produces a sign;
* all derivatives are left derivatives and all coordinates are left
  coordinates;
* monomials are kept in the canonical order given by the key
  ``(fiber_degree, declaration index, name)``, so base variables always
  precede momenta and antimomenta;
* coefficients are exact rationals; there is no floating point anywhere.

Odd variables square to zero and are capped at exponent one structurally:
``normalize_product`` returns the zero term as soon as an odd variable
repeats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Tuple, Union

from .errors import GradingMismatch, InhomogeneousSeries, ZeroSeries

EVEN = 0
ODD = 1

Rational = Union[int, Fraction]


def _frac(value: Rational) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {value!r}")


@dataclass(frozen=True)
class Bigrading:
    """A (parity, weight) pair; addition is componentwise (parity mod 2)."""

    parity: int
    weight: int

    def __add__(self, other: "Bigrading") -> "Bigrading":
        return Bigrading((self.parity + other.parity) % 2, self.weight + other.weight)

    def __str__(self) -> str:
        return f"(parity {self.parity}, weight {self.weight})"


@dataclass(frozen=True)
class GradedVariable:
    """A named symbol with parity, weight and an auxiliary fiber degree.

    ``fiber_degree`` is 0 for base coordinates and 1 for momenta and
    antimomenta; together with the declaration ``index`` it fixes the
    canonical monomial order.
    """

    name: str
    parity: int
    weight: int = 0
    fiber_degree: int = 0
    index: int = 0

    def __post_init__(self):
        if self.parity not in (0, 1):
            raise ValueError(f"parity must be 0 or 1, got {self.parity}")
        if self.fiber_degree not in (0, 1):
            raise ValueError(f"fiber_degree must be 0 or 1, got {self.fiber_degree}")

    @property
    def key(self) -> Tuple[int, int, str]:
        return (self.fiber_degree, self.index, self.name)

    @property
    def bigrading(self) -> Bigrading:
        return Bigrading(self.parity, self.weight)

    def __repr__(self) -> str:
        return self.name


# A monomial is a tuple of (variable, exponent) pairs in canonical order.
Monomial = Tuple[Tuple[GradedVariable, int], ...]


def monomial_bigrading(monomial: Monomial) -> Bigrading:
    parity = 0
    weight = 0
    for var, exp in monomial:
        parity += var.parity * exp
        weight += var.weight * exp
    return Bigrading(parity % 2, weight)


def monomial_fiber_degree(monomial: Monomial) -> int:
    return sum(exp for var, exp in monomial if var.fiber_degree)


def monomial_sort_key(monomial: Monomial):
    return tuple((var.key, exp) for var, exp in monomial)


@dataclass(frozen=True)
class Term:
    """A coefficient together with a canonical monomial."""

    coefficient: Fraction
    monomial: Monomial

    @property
    def is_zero(self) -> bool:
        return self.coefficient == 0


ZERO_TERM = Term(Fraction(0), ())


def normalize_product(factors: Sequence[GradedVariable]) -> Term:
    """Sort a factor sequence into canonical order with its Koszul sign.

    Every adjacent swap of two odd factors flips the sign; swapping an even
    factor past anything is free.  A repeated odd factor kills the term.
    """
    arr = list(factors)
    sign = 1
    for i in range(1, len(arr)):
        j = i
        while j > 0 and arr[j - 1].key > arr[j].key:
            if arr[j - 1].parity and arr[j].parity:
                sign = -sign
            arr[j - 1], arr[j] = arr[j], arr[j - 1]
            j -= 1
    merged: list = []
    for var in arr:
        if merged and merged[-1][0] == var:
            if var.parity:
                return ZERO_TERM
            merged[-1][1] += 1
        else:
            merged.append([var, 1])
    return Term(Fraction(sign), tuple((v, e) for v, e in merged))


def merge_monomials(a: Monomial, b: Monomial) -> Optional[Tuple[int, Monomial]]:
    """Multiply two canonical monomials; returns (sign, monomial) or None if zero.

    The sign counts the odd-odd inversions created by interleaving: for each
    odd factor of ``a`` every odd factor of ``b`` that must move past it
    contributes one transposition.
    """
    sign = 1
    odd_a = [var.key for var, _ in a if var.parity]
    if odd_a:
        for var, _ in b:
            if var.parity:
                key = var.key
                behind = sum(1 for k in odd_a if k > key)
                if behind % 2:
                    sign = -sign
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            if va.parity:
                return None
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va.key <= vb.key:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return sign, tuple(out)


def _min_trunc(*orders: Optional[int]) -> Optional[int]:
    present = [o for o in orders if o is not None]
    return min(present) if present else None


class Series:
    """A finite sum of exact-rational terms over canonical monomials.

    ``truncation_order`` is the maximal total fiber degree retained; ``None``
    means the series is exact.  Instances are immutable.
    """

    __slots__ = ("_terms", "_trunc")

    def __init__(self, terms: Optional[Mapping[Monomial, Rational]] = None,
                 truncation_order: Optional[int] = None):
        clean = {}
        for monomial, coeff in (terms or {}).items():
            coeff = _frac(coeff)
            if coeff == 0:
                continue
            if truncation_order is not None and monomial_fiber_degree(monomial) > truncation_order:
                continue
            clean[monomial] = coeff
        self._terms = clean
        self._trunc = truncation_order

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, truncation_order: Optional[int] = None) -> "Series":
        return cls({}, truncation_order)

    @classmethod
    def constant(cls, value: Rational) -> "Series":
        return cls({(): _frac(value)})

    @classmethod
    def one(cls) -> "Series":
        return cls.constant(1)

    @classmethod
    def variable(cls, var: GradedVariable) -> "Series":
        return cls({((var, 1),): Fraction(1)})

    @classmethod
    def monomial(cls, factors: Sequence[GradedVariable], coeff: Rational = 1) -> "Series":
        term = normalize_product(factors)
        if term.is_zero:
            return cls.zero()
        return cls({term.monomial: term.coefficient * _frac(coeff)})

    # -- inspection --------------------------------------------------------

    @property
    def truncation_order(self) -> Optional[int]:
        return self._trunc

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def items(self):
        """Terms in canonical order (deterministic)."""
        return sorted(self._terms.items(), key=lambda kv: monomial_sort_key(kv[0]))

    def coefficient(self, monomial: Monomial) -> Fraction:
        return self._terms.get(monomial, Fraction(0))

    def variables(self) -> set:
        return {var for monomial in self._terms for var, _ in monomial}

    def fiber_degree(self) -> int:
        if not self._terms:
            return 0
        return max(monomial_fiber_degree(m) for m in self._terms)

    def bigrading(self) -> Bigrading:
        if not self._terms:
            raise ZeroSeries("the zero series has no bigrading")
        grades = {monomial_bigrading(m) for m in self._terms}
        if len(grades) > 1:
            listed = ", ".join(sorted(str(g) for g in grades))
            raise InhomogeneousSeries(f"series mixes bigradings {listed}")
        return grades.pop()

    def is_homogeneous(self, parity: Optional[int] = None,
                       weight: Optional[int] = None) -> bool:
        if not self._terms:
            return True
        try:
            grade = self.bigrading()
        except InhomogeneousSeries:
            return False
        if parity is not None and grade.parity != parity % 2:
            return False
        if weight is not None and grade.weight != weight:
            return False
        return True

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "Series":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        trunc = _min_trunc(self._trunc, other._trunc)
        merged = dict(self._terms)
        for monomial, coeff in other._terms.items():
            total = merged.get(monomial, Fraction(0)) + coeff
            if total == 0:
                merged.pop(monomial, None)
            else:
                merged[monomial] = total
        return Series(merged, trunc)

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series({m: -c for m, c in self._terms.items()}, self._trunc)

    def __sub__(self, other) -> "Series":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Series":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "Series":
        if isinstance(other, (int, Fraction)):
            c = _frac(other)
            if c == 0:
                return Series.zero(self._trunc)
            return Series({m: coeff * c for m, coeff in self._terms.items()}, self._trunc)
        if not isinstance(other, Series):
            return NotImplemented
        trunc = _min_trunc(self._trunc, other._trunc)
        out: dict = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                merged = merge_monomials(ma, mb)
                if merged is None:
                    continue
                sign, monomial = merged
                if trunc is not None and monomial_fiber_degree(monomial) > trunc:
                    continue
                total = out.get(monomial, Fraction(0)) + sign * ca * cb
                if total == 0:
                    out.pop(monomial, None)
                else:
                    out[monomial] = total
        return Series(out, trunc)

    def __rmul__(self, other) -> "Series":
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other) -> "Series":
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / _frac(other))
        return NotImplemented

    def __pow__(self, exponent: int) -> "Series":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("series powers take a nonnegative integer exponent")
        result = Series.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Series.constant(other)
        if not isinstance(other, Series):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # -- calculus ----------------------------------------------------------

    def left_derivative(self, var: GradedVariable) -> "Series":
        out: dict = {}
        for monomial, coeff in self._terms.items():
            preceding_odd = 0
            for position, (factor, exp) in enumerate(monomial):
                if factor == var:
                    sign = -1 if (var.parity and preceding_odd % 2) else 1
                    if exp == 1:
                        reduced = monomial[:position] + monomial[position + 1:]
                    else:
                        reduced = (monomial[:position]
                                   + ((factor, exp - 1),)
                                   + monomial[position + 1:])
                    total = out.get(reduced, Fraction(0)) + coeff * exp * sign
                    if total == 0:
                        out.pop(reduced, None)
                    else:
                        out[reduced] = total
                    break
                preceding_odd += factor.parity * exp
        trunc = self._trunc
        if trunc is not None and var.fiber_degree:
            trunc = max(trunc - 1, 0)
        return Series(out, trunc)

    def substitute(self, bindings: Mapping[GradedVariable, "Series"]) -> "Series":
        normalized = {}
        for var, value in bindings.items():
            value = _coerce_strict(value)
            if not value.is_zero and not value.is_homogeneous(var.parity, var.weight):
                raise GradingMismatch(
                    f"binding for {var.name} must be zero or homogeneous of "
                    f"{var.bigrading}")
            normalized[var] = value
        trunc = _min_trunc(self._trunc,
                           *(v.truncation_order for v in normalized.values()))
        result = Series.zero()
        for monomial, coeff in self._terms.items():
            piece = Series.constant(coeff)
            for var, exp in monomial:
                factor = normalized.get(var)
                if factor is None:
                    factor = Series.variable(var)
                for _ in range(exp):
                    piece = piece * factor
                    if trunc is not None:
                        piece = piece.truncate(trunc)
                if piece.is_zero:
                    break
            result = result + piece
        if trunc is not None:
            result = result.truncate(trunc)
        return result

    def truncate(self, order: int) -> "Series":
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        return Series(self._terms, order)

    def without_truncation(self) -> "Series":
        return Series(self._terms, None)

    def filter_terms(self, keep) -> "Series":
        """Series of the terms whose monomial satisfies ``keep`` (metadata kept)."""
        return Series({m: c for m, c in self._terms.items() if keep(m)}, self._trunc)

    # -- formatting ----------------------------------------------------------

    def __str__(self) -> str:
        return format_series(self)

    def __repr__(self) -> str:
        return f"Series({format_series(self)})"


def _coerce(value) -> "Series":
    if isinstance(value, Series):
        return value
    if isinstance(value, (int, Fraction)):
        return Series.constant(value)
    return NotImplemented


def _coerce_strict(value) -> "Series":
    coerced = _coerce(value)
    if coerced is NotImplemented:
        raise TypeError(f"expected a Series or rational, got {value!r}")
    return coerced


# -- module-level operation names ------------------------------------------

def add(a: Series, b: Series) -> Series:
    return a + b


def mul(a: Series, b: Series) -> Series:
    return a * b


def bigrade(a: Series) -> Bigrading:
    return a.bigrading()


def left_derivative(a: Series, var: GradedVariable) -> Series:
    return a.left_derivative(var)


def substitute(a: Series, bindings: Mapping[GradedVariable, Series]) -> Series:
    return a.substitute(bindings)


def truncate(a: Series, order: int) -> Series:
    return a.truncate(order)


def format_monomial(monomial: Monomial) -> str:
    if not monomial:
        return "1"
    parts = []
    for var, exp in monomial:
        parts.append(var.name if exp == 1 else f"{var.name}^{exp}")
    return " * ".join(parts)


def format_series(series: Series) -> str:
    """Render in the interchange grammar; output re-parses to an equal series."""
    if series.is_zero:
        return "0"
    chunks = []
    for monomial, coeff in series.items():
        magnitude = abs(coeff)
        if not monomial:
            body = str(magnitude)
        elif magnitude == 1:
            body = format_monomial(monomial)
        else:
            body = f"{magnitude} * {format_monomial(monomial)}"
        if not chunks:
            chunks.append(body if coeff > 0 else f"-{body}")
        else:
            chunks.append(("+ " if coeff > 0 else "- ") + body)
    return " ".join(chunks)
