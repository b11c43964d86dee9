"""Brute-force evaluation backend over a finite Grassmann algebra.

Graded expressions are evaluated by sending every variable to a concrete
multivector with rational coefficients: even variables to even multivectors,
odd variables to odd ones.  The arithmetic here is deliberately independent
of the symbolic kernel (subset-keyed multivectors, merge signs computed from
generator indices), so agreement between the two paths is evidence of
correctness rather than of shared code.

``identity_check`` never proves an identity; it reports "no counterexample
in N trials" with the seed that produced the trials.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional

from .errors import MissingBinding, ParityViolation
from .graded_core import GradedVariable, Series
from .report import Report

# A multivector is a mapping from a frozenset of generator indices to a
# rational coefficient.


class GrassmannElement:
    """An element of the Grassmann algebra on ``generator_count`` generators."""

    __slots__ = ("generator_count", "_parts")

    def __init__(self, generator_count: int,
                 parts: Optional[Mapping[frozenset, Fraction]] = None):
        self.generator_count = generator_count
        clean: Dict[frozenset, Fraction] = {}
        for subset, coeff in (parts or {}).items():
            coeff = Fraction(coeff)
            if coeff:
                clean[frozenset(subset)] = coeff
        self._parts = clean

    @classmethod
    def scalar(cls, generator_count: int, value) -> "GrassmannElement":
        return cls(generator_count, {frozenset(): Fraction(value)})

    @classmethod
    def generator(cls, generator_count: int, index: int) -> "GrassmannElement":
        if not 0 <= index < generator_count:
            raise ValueError(f"generator index {index} out of range")
        return cls(generator_count, {frozenset([index]): Fraction(1)})

    @property
    def is_zero(self) -> bool:
        return not self._parts

    def parity(self) -> Optional[int]:
        """0 or 1 if homogeneous in multivector-degree parity, else None."""
        if not self._parts:
            return None
        parities = {len(s) % 2 for s in self._parts}
        return parities.pop() if len(parities) == 1 else None

    def __add__(self, other: "GrassmannElement") -> "GrassmannElement":
        parts = dict(self._parts)
        for subset, coeff in other._parts.items():
            total = parts.get(subset, Fraction(0)) + coeff
            if total:
                parts[subset] = total
            else:
                parts.pop(subset, None)
        return GrassmannElement(self.generator_count, parts)

    def __neg__(self) -> "GrassmannElement":
        return GrassmannElement(self.generator_count,
                                {s: -c for s, c in self._parts.items()})

    def __sub__(self, other: "GrassmannElement") -> "GrassmannElement":
        return self + (-other)

    def scaled(self, value) -> "GrassmannElement":
        value = Fraction(value)
        return GrassmannElement(self.generator_count,
                                {s: c * value for s, c in self._parts.items()})

    def __mul__(self, other: "GrassmannElement") -> "GrassmannElement":
        parts: Dict[frozenset, Fraction] = {}
        for sa, ca in self._parts.items():
            for sb, cb in other._parts.items():
                if sa & sb:
                    continue
                sign = _merge_sign(sa, sb)
                key = sa | sb
                total = parts.get(key, Fraction(0)) + sign * ca * cb
                if total:
                    parts[key] = total
                else:
                    parts.pop(key, None)
        return GrassmannElement(self.generator_count, parts)

    def __pow__(self, exponent: int) -> "GrassmannElement":
        result = GrassmannElement.scalar(self.generator_count, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, GrassmannElement) and self._parts == other._parts

    def __hash__(self):
        return hash(frozenset(self._parts.items()))

    def __str__(self) -> str:
        if not self._parts:
            return "0"
        chunks = []
        for subset in sorted(self._parts, key=lambda s: (len(s), sorted(s))):
            coeff = self._parts[subset]
            body = " * ".join(f"th{i}" for i in sorted(subset)) or "1"
            if body == "1":
                chunks.append(str(coeff))
            elif coeff == 1:
                chunks.append(body)
            elif coeff == -1:
                chunks.append(f"-{body}")
            else:
                chunks.append(f"{coeff} * {body}")
        return " + ".join(chunks)

    __repr__ = __str__


def _merge_sign(left: frozenset, right: frozenset) -> int:
    """Sign of sorting the concatenation of two disjoint sorted generator blocks."""
    inversions = 0
    for i in left:
        for j in right:
            if i > j:
                inversions += 1
    return -1 if inversions % 2 else 1


class Assignment:
    """A parity-respecting map from graded variables to Grassmann elements."""

    def __init__(self, generator_count: int,
                 values: Mapping[GradedVariable, GrassmannElement]):
        self.generator_count = generator_count
        self.values = dict(values)
        for var, element in self.values.items():
            parity = element.parity()
            if not element.is_zero and parity != var.parity:
                raise ParityViolation(
                    f"variable {var.name} (parity {var.parity}) assigned an "
                    f"element of parity {parity}")

    def __getitem__(self, var: GradedVariable) -> GrassmannElement:
        try:
            return self.values[var]
        except KeyError:
            raise MissingBinding(f"no assignment for variable {var.name}") from None

    def describe(self) -> str:
        pieces = sorted(f"{v.name} -> {e}" for v, e in self.values.items())
        return "; ".join(pieces)


def evaluate(series: Series, assignment: Assignment) -> GrassmannElement:
    """Substitute and multiply in the Grassmann algebra."""
    n = assignment.generator_count
    total = GrassmannElement(n)
    for monomial, coeff in series.items():
        piece = GrassmannElement.scalar(n, coeff)
        for var, exp in monomial:
            piece = piece * (assignment[var] ** exp)
            if piece.is_zero:
                break
        total = total + piece
    return total


def random_assignment(variables: Iterable[GradedVariable], generator_count: int,
                      rng: random.Random) -> Assignment:
    """Draw a random parity-respecting assignment with small rational entries.

    Odd variables go to single generators scaled by rationals; when there are
    enough generators each odd variable gets its own, which is what makes
    sign errors visible.  Even variables get a scalar plus, sometimes, a
    two-generator term.
    """
    variables = sorted(set(variables), key=lambda v: v.key)
    odd_vars = [v for v in variables if v.parity]
    indices = list(range(generator_count))
    if len(odd_vars) <= generator_count:
        chosen = rng.sample(indices, len(odd_vars))
    else:
        chosen = [rng.choice(indices) for _ in odd_vars]
    values: Dict[GradedVariable, GrassmannElement] = {}
    for var, idx in zip(odd_vars, chosen):
        scale = _random_rational(rng)
        values[var] = GrassmannElement.generator(generator_count, idx).scaled(scale)
    for var in variables:
        if var.parity:
            continue
        element = GrassmannElement.scalar(generator_count, _random_rational(rng))
        if generator_count >= 2 and rng.random() < 0.5:
            i, j = rng.sample(indices, 2)
            body = (GrassmannElement.generator(generator_count, min(i, j))
                    * GrassmannElement.generator(generator_count, max(i, j)))
            element = element + body.scaled(_random_rational(rng))
        values[var] = element
    return Assignment(generator_count, values)


def _random_rational(rng: random.Random) -> Fraction:
    numerator = rng.choice([n for n in range(-9, 10) if n != 0])
    denominator = rng.randint(1, 9)
    return Fraction(numerator, denominator)


def suggested_generator_count(*series: Series) -> int:
    variables = set()
    max_fiber = 0
    for s in series:
        variables |= s.variables()
        max_fiber = max(max_fiber, s.fiber_degree())
    odd = sum(1 for v in variables if v.parity)
    return max(odd + max_fiber, 2)


def identity_check(lhs: Series, rhs: Series, trials: int = 100,
                   generators: Optional[int] = None,
                   seed: int = 0) -> Report:
    """Compare two series at random assignments; disagreements become failures."""
    if generators is None:
        generators = suggested_generator_count(lhs, rhs)
    rng = random.Random(seed)
    variables = lhs.variables() | rhs.variables()
    report = Report(f"oracle identity check (seed {seed}, {trials} trials, "
                    f"{generators} generators)")
    failures = 0
    for trial in range(trials):
        assignment = random_assignment(variables, generators, rng)
        left = evaluate(lhs, assignment)
        right = evaluate(rhs, assignment)
        if left != right:
            failures += 1
            report.fail("oracle-trial", location=f"trial {trial}",
                        expected=str(right), actual=str(left),
                        notes=assignment.describe())
            if failures >= 5:
                report.info("oracle-trial", notes="further disagreements suppressed")
                break
    if failures == 0:
        report.ok("oracle-agreement",
                  notes=f"no counterexample in {trials} trials")
    return report
