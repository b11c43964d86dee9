"""Deterministic generation of homogeneous test series.

Used by the checkers (Leibniz sampling, oracle trials) and by the test
suite.  Everything is driven by an explicit ``random.Random`` so identical
seeds give identical samples.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence

from .graded_core import (
    Bigrading,
    GradedVariable,
    Monomial,
    Series,
    monomial_bigrading,
)


def enumerate_monomials(variables: Sequence[GradedVariable], max_degree: int,
                        max_exponent: Optional[int] = None) -> List[Monomial]:
    """All canonical monomials of total degree <= max_degree (odd exponents capped at 1)."""
    ordered = sorted(set(variables), key=lambda v: v.key)
    out: List[Monomial] = [()]
    for degree in range(1, max_degree + 1):
        for combo in itertools.combinations_with_replacement(ordered, degree):
            counts: Dict[GradedVariable, int] = {}
            ok = True
            for var in combo:
                counts[var] = counts.get(var, 0) + 1
                if var.parity and counts[var] > 1:
                    ok = False
                    break
                if max_exponent is not None and counts[var] > max_exponent:
                    ok = False
                    break
            if ok:
                out.append(tuple(sorted(counts.items(), key=lambda kv: kv[0].key)))
    return out


def bucket_by_bigrading(monomials: Iterable[Monomial]) -> Dict[Bigrading, List[Monomial]]:
    buckets: Dict[Bigrading, List[Monomial]] = {}
    for monomial in monomials:
        buckets.setdefault(monomial_bigrading(monomial), []).append(monomial)
    return buckets


def small_rational(rng: random.Random) -> Fraction:
    numerator = rng.choice([n for n in range(-6, 7) if n != 0])
    denominator = rng.choice([1, 1, 1, 2, 3])
    return Fraction(numerator, denominator)


def random_homogeneous(variables: Sequence[GradedVariable], rng: random.Random,
                       max_degree: int = 2, parity: Optional[int] = None,
                       weight: Optional[int] = None, max_terms: int = 3) -> Series:
    """A random homogeneous series; zero if no monomial fits the constraints."""
    buckets = bucket_by_bigrading(enumerate_monomials(variables, max_degree))
    eligible = [
        (grade, monos) for grade, monos in sorted(
            buckets.items(), key=lambda kv: (kv[0].parity, kv[0].weight))
        if (parity is None or grade.parity == parity % 2)
        and (weight is None or grade.weight == weight)
    ]
    if not eligible:
        return Series.zero()
    _, monomials = rng.choice(eligible)
    count = min(len(monomials), rng.randint(1, max_terms))
    chosen = rng.sample(monomials, count)
    series = Series({m: small_rational(rng) for m in chosen})
    if series.is_zero:
        series = Series({monomials[0]: Fraction(1)})
    return series


def homogeneous_pool(variables: Sequence[GradedVariable], rng: random.Random,
                     size: int, max_degree: int = 2) -> List[Series]:
    """A pool of nonzero homogeneous series covering several bigradings."""
    pool: List[Series] = []
    attempts = 0
    while len(pool) < size and attempts < size * 20:
        attempts += 1
        candidate = random_homogeneous(variables, rng, max_degree)
        if not candidate.is_zero:
            pool.append(candidate)
    return pool
