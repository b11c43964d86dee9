"""Higher derived brackets and the algebraic laws they must satisfy.

A bracket family can come from three sources:

* ``QFamily`` - nested commutators of a homological vector field with
  constant fields, evaluated at the origin;
* ``HamiltonianFamily`` - iterated canonical brackets with a master
  (anti)Hamiltonian, restricted to the base;
* ``ExplicitFamily`` - a table of structure constants, stored graded
  symmetrized (epsilon = 1) or antisymmetrized (epsilon = 0).

The checkers (`check_higher_jacobi`, `check_weights_parities`,
`check_leibniz`, `check_master`) never raise on a failed law; failures are
report entries.

Parity convention for masters, fixed here once: an S-infinity structure
(epsilon = 1) comes from an odd master Hamiltonian on T*M[1-k]; a
P-infinity structure (epsilon = 0) from an even master on Pi T*M[1-k].
These are the parities for which the weight/parity tables
(weights 2-n+k(n-1), parities eps(n+1)+n) and the Leibniz signs close up;
`check_master` reports the convention instead of rejecting the other parity,
since the master equation itself is meaningful either way.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import ChartMismatch, GradingMismatch, NotHomological
from .geometry import (
    Chart,
    CotangentChart,
    KIND_EVEN,
    VectorField,
    canonical_bracket,
    commutator,
    is_homological,
    restrict_to_base,
)
from .graded_core import Bigrading, GradedVariable, Series
from .report import Report
from .sampling import homogeneous_pool

DEFAULT_ARITY = 4


@dataclass(frozen=True)
class ShiftSignature:
    """The (epsilon, k) pair of a shifted structure; the chart shift is 1-k."""

    epsilon: int
    k: int

    def __post_init__(self):
        if self.epsilon not in (0, 1):
            raise ValueError("epsilon must be 0 or 1")

    @property
    def s(self) -> int:
        return 1 - self.k

    def bracket_weight(self, n: int) -> int:
        return 2 - n + self.k * (n - 1)

    def bracket_parity(self, n: int) -> int:
        return (self.epsilon * (n + 1) + n) % 2


@dataclass(frozen=True)
class BasisVector:
    name: str
    parity: int
    weight: int
    index: int


class SpaceBasis:
    """An ordered basis of a graded vector space."""

    def __init__(self, vectors: Sequence[BasisVector]):
        self.vectors = tuple(vectors)
        names = [v.name for v in self.vectors]
        if len(set(names)) != len(names):
            raise ValueError("basis names must be unique")
        for i, v in enumerate(self.vectors):
            if v.index != i:
                raise ValueError(f"basis vector {v.name} has index {v.index}, expected {i}")

    @classmethod
    def build(cls, specs: Sequence[Tuple[str, int, int]]) -> "SpaceBasis":
        return cls(tuple(BasisVector(name, parity, weight, i)
                         for i, (name, parity, weight) in enumerate(specs)))

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __getitem__(self, index: int) -> BasisVector:
        return self.vectors[index]

    def vector(self, name: str) -> BasisVector:
        for v in self.vectors:
            if v.name == name:
                return v
        raise KeyError(f"no basis vector named {name}")

    def parity_reversed(self) -> "SpaceBasis":
        return SpaceBasis(tuple(
            BasisVector(v.name, (v.parity + 1) % 2, v.weight, v.index)
            for v in self.vectors))

    def coordinate_bigrading(self, index: int, sig: ShiftSignature) -> Bigrading:
        """Bigrading of the i-th coordinate on Pi^{1+eps} V[1-k]."""
        v = self.vectors[index]
        flip = 1 if sig.epsilon == 0 else 0
        return Bigrading((v.parity + flip) % 2, -v.weight + sig.s)

    def chart(self, sig: ShiftSignature, names: Optional[Sequence[str]] = None,
              chart_name: str = "") -> Chart:
        """The coordinate chart of Pi^{1+eps} V[1-k]."""
        if names is None:
            prefix = "xi_" if sig.epsilon == 0 else "y_"
            names = [prefix + v.name for v in self.vectors]
        specs = []
        for i, coord_name in enumerate(names):
            grade = self.coordinate_bigrading(i, sig)
            specs.append((coord_name, grade.parity, grade.weight))
        return Chart.build(specs, chart_name)

    @classmethod
    def from_chart(cls, chart: Chart, sig: ShiftSignature,
                   prefix: str = "e_") -> "SpaceBasis":
        """Recover the basis underlying a Pi^{1+eps} V[1-k] coordinate chart."""
        flip = 1 if sig.epsilon == 0 else 0
        return cls(tuple(
            BasisVector(prefix + var.name, (var.parity + flip) % 2,
                        sig.s - var.weight, var.index)
            for var in chart.variables))


class Combination:
    """A rational combination of basis vectors."""

    __slots__ = ("basis", "coeffs")

    def __init__(self, basis: SpaceBasis,
                 coeffs: Optional[Mapping[int, Fraction]] = None):
        self.basis = basis
        self.coeffs = {i: Fraction(c) for i, c in (coeffs or {}).items() if c}

    @classmethod
    def of(cls, vector: BasisVector, basis: SpaceBasis,
           scale: Fraction = Fraction(1)) -> "Combination":
        return cls(basis, {vector.index: Fraction(scale)})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "Combination") -> "Combination":
        merged = dict(self.coeffs)
        for i, c in other.coeffs.items():
            total = merged.get(i, Fraction(0)) + c
            if total:
                merged[i] = total
            else:
                merged.pop(i, None)
        return Combination(self.basis, merged)

    def __neg__(self) -> "Combination":
        return Combination(self.basis, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other: "Combination") -> "Combination":
        return self + (-other)

    def scaled(self, value) -> "Combination":
        value = Fraction(value)
        return Combination(self.basis, {i: c * value for i, c in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, Combination) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def items(self) -> List[Tuple[BasisVector, Fraction]]:
        return [(self.basis[i], self.coeffs[i]) for i in sorted(self.coeffs)]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        chunks = []
        for vec, coeff in self.items():
            body = vec.name if abs(coeff) == 1 else f"{abs(coeff)}*{vec.name}"
            if not chunks:
                chunks.append(body if coeff > 0 else f"-{body}")
            else:
                chunks.append(("+ " if coeff > 0 else "- ") + body)
        return " ".join(chunks)

    __repr__ = __str__


Element = Union[Combination, Series]


def _element_is_zero(value: Element) -> bool:
    return value.is_zero


def constant_field(u: BasisVector, chart: Chart, sig: ShiftSignature,
                   basis: SpaceBasis) -> VectorField:
    """The constant field i_u on Pi^{1+eps} V[1-k].

    For epsilon = 1 this is u^i d/dy^i (an even map of weight -s); for
    epsilon = 0 it is (-1)^{ut} u^i d/dxi^i (an odd map of weight -s).
    """
    expected = basis.coordinate_bigrading(u.index, sig)
    coord = chart.variables[u.index]
    if coord.bigrading != expected:
        raise ChartMismatch(
            f"coordinate {coord.name} has bigrading {coord.bigrading}, "
            f"expected {expected} for basis vector {u.name}")
    sign = -1 if (sig.epsilon == 0 and u.parity) else 1
    field_parity = (u.parity + (1 if sig.epsilon == 0 else 0)) % 2
    return VectorField(chart, {coord: Series.constant(sign)},
                       field_parity, u.weight - sig.s)


def _invert_constant_field(field_constants: Mapping[GradedVariable, Fraction],
                           chart: Chart, sig: ShiftSignature,
                           basis: SpaceBasis) -> Combination:
    """Solve i_v = (given constant field) for v."""
    coeffs: Dict[int, Fraction] = {}
    for var, coeff in field_constants.items():
        index = var.index
        if sig.epsilon == 0 and basis[index].parity:
            coeff = -coeff
        coeffs[index] = coeff
    return Combination(basis, coeffs)


def iterated_commutator_bracket(q: VectorField, inputs: Sequence[BasisVector],
                                sig: ShiftSignature, basis: SpaceBasis) -> Combination:
    """The raw derived bracket: nested commutators, constant part, inversion.

    No homologicity gate; `derived_bracket_Q` adds it.
    """
    chart = q.chart
    current = q
    for u in inputs:
        current = commutator(current, constant_field(u, chart, sig, basis))
    combo = _invert_constant_field(current.constant_part(), chart, sig, basis)
    if sig.epsilon == 0:
        n = len(inputs)
        exponent = sum(inputs[j].parity * (n - 1 - j) for j in range(max(n - 1, 0)))
        if exponent % 2:
            combo = -combo
    return combo


def derived_bracket_Q(q: VectorField, inputs: Sequence[BasisVector],
                      sig: ShiftSignature, basis: SpaceBasis) -> Combination:
    """Higher derived bracket of a homological field; raises NotHomological."""
    if not is_homological(q):
        raise NotHomological("derived brackets require an odd field with [Q,Q] = 0")
    return iterated_commutator_bracket(q, inputs, sig, basis)


def derived_bracket_H(master: Series, inputs: Sequence[Series],
                      ct: CotangentChart) -> Series:
    """{f_1, ..., f_n}_H = restrict((...(H, f_1), ..., f_n))."""
    current = master
    for f in inputs:
        if any(v.fiber_degree for v in f.variables()):
            raise GradingMismatch("derived bracket inputs must be base functions")
        current = canonical_bracket(current, f, ct)
    return restrict_to_base(current, ct)


# ---------------------------------------------------------------------------
# bracket families
# ---------------------------------------------------------------------------

class BracketFamily:
    """Common interface: multilinear n-ary brackets plus a labeled input pool."""

    epsilon: int
    k: int

    @property
    def signature(self) -> ShiftSignature:
        return ShiftSignature(self.epsilon, self.k)

    def bracket(self, args: Sequence[Element]) -> Element:
        raise NotImplementedError

    def pool(self) -> List[Tuple[str, Element, int, int]]:
        """Labeled homogeneous inputs as (label, element, parity, weight)."""
        raise NotImplementedError

    def zero_element(self) -> Element:
        raise NotImplementedError

    def format_element(self, value: Element) -> str:
        return str(value)


class _BasisFamily(BracketFamily):
    """Shared machinery for families whose inputs are basis combinations."""

    basis: SpaceBasis

    def bracket(self, args: Sequence[Combination]) -> Combination:
        total = Combination(self.basis)
        for indices, coeff in _expand_multilinear(args):
            value = self.bracket_indices(indices)
            if not value.is_zero:
                total = total + value.scaled(coeff)
        return total

    def bracket_indices(self, indices: Tuple[int, ...]) -> Combination:
        raise NotImplementedError

    def pool(self):
        return [(v.name, Combination.of(v, self.basis), v.parity, v.weight)
                for v in self.basis]

    def zero_element(self) -> Combination:
        return Combination(self.basis)


def _expand_multilinear(args: Sequence[Combination]) -> Iterable[Tuple[Tuple[int, ...], Fraction]]:
    if not args:
        yield (), Fraction(1)
        return
    heads = list(args[0].coeffs.items())
    for rest_indices, rest_coeff in _expand_multilinear(args[1:]):
        for index, coeff in heads:
            yield (index,) + rest_indices, coeff * rest_coeff


class QFamily(_BasisFamily):
    """Brackets generated by a vector field on Pi^{1+eps} V[1-k]."""

    def __init__(self, q: VectorField, basis: SpaceBasis, sig: ShiftSignature,
                 require_homological: bool = True):
        chart = q.chart
        if not isinstance(chart, Chart):
            raise ChartMismatch("a generating field must live on a plain chart")
        if len(chart.variables) != len(basis):
            raise ChartMismatch("chart and basis dimensions differ")
        for i, var in enumerate(chart.variables):
            if var.bigrading != basis.coordinate_bigrading(i, sig):
                raise ChartMismatch(
                    f"coordinate {var.name} has bigrading {var.bigrading}, "
                    f"expected {basis.coordinate_bigrading(i, sig)}")
        if require_homological and not is_homological(q):
            raise NotHomological("generating field must be odd with [Q,Q] = 0")
        self.q = q
        self.basis = basis
        self.epsilon = sig.epsilon
        self.k = sig.k
        self._nested_cache: Dict[Tuple[int, ...], VectorField] = {(): q}

    def _nested(self, indices: Tuple[int, ...]) -> VectorField:
        cached = self._nested_cache.get(indices)
        if cached is None:
            prev = self._nested(indices[:-1])
            field = constant_field(self.basis[indices[-1]], self.q.chart,
                                   self.signature, self.basis)
            cached = commutator(prev, field)
            self._nested_cache[indices] = cached
        return cached

    def bracket_indices(self, indices: Tuple[int, ...]) -> Combination:
        field = self._nested(tuple(indices))
        combo = _invert_constant_field(field.constant_part(), self.q.chart,
                                       self.signature, self.basis)
        if self.epsilon == 0:
            n = len(indices)
            exponent = sum(self.basis[indices[j]].parity * (n - 1 - j)
                           for j in range(max(n - 1, 0)))
            if exponent % 2:
                combo = -combo
        return combo


class HamiltonianFamily(BracketFamily):
    """Brackets of base functions generated by a master (anti)Hamiltonian.

    epsilon is structural: 1 for the even cotangent bundle (S-infinity), 0
    for the odd one (P-infinity); k is read off the chart shift (s = 1-k).
    """

    def __init__(self, master: Series, ct: CotangentChart,
                 pool_seed: int = 11, pool_size: int = 5):
        self.master = master
        self.ct = ct
        self.epsilon = 1 if ct.kind == KIND_EVEN else 0
        self.k = 1 - ct.shift
        self._pool_seed = pool_seed
        self._pool_size = pool_size
        self._pool_cache: Optional[List[Tuple[str, Series, int, int]]] = None

    def bracket(self, args: Sequence[Series]) -> Series:
        return derived_bracket_H(self.master, args, self.ct)

    def pool(self):
        if self._pool_cache is None:
            rng = random.Random(self._pool_seed)
            samples = homogeneous_pool(self.ct.base.variables, rng, self._pool_size)
            self._pool_cache = [
                (f"f{i + 1}", s, s.bigrading().parity, s.bigrading().weight)
                for i, s in enumerate(samples)]
        return self._pool_cache

    def zero_element(self) -> Series:
        return Series.zero()


class ExplicitFamily(_BasisFamily):
    """Structure-constant tables, graded (anti)symmetrized on load.

    ``entries`` maps index tuples to combinations; permuted duplicates are
    folded into the canonically sorted slot, and ``load_warnings`` records
    every slot whose stored value differs from some provided one.
    """

    def __init__(self, basis: SpaceBasis, epsilon: int, k: int,
                 entries: Mapping[Tuple[int, ...], Combination],
                 arity_max: int = DEFAULT_ARITY):
        self.basis = basis
        self.epsilon = epsilon
        self.k = k
        self.arity_max = arity_max
        self.load_warnings: List[str] = []
        collected: Dict[Tuple[int, ...], List[Combination]] = {}
        for indices, value in entries.items():
            key, sign = self._canonical_key(tuple(indices))
            transported = value.scaled(sign) if sign is not None else None
            if transported is None:
                if not value.is_zero:
                    self.load_warnings.append(
                        f"bracket on ({self._label(indices)}) is forced to zero "
                        "by graded symmetry; provided value dropped")
                continue
            collected.setdefault(key, []).append(transported)
        self.table: Dict[Tuple[int, ...], Combination] = {}
        for key, values in collected.items():
            total = Combination(self.basis)
            for v in values:
                total = total + v
            average = total.scaled(Fraction(1, len(values)))
            if any(v != average for v in values):
                self.load_warnings.append(
                    f"bracket on ({self._label(key)}) was graded-symmetrized; "
                    "provided permutations disagreed")
            if not average.is_zero:
                self.table[key] = average

    def _label(self, indices: Sequence[int]) -> str:
        return ", ".join(self.basis[i].name for i in indices)

    def _canonical_key(self, indices: Tuple[int, ...]):
        """Sorted key plus the sign transporting a value AT ``indices`` to it.

        Returns (key, None) when graded symmetry forces the slot to zero:
        repeated odd entries for symmetric (epsilon=1) families, repeated
        even entries for antisymmetric (epsilon=0) ones.
        """
        order = sorted(range(len(indices)), key=lambda j: indices[j])
        sign = 1
        parities = [self.basis[i].parity for i in indices]
        # bubble to realize `order`, replaying adjacent transpositions
        target = {pos: rank for rank, pos in enumerate(order)}
        ranks = [target[j] for j in range(len(indices))]
        for i in range(len(ranks)):
            for j in range(len(ranks) - 1 - i):
                if ranks[j] > ranks[j + 1]:
                    if self.epsilon == 0:
                        sign = -sign
                    if parities[j] and parities[j + 1]:
                        sign = -sign
                    ranks[j], ranks[j + 1] = ranks[j + 1], ranks[j]
                    parities[j], parities[j + 1] = parities[j + 1], parities[j]
        key = tuple(sorted(indices))
        for i, j in zip(key, key[1:]):
            if i == j:
                parity = self.basis[i].parity
                forced = (self.epsilon == 1 and parity == 1) or \
                         (self.epsilon == 0 and parity == 0)
                if forced:
                    return key, None
        return key, sign

    def bracket_indices(self, indices: Tuple[int, ...]) -> Combination:
        key, sign = self._canonical_key(tuple(indices))
        if sign is None:
            return Combination(self.basis)
        value = self.table.get(key)
        if value is None:
            return Combination(self.basis)
        return value.scaled(sign)


# ---------------------------------------------------------------------------
# unshuffles and signs
# ---------------------------------------------------------------------------

def unshuffles(n: int, r: int) -> Iterable[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """(r, n-r)-unshuffles as (first block, second block), ascending in each."""
    positions = range(n)
    for first in itertools.combinations(positions, r):
        first_set = set(first)
        second = tuple(p for p in positions if p not in first_set)
        yield first, second


def permutation_signs(order: Sequence[int], parities: Sequence[int]) -> Tuple[int, int]:
    """(sgn, Koszul) of the permutation sending slot j to source order[j]."""
    sgn = 1
    koszul = 1
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            if order[a] > order[b]:
                sgn = -sgn
                if parities[order[a]] and parities[order[b]]:
                    koszul = -koszul
    return sgn, koszul


def jacobiator(fam: BracketFamily, inputs: Sequence[Tuple[Element, int]],
               n: int) -> Element:
    """The n-th higher Jacobi sum over (r, n-r)-unshuffles.

    ``inputs`` pairs each element with its parity.  For epsilon = 0 the sign
    is (-1)^{r s} sgn(sigma) Koszul(sigma); for epsilon = 1 just the Koszul
    sign.
    """
    elements = [e for e, _ in inputs]
    parities = [p for _, p in inputs]
    total = fam.zero_element()
    for r in range(n + 1):
        s = n - r
        for first, second in unshuffles(n, r):
            order = first + second
            sgn, koszul = permutation_signs(order, parities)
            sign = koszul
            if fam.epsilon == 0:
                sign *= sgn
                if (r * s) % 2:
                    sign = -sign
            inner = fam.bracket([elements[j] for j in first])
            if _element_is_zero(inner):
                continue
            outer = fam.bracket([inner] + [elements[j] for j in second])
            if _element_is_zero(outer):
                continue
            total = total + (outer.scaled(sign) if isinstance(outer, Combination)
                             else outer * sign)
    return total


# ---------------------------------------------------------------------------
# checkers
# ---------------------------------------------------------------------------

def check_higher_jacobi(fam: BracketFamily, n_max: int = DEFAULT_ARITY,
                        note: str = "") -> Report:
    """Evaluate every higher Jacobi identity up to arity n_max on pool tuples."""
    report = Report(f"higher Jacobi identities to arity {n_max}")
    if note:
        report.info("jacobi-convention", notes=note)
    pool = fam.pool()
    for n in range(n_max + 1):
        for combo in itertools.product(range(len(pool)), repeat=n):
            inputs = [(pool[i][1], pool[i][2]) for i in combo]
            residual = jacobiator(fam, inputs, n)
            labels = ", ".join(pool[i][0] for i in combo)
            location = f"n={n} ({labels})" if n else "n=0"
            if _element_is_zero(residual):
                report.ok("jacobi", location=location)
            else:
                report.fail("jacobi", location=location,
                            expected="0", actual=fam.format_element(residual),
                            residual=fam.format_element(residual))
    return report


def check_weights_parities(fam: BracketFamily, sig: ShiftSignature,
                           n_max: int = DEFAULT_ARITY) -> Report:
    """Check bracket weights 2-n+k(n-1) and parities eps(n+1)+n on pool tuples."""
    report = Report(f"bracket weights and parities to arity {n_max} "
                    f"(eps={sig.epsilon}, k={sig.k})")
    pool = fam.pool()
    for n in range(n_max + 1):
        for combo in itertools.product(range(len(pool)), repeat=n):
            value = fam.bracket([pool[i][1] for i in combo])
            labels = ", ".join(pool[i][0] for i in combo)
            location = f"n={n} ({labels})" if n else "n=0"
            if _element_is_zero(value):
                report.ok("weight-parity", location=location, notes="bracket vanishes")
                continue
            want_weight = sum(pool[i][3] for i in combo) + sig.bracket_weight(n)
            want_parity = (sum(pool[i][2] for i in combo) + sig.bracket_parity(n)) % 2
            ok, got = _element_bigrading_matches(value, want_parity, want_weight)
            report.record(ok, "weight-parity", location=location,
                          expected=f"(parity {want_parity}, weight {want_weight})",
                          actual=got,
                          residual="" if ok else fam.format_element(value))
    return report


def _element_bigrading_matches(value: Element, parity: int, weight: int):
    if isinstance(value, Combination):
        grades = {(v.parity, v.weight) for v, _ in value.items()}
        ok = grades == {(parity, weight)}
        got = ", ".join(f"(parity {p}, weight {w})" for p, w in sorted(grades))
        return ok, got
    try:
        grade = value.bigrading()
    except GradingMismatch:
        return False, "inhomogeneous"
    ok = grade.parity == parity and grade.weight == weight
    return ok, str(grade)


def check_leibniz(fam: HamiltonianFamily,
                  samples: Optional[Sequence[Tuple[Sequence[Series], Series, Series]]] = None,
                  trials: int = 20, max_prefix: int = 2, seed: int = 23) -> Report:
    """Check {a_1..a_m, bc} = {a_1..a_m, b} c + sign * b {a_1..a_m, c}.

    The sign exponent multiplies the parity of b: with arity = m+1, it is
    (sum of a-parities + arity) for epsilon = 0 and (sum + 1) for epsilon = 1,
    which is the reading under which the identity is exact for
    convention-parity masters (odd H / even P).
    """
    report = Report(f"Leibniz rule (eps={fam.epsilon})")
    if samples is None:
        rng = random.Random(seed)
        variables = fam.ct.base.variables
        samples = []
        for _ in range(trials):
            m = rng.randint(0, max_prefix)
            prefix = []
            while len(prefix) < m:
                candidate = homogeneous_pool(variables, rng, 1)
                if candidate:
                    prefix.append(candidate[0])
            b = c = None
            while b is None or c is None:
                extra = homogeneous_pool(variables, rng, 2)
                if len(extra) >= 2:
                    b, c = extra[0], extra[1]
            samples.append((prefix, b, c))
    for idx, (prefix, b, c) in enumerate(samples):
        prefix = list(prefix)
        for series in prefix + [b, c]:
            if not isinstance(series, Series):
                raise GradingMismatch("Leibniz samples must be Series")
            series.bigrading()
        arity = len(prefix) + 1
        a_parities = sum(a.bigrading().parity for a in prefix)
        b_parity = b.bigrading().parity
        if fam.epsilon == 0:
            exponent = (a_parities + arity) * b_parity
        else:
            exponent = (a_parities + 1) * b_parity
        sign = -1 if exponent % 2 else 1
        lhs = fam.bracket(prefix + [b * c])
        rhs = fam.bracket(prefix + [b]) * c + sign * (b * fam.bracket(prefix + [c]))
        residual = lhs - rhs
        location = f"sample {idx} (m={len(prefix)})"
        report.record(residual.is_zero, "leibniz", location=location,
                      expected="0", actual=str(residual), residual=str(residual))
    return report


MASTER_PARITY_NOTE = ("convention: odd master on T*M[1-k] (S-infinity), "
                      "even master on Pi T*M[1-k] (P-infinity)")


def check_master(obj: Union[VectorField, Series],
                 ct: Optional[CotangentChart] = None) -> Report:
    """Master equation plus the weight audit (w(Q) = 1, or w = 2-k for masters)."""
    if isinstance(obj, VectorField):
        report = Report("master check for a vector field")
        if obj.is_zero:
            report.ok("master-parity", notes="zero field")
            report.ok("master-equation", expected="0", actual="0")
            return report
        report.record(obj.parity == 1, "master-parity",
                      expected="odd", actual="odd" if obj.parity else "even")
        residual = commutator(obj, obj)
        report.record(residual.is_zero, "master-equation", location="[Q,Q]",
                      expected="0", actual=str(residual), residual=str(residual))
        report.record(obj.weight == 1, "master-weight",
                      expected="1", actual=str(obj.weight))
        return report
    if ct is None:
        raise ChartMismatch("a master function needs its cotangent chart")
    report = Report(f"master check on {ct.name}")
    if obj.is_zero:
        report.ok("master-equation", expected="0", actual="0", notes="zero master")
        return report
    grade = obj.bigrading()  # raises on inhomogeneous input
    k = 1 - ct.shift
    convention = 1 if ct.kind == KIND_EVEN else 0
    report.info("master-parity",
                actual="odd" if grade.parity else "even",
                expected="odd" if convention else "even",
                notes=MASTER_PARITY_NOTE)
    residual = canonical_bracket(obj, obj, ct)
    name = "(H,H)" if ct.kind == KIND_EVEN else "[P,P]"
    report.record(residual.is_zero, "master-equation", location=name,
                  expected="0", actual=str(residual), residual=str(residual))
    report.record(grade.weight == 2 - k, "master-weight",
                  expected=str(2 - k), actual=str(grade.weight),
                  notes=f"k = {k} from shift {ct.shift}")
    return report


# ---------------------------------------------------------------------------
# parity reversion transport
# ---------------------------------------------------------------------------

def parity_reverse_brackets(fam: _BasisFamily,
                            arity_max: int = DEFAULT_ARITY) -> ExplicitFamily:
    """Transport a family across the parity reversion.

    The relation between the two sides reads

        Pi [x_1, ..., x_n] = (-1)^{xt_1 (n-1) + ... + xt_{n-1}} [Pi x_1, ..., Pi x_n]

    where the x_i live on the antisymmetric (epsilon = 0) side.  Solving for
    whichever side is being produced makes the transport an involution:
    applying it twice gives back the original family on every tuple.
    """
    new_basis = fam.basis.parity_reversed()
    new_epsilon = 1 - fam.epsilon
    entries: Dict[Tuple[int, ...], Combination] = {}
    dim = len(fam.basis)
    for n in range(arity_max + 1):
        for key in itertools.combinations_with_replacement(range(dim), n):
            value = fam.bracket_indices(key)
            if value.is_zero:
                continue
            # parities of the epsilon=0-side elements drive the sign
            if fam.epsilon == 0:
                parities = [fam.basis[i].parity for i in key]
            else:
                parities = [new_basis[i].parity for i in key]
            exponent = sum(parities[j] * (n - 1 - j) for j in range(max(n - 1, 0)))
            transported = Combination(new_basis, dict(value.coeffs))
            if exponent % 2:
                transported = -transported
            entries[key] = transported
    return ExplicitFamily(new_basis, new_epsilon, fam.k, entries, arity_max)


# ---------------------------------------------------------------------------
# assembling a generating field back from an explicit family
# ---------------------------------------------------------------------------

def assemble_vector_field(fam: ExplicitFamily, n_max: int,
                          chart: Optional[Chart] = None) -> VectorField:
    """Reconstruct a field whose derived brackets to arity n_max match ``fam``.

    The degree-n Taylor coefficients are solved for exactly: the map from
    coefficients to bracket tables is linear, so each arity is an independent
    rational linear system.
    """
    from .sampling import enumerate_monomials

    sig = fam.signature
    if chart is None:
        chart = fam.basis.chart(sig)
    total: Optional[VectorField] = None
    field_parity = 1
    field_weight = 1
    for n in range(n_max + 1):
        unknown_slots: List[Tuple[GradedVariable, Tuple]] = []
        for var in chart.variables:
            target = Bigrading((var.parity + field_parity) % 2, var.weight + field_weight)
            for monomial in enumerate_monomials(chart.variables, n):
                if sum(e for _, e in monomial) != n:
                    continue
                from .graded_core import monomial_bigrading
                if monomial_bigrading(monomial) == target:
                    unknown_slots.append((var, monomial))
        if not unknown_slots:
            continue
        keys = list(itertools.combinations_with_replacement(range(len(fam.basis)), n))
        rows: List[List[Fraction]] = []
        rhs: List[Fraction] = []
        columns: List[List[Combination]] = []
        for var, monomial in unknown_slots:
            candidate = VectorField(chart, {var: Series({monomial: Fraction(1)})},
                                    field_parity, field_weight)
            columns.append([
                iterated_commutator_bracket(candidate, [fam.basis[i] for i in key],
                                            sig, fam.basis)
                for key in keys])
        for row_idx, key in enumerate(keys):
            want = fam.bracket_indices(key)
            for basis_index in range(len(fam.basis)):
                rows.append([columns[c][row_idx].coeffs.get(basis_index, Fraction(0))
                             for c in range(len(unknown_slots))])
                rhs.append(want.coeffs.get(basis_index, Fraction(0)))
        solution = _solve_exact(rows, rhs)
        if solution is None:
            raise GradingMismatch(
                f"no degree-{n} Taylor coefficient reproduces the arity-{n} table")
        components: Dict[GradedVariable, Series] = {}
        for (var, monomial), coeff in zip(unknown_slots, solution):
            if coeff:
                components[var] = components.get(var, Series.zero()) + Series({monomial: coeff})
        piece = VectorField(chart, components, field_parity, field_weight)
        total = piece if total is None else total + piece
    if total is None:
        total = VectorField(chart, {}, field_parity, field_weight)
    return total


def _solve_exact(rows: List[List[Fraction]], rhs: List[Fraction]) -> Optional[List[Fraction]]:
    """Gaussian elimination over the rationals; None if inconsistent."""
    if not rows:
        return []
    m, n = len(rows), len(rows[0])
    aug = [list(row) + [value] for row, value in zip(rows, rhs)]
    pivot_cols = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        scale = aug[r][c]
        aug[r] = [v / scale for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                factor = aug[i][c]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[r])]
        pivot_cols.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n] != 0:
            return None
    solution = [Fraction(0)] * n
    for row_idx, c in enumerate(pivot_cols):
        solution[c] = aug[row_idx][n]
    return solution
