"""Command-line front end: parse `.gk` problem files, run checks, emit reports.

File format (line oriented, `#` starts a comment, blocks close with `end`):

    manifold M
      var x even 0
      var xi odd -1
    end

    cotangent CT base M shift 0          # T*M[0]
    anticotangent ACT base M shift 1     # Pi T*M[1]

    function H on CT = p_x * p_xi        # optional: parity odd weight 1 = ...
    function g on M = x^2

    vectorfield Q on M parity odd weight 1
      xi = x * xi                        # component along d/dxi
    end

    space V
      basis e1 even 0
      basis e2 even 0
    end

    family F fromq Q eps 0 k 0
    family FH fromhamiltonian H
    family G explicit V eps 0 k 0 arity 4
      bracket e1 e2 = e2
    end

    thick Phi source M1 target M2 shift 0 kind even = x * q_y + 1/2 * q_y^2

    task check-master H
    task check-jacobi F arity 4
    task check-weights F arity 4
    task check-leibniz FH trials 20
    task derive-brackets F arity 3
    task validate-thick Phi
    task pullback Phi g order 4
    task check-hj Phi H1 H2 order 4
    task check-intertwining Phi H1 H2 g order 4
    task oracle-verify f g trials 100
    task bigrade g

Exit codes: 0 all checks pass, 1 check failures, 2 parse or usage errors.
Machine output (`--format json`) is a schema-versioned document; identical
input, flags and seed give byte-identical reports.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    GradedKernelError,
    GradingMismatch,
    ProblemSyntaxError,
    UnknownNameError,
)
from .expr import parse_series
from .geometry import (
    Chart,
    CotangentChart,
    VectorField,
    shifted_anticotangent,
    shifted_cotangent,
)
from .graded_core import GradedVariable, Series, format_series
from .homotopy import (
    BracketFamily,
    Combination,
    ExplicitFamily,
    HamiltonianFamily,
    QFamily,
    ShiftSignature,
    SpaceBasis,
    check_higher_jacobi,
    check_leibniz,
    check_master,
    check_weights_parities,
)
from .microformal import (
    ThickMorphism,
    check_hamilton_jacobi,
    check_intertwining,
    conjugate_momenta,
    pullback,
    validate_thick,
)
from .oracle import identity_check
from .report import Report

SCHEMA_VERSION = 1
DEFAULT_SEED = 20240801


@dataclass
class Task:
    line: int
    command: str
    args: List[str]

    def __str__(self) -> str:
        return " ".join([self.command] + self.args)


@dataclass
class ProblemFile:
    charts: Dict[str, Chart] = field(default_factory=dict)
    cotangents: Dict[str, CotangentChart] = field(default_factory=dict)
    functions: Dict[str, Tuple[Series, object]] = field(default_factory=dict)
    fields: Dict[str, VectorField] = field(default_factory=dict)
    spaces: Dict[str, SpaceBasis] = field(default_factory=dict)
    families: Dict[str, BracketFamily] = field(default_factory=dict)
    thicks: Dict[str, ThickMorphism] = field(default_factory=dict)
    tasks: List[Task] = field(default_factory=list)

    def all_names(self):
        for group in (self.charts, self.cotangents, self.functions,
                      self.fields, self.spaces, self.families, self.thicks):
            yield from group

    def check_fresh(self, name: str, line: int) -> None:
        if name in set(self.all_names()):
            raise ProblemSyntaxError(f"name {name!r} already declared", line)


def _chart_env(chart) -> Dict[str, GradedVariable]:
    return {v.name: v for v in chart.variables}


def _parse_int(value: str, line: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise ProblemSyntaxError(f"expected an integer, got {value!r}", line) from None


def _parse_parity(word: str, line: int) -> int:
    if word == "even":
        return 0
    if word == "odd":
        return 1
    raise ProblemSyntaxError(f"expected 'even' or 'odd', got {word!r}", line)


def _keyword_args(words: Sequence[str], line: int, **defaults) -> Dict[str, int]:
    """Parse trailing `key value` pairs like `eps 0 k 1 arity 4`."""
    out = dict(defaults)
    if len(words) % 2:
        raise ProblemSyntaxError("expected key/value pairs", line)
    for key, value in zip(words[::2], words[1::2]):
        if key not in out:
            raise ProblemSyntaxError(f"unknown option {key!r}", line)
        out[key] = _parse_int(value, line)
    return out


class _Lines:
    def __init__(self, text: str):
        self.raw = text.splitlines()
        self.pos = 0

    def next_content(self) -> Optional[Tuple[int, str]]:
        while self.pos < len(self.raw):
            number = self.pos + 1
            line = self.raw[self.pos]
            self.pos += 1
            stripped = line.split("#", 1)[0].strip()
            if stripped:
                return number, stripped
        return None


def parse_problem(text: str) -> ProblemFile:
    """Parse a problem file; raises ProblemSyntaxError / UnknownNameError /
    GradingMismatch with line information on the first offending declaration."""
    problem = ProblemFile()
    lines = _Lines(text)
    while True:
        item = lines.next_content()
        if item is None:
            break
        number, content = item
        words = content.split()
        head = words[0]
        try:
            handler = _DECLARATIONS[head]
        except KeyError:
            raise ProblemSyntaxError(f"unknown declaration {head!r}", number) from None
        handler(problem, lines, number, content, words)
    return problem


def _require(condition: bool, message: str, line: int) -> None:
    if not condition:
        raise ProblemSyntaxError(message, line)


def _decl_manifold(problem: ProblemFile, lines: _Lines, number: int,
                   content: str, words: List[str]) -> None:
    _require(len(words) == 2, "usage: manifold <name>", number)
    name = words[1]
    problem.check_fresh(name, number)
    specs: List[Tuple[str, int, int]] = []
    while True:
        item = lines.next_content()
        _require(item is not None, f"manifold {name!r} is missing 'end'", number)
        vnum, vline = item
        vwords = vline.split()
        if vwords[0] == "end":
            break
        _require(len(vwords) == 4 and vwords[0] == "var",
                 "usage: var <name> <even|odd> <weight>", vnum)
        specs.append((vwords[1], _parse_parity(vwords[2], vnum),
                      _parse_int(vwords[3], vnum)))
    try:
        problem.charts[name] = Chart.build(specs, name)
    except ValueError as exc:
        raise ProblemSyntaxError(str(exc), number) from None


def _decl_cotangent(problem: ProblemFile, lines: _Lines, number: int,
                    content: str, words: List[str]) -> None:
    _require(len(words) == 6 and words[2] == "base" and words[4] == "shift",
             "usage: cotangent <name> base <manifold> shift <int>", number)
    name = words[1]
    problem.check_fresh(name, number)
    base = problem.charts.get(words[3])
    if base is None:
        raise UnknownNameError(f"unknown manifold {words[3]!r}", number)
    shift = _parse_int(words[5], number)
    builder = shifted_cotangent if words[0] == "cotangent" else shifted_anticotangent
    problem.cotangents[name] = builder(base, shift)


def _decl_function(problem: ProblemFile, lines: _Lines, number: int,
                   content: str, words: List[str]) -> None:
    _require("=" in content, "usage: function <name> on <chart> [parity p weight w] = <expr>",
             number)
    header, expr_text = content.split("=", 1)
    hwords = header.split()
    _require(len(hwords) >= 4 and hwords[2] == "on",
             "usage: function <name> on <chart> [parity p weight w] = <expr>", number)
    name = hwords[1]
    problem.check_fresh(name, number)
    chart = problem.charts.get(hwords[3]) or problem.cotangents.get(hwords[3])
    if chart is None:
        raise UnknownNameError(f"unknown chart {hwords[3]!r}", number)
    declared_parity: Optional[int] = None
    declared_weight: Optional[int] = None
    rest = hwords[4:]
    while rest:
        key = rest.pop(0)
        _require(bool(rest), f"option {key!r} needs a value", number)
        value = rest.pop(0)
        if key == "parity":
            declared_parity = _parse_parity(value, number)
        elif key == "weight":
            declared_weight = _parse_int(value, number)
        else:
            raise ProblemSyntaxError(f"unknown option {key!r}", number)
    column = content.index("=") + 2
    series = parse_series(expr_text, _chart_env(chart), number, column)
    if declared_parity is not None or declared_weight is not None:
        if not series.is_homogeneous(declared_parity, declared_weight):
            raise GradingMismatch(
                f"function {name!r} at line {number} does not match its declared "
                f"bigrading (parity {declared_parity}, weight {declared_weight})")
    problem.functions[name] = (series, chart)


def _decl_vectorfield(problem: ProblemFile, lines: _Lines, number: int,
                      content: str, words: List[str]) -> None:
    _require(len(words) == 8 and words[2] == "on" and words[4] == "parity"
             and words[6] == "weight",
             "usage: vectorfield <name> on <chart> parity <even|odd> weight <int>",
             number)
    name = words[1]
    problem.check_fresh(name, number)
    chart = problem.charts.get(words[3]) or problem.cotangents.get(words[3])
    if chart is None:
        raise UnknownNameError(f"unknown chart {words[3]!r}", number)
    parity = _parse_parity(words[5], number)
    weight = _parse_int(words[7], number)
    env = _chart_env(chart)
    components: Dict[GradedVariable, Series] = {}
    while True:
        item = lines.next_content()
        _require(item is not None, f"vectorfield {name!r} is missing 'end'", number)
        cnum, cline = item
        if cline.split()[0] == "end":
            break
        _require("=" in cline, "usage: <var> = <expr>", cnum)
        var_name, expr_text = cline.split("=", 1)
        var_name = var_name.strip()
        var = env.get(var_name)
        if var is None:
            raise UnknownNameError(f"unknown component variable {var_name!r}", cnum)
        components[var] = parse_series(expr_text, env, cnum, cline.index("=") + 2)
    problem.fields[name] = VectorField(chart, components, parity, weight)


def _decl_space(problem: ProblemFile, lines: _Lines, number: int,
                content: str, words: List[str]) -> None:
    _require(len(words) == 2, "usage: space <name>", number)
    name = words[1]
    problem.check_fresh(name, number)
    specs: List[Tuple[str, int, int]] = []
    while True:
        item = lines.next_content()
        _require(item is not None, f"space {name!r} is missing 'end'", number)
        bnum, bline = item
        bwords = bline.split()
        if bwords[0] == "end":
            break
        _require(len(bwords) == 4 and bwords[0] == "basis",
                 "usage: basis <name> <even|odd> <weight>", bnum)
        specs.append((bwords[1], _parse_parity(bwords[2], bnum),
                      _parse_int(bwords[3], bnum)))
    problem.spaces[name] = SpaceBasis.build(specs)


def _decl_family(problem: ProblemFile, lines: _Lines, number: int,
                 content: str, words: List[str]) -> None:
    _require(len(words) >= 3, "usage: family <name> <fromq|fromhamiltonian|explicit> ...",
             number)
    name, mode = words[1], words[2]
    problem.check_fresh(name, number)
    if mode == "fromq":
        _require(len(words) >= 4, "usage: family <name> fromq <field> eps <e> k <k>", number)
        q = problem.fields.get(words[3])
        if q is None:
            raise UnknownNameError(f"unknown vector field {words[3]!r}", number)
        options = _keyword_args(words[4:], number, eps=0, k=0)
        sig = ShiftSignature(options["eps"], options["k"])
        if not isinstance(q.chart, Chart):
            raise ProblemSyntaxError("fromq needs a field on a plain manifold", number)
        basis = SpaceBasis.from_chart(q.chart, sig)
        problem.families[name] = QFamily(q, basis, sig)
    elif mode == "fromhamiltonian":
        _require(len(words) == 4, "usage: family <name> fromhamiltonian <H>", number)
        entry = problem.functions.get(words[3])
        if entry is None:
            raise UnknownNameError(f"unknown function {words[3]!r}", number)
        series, chart = entry
        _require(isinstance(chart, CotangentChart),
                 "fromhamiltonian needs a function on an (anti)cotangent chart", number)
        problem.families[name] = HamiltonianFamily(series, chart)
    elif mode == "explicit":
        _require(len(words) >= 4, "usage: family <name> explicit <space> eps <e> k <k> [arity N]",
                 number)
        basis = problem.spaces.get(words[3])
        if basis is None:
            raise UnknownNameError(f"unknown space {words[3]!r}", number)
        options = _keyword_args(words[4:], number, eps=0, k=0, arity=4)
        fake_env = {
            v.name: GradedVariable(v.name, v.parity, v.weight, 0, v.index)
            for v in basis}
        entries: Dict[Tuple[int, ...], Combination] = {}
        while True:
            item = lines.next_content()
            _require(item is not None, f"family {name!r} is missing 'end'", number)
            bnum, bline = item
            bwords = bline.split()
            if bwords[0] == "end":
                break
            _require(bwords[0] == "bracket" and "=" in bline,
                     "usage: bracket <names...> = <combination>", bnum)
            header, expr_text = bline.split("=", 1)
            input_names = header.split()[1:]
            try:
                indices = tuple(basis.vector(n).index for n in input_names)
            except KeyError as exc:
                raise UnknownNameError(str(exc), bnum) from None
            series = parse_series(expr_text, fake_env, bnum, bline.index("=") + 2)
            entries[indices] = _series_to_combination(series, basis, bnum)
        problem.families[name] = ExplicitFamily(basis, options["eps"], options["k"],
                                                entries, options["arity"])
    else:
        raise ProblemSyntaxError(f"unknown family mode {mode!r}", number)


def _series_to_combination(series: Series, basis: SpaceBasis, line: int) -> Combination:
    coeffs = {}
    for monomial, coeff in series.items():
        if len(monomial) != 1 or monomial[0][1] != 1:
            raise ProblemSyntaxError(
                "bracket values must be linear combinations of basis vectors", line)
        coeffs[monomial[0][0].index] = coeff
    return Combination(basis, coeffs)


def _decl_thick(problem: ProblemFile, lines: _Lines, number: int,
                content: str, words: List[str]) -> None:
    _require("=" in content,
             "usage: thick <name> source <m> target <m> shift <s> kind <even|odd> = <expr>",
             number)
    header, expr_text = content.split("=", 1)
    hwords = header.split()
    _require(len(hwords) == 10 and hwords[2] == "source" and hwords[4] == "target"
             and hwords[6] == "shift" and hwords[8] == "kind"
             and hwords[9] in ("even", "odd"),
             "usage: thick <name> source <m> target <m> shift <s> kind <even|odd> = <expr>",
             number)
    name = hwords[1]
    problem.check_fresh(name, number)
    source = problem.charts.get(hwords[3])
    target = problem.charts.get(hwords[5])
    if source is None:
        raise UnknownNameError(f"unknown manifold {hwords[3]!r}", number)
    if target is None:
        raise UnknownNameError(f"unknown manifold {hwords[5]!r}", number)
    shift = _parse_int(hwords[7], number)
    kind = hwords[9]
    momenta = conjugate_momenta(target, shift, kind)
    env = _chart_env(source)
    env.update({m.name: m for m in momenta})
    series = parse_series(expr_text, env, number, content.index("=") + 2)
    problem.thicks[name] = ThickMorphism(source, target, shift, kind, series)


def _decl_task(problem: ProblemFile, lines: _Lines, number: int,
               content: str, words: List[str]) -> None:
    _require(len(words) >= 2, "usage: task <command> [args...]", number)
    problem.tasks.append(Task(number, words[1], words[2:]))


_DECLARATIONS = {
    "manifold": _decl_manifold,
    "cotangent": _decl_cotangent,
    "anticotangent": _decl_cotangent,
    "function": _decl_function,
    "vectorfield": _decl_vectorfield,
    "space": _decl_space,
    "family": _decl_family,
    "thick": _decl_thick,
    "task": _decl_task,
}


# ---------------------------------------------------------------------------
# task execution
# ---------------------------------------------------------------------------

@dataclass
class Flags:
    arity: int = 4
    order: int = 4
    oracle_seed: int = DEFAULT_SEED
    fmt: str = "text"
    quiet: bool = False


def _get(problem: ProblemFile, group: str, name: str, line: int):
    value = getattr(problem, group).get(name)
    if value is None:
        raise UnknownNameError(f"unknown name {name!r}", line)
    return value


def _function_on_cotangent(problem: ProblemFile, name: str, line: int):
    series, chart = _get(problem, "functions", name, line)
    if not isinstance(chart, CotangentChart):
        raise GradingMismatch(f"{name!r} must live on an (anti)cotangent chart")
    return series, chart


def run_task(problem: ProblemFile, task: Task, flags: Flags) -> Report:
    command = task.command
    args = task.args
    line = task.line
    if command == "check-master":
        target = args[0] if args else ""
        if target in problem.fields:
            return check_master(problem.fields[target])
        series, chart = _function_on_cotangent(problem, target, line)
        return check_master(series, chart)
    if command == "check-jacobi":
        fam = _get(problem, "families", args[0] if args else "", line)
        options = _keyword_args(args[1:], line, arity=flags.arity)
        note = ""
        if isinstance(fam, HamiltonianFamily):
            note = ("function-family identities use the bracket form of the "
                    "higher Jacobi sums; display typos in the source identities "
                    "are resolved to that form")
        return check_higher_jacobi(fam, options["arity"], note=note)
    if command == "check-weights":
        fam = _get(problem, "families", args[0] if args else "", line)
        options = _keyword_args(args[1:], line, arity=flags.arity)
        return check_weights_parities(fam, fam.signature, options["arity"])
    if command == "check-leibniz":
        fam = _get(problem, "families", args[0] if args else "", line)
        if not isinstance(fam, HamiltonianFamily):
            raise GradingMismatch("check-leibniz needs a fromhamiltonian family")
        options = _keyword_args(args[1:], line, trials=20)
        return check_leibniz(fam, trials=options["trials"], seed=flags.oracle_seed)
    if command == "derive-brackets":
        fam = _get(problem, "families", args[0] if args else "", line)
        options = _keyword_args(args[1:], line, arity=flags.arity)
        return derive_brackets_report(fam, options["arity"])
    if command == "validate-thick":
        phi = _get(problem, "thicks", args[0] if args else "", line)
        return validate_thick(phi)
    if command == "pullback":
        phi = _get(problem, "thicks", args[0] if args else "", line)
        series, _ = _get(problem, "functions", args[1] if len(args) > 1 else "", line)
        options = _keyword_args(args[2:], line, order=flags.order)
        result = pullback(phi, series, options["order"])
        report = Report(f"pullback along {args[0]} at order {result.order}")
        report.ok("pullback-f", notes=f"f = {format_series(result.f)}")
        for var, solution in sorted(result.y_solution.items(), key=lambda kv: kv[0].key):
            report.info("pullback-y", location=var.name, notes=str(solution))
        for var, solution in sorted(result.q_solution.items(), key=lambda kv: kv[0].key):
            report.info("pullback-q", location=var.name, notes=str(solution))
        report.info("pullback-iterations", notes=str(result.iterations))
        return report
    if command == "check-hj":
        phi = _get(problem, "thicks", args[0] if args else "", line)
        h1, ct1 = _function_on_cotangent(problem, args[1], line)
        h2, ct2 = _function_on_cotangent(problem, args[2], line)
        options = _keyword_args(args[3:], line, order=flags.order)
        return check_hamilton_jacobi(phi, h1, ct1, h2, ct2, options["order"])
    if command == "check-intertwining":
        phi = _get(problem, "thicks", args[0] if args else "", line)
        h1, ct1 = _function_on_cotangent(problem, args[1], line)
        h2, ct2 = _function_on_cotangent(problem, args[2], line)
        series, _ = _get(problem, "functions", args[3], line)
        options = _keyword_args(args[4:], line, order=flags.order)
        return check_intertwining(phi, h1, ct1, h2, ct2, series, options["order"])
    if command == "oracle-verify":
        lhs, _ = _get(problem, "functions", args[0] if args else "", line)
        rhs, _ = _get(problem, "functions", args[1] if len(args) > 1 else "", line)
        options = _keyword_args(args[2:], line, trials=100)
        return identity_check(lhs, rhs, trials=options["trials"],
                              seed=flags.oracle_seed)
    if command == "bigrade":
        series, _ = _get(problem, "functions", args[0] if args else "", line)
        report = Report(f"bigrading of {args[0]}")
        grade = series.bigrading()
        report.ok("bigrade", notes=str(grade))
        return report
    raise ProblemSyntaxError(f"unknown task {command!r}", line)


def derive_brackets_report(fam: BracketFamily, arity: int) -> Report:
    report = Report(f"nonzero brackets to arity {arity}")
    if isinstance(fam, HamiltonianFamily):
        pool = fam.pool()
        for label, series, parity, weight in pool:
            report.info("pool", location=label,
                        notes=f"{series} (parity {parity}, weight {weight})")
    pool = fam.pool()
    sig = fam.signature
    count = 0
    for n in range(arity + 1):
        for combo in itertools.product(range(len(pool)), repeat=n):
            value = fam.bracket([pool[i][1] for i in combo])
            if value.is_zero:
                continue
            count += 1
            labels = ", ".join(pool[i][0] for i in combo)
            annotation = (f"weight shift {sig.bracket_weight(n)}, "
                          f"parity shift {sig.bracket_parity(n)}")
            report.info("bracket", location=f"[{labels}]",
                        notes=f"= {fam.format_element(value)} ({annotation})")
    report.ok("bracket-count", notes=f"{count} nonzero brackets")
    if isinstance(fam, ExplicitFamily) and fam.load_warnings:
        for warning in fam.load_warnings:
            report.info("load-warning", notes=warning)
    return report


def run(problem: ProblemFile, flags: Flags) -> Tuple[List[Tuple[Task, Report]], bool]:
    """Execute tasks in order; task errors become failed entries, not crashes."""
    results: List[Tuple[Task, Report]] = []
    all_pass = True
    for task in problem.tasks:
        try:
            report = run_task(problem, task, flags)
        except GradedKernelError as exc:
            report = Report(str(task))
            report.fail("task-error", notes=f"{type(exc).__name__}: {exc}")
        if not report.passed:
            all_pass = False
        results.append((task, report))
    return results, all_pass


def render_json(results, all_pass: bool, flags: Flags) -> str:
    document = {
        "schema": SCHEMA_VERSION,
        "flags": {
            "arity": flags.arity,
            "order": flags.order,
            "oracle_seed": flags.oracle_seed,
        },
        "tasks": [
            {"task": str(task), "line": task.line, **report.to_json_obj()}
            for task, report in results
        ],
        "summary": {
            "status": "pass" if all_pass else "fail",
            "tasks": len(results),
            "passed_entries": sum(r.counts["pass"] for _, r in results),
            "failed_entries": sum(r.counts["fail"] for _, r in results),
        },
    }
    return json.dumps(document, sort_keys=True, indent=2) + "\n"


def render_text(results, all_pass: bool, quiet: bool) -> str:
    blocks = []
    for task, report in results:
        header = f"== task: {task}"
        blocks.append(header + "\n" + report.to_text(quiet=quiet))
    passed = sum(r.counts["pass"] for _, r in results)
    failed = sum(r.counts["fail"] for _, r in results)
    blocks.append(f"summary: {passed} passed, {failed} failed "
                  f"[{'PASS' if all_pass else 'FAIL'}]")
    return "\n".join(blocks) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="gk", description="graded homotopy-structure checker")
    parser.add_argument("problem", help="problem file (.gk)")
    parser.add_argument("--arity", type=int, default=4,
                        help="default arity bound for bracket checks")
    parser.add_argument("--order", type=int, default=4,
                        help="default truncation order for pullbacks")
    parser.add_argument("--oracle-seed", type=int, default=DEFAULT_SEED,
                        help="seed for oracle trials and sampled checks")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--quiet", action="store_true",
                        help="omit passing entries from text output")
    try:
        options = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    flags = Flags(arity=options.arity, order=options.order,
                  oracle_seed=options.oracle_seed, fmt=options.format,
                  quiet=options.quiet)
    try:
        with open(options.problem, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        problem = parse_problem(text)
    except GradedKernelError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    results, all_pass = run(problem, flags)
    if flags.fmt == "json":
        sys.stdout.write(render_json(results, all_pass, flags))
    else:
        sys.stdout.write(render_text(results, all_pass, flags.quiet))
    return 0 if all_pass else 1


if __name__ == "__main__":
    sys.exit(main())
