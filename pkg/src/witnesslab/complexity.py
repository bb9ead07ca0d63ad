"""Closed-form state-complexity bounds and the harness that checks them.

Each :class:`OperationKind` has one bound formula and one default witness
pair. :func:`verify_case` builds the witnesses, constructs the operation's
automaton, minimizes it and compares the size with the formula.
"""

from __future__ import annotations

import csv
import enum
import io
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .automata import Automaton, CapExceededError, Dfa, Nfa, determinize, reverse
from .minimize import minimize_refine, trim
from .operations import BooleanOp, boolean_product, concatenate, star
from .witnesses import WitnessSpec, build_witness, witness

U, I, D, X = (
    BooleanOp.UNION,
    BooleanOp.INTERSECTION,
    BooleanOp.DIFFERENCE,
    BooleanOp.SYMMETRIC_DIFFERENCE,
)


class OperationKind(enum.Enum):
    # K o L
    UNION = "union"
    INTERSECTION = "intersection"
    DIFFERENCE = "difference"
    SYMDIFF = "symdiff"
    # K o L^R, plus L^R \ K
    UNION_R_RIGHT = "union_r_right"
    INTERSECTION_R_RIGHT = "intersection_r_right"
    DIFFERENCE_R_RIGHT = "difference_r_right"
    RDIFFERENCE_R_RIGHT = "rdifference_r_right"
    SYMDIFF_R_RIGHT = "symdiff_r_right"
    # K^R o L^R
    UNION_R_BOTH = "union_r_both"
    INTERSECTION_R_BOTH = "intersection_r_both"
    DIFFERENCE_R_BOTH = "difference_r_both"
    SYMDIFF_R_BOTH = "symdiff_r_both"
    CAT_R_RIGHT = "cat_r_right"  # K L^R
    CAT_R_LEFT = "cat_r_left"  # K^R L
    CAT_R_OUTER = "cat_r_outer"  # (K L)^R = L^R K^R
    STAR_R = "star_r"  # (L^*)^R
    CAT = "cat"
    STAR = "star"
    REV = "rev"

    @property
    def family(self) -> str:
        return _FAMILY_OF[self]

    @property
    def op(self) -> Optional[BooleanOp]:
        return _OP_OF.get(self)

    @property
    def op_label(self) -> str:
        if self is OperationKind.RDIFFERENCE_R_RIGHT:
            return "rdifference"
        return self.op.value if self.op else ""

    @property
    def unary(self) -> bool:
        return self in (OperationKind.STAR_R, OperationKind.STAR, OperationKind.REV)


K = OperationKind

FAMILIES: dict[str, tuple[OperationKind, ...]] = {
    "bool": (K.UNION, K.INTERSECTION, K.DIFFERENCE, K.SYMDIFF),
    "bool_r_right": (
        K.UNION_R_RIGHT,
        K.INTERSECTION_R_RIGHT,
        K.DIFFERENCE_R_RIGHT,
        K.RDIFFERENCE_R_RIGHT,
        K.SYMDIFF_R_RIGHT,
    ),
    "bool_r_both": (K.UNION_R_BOTH, K.INTERSECTION_R_BOTH, K.DIFFERENCE_R_BOTH, K.SYMDIFF_R_BOTH),
    "cat_r_right": (K.CAT_R_RIGHT,),
    "cat_r_left": (K.CAT_R_LEFT,),
    "cat_r_outer": (K.CAT_R_OUTER,),
    "star_r": (K.STAR_R,),
    "cat": (K.CAT,),
    "star": (K.STAR,),
    "rev": (K.REV,),
}
_FAMILY_OF = {kind: fam for fam, kinds in FAMILIES.items() for kind in kinds}
_OP_OF = {
    K.UNION: U, K.INTERSECTION: I, K.DIFFERENCE: D, K.SYMDIFF: X,
    K.UNION_R_RIGHT: U, K.INTERSECTION_R_RIGHT: I, K.DIFFERENCE_R_RIGHT: D,
    K.RDIFFERENCE_R_RIGHT: D, K.SYMDIFF_R_RIGHT: X,
    K.UNION_R_BOTH: U, K.INTERSECTION_R_BOTH: I, K.DIFFERENCE_R_BOTH: D, K.SYMDIFF_R_BOTH: X,
}  # fmt: skip

# Default (m, n) ranges per family, inclusive.
DEFAULT_RANGES: dict[str, tuple[tuple[int, int], tuple[int, int]]] = {
    "bool": ((3, 8), (3, 8)),
    "bool_r_right": ((3, 7), (3, 7)),
    "bool_r_both": ((3, 6), (3, 6)),
    "cat_r_right": ((3, 7), (3, 7)),
    "cat_r_left": ((3, 6), (3, 6)),
    "cat_r_outer": ((3, 6), (3, 6)),
    "star_r": ((3, 3), (3, 8)),
    "cat": ((3, 7), (3, 7)),
    "star": ((3, 3), (3, 8)),
    "rev": ((3, 3), (3, 8)),
}


def _one_rev(m, n):
    return m * 2**n - (m - 1)


def _two_rev(m, n):
    return (2**m - 1) * (2**n - 1) + 1


BOUNDS: dict[OperationKind, Callable[[int, int], int]] = {
    K.UNION: lambda m, n: m * n,
    K.INTERSECTION: lambda m, n: m * n,
    K.DIFFERENCE: lambda m, n: m * n,
    K.SYMDIFF: lambda m, n: m * n,
    K.UNION_R_RIGHT: _one_rev,
    K.INTERSECTION_R_RIGHT: _one_rev,
    K.DIFFERENCE_R_RIGHT: _one_rev,
    K.RDIFFERENCE_R_RIGHT: _one_rev,
    K.SYMDIFF_R_RIGHT: lambda m, n: m * 2**n,
    K.UNION_R_BOTH: _two_rev,
    K.INTERSECTION_R_BOTH: _two_rev,
    K.DIFFERENCE_R_BOTH: _two_rev,
    K.SYMDIFF_R_BOTH: lambda m, n: 2 ** (m + n - 1),
    K.CAT_R_RIGHT: lambda m, n: (m - 1) * 2**n + 2 ** (n - 1) - (m - 1),
    K.CAT_R_LEFT: lambda m, n: 3 * 2 ** (m + n - 2),
    K.CAT_R_OUTER: lambda m, n: 3 * 2 ** (m + n - 2) - 2**n + 1,
    K.STAR_R: lambda m, n: 2**n,
    K.CAT: lambda m, n: (m - 1) * 2**n + 2 ** (n - 1),
    K.STAR: lambda m, n: 2 ** (n - 1) + 2 ** (n - 2),
    K.REV: lambda m, n: 2**n,
}

# Sizes at m = n = 4 for reversed U_4(a,b,c) and U_4(b,a,c) with finals {3}.
LEMMA_EXCEPTION = {K.UNION_R_BOTH: 202, K.INTERSECTION_R_BOTH: 202, K.DIFFERENCE_R_BOTH: 202, K.SYMDIFF_R_BOTH: 116}
LEMMA_EXCEPTION_RAW = 232


def parse_kinds(names: Iterable[str]) -> list[OperationKind]:
    """Resolve kind or family names (or ``all``) to kinds in canonical order."""
    chosen: set[OperationKind] = set()
    for name in names:
        name = name.strip().lower()
        if name == "all":
            chosen.update(OperationKind)
        elif name in FAMILIES:
            chosen.update(FAMILIES[name])
        else:
            try:
                chosen.add(OperationKind(name))
            except ValueError:
                raise ValueError(f"unknown operation kind {name!r}") from None
    return [k for k in OperationKind if k in chosen]


def expected_bound(kind: OperationKind, m: Optional[int], n: int) -> int:
    if n < 3 or (not kind.unary and (m is None or m < 3)):
        raise ValueError(f"bounds are stated for sizes >= 3, got m={m}, n={n}")
    return BOUNDS[kind](m, n)


def default_witnesses(kind: OperationKind, m: Optional[int], n: int) -> tuple[WitnessSpec, Optional[WitnessSpec]]:
    if n < 3 or (not kind.unary and (m is None or m < 3)):
        raise ValueError(f"witnesses need sizes >= 3, got m={m}, n={n}")
    fam = kind.family
    if fam == "bool":
        if m != n:
            return witness("U", m, "ab"), witness("U", n, "ab")
        return witness("U", m, "abc"), witness("U", n, "bac")
    if fam in ("bool_r_right", "cat_r_right", "cat"):
        return witness("U", m, "abc"), witness("U", n, "abc")
    if fam == "bool_r_both":
        right = witness("U", n, "bac", [1, 3]) if n >= 4 else witness("U", 3, "bac", [1])
        return witness("U", m, "abc", [0, 2]), right
    if fam == "cat_r_left":
        return witness("V", m, "abcd"), witness("V", n, "dcba")
    if fam == "cat_r_outer":
        # left operand is the n-state factor reversed first: L^R K^R
        return witness("U", n, "dcba"), witness("U", m, "abcd")
    if kind is K.STAR_R:
        return witness("U", n, "abc", [0]), None
    if kind is K.STAR:
        return witness("U", n, "ab"), None
    return witness("U", n, "abc"), None


def lemma_witnesses(m: int, n: int) -> tuple[WitnessSpec, WitnessSpec]:
    """U_m(a,b,c) and U_n(b,a,c) with their standard single final states."""
    return witness("U", m, "abc"), witness("U", n, "bac")


def construct(kind: OperationKind, left: Automaton, right: Optional[Automaton] = None) -> Automaton:
    """The automaton of the operation, before determinization and minimization.

    Boolean kinds give the accessible product DFA; concatenation, star and
    reversal kinds give an NFA.
    """
    fam = kind.family
    if not kind.unary and right is None:
        raise ValueError(f"{kind.value} needs two operands")
    if fam in ("bool", "bool_r_right", "bool_r_both"):
        lhs, rhs = _dfa(left), _dfa(right)
        if fam in ("bool_r_right", "bool_r_both"):
            rhs = determinize(reverse(rhs))
        if fam == "bool_r_both":
            lhs = determinize(reverse(lhs))
        if kind is K.RDIFFERENCE_R_RIGHT:
            return boolean_product(rhs, lhs, D)
        return boolean_product(lhs, rhs, kind.op)
    if kind is K.CAT_R_RIGHT:
        return concatenate(_dfa(left), reverse(right))
    if kind is K.CAT_R_LEFT:
        return concatenate(reverse(left), right)
    if kind is K.CAT_R_OUTER:
        return concatenate(reverse(left), reverse(right))
    if kind is K.CAT:
        return concatenate(left, right)
    if kind is K.STAR_R:
        return reverse(star(_dfa(left)))
    if kind is K.STAR:
        return star(_dfa(left))
    return reverse(left)


def _dfa(machine: Automaton) -> Dfa:
    return determinize(machine) if isinstance(machine, Nfa) else machine


def measure(kind: OperationKind, left: Automaton, right: Optional[Automaton] = None) -> tuple[int, int]:
    """``(minimal size, reachable states before minimization)`` of the operation's result."""
    raw = _dfa(construct(kind, left, right))
    return minimize_refine(raw).n, raw.n


@dataclass
class CaseResult:
    kind: OperationKind
    m: Optional[int]
    n: int
    witnesses: str
    measured: Optional[int]
    expected: Optional[int]
    reachable_raw: Optional[int]
    elapsed: float
    note: str = ""
    skipped: bool = False
    at_most: bool = False  # pass on measured <= expected (upper-bound checks)

    @property
    def passed(self) -> bool:
        if self.skipped or self.measured is None or self.expected is None:
            return False
        return self.measured <= self.expected if self.at_most else self.measured == self.expected

    @property
    def status(self) -> str:
        if self.skipped:
            return "skip"
        return "pass" if self.passed else "FAIL"


def verify_case(kind: OperationKind, m: Optional[int], n: int, witness_set: str = "default") -> CaseResult:
    """Measure one cell and compare with its bound.

    ``witness_set="lemma"`` uses :func:`lemma_witnesses` for the two-reversal
    kinds; at ``m = n = 4`` the expected value is then the known exception.
    """
    if kind.unary:
        m = None
    expected = expected_bound(kind, m, n)
    note = ""
    if witness_set == "lemma":
        if kind.family != "bool_r_both":
            raise ValueError("lemma witnesses apply to the two-reversal boolean kinds only")
        specs = lemma_witnesses(m, n)
        if m == n == 4:
            expected = LEMMA_EXCEPTION[kind]
            note = "lemma-exception"
    elif witness_set == "default":
        specs = default_witnesses(kind, m, n)
        if kind.family == "bool" and m == n:
            note = "permutational pair"
    else:
        raise ValueError(f"unknown witness set {witness_set!r}")
    left, right = specs
    label = str(left) if right is None else f"{left} x {right}"
    t0 = time.perf_counter()
    try:
        measured, raw = measure(kind, build_witness(left), build_witness(right) if right else None)
    except CapExceededError as exc:
        return CaseResult(kind, m, n, label, None, expected, None, time.perf_counter() - t0, str(exc), skipped=True)
    return CaseResult(kind, m, n, label, measured, expected, raw, time.perf_counter() - t0, note)


CSV_COLUMNS = ("kind", "op", "m", "n", "witnesses", "measured", "expected", "raw", "pass", "ms")


@dataclass
class VerificationReport:
    cases: list[CaseResult] = field(default_factory=list)
    seed: Optional[int] = None

    @property
    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "FAIL": 0, "skip": 0}
        for case in self.cases:
            out[case.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return self.counts["FAIL"] == 0

    def rows(self) -> list[tuple]:
        return [
            (
                c.kind.family,
                c.kind.op_label,
                "" if c.m is None else c.m,
                c.n,
                c.witnesses,
                "" if c.measured is None else c.measured,
                "" if c.expected is None else c.expected,
                "" if c.reachable_raw is None else c.reachable_raw,
                c.status,
                f"{c.elapsed * 1000:.1f}",
            )
            for c in self.cases
        ]

    def to_csv(self, stream=None) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        writer.writerows(self.rows())
        text = buf.getvalue()
        if stream is not None:
            stream.write(text)
        return text

    def to_table(self) -> str:
        header = ("kind", "op", "m", "n", "measured", "expected", "raw", "status", "ms", "note")
        body = [
            (r[0], r[1], r[2], r[3], r[5], r[6], r[7], r[8], r[9], c.note)
            for r, c in zip(self.rows(), self.cases)
        ]
        widths = [max(len(str(x)) for x in col) for col in zip(header, *body)]
        lines = ["  ".join(str(x).ljust(w) for x, w in zip(row, widths)).rstrip() for row in [header, *body]]
        counts = self.counts
        lines.append(f"{counts['pass']} passed, {counts['FAIL']} failed, {counts['skip']} skipped")
        return "\n".join(lines)


def sweep_cells(kind: OperationKind, m_range: Sequence[int], n_range: Sequence[int]) -> list[tuple[Optional[int], int]]:
    if kind.unary:
        return [(None, n) for n in n_range]
    return [(m, n) for m in m_range for n in n_range]


def verify_sweep(
    kinds: Sequence[OperationKind],
    m_range: Optional[Sequence[int]] = None,
    n_range: Optional[Sequence[int]] = None,
    *,
    witness_set: str = "default",
    jobs: int = 1,
) -> VerificationReport:
    """Run :func:`verify_case` over every cell; ranges default per family.

    Results come back ordered by (kind, m, n) whatever ``jobs`` is.
    """
    tasks = []
    for kind in sorted(set(kinds), key=list(OperationKind).index):
        dm, dn = DEFAULT_RANGES[kind.family]
        ms = range(dm[0], dm[1] + 1) if m_range is None else m_range
        ns = range(dn[0], dn[1] + 1) if n_range is None else n_range
        tasks.extend((kind, m, n) for m, n in sweep_cells(kind, ms, ns))

    def run(task):
        kind, m, n = task
        try:
            return verify_case(kind, m, n, witness_set)
        except ValueError as exc:
            return CaseResult(kind, m, n, "", None, None, None, 0.0, str(exc), skipped=True)

    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            cases = list(pool.map(run, tasks))
    else:
        cases = [run(t) for t in tasks]
    return VerificationReport(cases)


def verify_lemma_exception() -> VerificationReport:
    """The four two-reversal kinds on the lemma witnesses at m = n = 4."""
    return VerificationReport([verify_case(kind, 4, 4, "lemma") for kind in FAMILIES["bool_r_both"]])


UPPER_BOUND_KINDS = (
    K.DIFFERENCE_R_RIGHT,
    K.SYMDIFF_R_RIGHT,
    K.DIFFERENCE_R_BOTH,
    K.SYMDIFF_R_BOTH,
)


def verify_upper_bounds(
    samples: int = 50,
    seed: int = 0,
    max_n: int = 5,
    alphabet: Sequence[str] = "ab",
    kinds: Sequence[OperationKind] = UPPER_BOUND_KINDS,
) -> VerificationReport:
    """Check that random minimal operands never exceed the bound formulas.

    Sizes are drawn uniformly from ``[3, max_n]``; every sample yields one
    case per kind, passing when ``measured <= expected``.
    """
    rng = np.random.default_rng(seed)
    report = VerificationReport(seed=seed)
    for i in range(samples):
        m, n = (int(v) for v in rng.integers(3, max_n + 1, size=2))
        left = random_minimal_dfa(m, alphabet, rng)
        right = random_minimal_dfa(n, alphabet, rng)
        for kind in kinds:
            t0 = time.perf_counter()
            measured, raw = measure(kind, left, right)
            report.cases.append(
                CaseResult(
                    kind, m, n, f"random#{i}", measured, expected_bound(kind, m, n), raw,
                    time.perf_counter() - t0, f"seed {seed}", at_most=True,
                )
            )
    return report


def random_dfa(n: int, alphabet: Sequence[str], rng: np.random.Generator) -> Dfa:
    """Uniform total table and a uniform nonempty proper final set; initial state 0."""
    table = rng.integers(0, n, size=(n, len(alphabet)))
    while True:
        finals = np.flatnonzero(rng.integers(0, 2, size=n))
        if 0 < len(finals) < n or n == 1:
            break
    return Dfa(n, tuple(alphabet), table, 0, frozenset(finals.tolist()))


def random_minimal_dfa(n: int, alphabet: Sequence[str], rng: np.random.Generator, max_tries: int = 10_000) -> Dfa:
    """Rejection-sample :func:`random_dfa` until it is accessible and minimal."""
    for _ in range(max_tries):
        d = random_dfa(n, alphabet, rng)
        if trim(d).n == n and minimize_refine(d).n == n:
            return d
    raise RuntimeError(f"no minimal {n}-state DFA after {max_tries} draws")
