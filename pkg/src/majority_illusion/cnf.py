"""CNF formulas: DIMACS I/O, shape classifiers, SAT oracles and generators."""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .errors import CapacityError, DomainError, GenerationError, ParseError

__all__ = [
    "CnfFormula",
    "parse_dimacs",
    "serialize_dimacs",
    "is_3cnf",
    "is_2p2n",
    "evaluate",
    "satisfies",
    "brute_force_sat",
    "dpll_sat",
    "generate_3cnf",
    "generate_2p2n",
    "enumerate_3cnf",
    "enumerate_2p2n",
    "canonical",
    "BRUTE_FORCE_VAR_CAP",
]

BRUTE_FORCE_VAR_CAP = 26


@dataclass(frozen=True)
class CnfFormula:
    variable_count: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not isinstance(self.variable_count, int) or self.variable_count < 0:
            raise DomainError(f"variable_count must be a non-negative integer, got {self.variable_count!r}")
        clauses = tuple(tuple(int(lit) for lit in c) for c in self.clauses)
        for clause in clauses:
            for lit in clause:
                if lit == 0 or abs(lit) > self.variable_count:
                    raise DomainError(f"literal {lit} out of range 1..{self.variable_count}")
        object.__setattr__(self, "clauses", clauses)

    @classmethod
    def of(cls, clauses: Iterable[Iterable[int]], variable_count: Optional[int] = None) -> "CnfFormula":
        clauses = tuple(tuple(c) for c in clauses)
        if variable_count is None:
            variable_count = max((abs(lit) for c in clauses for lit in c), default=0)
        return cls(variable_count, clauses)

    @property
    def clause_count(self) -> int:
        return len(self.clauses)

    def __str__(self):
        def lit(x):
            return f"p{x}" if x > 0 else f"~p{-x}"

        return " & ".join("(" + " | ".join(lit(x) for x in c) + ")" for c in self.clauses)


def canonical(f: CnfFormula) -> CnfFormula:
    """Sort literals inside clauses and then the clauses themselves."""
    return CnfFormula(f.variable_count, tuple(sorted(tuple(sorted(c, key=_lit_key)) for c in f.clauses)))


def _lit_key(lit):
    return (abs(lit), lit < 0)


# -- DIMACS ---------------------------------------------------------------


def parse_dimacs(text) -> CnfFormula:
    """Parse DIMACS ``cnf`` text (a string or an iterable of lines)."""
    lines = text.splitlines() if isinstance(text, str) else list(text)
    header = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    last_line = 0
    for lineno, raw in enumerate(lines, start=1):
        last_line = lineno
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            if header is not None:
                raise ParseError("duplicate problem line", lineno)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"malformed header {line!r}; expected 'p cnf V C'", lineno)
            try:
                nv, nc = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"malformed header {line!r}", lineno) from None
            if nv < 0 or nc < 0:
                raise ParseError("negative counts in header", lineno)
            header = (nv, nc)
            continue
        if header is None:
            raise ParseError("clause data before the 'p cnf' header", lineno)
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise ParseError(f"bad literal {token!r}", lineno) from None
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > header[0]:
                raise ParseError(f"literal {lit} exceeds declared variable count {header[0]}", lineno)
            else:
                current.append(lit)
    if header is None:
        raise ParseError("missing 'p cnf' header", last_line or 1)
    if current:
        raise ParseError("last clause is missing its terminating 0", last_line)
    if len(clauses) != header[1]:
        raise ParseError(f"header declares {header[1]} clauses, found {len(clauses)}", last_line)
    return CnfFormula(header[0], tuple(clauses))


def serialize_dimacs(f: CnfFormula, comments: Iterable[str] = ()) -> str:
    out = [f"c {c}" for c in comments]
    out.append(f"p cnf {f.variable_count} {f.clause_count}")
    out.extend(" ".join(str(lit) for lit in clause) + " 0" for clause in f.clauses)
    return "\n".join(out) + "\n"


# -- classifiers ----------------------------------------------------------


def is_3cnf(f: CnfFormula, strict: bool = False) -> bool:
    """Every clause has exactly three literals.

    With ``strict`` the three literals must also mention three distinct
    variables (no repeats, no complementary pair).
    """
    for clause in f.clauses:
        if len(clause) != 3:
            return False
        if strict and len({abs(lit) for lit in clause}) != 3:
            return False
    return True


def is_2p2n(f: CnfFormula) -> bool:
    counts = Counter(lit for clause in f.clauses for lit in clause)
    if f.variable_count < 1:
        return False
    return all(counts[v] == 2 and counts[-v] == 2 for v in range(1, f.variable_count + 1))


# -- evaluation and oracles -----------------------------------------------


def evaluate(f: CnfFormula, assignment) -> bool:
    """Truth value of ``f`` under ``assignment`` (a mapping variable -> bool)."""
    return all(any(assignment[abs(lit)] == (lit > 0) for lit in clause) for clause in f.clauses)


def satisfies(f: CnfFormula, assignment) -> bool:
    try:
        return evaluate(f, assignment)
    except (KeyError, IndexError):
        return False


_CHUNK_BITS = 16


def brute_force_sat(f: CnfFormula) -> Optional[dict[int, bool]]:
    """Lexicographically first satisfying assignment, or ``None``.

    Assignments are ordered as bit strings ``x1 x2 ... xm`` with False < True,
    so the all-false assignment is tried first.
    """
    m = f.variable_count
    if m > BRUTE_FORCE_VAR_CAP:
        raise CapacityError(f"brute force is capped at {BRUTE_FORCE_VAR_CAP} variables, formula has {m}")
    if any(len(c) == 0 for c in f.clauses):
        return None
    if m == 0:
        return {}
    total = 1 << m
    chunk = 1 << min(m, _CHUNK_BITS)
    shifts = np.array([m - v for v in range(1, m + 1)], dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, start + chunk, dtype=np.int64)
        bits = ((idx[:, None] >> shifts[None, :]) & 1).astype(bool)
        ok = np.ones(chunk, dtype=bool)
        for clause in f.clauses:
            sat = np.zeros(chunk, dtype=bool)
            for lit in clause:
                col = bits[:, abs(lit) - 1]
                sat |= col if lit > 0 else ~col
            ok &= sat
        hits = np.flatnonzero(ok)
        if hits.size:
            row = bits[hits[0]]
            return {v: bool(row[v - 1]) for v in range(1, m + 1)}
    return None


def dpll_sat(f: CnfFormula) -> Optional[dict[int, bool]]:
    """Plain DPLL (unit propagation, lowest-variable branching, False first).

    Used where formulas carry auxiliary variables well past the brute-force
    cap.  Unassigned variables in the model default to False.
    """
    clauses = [tuple(set(c)) for c in f.clauses]
    if any(not c for c in clauses):
        return None
    watch: dict[int, list[int]] = {}
    for ci, clause in enumerate(clauses):
        for lit in clause:
            watch.setdefault(-lit, []).append(ci)
    value: dict[int, bool] = {}

    def lit_value(lit):
        v = value.get(abs(lit))
        if v is None:
            return None
        return v if lit > 0 else not v

    def propagate(trail, start_lits):
        queue = list(start_lits)
        while queue:
            lit = queue.pop()
            # ``lit`` just became true, so clauses containing ``-lit`` may be unit
            for ci in watch.get(lit, ()):
                unassigned = None
                n_unassigned = 0
                satisfied = False
                for other in clauses[ci]:
                    val = lit_value(other)
                    if val is True:
                        satisfied = True
                        break
                    if val is None:
                        n_unassigned += 1
                        unassigned = other
                if satisfied:
                    continue
                if n_unassigned == 0:
                    return False
                if n_unassigned == 1:
                    value[abs(unassigned)] = unassigned > 0
                    trail.append(abs(unassigned))
                    queue.append(unassigned)
        return True

    def assign(lit, trail):
        value[abs(lit)] = lit > 0
        trail.append(abs(lit))
        return propagate(trail, [lit])

    def undo(trail):
        for var in trail:
            del value[var]

    root: list[int] = []
    for clause in clauses:
        if len(clause) == 1:
            lit = clause[0]
            cur = lit_value(lit)
            if cur is False:
                undo(root)
                return None
            if cur is None and not assign(lit, root):
                return None
    # clauses that are unit from the start are handled; check non-unit ones via search

    def search(next_var):
        while next_var <= f.variable_count and next_var in value:
            next_var += 1
        if next_var > f.variable_count:
            return all(any(lit_value(l) for l in c) for c in clauses)
        for lit in (-next_var, next_var):
            trail: list[int] = []
            if assign(lit, trail) and search(next_var + 1):
                return True
            undo(trail)
        return False

    if not search(1):
        return None
    return {v: value.get(v, False) for v in range(1, f.variable_count + 1)}


# -- generators -----------------------------------------------------------


def generate_3cnf(m: int, n: int, seed: int) -> CnfFormula:
    """Random 3-CNF with ``m`` variables and ``n`` clauses.

    Clauses use three distinct variables when ``m >= 3``; with fewer variables
    repeats are unavoidable and allowed.
    """
    if m < 1 or n < 1:
        raise GenerationError(f"need m >= 1 and n >= 1, got m={m}, n={n}")
    rng = random.Random(seed)
    clauses = []
    for _ in range(n):
        if m >= 3:
            variables = rng.sample(range(1, m + 1), 3)
        else:
            variables = [rng.randint(1, m) for _ in range(3)]
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in variables))
    return CnfFormula(m, tuple(clauses))


def generate_2p2n(m: int, seed: int, sizes=(2, 3), attempts: int = 200) -> CnfFormula:
    """Random 2P2N formula: each variable occurs twice positively, twice negatively.

    The ``4m`` occurrences are shuffled and cut into clauses whose sizes are
    drawn from ``sizes``.  Partitions that put one variable twice into the same
    clause are rejected while ``attempts`` last, then accepted.
    """
    if m < 1:
        raise GenerationError(f"need m >= 1, got {m}")
    sizes = sorted(set(sizes))
    if not sizes or sizes[0] < 1:
        raise GenerationError(f"clause sizes must be positive, got {sizes}")
    total = 4 * m
    if not _can_partition(total, sizes):
        raise GenerationError(f"{total} occurrences cannot be cut into clauses of sizes {sizes}")
    rng = random.Random(seed)
    best = None
    for _ in range(attempts):
        occurrences = [v for v in range(1, m + 1) for _ in range(2)]
        occurrences += [-v for v in range(1, m + 1) for _ in range(2)]
        rng.shuffle(occurrences)
        cut = []
        remaining = total
        while remaining:
            options = [s for s in sizes if s <= remaining and _can_partition(remaining - s, sizes)]
            s = rng.choice(options)
            cut.append(s)
            remaining -= s
        clauses, pos = [], 0
        for s in cut:
            clauses.append(tuple(occurrences[pos : pos + s]))
            pos += s
        best = CnfFormula(m, tuple(clauses))
        if all(len({abs(x) for x in c}) == len(c) for c in clauses):
            return best
    return best


def _can_partition(total, sizes):
    reachable = {0}
    for t in range(1, total + 1):
        if any(t - s in reachable for s in sizes):
            reachable.add(t)
    return total in reachable


def enumerate_3cnf(m: int, max_clauses: int):
    """All 3-CNF formulas over exactly ``m`` variables with 1..max_clauses distinct clauses.

    Literals inside a clause are sorted and clauses are sorted, so each
    formula appears once up to literal and clause order.  Every variable must
    occur somewhere.
    """
    literals = [lit for v in range(1, m + 1) for lit in (v, -v)]
    clause_pool = list(itertools.combinations_with_replacement(sorted(literals, key=_lit_key), 3))
    for n in range(1, max_clauses + 1):
        for combo in itertools.combinations(clause_pool, n):
            used = {abs(lit) for c in combo for lit in c}
            if len(used) == m:
                yield CnfFormula(m, combo)


def enumerate_2p2n(m: int):
    """All 2P2N formulas over ``m`` variables, up to clause and literal order.

    Clauses are multisets of literals of any size; the formula is the multiset
    of its clauses.
    """
    occurrences = sorted(
        [v for v in range(1, m + 1) for _ in range(2)] + [-v for v in range(1, m + 1) for _ in range(2)],
        key=_lit_key,
    )
    seen = set()
    for partition in _multiset_partitions(occurrences):
        key = tuple(sorted(partition))
        if key not in seen:
            seen.add(key)
            yield CnfFormula(m, key)


def _multiset_partitions(items):
    """Partitions of a sorted list into sorted blocks (duplicates may repeat)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    # choose the block containing ``first`` as first + a sub-multiset of rest
    seen_blocks = set()
    for r in range(len(rest) + 1):
        for idx in itertools.combinations(range(len(rest)), r):
            block = (first,) + tuple(rest[i] for i in idx)
            remaining = [rest[i] for i in range(len(rest)) if i not in idx]
            if (block, tuple(remaining)) in seen_blocks:
                continue
            seen_blocks.add((block, tuple(remaining)))
            for tail in _multiset_partitions(remaining):
                yield [block] + tail
