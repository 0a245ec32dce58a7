"""Search procedures: finding illusion-inducing labellings and repair plans.

All labelling searches fix blue as the intended global winner.  Swapping the
two colours maps illusions to illusions with the same illuded set, so nothing
is lost.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .cnf import CnfFormula
from .errors import CapacityError, ConstructionError, DomainError, ParseError, PlanValidityError
from .network import (
    BLUE,
    RED,
    EditPlan,
    Labelling,
    LabelledNetwork,
    SocialNetwork,
    apply_edit_plan,
    illusion_report,
    is_q_illusion,
    margins,
    normalize_pair,
)
from .thresholds import Fraction, as_fraction, at_least_fraction, min_count_for

__all__ = [
    "BRUTE_FORCE_NODE_CAP",
    "DEBUG_NODE_CAP",
    "EXHAUSTIVE_NODE_CAP",
    "EXHAUSTIVE_BUDGET_CAP",
    "SearchStats",
    "solve_one_illusion",
    "solve_q_illusion_bruteforce",
    "all_one_illusions",
    "CnfExport",
    "export_illusion_cnf",
    "decode_model",
    "parse_solver_model",
    "PlanVerdict",
    "verify_plan",
    "eliminate_exhaustive",
    "eliminate_greedy",
    "normalise_mode",
]

BRUTE_FORCE_NODE_CAP = 24
DEBUG_NODE_CAP = 14
EXHAUSTIVE_NODE_CAP = 12
EXHAUSTIVE_BUDGET_CAP = 3


# -- exact q = 1 search ---------------------------------------------------


@dataclass
class SearchStats:
    nodes: int = 0
    forced: int = 0
    pruned: int = 0
    checks: int = 0


class _OneIllusionSearch:
    """Backtracking for full illusion with blue winning.

    Every node needs a strict red majority among its neighbours, and reds
    must stay a strict minority overall.  Propagation at each search node:

    * a node whose red-plus-undecided neighbours cannot reach a majority
      prunes; when they reach it exactly, all undecided neighbours turn red
      (for a dependant this forces its only neighbour red);
    * once the red count hits its cap every undecided node turns blue;
    * an undecided node whose neighbours are all satisfied turns blue
      (dominance: red there can only cost);
    * a disjoint packing of unsatisfied neighbourhoods bounds the reds still
      needed, pruning when the cap would be exceeded.
    """

    def __init__(self, sn: SocialNetwork, debug: bool = False, stats: Optional[SearchStats] = None):
        self.sn = sn
        self.n = sn.node_count
        self.adj = [sorted(a) for a in sn.adjacency]
        self.need = [len(a) // 2 + 1 for a in self.adj]
        self.cap = (self.n - 1) // 2
        self.stats = stats if stats is not None else SearchStats()
        self.debug = debug
        self._solutions = None
        if debug:
            if self.n > DEBUG_NODE_CAP:
                raise CapacityError(f"debug cross-checking is capped at {DEBUG_NODE_CAP} nodes")
            self._solutions = all_one_illusions(sn, blue_winner_only=True)

    # state: colour list (-1 undecided), red/undecided counts per node
    def _consistent(self, colour):
        sols = self._solutions
        mask = np.ones(len(sols), dtype=bool)
        for i, c in enumerate(colour):
            if c >= 0:
                mask &= sols[:, i] == c
        return sols[mask]

    def _check_forced(self, before, node, value, rule):
        self.stats.checks += 1
        rows = self._consistent(before)
        if rule == "dominance":
            if len(rows) and not (rows[:, node] == value).any():
                raise ConstructionError(f"dominance at node {node} lost every solution")
        elif len(rows) and not (rows[:, node] == value).all():
            raise ConstructionError(f"rule {rule} forced node {node}={value} without entailment")

    def _check_pruned(self, colour, rule):
        self.stats.checks += 1
        if len(self._consistent(colour)):
            raise ConstructionError(f"rule {rule} pruned a branch that holds a solution")

    def solve(self) -> Optional[Labelling]:
        n = self.n
        if n == 0:
            return Labelling(())
        if any(not a for a in self.adj):
            return None
        colour = [-1] * n
        red = [0] * n
        undecided = [len(a) for a in self.adj]
        state = {"reds": 0}
        trail: list[int] = []

        def assign(v, c, rule):
            if self.debug and rule != "branch":
                self._check_forced(list(colour), v, c, rule)
            colour[v] = c
            trail.append(v)
            if c == RED:
                state["reds"] += 1
            for u in self.adj[v]:
                undecided[u] -= 1
                if c == RED:
                    red[u] += 1

        def undo(mark):
            while len(trail) > mark:
                v = trail.pop()
                c = colour[v]
                colour[v] = -1
                if c == RED:
                    state["reds"] -= 1
                for u in self.adj[v]:
                    undecided[u] += 1
                    if c == RED:
                        red[u] -= 1

        def fail(rule):
            self.stats.pruned += 1
            if self.debug:
                self._check_pruned(colour, rule)
            return False

        def propagate():
            changed = True
            while changed:
                changed = False
                if state["reds"] > self.cap:
                    return fail("cap")
                for i in range(n):
                    have, free = red[i], undecided[i]
                    if have + free < self.need[i]:
                        return fail("majority")
                    if free and have + free == self.need[i]:
                        for u in self.adj[i]:
                            if colour[u] < 0:
                                assign(u, RED, "tight")
                                self.stats.forced += 1
                        changed = True
                        if state["reds"] > self.cap:
                            return fail("cap")
                if state["reds"] == self.cap:
                    for v in range(n):
                        if colour[v] < 0:
                            assign(v, BLUE, "cap")
                            self.stats.forced += 1
                            changed = True
                if changed:
                    continue
                for v in range(n):
                    if colour[v] < 0 and all(red[u] >= self.need[u] for u in self.adj[v]):
                        assign(v, BLUE, "dominance")
                        self.stats.forced += 1
                        changed = True
            # lower bound on reds still needed
            used = set()
            bound = 0
            for i in range(n):
                deficit = self.need[i] - red[i]
                if deficit <= 0:
                    continue
                pool = [u for u in self.adj[i] if colour[u] < 0]
                if used.isdisjoint(pool):
                    used.update(pool)
                    bound += deficit
            if state["reds"] + bound > self.cap:
                return fail("bound")
            return True

        def search():
            self.stats.nodes += 1
            mark = len(trail)
            if not propagate():
                undo(mark)
                return False
            try:
                v = colour.index(-1)
            except ValueError:
                return True
            for c in (RED, BLUE):
                inner = len(trail)
                assign(v, c, "branch")
                if search():
                    return True
                undo(inner)
            undo(mark)
            return False

        if not search():
            return None
        return Labelling(tuple(colour))


def solve_one_illusion(sn: SocialNetwork, debug: bool = False, stats: Optional[SearchStats] = None) -> Optional[Labelling]:
    """A labelling putting every node under illusion, or ``None``.

    With ``debug`` every propagation step is checked against the full
    solution set (networks of at most ``DEBUG_NODE_CAP`` nodes).
    """
    result = _OneIllusionSearch(sn, debug=debug, stats=stats).solve()
    if result is not None and not is_q_illusion(LabelledNetwork(sn, result), 1):
        raise ConstructionError("search returned a labelling that is not a full illusion")
    return result


# -- brute force ----------------------------------------------------------

_CHUNK = 1 << 15


def _labelling_chunks(n):
    """Yield (start, bits) with bits[r, i] the colour of node i in labelling start + r.

    Node 0 is the most significant bit, so rows come in lexicographic order.
    """
    total = 1 << n
    shifts = np.array([n - 1 - i for i in range(n)], dtype=np.int64)
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        yield start, ((idx[:, None] >> shifts[None, :]) & 1).astype(np.int8)


def _illuded_counts(sn: SocialNetwork, bits):
    n = sn.node_count
    adj = np.zeros((n, n), dtype=np.int32)
    for u, v in sn.edges:
        adj[u, v] = adj[v, u] = 1
    deg = adj.sum(axis=0)
    red_nb = bits.astype(np.int32) @ adj
    local_red = 2 * red_nb > deg
    local_blue = 2 * red_nb < deg
    reds = bits.sum(axis=1).astype(np.int64)
    blue_wins = 2 * reds < n
    red_wins = 2 * reds > n
    count = np.where(blue_wins, local_red.sum(axis=1), 0) + np.where(red_wins, local_blue.sum(axis=1), 0)
    return count, blue_wins


def solve_q_illusion_bruteforce(sn: SocialNetwork, q) -> Optional[Labelling]:
    """Lexicographically first labelling inducing a ``q``-majority illusion."""
    q = as_fraction(q)
    if not 0 <= q <= 1:
        raise DomainError(f"q must lie in [0, 1], got {q}")
    n = sn.node_count
    if n > BRUTE_FORCE_NODE_CAP:
        raise CapacityError(f"brute force is capped at {BRUTE_FORCE_NODE_CAP} nodes, network has {n}")
    if n == 0:
        return Labelling(())
    a, b = q.numerator, q.denominator
    for _, bits in _labelling_chunks(n):
        count, _ = _illuded_counts(sn, bits)
        hits = np.flatnonzero(count * b >= a * n)
        if hits.size:
            return Labelling(tuple(int(x) for x in bits[hits[0]]))
    return None


def all_one_illusions(sn: SocialNetwork, blue_winner_only: bool = False) -> np.ndarray:
    """Every full-illusion labelling as rows of a 0/1 array (lexicographic order)."""
    n = sn.node_count
    if n > BRUTE_FORCE_NODE_CAP:
        raise CapacityError(f"enumeration is capped at {BRUTE_FORCE_NODE_CAP} nodes")
    rows = []
    for _, bits in _labelling_chunks(n):
        count, blue = _illuded_counts(sn, bits)
        keep = count == n
        if blue_winner_only:
            keep &= blue
        rows.append(bits[keep])
    return np.concatenate(rows) if rows else np.zeros((0, n), dtype=np.int8)


# -- CNF export -----------------------------------------------------------


class _CnfBuilder:
    def __init__(self, first_free: int):
        self.next_var = first_free
        self.clauses: list[tuple[int, ...]] = []

    def new(self) -> int:
        v = self.next_var
        self.next_var += 1
        return v

    def clause(self, *lits):
        """Add a clause; ``True``/``False`` entries are constants and simplify away."""
        out = []
        for lit in lits:
            if lit is True:
                return
            if lit is False:
                continue
            out.append(lit)
        self.clauses.append(tuple(out))

    def at_least_outputs(self, xs, k):
        """Sequential counter with full equivalence.

        Returns ``outs`` where ``outs[j]`` (1 <= j <= k) holds iff at least ``j``
        of ``xs`` are true.  Entries may be the constants True/False.
        """
        prev = [True] + [False] * k
        for i, x in enumerate(xs, start=1):
            cur = [True]
            for j in range(1, k + 1):
                if j > i:
                    cur.append(False)
                    continue
                a, c = prev[j], prev[j - 1]
                s = self.new()
                neg = lambda t: (not t) if isinstance(t, bool) else -t  # noqa: E731
                # s <-> a or (c and x)
                self.clause(neg(a), s)
                self.clause(neg(c), -x, s)
                self.clause(-s, a, c)
                self.clause(-s, a, x)
                cur.append(s)
            prev = cur
        return prev


@dataclass(frozen=True)
class CnfExport:
    formula: CnfFormula
    node_vars: dict[int, int]
    indicator_vars: dict[int, int]
    aux_range: tuple[int, int]

    def variable_map(self) -> dict:
        return {
            "node_vars": {str(k): v for k, v in self.node_vars.items()},
            "indicator_vars": {str(k): v for k, v in self.indicator_vars.items()},
            "aux_range": list(self.aux_range),
        }

    @classmethod
    def map_from_dict(cls, data: dict) -> "CnfExport":
        try:
            node_vars = {int(k): int(v) for k, v in data["node_vars"].items()}
            ind = {int(k): int(v) for k, v in data["indicator_vars"].items()}
            lo, hi = data["aux_range"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed variable map: {exc}") from None
        return cls(CnfFormula(0, ()), node_vars, ind, (int(lo), int(hi)))


def export_illusion_cnf(sn: SocialNetwork, q) -> CnfExport:
    """CNF whose models are exactly the blue-winning ``q``-illusion labellings.

    Variable ``i + 1`` is node ``i`` (true = red); indicators follow, then the
    counter auxiliaries.
    """
    q = as_fraction(q)
    if not Fraction(1, 2) < q <= 1:
        raise DomainError(f"CNF export needs q in (1/2, 1], got {q}")
    n = sn.node_count
    node_vars = {i: i + 1 for i in range(n)}
    indicators = {i: n + 1 + i for i in range(n)}
    cb = _CnfBuilder(2 * n + 1)
    aux_lo = cb.next_var
    for i in range(n):
        nb = sorted(sn.adjacency[i])
        y = indicators[i]
        if not nb:
            cb.clause(-y)
            continue
        need = len(nb) // 2 + 1
        out = cb.at_least_outputs([node_vars[u] for u in nb], need)[need]
        if out is False:
            cb.clause(-y)
        elif out is True:
            cb.clause(y)
        else:
            cb.clause(-y, out)
            cb.clause(y, -out)
    if n:
        cap = (n - 1) // 2
        over = cb.at_least_outputs([node_vars[i] for i in range(n)], cap + 1)[cap + 1]
        cb.clause(-over if not isinstance(over, bool) else (not over))
        t = min_count_for(n, q)
        if t > 0:
            enough = cb.at_least_outputs([indicators[i] for i in range(n)], t)[t]
            cb.clause(enough)
    aux_hi = cb.next_var - 1
    formula = CnfFormula(cb.next_var - 1, tuple(cb.clauses))
    return CnfExport(formula, node_vars, indicators, (aux_lo, aux_hi))


def decode_model(export: CnfExport, model) -> Labelling:
    """Labelling from a model (mapping or set of true variables)."""
    if isinstance(model, dict):
        truth = lambda v: bool(model.get(v, False))  # noqa: E731
    else:
        true_set = set(model)
        truth = lambda v: v in true_set  # noqa: E731
    n = len(export.node_vars)
    return Labelling(tuple(RED if truth(export.node_vars[i]) else BLUE for i in range(n)))


_V_LINE = re.compile(r"^\s*v\b(.*)$")


def parse_solver_model(text: str) -> set[int]:
    """True variables from competition-style solver output (``s``/``v`` lines)."""
    true_vars: set[int] = set()
    saw_values = False
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if stripped.startswith("s"):
            if "UNSAT" in stripped.upper():
                raise ParseError("solver reported UNSATISFIABLE; no model to ingest", lineno)
            continue
        m = _V_LINE.match(stripped)
        if m is None:
            # tolerate bare literal lists as well
            body = stripped
        else:
            body = m.group(1)
        for token in body.split():
            try:
                lit = int(token)
            except ValueError:
                raise ParseError(f"bad literal {token!r} in model", lineno) from None
            saw_values = True
            if lit > 0:
                true_vars.add(lit)
    if not saw_values:
        raise ParseError("no assignment found in model text")
    return true_vars


# -- edit plans -----------------------------------------------------------

_MODES = {"both": "both", "add": "add", "add_only": "add", "remove": "remove", "remove_only": "remove"}


def normalise_mode(mode: str) -> str:
    try:
        return _MODES[mode]
    except KeyError:
        raise DomainError(f"unknown edit mode {mode!r}; expected both, add or remove") from None


@dataclass(frozen=True)
class PlanVerdict:
    ok: bool
    reason: str
    illuded_after: Optional[int] = None

    def __bool__(self):
        return self.ok


def verify_plan(ln: LabelledNetwork, plan: EditPlan, q, k: int, mode: str = "both") -> PlanVerdict:
    """Does ``plan`` respect mode and budget and leave no ``q``-illusion behind?"""
    mode = normalise_mode(mode)
    q = as_fraction(q)
    if plan.size > k:
        return PlanVerdict(False, "budget_exceeded")
    if (mode == "add" and plan.removals) or (mode == "remove" and plan.additions):
        return PlanVerdict(False, "mode_violation")
    try:
        edited = apply_edit_plan(ln.network, plan)
    except PlanValidityError:
        return PlanVerdict(False, "invalid_plan")
    after = ln.with_network(edited)
    count = illusion_report(after).illuded_count
    if at_least_fraction(count, ln.node_count, q):
        return PlanVerdict(False, "still_illusion", count)
    return PlanVerdict(True, "ok", count)


def _candidates(sn: SocialNetwork, mode: str):
    pairs = []
    for u in range(sn.node_count):
        for v in range(u + 1, sn.node_count):
            present = (u, v) in sn.edges
            if mode == "both" or (mode == "add") != present:
                pairs.append((u, v))
    return pairs


class _MarginTracker:
    """Margins and the illuded census under a fixed labelling, edited in place."""

    def __init__(self, ln: LabelledNetwork):
        self.colours = ln.labelling.colours
        self.winner = illusion_report(ln).global_winner
        self.base = margins(ln)
        self.sn = ln.network

    def illuded(self, margin):
        if self.winner is None:
            return False
        return margin < 0 if self.winner == BLUE else margin > 0

    def delta(self, u, v):
        """Margin change at ``u`` when its tie to ``v`` is toggled."""
        sign = 1 if self.colours[v] == BLUE else -1
        return -sign if (u, v) in self.sn.edges or (v, u) in self.sn.edges else sign


def eliminate_exhaustive(ln: LabelledNetwork, q, k: int, mode: str = "both") -> Optional[EditPlan]:
    """Smallest plan (then lexicographically first) that breaks the ``q``-illusion."""
    mode = normalise_mode(mode)
    q = as_fraction(q)
    n = ln.node_count
    if n > EXHAUSTIVE_NODE_CAP:
        raise CapacityError(f"exhaustive elimination is capped at {EXHAUSTIVE_NODE_CAP} nodes, got {n}")
    if k > EXHAUSTIVE_BUDGET_CAP:
        raise CapacityError(f"exhaustive elimination is capped at budget {EXHAUSTIVE_BUDGET_CAP}, got {k}")
    if k < 0:
        raise DomainError("budget must be non-negative")
    ln._require_binary()
    if not is_q_illusion(ln, q):
        return EditPlan()
    tracker = _MarginTracker(ln)
    if tracker.winner is None:
        return EditPlan()
    pairs = _candidates(ln.network, mode)
    base = tracker.base
    base_count = sum(1 for m in base if tracker.illuded(m))
    a, b = q.numerator, q.denominator
    deltas = [(tracker.delta(u, v), tracker.delta(v, u)) for u, v in pairs]
    for size in range(1, k + 1):
        for combo in itertools.combinations(range(len(pairs)), size):
            change: dict[int, int] = {}
            for idx in combo:
                u, v = pairs[idx]
                du, dv = deltas[idx]
                change[u] = change.get(u, 0) + du
                change[v] = change.get(v, 0) + dv
            count = base_count
            for node, d in change.items():
                count += tracker.illuded(base[node] + d) - tracker.illuded(base[node])
            if count * b < a * n:
                chosen = [pairs[i] for i in combo]
                present = ln.network.edges
                plan = EditPlan(
                    frozenset(p for p in chosen if p not in present),
                    frozenset(p for p in chosen if p in present),
                )
                return plan
    return None


def eliminate_greedy(ln: LabelledNetwork, q, k: int, mode: str = "both") -> Optional[EditPlan]:
    """Repeatedly take the best single edit; sound but incomplete.

    An edit is scored by the drop in the illuded census, then by how far it
    moves the margins of currently illuded endpoints toward the global winner.
    Edits that would put a currently safe node under illusion are skipped.
    """
    mode = normalise_mode(mode)
    q = as_fraction(q)
    ln._require_binary()
    if not is_q_illusion(ln, q):
        return EditPlan()
    tracker = _MarginTracker(ln)
    if tracker.winner is None:
        return EditPlan()
    toward = 1 if tracker.winner == BLUE else -1
    current = list(tracker.base)
    edges = set(ln.network.edges)
    adds: set[tuple[int, int]] = set()
    rems: set[tuple[int, int]] = set()
    n = ln.node_count
    count = sum(1 for m in current if tracker.illuded(m))
    colours = ln.labelling.colours
    for _ in range(k):
        illuded_nodes = [i for i in range(n) if tracker.illuded(current[i])]
        best = None
        for u in illuded_nodes:
            for v in range(n):
                if v == u:
                    continue
                pair = normalize_pair(u, v)
                if pair in adds or pair in rems:
                    continue
                present = pair in edges
                if (mode == "add" and present) or (mode == "remove" and not present):
                    continue
                du = (1 if colours[v] == BLUE else -1) * (-1 if present else 1)
                dv = (1 if colours[u] == BLUE else -1) * (-1 if present else 1)
                gain = 0
                improve = 0
                pushes = False
                for node, d in ((u, du), (v, dv)):
                    was = tracker.illuded(current[node])
                    now = tracker.illuded(current[node] + d)
                    if not was and now:
                        pushes = True
                    gain += was - now
                    if was:
                        improve += toward * d
                if pushes:
                    continue
                score = (gain, improve)
                if score <= (0, 0):
                    continue
                key = (score, (-pair[0], -pair[1]))
                if best is None or key > best[0]:
                    best = (key, pair, present, {u: du, v: dv})
        if best is None:
            break
        _, pair, present, change = best
        (rems if present else adds).add(pair)
        if present:
            edges.discard(pair)
        else:
            edges.add(pair)
        for node, d in change.items():
            count += tracker.illuded(current[node] + d) - tracker.illuded(current[node])
            current[node] += d
        if not at_least_fraction(count, n, q):
            plan = EditPlan(frozenset(adds), frozenset(rems))
            if not verify_plan(ln, plan, q, k, mode):
                raise ConstructionError("greedy produced a plan that does not verify")
            return plan
    return None
