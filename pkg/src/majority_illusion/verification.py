"""Gadget encoding of 3-CNF formulas into networks that admit full majority illusion.

A formula with ``m`` variables and ``n`` clauses becomes a network on
``12m + 18n - 1`` nodes.  Each satisfying assignment yields a labelling with
every node under illusion (blue winning by one), and any full-illusion labelling
reads back a satisfying assignment from its variable gadgets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from .cnf import CnfFormula, evaluate, is_3cnf
from .errors import DomainError, PreconditionError, WitnessError
from .network import (
    BLUE,
    RED,
    Labelling,
    LabelledNetwork,
    NetworkBuilder,
    SocialNetwork,
)
from .thresholds import as_fraction, threshold_h_star

__all__ = [
    "GadgetFragment",
    "GadgetEncoding",
    "build_variable_gadget",
    "build_clause_gadget",
    "build_balance_gadget",
    "variable_gadget_labelling",
    "encode_3cnf",
    "encode_q",
    "labelling_from_model",
    "model_from_labelling",
    "VARIABLE_GADGET_SIZE",
    "CLAUSE_GADGET_SIZE",
]

VARIABLE_GADGET_SIZE = 11
CLAUSE_GADGET_SIZE = 16

# role kinds
VARIABLE_CLIQUE = "variable_clique"
LITERAL = "literal"
VARIABLE_DEPENDANT = "variable_dependant"
CLAUSE_CLIQUE = "clause_clique"
CO_DEPENDANT = "co_dependant"
CLAUSE_DEPENDANT = "clause_dependant"
BALANCE = "balance"
PADDING = "padding_pair"


@dataclass(frozen=True)
class GadgetFragment:
    """A standalone gadget: its network plus a name for every node."""

    network: SocialNetwork
    names: tuple[str, ...]
    kinds: tuple[str, ...]
    ports: tuple[int, ...] = ()

    def node(self, name: str) -> int:
        return self.names.index(name)


# Variable gadget: 4-clique A B C D; literal nodes P (positive) and N (negative)
# hang under C and D; dependants G, T on A, H on B, K on C, I on D.
_VAR_NAMES = ("A", "B", "C", "D", "P", "N", "G", "T", "H", "K", "I")
_VAR_KINDS = (VARIABLE_CLIQUE,) * 4 + (LITERAL,) * 2 + (VARIABLE_DEPENDANT,) * 5
_VAR_EDGES = (
    ("A", "B"), ("A", "C"), ("A", "D"), ("B", "C"), ("B", "D"), ("C", "D"),
    ("C", "P"), ("D", "P"), ("C", "N"), ("D", "N"),
    ("A", "G"), ("A", "T"), ("B", "H"), ("C", "K"), ("D", "I"),
)

# Clause gadget: 5-clique S X Y U W.  X, S, Y serve the three literal ports;
# each has two dependants and one co-dependant, the co-dependants form a
# triangle; U and W carry one dependant each.
_CLAUSE_NAMES = (
    "X", "S", "Y", "U", "W",
    "Mx", "Ms", "My",
    "X1", "X2", "S1", "S2", "Y1", "Y2", "U1", "W1",
)
_CLAUSE_KINDS = (CLAUSE_CLIQUE,) * 5 + (CO_DEPENDANT,) * 3 + (CLAUSE_DEPENDANT,) * 8
_CLAUSE_PORTS = ("X", "S", "Y")
_CLAUSE_CO = {"X": "Mx", "S": "Ms", "Y": "My"}
_CLAUSE_EDGES = (
    ("X", "S"), ("X", "Y"), ("X", "U"), ("X", "W"), ("S", "Y"),
    ("S", "U"), ("S", "W"), ("Y", "U"), ("Y", "W"), ("U", "W"),
    ("X", "Mx"), ("S", "Ms"), ("Y", "My"),
    ("Mx", "Ms"), ("Mx", "My"), ("Ms", "My"),
    ("X", "X1"), ("X", "X2"), ("S", "S1"), ("S", "S2"),
    ("Y", "Y1"), ("Y", "Y2"), ("U", "U1"), ("W", "W1"),
)


def _fragment(names, kinds, edges, ports=()):
    index = {name: i for i, name in enumerate(names)}
    sn = SocialNetwork.from_edges(len(names), [(index[u], index[v]) for u, v in edges])
    return GadgetFragment(sn, tuple(names), tuple(kinds), tuple(index[p] for p in ports))


def build_variable_gadget() -> GadgetFragment:
    """Eleven-node variable gadget; ports are the positive then negative literal node."""
    return _fragment(_VAR_NAMES, _VAR_KINDS, _VAR_EDGES, ports=("P", "N"))


def build_clause_gadget() -> GadgetFragment:
    """Sixteen-node clause gadget; the three ports are the members facing the literals."""
    return _fragment(_CLAUSE_NAMES, _CLAUSE_KINDS, _CLAUSE_EDGES, ports=_CLAUSE_PORTS)


def build_balance_gadget(k: int) -> GadgetFragment:
    """``k`` nodes cut into disjoint edges, with one triangle when ``k`` is odd."""
    if not isinstance(k, int) or k < 2:
        raise DomainError(f"balance gadget needs k >= 2, got {k!r}")
    edges = []
    pairs = k // 2 - (k % 2)
    for p in range(pairs):
        edges.append((2 * p, 2 * p + 1))
    if k % 2:
        a = 2 * pairs
        edges += [(a, a + 1), (a, a + 2), (a + 1, a + 2)]
    names = tuple(f"Z{i}" for i in range(k))
    sn = SocialNetwork.from_edges(k, edges)
    return GadgetFragment(sn, names, (BALANCE,) * k)


def variable_gadget_labelling(value: bool) -> Labelling:
    """Type A (``value`` true: positive literal red) or type B labelling of the gadget."""
    reds = {"A", "B", "C", "D", "P" if value else "N"}
    return Labelling(tuple(RED if name in reds else BLUE for name in _VAR_NAMES))


@dataclass(frozen=True)
class GadgetEncoding:
    formula: CnfFormula
    network: SocialNetwork
    kinds: tuple[str, ...]
    names: tuple[str, ...]
    literal_index: Mapping[int, int]
    variable_nodes: tuple[dict, ...]
    clause_nodes: tuple[dict, ...]
    balance_nodes: tuple[int, ...]
    padding_pairs: tuple[tuple[int, int], ...] = ()
    q: Optional[object] = None
    meta: dict = field(default_factory=dict)

    @property
    def m(self) -> int:
        return self.formula.variable_count

    @property
    def n(self) -> int:
        return self.formula.clause_count

    @property
    def expected_node_count(self) -> int:
        return 12 * self.m + 18 * self.n - 1 + 2 * len(self.padding_pairs)

    @property
    def i_phi(self) -> int:
        return 6 * self.m + 9 * self.n - 1

    @property
    def core_size(self) -> int:
        """Node count without padding pairs."""
        return 12 * self.m + 18 * self.n - 1

    def role_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for kind in self.kinds:
            counts[kind] = counts.get(kind, 0) + 1
        return counts

    def to_dict(self) -> dict:
        return {
            "nodes": [{"id": i} for i in range(self.network.node_count)],
            "node_count": self.network.node_count,
            "variant": "verify",
            "edges": [list(e) for e in sorted(self.network.edges)],
            "roles": {str(i): {"kind": k, "name": nm} for i, (k, nm) in enumerate(zip(self.kinds, self.names))},
            "literal_index": {str(lit): node for lit, node in sorted(self.literal_index.items())},
            "m": self.m,
            "n": self.n,
            "expected_node_count": self.expected_node_count,
            "i_phi": self.i_phi,
            "padding_pairs": len(self.padding_pairs),
        }


def encode_3cnf(f: CnfFormula) -> GadgetEncoding:
    if not is_3cnf(f) or f.variable_count < 1 or f.clause_count < 1:
        raise PreconditionError("encoding requires a 3-CNF formula with at least one variable and one clause")
    b = NetworkBuilder()
    names: list[str] = []

    def add(kind, name, count=1):
        nodes = b.add_nodes(count, kind)
        names.extend([name] * count if count == 1 else [f"{name}{j}" for j in range(count)])
        return nodes

    literal_index: dict[int, int] = {}
    variables = []
    for v in range(1, f.variable_count + 1):
        local = {}
        for name, kind in zip(_VAR_NAMES, _VAR_KINDS):
            local[name] = add(kind, f"p{v}.{name}")[0]
        for u, w in _VAR_EDGES:
            b.add_edge(local[u], local[w])
        literal_index[v] = local["P"]
        literal_index[-v] = local["N"]
        variables.append(local)

    clauses = []
    for ci, clause in enumerate(f.clauses, start=1):
        local = {}
        for name, kind in zip(_CLAUSE_NAMES, _CLAUSE_KINDS):
            local[name] = add(kind, f"C{ci}.{name}")[0]
        for u, w in _CLAUSE_EDGES:
            b.add_edge(local[u], local[w])
        for port, lit in zip(_CLAUSE_PORTS, clause):
            b.add_edge(local[port], literal_index[lit])
        clauses.append(local)

    k = f.variable_count + 2 * f.clause_count - 1
    fragment = build_balance_gadget(k)
    balance = []
    for j in range(k):
        balance.append(add(BALANCE, f"Z{j}")[0])
    for u, w in fragment.network.edges:
        b.add_edge(balance[u], balance[w])

    return GadgetEncoding(
        formula=f,
        network=b.network(),
        kinds=tuple(b.roles),
        names=tuple(names),
        literal_index=literal_index,
        variable_nodes=tuple(variables),
        clause_nodes=tuple(clauses),
        balance_nodes=tuple(balance),
    )


def encode_q(f: CnfFormula, q) -> GadgetEncoding:
    """The full-illusion encoding padded with connected pairs so that ``q`` is the target."""
    q = as_fraction(q)
    base = encode_3cnf(f)
    h = threshold_h_star(base.network.node_count, q)
    n0 = base.network.node_count
    pairs = tuple((n0 + 2 * j, n0 + 2 * j + 1) for j in range(h))
    network = SocialNetwork(n0 + 2 * h, base.network.edges | frozenset(pairs))
    names = base.names + tuple(f"H{j}.{s}" for j in range(h) for s in "ab")
    return GadgetEncoding(
        formula=base.formula,
        network=network,
        kinds=base.kinds + (PADDING,) * (2 * h),
        names=names,
        literal_index=base.literal_index,
        variable_nodes=base.variable_nodes,
        clause_nodes=base.clause_nodes,
        balance_nodes=base.balance_nodes,
        padding_pairs=pairs,
        q=q,
    )


def _normalise_model(f: CnfFormula, model) -> dict[int, bool]:
    try:
        values = {v: bool(model[v]) for v in range(1, f.variable_count + 1)}
    except (KeyError, IndexError, TypeError):
        raise WitnessError("model does not assign every variable") from None
    if not evaluate(f, values):
        raise WitnessError("model does not satisfy the formula")
    return values


def labelling_from_model(enc: GadgetEncoding, model) -> Labelling:
    """Witness labelling for a satisfying assignment (``model[v]`` is the value of variable v)."""
    values = _normalise_model(enc.formula, model)
    colours = [BLUE] * enc.network.node_count
    for v, local in enumerate(enc.variable_nodes, start=1):
        for name in ("A", "B", "C", "D"):
            colours[local[name]] = RED
        colours[local["P" if values[v] else "N"]] = RED
    for clause, local in zip(enc.formula.clauses, enc.clause_nodes):
        for name in ("X", "S", "Y", "U", "W"):
            colours[local[name]] = RED
        # the member facing the first true literal is carried by that literal;
        # the other two lean on their red co-dependants
        true_port = next(
            port for port, lit in zip(_CLAUSE_PORTS, clause) if values[abs(lit)] == (lit > 0)
        )
        for port in _CLAUSE_PORTS:
            if port != true_port:
                colours[local[_CLAUSE_CO[port]]] = RED
    for node in enc.balance_nodes:
        colours[node] = RED
    for red_node, _ in enc.padding_pairs:
        colours[red_node] = RED
    return Labelling(tuple(colours))


def model_from_labelling(enc: GadgetEncoding, labelling: Labelling) -> dict[int, bool]:
    """Read an assignment off the variable gadgets (positive literal red means true)."""
    return {
        v: labelling[local["P"]] == RED for v, local in enumerate(enc.variable_nodes, start=1)
    }


def restrict_to_variable_gadget(enc: GadgetEncoding, labelling: Labelling, v: int) -> Labelling:
    local = enc.variable_nodes[v - 1]
    return Labelling(tuple(labelling[local[name]] for name in _VAR_NAMES))


def labelled(enc: GadgetEncoding, labelling: Labelling) -> LabelledNetwork:
    return LabelledNetwork(enc.network, labelling)
