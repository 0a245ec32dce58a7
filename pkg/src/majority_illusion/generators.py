"""Seeded random networks and labellings."""

from __future__ import annotations

import random

import networkx as nx

from .errors import DomainError
from .network import Labelling, LabelledNetwork, SocialNetwork

__all__ = ["random_network", "random_labelling", "random_labelled_network", "random_tree"]


def random_network(n: int, p: float, seed: int) -> SocialNetwork:
    """Erdos-Renyi G(n, p) drawn from a private generator."""
    if n < 0 or not 0.0 <= p <= 1.0:
        raise DomainError(f"need n >= 0 and 0 <= p <= 1, got n={n}, p={p}")
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return SocialNetwork.from_edges(n, edges)


def random_labelling(n: int, seed: int, red_probability: float = 0.5) -> Labelling:
    rng = random.Random(seed)
    return Labelling(tuple(int(rng.random() < red_probability) for _ in range(n)))


def random_labelled_network(n: int, p: float, seed: int) -> LabelledNetwork:
    rng = random.Random(seed)
    sn = random_network(n, p, rng.randrange(2**31))
    return LabelledNetwork(sn, random_labelling(n, rng.randrange(2**31)))


def random_tree(n: int, seed: int) -> SocialNetwork:
    """Uniform labelled tree on ``n`` nodes via a random Pruefer sequence."""
    if n < 1:
        raise DomainError("a tree needs at least one node")
    if n <= 2:
        return SocialNetwork.from_edges(n, [(0, 1)] if n == 2 else [])
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    tree = nx.from_prufer_sequence(seq)
    return SocialNetwork.from_edges(n, list(tree.edges()))
