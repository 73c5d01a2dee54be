"""
Graph corpora for verification runs and conjecture scans
"""

import random
from dataclasses import dataclass
from typing import Optional

from core.graph import Graph, generator, random_connected
from utils.constants import (
    CORPUS_MAX_N, CORPUS_MIN_N, CORPUS_P_VALUES, CORPUS_RANDOM_COUNT,
    CORPUS_RANDOM_MAX_N, CORPUS_RANDOM_MIN_N, CORPUS_SEED, GENERATOR_FAMILIES, RANDOM_RETRY_BUDGET,
)


@dataclass(frozen=True)
class CorpusEntry:
    label: str
    graph: Graph
    seed: Optional[int] = None


def family_corpus(n_min=CORPUS_MIN_N, n_max=CORPUS_MAX_N):
    """Every generator family at every size in [n_min, n_max]

    complete_bipartite takes every split a + b = n with a <= b.
    """
    entries = []
    for family in GENERATOR_FAMILIES:
        for n in range(max(n_min, 2), n_max + 1):
            if family == 'complete_bipartite':
                for a in range(1, n // 2 + 1):
                    entries.append(CorpusEntry(f"complete_bipartite:{a},{n - a}",
                                               generator(family, a, n - a)))
            elif n >= GENERATOR_FAMILIES[family]:
                entries.append(CorpusEntry(f"{family}:{n}", generator(family, n)))
    return entries


def random_corpus(count=CORPUS_RANDOM_COUNT, n_min=CORPUS_RANDOM_MIN_N, n_max=CORPUS_RANDOM_MAX_N,
                  p_values=CORPUS_P_VALUES, seed=CORPUS_SEED,
                  retry_budget=RANDOM_RETRY_BUDGET):
    """`count` seeded G(n, p) graphs conditioned on connectivity

    A master generator seeded with `seed` draws n, p and the per-graph seed,
    so each entry is reproducible on its own from (n, p, entry seed).
    """
    master = random.Random(seed)
    entries = []
    for index in range(count):
        n = master.randint(n_min, n_max)
        p = p_values[master.randrange(len(p_values))]
        graph_seed = master.getrandbits(64)
        graph = random_connected(n, p, graph_seed, retry_budget)
        entries.append(CorpusEntry(f"gnp:{n},{p}#{index}", graph, seed=graph_seed))
    return entries


def default_corpus(seed=CORPUS_SEED, retry_budget=RANDOM_RETRY_BUDGET):
    """All families for n in [2, 12] plus 500 seeded random connected graphs"""
    return family_corpus() + random_corpus(seed=seed, retry_budget=retry_budget)
