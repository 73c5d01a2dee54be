"""Tests for the family and seeded random corpora"""

import pytest

from core.corpus import CorpusEntry, default_corpus, family_corpus, random_corpus
from core.errors import GiveUp
from core.graph import generator, random_connected
from utils.constants import CORPUS_P_VALUES


def test_family_corpus_labels():
    labels = [entry.label for entry in family_corpus(2, 4)]
    assert labels == [
        'star:2', 'star:3', 'star:4',
        'path:2', 'path:3', 'path:4',
        'cycle:3', 'cycle:4',
        'complete:2', 'complete:3', 'complete:4',
        'complete_bipartite:1,1', 'complete_bipartite:1,2',
        'complete_bipartite:1,3', 'complete_bipartite:2,2',
    ]


def test_family_corpus_graphs_match_generators():
    for entry in family_corpus(5, 5):
        family, _, params = entry.label.partition(':')
        assert entry.graph == generator(family, *(int(p) for p in params.split(',')))
        assert entry.seed is None


def test_random_corpus_is_deterministic():
    first = random_corpus(15, 4, 9, seed=7)
    second = random_corpus(15, 4, 9, seed=7)
    assert first == second
    assert first != random_corpus(15, 4, 9, seed=8)


def test_random_corpus_ranges():
    for index, entry in enumerate(random_corpus(40, 4, 9, seed=1)):
        assert 4 <= entry.graph.n <= 9
        assert entry.label.startswith('gnp:') and entry.label.endswith(f"#{index}")
        assert 0 <= entry.seed < 2 ** 64


def test_random_entry_is_reproducible_from_its_seed():
    for entry in random_corpus(5, 5, 8, seed=21):
        n, p = entry.label[len('gnp:'):].split('#')[0].split(',')
        assert float(p) in CORPUS_P_VALUES
        assert random_connected(int(n), float(p), entry.seed) == entry.graph


def test_retry_budget_is_passed_through():
    with pytest.raises(GiveUp):
        random_corpus(3, 10, 10, p_values=(0.01,), seed=2, retry_budget=2)


def test_entry_defaults():
    entry = CorpusEntry('k2', generator('complete', 2))
    assert entry.seed is None


@pytest.mark.slow
def test_default_corpus_size():
    corpus = default_corpus()
    assert len(corpus) == len(family_corpus()) + 500
    assert len({entry.label for entry in corpus}) == len(corpus)
