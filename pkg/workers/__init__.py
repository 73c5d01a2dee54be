"""
Workers for fanning verification tasks out over a corpus
"""

from .corpus_worker import CorpusWorker

__all__ = ['CorpusWorker']
