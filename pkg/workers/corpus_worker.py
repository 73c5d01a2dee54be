"""
Corpus worker - runs one task per corpus entry, optionally on a thread pool
"""

from concurrent.futures import ThreadPoolExecutor

from utils.log import logger


class CorpusWorker:
    """Apply a task to every corpus entry and collect results in corpus order

    progress(index, label) fires as each entry starts and finished(count)
    once every entry is done. A failing task is logged with its entry label
    and re-raised; no partial result list is returned.
    """

    def __init__(self, entries, task, workers=1, progress=None, finished=None):
        self.entries = list(entries)
        self.task = task
        self.workers = max(1, int(workers))
        self.progress = progress
        self.finished = finished

    def _run_one(self, index):
        entry = self.entries[index]
        label = getattr(entry, 'label', str(index))
        if self.progress:
            self.progress(index, label)
        try:
            return self.task(entry)
        except Exception as e:
            logger.error(f"❌ Error processing {label}: {e}")
            raise

    def run(self):
        indices = range(len(self.entries))
        if self.workers == 1:
            results = [self._run_one(i) for i in indices]
        else:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                # map yields in submission order
                results = list(pool.map(self._run_one, indices))
        if self.finished:
            self.finished(len(results))
        return results
