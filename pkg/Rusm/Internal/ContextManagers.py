"""Context managers for common solver tasks."""

from .SetFunctions import SetFunctionOracle


class QueryCountScope:
	"""Context-manager class counting the oracle queries made by the current thread inside the context.
	Queries of other threads sharing the same oracle are not counted,
	so the count of one trial is the same in serial and in parallel runs.
	:param oracle: the oracle whose queries are counted."""

	def __init__(self, oracle: SetFunctionOracle):
		self._oracle = oracle
		self._start: int = 0
		self._end: int or None = None

	def __enter__(self) -> 'QueryCountScope':
		"""Remembers the thread's query tally."""
		self._start = self._oracle.thread_query_count
		self._end = None
		return self

	def __exit__(self, exc_type, value, traceback):
		"""Freezes the count. Exceptions are not suppressed."""
		self._end = self._oracle.thread_query_count
		return False

	@property
	def count(self) -> int:
		"""Queries made so far inside the context, or in the whole context after it ended."""
		end = self._end if self._end is not None else self._oracle.thread_query_count
		return end - self._start
