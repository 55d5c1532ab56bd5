"""See the docstring for the TrialEventArgs class."""

import itertools
from typing import Dict


class TrialEventArgs(object):
	"""Contains event data of one finished trial or of one evaluated guarantee check."""
	# first generated is 100
	id_generator = itertools.count(100)

	def __init__(self, trial: int or None, seed: int or None, value: float or None, context: str):
		"""Initializes new instance of TrialEventArgs
		:param trial: 0-based trial index, None for check events
		:param seed: seed entropy of the trial stream
		:param value: f of the trial output, or the mean of the check
		:param context: algorithm and instance description. It is truncated to maximum of 100 characters"""
		self._event_id = next(self.id_generator)
		self.trial = trial
		self.seed = seed
		self.value = value
		self.context: str = (context[:100] + '..') if len(context) > 100 else context
		self.queries: int or None = None
		"""Oracle queries of the trial."""
		self.check: Dict or None = None
		"""For check events the check dictionary: alpha, beta, rhs, slack, passed, label."""

	@classmethod
	def for_trial(cls, trial: int, seed: int, value: float, queries: int, context: str) -> 'TrialEventArgs':
		"""Creates new TrialEventArgs of a finished trial."""
		obj = cls(trial, seed, value, context)
		obj.queries = queries
		return obj

	@classmethod
	def for_check(cls, check: Dict, context: str) -> 'TrialEventArgs':
		"""Creates new TrialEventArgs of an evaluated guarantee check."""
		obj = cls(None, None, check.get('mean'), context)
		obj.check = check
		return obj

	@property
	def event_id(self) -> int:
		"""Unique number of each event."""
		return self._event_id

	def __str__(self):
		if self.check is not None:
			state = 'pass' if self.check.get('passed') else 'FAIL'
			return f"TrialEventArgs ID {self._event_id}: check alpha={self.check.get('alpha')}, beta={self.check.get('beta')} {state}. {self.context}"
		return f'TrialEventArgs ID {self._event_id}: trial {self.trial}, seed {self.seed}, value {self.value:.9g}, queries {self.queries}. {self.context}'
