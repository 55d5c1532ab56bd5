"""Event-related methods and properties. Here you can set all the event handlers."""

from typing import Callable

from ..Internal.Core import Core


class Events:
	"""Common Events class.
	Event-related methods and properties. Here you can set all the event handlers."""
	def __init__(self, core: Core):
		self._core = core

	@property
	def on_trial_handler(self) -> Callable:
		"""Returns the handler of on_trial events. \n
		:return: current ``on_trial_handler``"""
		return self._core.on_trial_handler

	@on_trial_handler.setter
	def on_trial_handler(self, handler: Callable) -> None:
		"""Sets handler for on_trial events.
		The on_trial event is invoked after each finished experiment trial, from the worker thread that ran the trial.
		Event arguments type: TrialEventArgs \n
		:param handler: new handler for the finished trials"""
		self._core.on_trial_handler = handler

	@property
	def on_check_handler(self) -> Callable:
		"""Returns the handler of on_check events. \n
		:return: current ``on_check_handler``"""
		return self._core.on_check_handler

	@on_check_handler.setter
	def on_check_handler(self, handler: Callable) -> None:
		"""Sets handler for on_check events.
		The on_check event is invoked after each evaluated guarantee check of an experiment.
		Event arguments type: TrialEventArgs, its 'check' field contains the check dictionary \n
		:param handler: new handler for the evaluated checks"""
		self._core.on_check_handler = handler

	def sync_from(self, source: 'Events') -> None:
		"""Synchronises these Events with the source."""
		self.on_trial_handler = source.on_trial_handler
		self.on_check_handler = source.on_check_handler
