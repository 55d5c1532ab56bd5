"""See the class docstring."""

from typing import Callable

from .RusmSettings import RusmSettings
from .RunLogger import RunLogger, LoggingMode


class Core(object):
	"""Main session component. Provides: \n
		- Settings parsed from the options string
		- The session logger
		- Trial and check event handlers

		Version history:

		1.2.0 (02.10.2026)
			- Added 'scipy_bounded' method of the negative-curve optimizer.
			- Added exact expectation of the randomized Double Greedy for n <= 20.
			- Settings group 'Experiment=(...)' accepts Tolerance.

		1.1.0 (11.09.2026)
			- Added the gap command and the positive-family bracket check for n >= 1000.
			- Logger: check results are logged as errors when they fail.

		1.0.0 (21.08.2026)
			- First released version: local search, Double Greedy, brute force, experiments and frontier curves."""

	def __init__(self, user_options: str = None):
		self.settings = RusmSettings()
		self.settings.apply_option_settings(user_options)
		self.driver_version = ''
		self.on_trial_handler: Callable or None = None
		self.on_check_handler: Callable or None = None
		self.logger = RunLogger(self.settings.logging_name or 'Rusm')
		if self.settings.logging_format:
			self.logger.set_format_string(self.settings.logging_format)
		if self.settings.log_to_console:
			self.logger.log_to_console = True
		self.logger.mode = self.settings.logging_mode
		self.logger.set_relative_timestamp_now()

	def apply_options(self, options: str) -> None:
		"""Applies the options string to the current settings. The logging mode follows the new settings."""
		self.settings.apply_option_settings(options)
		if self.settings.logging_format:
			self.logger.set_format_string(self.settings.logging_format)
		self.logger.log_to_console = self.settings.log_to_console
		self.logger.mode = self.settings.logging_mode

	@property
	def active_logger(self) -> RunLogger or None:
		"""Logger passed to the algorithms, None if the logging is off."""
		return None if self.logger.mode == LoggingMode.Off else self.logger
