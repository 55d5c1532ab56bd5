"""See the docstring for the RusmSettings class."""

import os
from enum import Enum
from re import search

from . import Conversions as Conv
from .RunLogger import LoggingMode
from .LocalSearch import LsConfig
from .Utilities import parse_token_to_key_and_value

THREADS_ENV_VAR = 'RUSM_THREADS'


class Algorithm(Enum):
	"""Solver selection. The option strings use the dashed names, e.g. 'dg-det'."""
	ls = 1
	dg_det = 2
	dg_rand = 3
	brute = 4

	@property
	def label(self) -> str:
		"""Name as used in the reports, e.g. 'dg-rand'."""
		return self.name.replace('_', '-')

	@property
	def is_randomized(self) -> bool:
		"""True for the algorithms whose output depends on the random stream."""
		return self in (Algorithm.ls, Algorithm.dg_rand)


def parse_algorithm(value: str or Algorithm) -> Algorithm:
	"""Returns the Algorithm for names like 'ls', 'dg-det', 'DG_RAND'."""
	if isinstance(value, Algorithm):
		return value
	enum_value = Conv.str_to_simple_scalar_enum(value, Algorithm, case_sensitive=False, ignore_underscores=True)
	if enum_value is None:
		raise ValueError(f"Unknown algorithm '{value}'. Valid values: {', '.join(x.label for x in Algorithm)}")
	return enum_value


def threads_cap(requested: int) -> int:
	"""Returns the worker count: the requested count capped by the environment variable RUSM_THREADS, at least 1."""
	count = max(1, int(requested))
	env = os.environ.get(THREADS_ENV_VAR)
	if env:
		try:
			cap = Conv.str_to_int(env)
		except ValueError:
			cap = None
		if cap is not None and cap >= 1:
			count = min(count, cap)
	return count


class RusmSettings(object):
	"""Defines the settings of a Rusm session.
	The settings are entered as options string, e.g. "Algorithm=ls, Beta=0.3, Seed=7, LocalSearch=(Epsilon=0.001)".
	Keys are case-insensitive, single-quoted values may contain commas.
	Group tokens 'Group=(Key=Value, ...)' become GROUP_KEY entries and have priority over the plain keys."""

	def __init__(self):
		self.algorithm: Algorithm = Algorithm.ls
		self.beta: float = 0.5
		self.epsilon: float or None = None
		self.marginal_mode: str = 'exact'
		self.sample_count: int or None = None
		self.iteration_cap: int or None = None
		self.guarantee_mode: bool = True
		self.exact_limit: int = 20

		self.seed: int = 0
		self.trials: int = 1
		self.threads: int = 1
		self.tolerance: float = 1e-9

		self.logging_mode: LoggingMode = LoggingMode.Off
		self.logging_name: str or None = None
		self.logging_format: str or None = None
		self.log_to_console: bool = False

		self._last_settings = {}

	def _get_group_item(self, group: str, name: str) -> str:
		"""Looks for a token that either has the group prefix or no prefix.
		Example: Keynames LOCALSEARCH_BETA and BETA are equivalent.
		If both keynames are present, the one with the group prefix has priority."""
		name = name.upper()
		value = self._last_settings.get(f'{group.upper()}_{name}')
		if value is None:
			value = self._last_settings.get(name)
		return value

	def _get_item(self, name: str) -> str:
		"""Returns a token value with the keyname name (case-insensitive) from the last settings dictionary.
		If the keyname does not exist, the method returns None."""
		return self._last_settings.get(name.upper())

	# noinspection PyMethodMayBeStatic
	def _parse_options_string(self, text: str) -> dict:
		"""Parses options string to a dictionary of settings: name -> value."""
		tokens = {}
		if not text:
			return tokens

		# Text enclosed in single brackets '' must have the commas escaped
		literal_pattern = r"'([^']+)'"
		while True:
			m = search(literal_pattern, text)
			if not m:
				break
			lit_part = '"' + m.group(1).replace(',', '<COMMA_ESC>') + '"'
			text = text.replace(m.group(0), lit_part)

		# Groups "<groupName>=(<groupTokens>)" are added as separate keys groupName_Key
		group_pattern = r'(\w+)\s*=\s*\(([^\)]*)\)'
		while True:
			m = search(group_pattern, text)
			if not m:
				break
			text = text.replace(m.group(0), '')
			group_name = m.group(1).upper()
			for token in m.group(2).strip().split(','):
				key, value = parse_token_to_key_and_value(token.replace('<COMMA_ESC>', ','))
				if value:
					tokens[f'{group_name}_{key.upper()}'] = value

		for token in text.split(','):
			key, value = parse_token_to_key_and_value(token.replace('<COMMA_ESC>', ','))
			if value:
				tokens[key.upper()] = value
		return tokens

	def apply_option_settings(self, text: str or None) -> None:
		"""Takes options from the options string and applies them to the settings properties."""
		if not text:
			return
		self._last_settings = self._parse_options_string(text)

		value = self._get_item('Algorithm')
		if value:
			self.algorithm = parse_algorithm(value)

		value = self._get_group_item('LocalSearch', 'Beta')
		if value:
			self.beta = Conv.str_to_float(value)

		value = self._get_group_item('LocalSearch', 'Epsilon')
		if value:
			self.epsilon = Conv.str_to_float(value)

		value = self._get_group_item('LocalSearch', 'MarginalMode')
		if value:
			value = value.lower()
			if value not in ('exact', 'sampled'):
				raise ValueError(f"Unknown value in the options string key 'MarginalMode'. Value '{value}' is not recognized. Valid values: 'exact', 'sampled'")
			self.marginal_mode = value

		value = self._get_group_item('LocalSearch', 'Samples')
		if value:
			self.sample_count = Conv.str_to_int(value)

		value = self._get_group_item('LocalSearch', 'IterationCap')
		if value:
			self.iteration_cap = Conv.str_to_int(value)

		value = self._get_group_item('LocalSearch', 'GuaranteeMode')
		if value:
			self.guarantee_mode = Conv.str_to_bool(value)

		value = self._get_group_item('LocalSearch', 'ExactLimit')
		if value:
			self.exact_limit = Conv.str_to_int(value)

		value = self._get_group_item('Experiment', 'Seed')
		if value:
			self.seed = Conv.str_to_int(value)

		value = self._get_group_item('Experiment', 'Trials')
		if value:
			self.trials = Conv.str_to_int(value)

		value = self._get_group_item('Experiment', 'Threads')
		if value:
			self.threads = Conv.str_to_int(value)

		value = self._get_group_item('Experiment', 'Tolerance')
		if value:
			self.tolerance = Conv.str_to_float(value)

		value = self._get_group_item('Logging', 'LoggingMode')
		if value is None:
			value = self._get_item('Logging_Mode')
		if value:
			enum_value = Conv.str_to_simple_scalar_enum(value, LoggingMode, case_sensitive=False)
			if enum_value is None:
				raise ValueError(f"Unknown value in the options string key 'LoggingMode'. Value '{value}' is not recognized. Valid values: 'Off', 'On', 'Errors'")
			self.logging_mode = enum_value

		value = self._get_group_item('Logging', 'LoggingName')
		if value is None:
			value = self._get_item('Logging_Name')
		if value:
			self.logging_name = value

		value = self._get_group_item('Logging', 'LoggingFormat')
		if value is None:
			value = self._get_item('Logging_Format')
		if value:
			self.logging_format = value

		value = self._get_group_item('Logging', 'LoggingToConsole')
		if value is None:
			value = self._get_item('Logging_ToConsole')
		if value:
			self.log_to_console = Conv.str_to_bool(value)

	def ls_config(self) -> LsConfig:
		"""Local-search configuration of the settings."""
		return LsConfig(self.beta, self.epsilon, self.marginal_mode, self.sample_count, self.iteration_cap, self.seed, self.guarantee_mode, self.exact_limit)

	@property
	def effective_threads(self) -> int:
		"""Threads capped by the environment variable RUSM_THREADS."""
		return threads_cap(self.threads)

	def __repr__(self):
		return f'RusmSettings(algorithm={self.algorithm.label}, beta={self.beta}, seed={self.seed}, trials={self.trials})'
