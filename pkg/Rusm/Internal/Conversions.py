"""Contains conversion functions for option strings, grid strings and timestamps."""

import math
from datetime import datetime
from enum import Enum
from typing import List

import numpy as np

from . import Utilities
from .RusmErrors import ParameterDomainError


def assert_string_data(value: str) -> None:
	"""Asserts value is string type."""
	assert isinstance(value, str), f"Input value type must be string. Actual type: {type(value)}, value: {value}"


bool_true_lookup = frozenset(['1', 'on', 'On', 'ON', 'true', 'True', 'TRUE', 'yes', 'Yes', 'YES'])
bool_false_lookup = frozenset(['0', 'off', 'Off', 'OFF', 'false', 'False', 'FALSE', 'no', 'No', 'NO'])
number_plus_inf_lookup = frozenset(['Inf', 'INF', 'inf', 'INFINITY', 'Infinity', '+Inf', '+INF', '+inf'])
number_minus_inf_lookup = frozenset(['-Inf', '-INF', '-inf', '-INFINITY', '-Infinity'])
number_none_lookup = frozenset(['NONE', 'none', 'None', '<none>'])


def str_to_bool(string: str) -> bool:
	"""Converts option value to boolean, e.g. 'True', 'on', '1', 'no'.
	Throws ValueError for any other value."""
	assert_string_data(string)
	string = Utilities.trim_str_response(string)
	if string in bool_true_lookup:
		return True
	if string in bool_false_lookup:
		return False
	raise ValueError(f"could not convert string to boolean: '{string}'")


def str_to_int(string: str) -> int or None:
	"""Converts string to integer value. Float values like '1E4' are coerced to integer.
	Special values 'None' and '<none>' return None."""
	assert_string_data(string)
	string = Utilities.trim_str_response(string)
	if string in number_none_lookup:
		return None
	if string.startswith('0x'):
		return int(string[2:], 16)
	try:
		return int(string)
	except ValueError:
		try:
			return int(round(float(string)))
		except ValueError:
			raise ValueError(f"could not convert string to integer: '{string}'")


def str_to_float(string: str) -> float or None:
	"""Converts string to float value.
	Also recognizes case-insensitive infinity values. Special values 'None' and '<none>' return None."""
	assert_string_data(string)
	string = Utilities.trim_str_response(string)
	if string in number_none_lookup:
		return None
	if string in number_plus_inf_lookup:
		return math.inf
	if string in number_minus_inf_lookup:
		return -math.inf
	try:
		return float(string)
	except ValueError:
		raise ValueError(f"could not convert string to float: '{string}'")


def str_to_simple_scalar_enum(string: str, enum_type, case_sensitive: bool = True, ignore_underscores: bool = False) -> Enum or None:
	"""Converts string to one enum element, comparing with the member names.
	With ignore_underscores, also dashes are ignored, so 'dg-det', 'DG_DET' and 'DgDet' are equal."""
	value = Utilities.trim_str_response(string)
	enum_members = [x.name for x in enum_type]
	enum_members_mod = list(enum_members)
	if not case_sensitive:
		enum_members_mod = [x.upper() for x in enum_members]
		value = value.upper()
	if ignore_underscores:
		enum_members_mod = [x.replace('_', '') for x in enum_members_mod]
		value = value.replace('_', '').replace('-', '')
	if value in enum_members_mod:
		return enum_type[enum_members[enum_members_mod.index(value)]]
	return None


def list_to_csv_str(value: List, delimiter: str = ',') -> str:
	"""Converts list of elements to strings separated by delimiter. Floats are formatted with .12g."""
	return delimiter.join([format(x, '.12g') if isinstance(x, float) else str(x) for x in value])


def parse_grid_string(text: str) -> np.ndarray:
	"""Parses grid definition 'start:stop:step' (stop included) or comma-separated values to a numpy vector.
	Example: '0:1:0.25' -> [0, 0.25, 0.5, 0.75, 1.0]"""
	assert_string_data(text)
	text = text.strip()
	if ':' not in text:
		return np.array([str_to_float(x) for x in text.split(',') if x.strip()], dtype=float)
	parts = text.split(':')
	if len(parts) != 3:
		raise ParameterDomainError('grid', f"Grid string must have the format 'start:stop:step', actual value: '{text}'")
	start, stop, step = [str_to_float(x) for x in parts]
	if step <= 0 or stop < start:
		raise ParameterDomainError('grid', f"Grid string '{text}' must have step > 0 and stop >= start")
	count = int(math.floor((stop - start) / step + 1e-9)) + 1
	# Built from integer multiples, so 0:1:0.01 gives exactly 0.01 * i
	return np.round(start + step * np.arange(count), 12)


def convert_ts_to_datetime(timestamp: datetime or float) -> datetime:
	"""Converts timestamp as float to datetime. For datetime tuple it just passes the value."""
	if isinstance(timestamp, float) or isinstance(timestamp, int):
		return datetime.fromtimestamp(timestamp)
	return timestamp


def get_timestamp_string(timestamp: datetime or float) -> str:
	"""Returns the timestamp as string. The timestamp can be a datetime tuple or float seconds coming from the time.time()."""
	timestamp = convert_ts_to_datetime(timestamp)
	return timestamp.strftime('%H:%M:%S.%f')[:-3]


def get_timedelta_fixed_string(time_start: datetime or float, time_end: datetime or float) -> str:
	"""Returns the time span as string - fixed in the format of '%H:%M:%S.%f'."""
	frac = (convert_ts_to_datetime(time_end) - convert_ts_to_datetime(time_start)).total_seconds()
	wh = math.floor(frac)
	h, rem = divmod(wh, 3600)
	m, s = divmod(rem, 60)
	ms = int((frac - wh) * 1000)
	return f'{int(h):02d}:{int(m):02d}:{int(s):02d}.{ms:03d}'


def get_timedelta_string(time_a: datetime or float, time_b: datetime or float) -> str:
	"""Returns the time span as string - dynamic based on the difference."""
	time_a = convert_ts_to_datetime(time_a)
	time_b = convert_ts_to_datetime(time_b)
	if time_b < time_a:
		return '0.000 ms'
	diff = time_b - time_a
	if diff.seconds < 10:
		return f'{diff.total_seconds() * 1000:0.3f} ms'
	elif diff.seconds < 1000:
		return f'{diff.total_seconds():0.3f} secs'
	hours, remainder = divmod(diff.seconds, 3600)
	minutes, seconds = divmod(remainder, 60)
	return f'{hours:02d}:{minutes:02d}:{seconds:02d}'
