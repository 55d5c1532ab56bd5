"""Interface for logging of solver runs, experiment trials and guarantee checks."""

import re
import threading
from datetime import datetime
from enum import Enum
from typing import List

from .Utilities import shorten_string_middle
from .RusmErrors import RusmException
from .Conversions import list_to_csv_str, convert_ts_to_datetime, get_timedelta_string, get_timestamp_string, get_timedelta_fixed_string

DEFAULT_FORMAT = 'PAD_LEFT12(%START_TIME%) PAD_LEFT20(%RUN_NAME%) PAD_LEFT12(%DURATION%)  %LOG_STRING_INFO%: %LOG_STRING%'
MAX_CACHED_ENTRIES = 1000


class LoggingMode(Enum):
	"""Determines which entries are written to the log."""
	Off = 0  # Don't write messages to log
	On = 1  # Write message to log
	Errors = 2  # Only segments containing an error entry are written, with all their entries as context
	Default = 3  # Default mode


class LogEntry:
	"""One entry in the log. The template variables are resolved only when the entry is written."""

	_tab_var_re = re.compile(r'PAD_(LEFT|RIGHT)(\d+)\(%(START_TIME|END_TIME|DURATION|RUN_NAME|LOG_STRING_INFO|LOG_STRING)%\)')
	_var_re = re.compile(r'%(START_TIME|END_TIME|DURATION|RUN_NAME|LOG_STRING_INFO|LOG_STRING)%')

	def __init__(self, start_time: datetime or float or None, end_time: datetime or float or None, run_name: str, log_string_info: str, log_string: str, error: bool, raw: bool):
		self._start_time = start_time
		self._end_time = end_time
		self._run_name: str = run_name
		self._log_string_info: str = log_string_info
		self._log_string: str = log_string
		self._raw: bool = raw
		self._timestamp_reference_time: datetime or None = None

		# Public properties
		self.error: bool = error

	@classmethod
	def as_raw_content(cls, content: str, error: bool = False) -> 'LogEntry':
		"""Creates the entry written without any formatting."""
		return cls(start_time=None, end_time=None, run_name='', log_string_info='', log_string=content, error=error, raw=True)

	def set_timestamp_reference_time(self, ref_time: datetime or None):
		"""Sets reference time for the start time. None means the start time is absolute."""
		self._timestamp_reference_time = ref_time

	def get_resolved_content(self, template: str) -> str:
		"""Returns the resolved content. For raw entry it is only the log_string."""
		if self._raw is True:
			return self._log_string
		return self._replace_variables(template).rstrip(': ')

	def _replace_variables(self, format_string: str) -> str:
		content = format_string
		while True:
			m = self._tab_var_re.search(content)
			if m:
				value = self._get_variable_value(m.group(3))
				width = int(m.group(2))
				value = value.rjust(width) if m.group(1) == 'LEFT' else value.ljust(width)
				content = content[:m.start()] + value + content[m.end():]
				continue
			m = self._var_re.search(content)
			if m:
				content = content[:m.start()] + self._get_variable_value(m.group(1)) + content[m.end():]
				continue
			break
		return content

	def _get_variable_value(self, name: str) -> str:
		"""Recognised names: START_TIME, END_TIME, DURATION, RUN_NAME, LOG_STRING_INFO, LOG_STRING"""
		if name == 'START_TIME':
			if self._start_time is None:
				return ''
			if self._timestamp_reference_time is None:
				return get_timestamp_string(self._start_time)
			return get_timedelta_fixed_string(self._timestamp_reference_time, self._start_time)
		if name == 'END_TIME':
			return '' if self._end_time is None else get_timestamp_string(self._end_time)
		if name == 'DURATION':
			if self._start_time is None or self._end_time is None:
				return ''
			return get_timedelta_string(self._start_time, self._end_time)
		if name == 'RUN_NAME':
			return self._run_name or ''
		if name == 'LOG_STRING_INFO':
			return self._log_string_info or ''
		return self._log_string


class Segment:
	"""Segment of logs, e.g. one trial. In the Errors mode, the segment is written only if it contains an error entry."""

	def __init__(self):
		self.error_present = False
		self.entries: List[LogEntry] = []

	def add_to_segment(self, entry: LogEntry) -> None:
		"""Adds an entry to the segment."""
		self.entries.append(entry)
		if entry.error is True:
			self.error_present = True


class CachedEntries:
	"""Entries that are cached internally, in case no target is defined, but the logging is ON."""

	def __init__(self):
		self.entries: List[LogEntry] = []
		self.truncated_count = 0

	def append(self, entry: LogEntry) -> None:
		"""Appends one entry. Above the maximum count, the oldest one is deleted and truncated_count is increased by 1."""
		self.entries.append(entry)
		if len(self.entries) > MAX_CACHED_ENTRIES:
			self.entries.pop(0)
			self.truncated_count += 1

	def clear(self) -> None:
		"""Clears all the cached entries."""
		self.entries = []
		self.truncated_count = 0


class RunLogger:
	"""Logger of one Rusm session. Segments are per thread, so parallel trials keep their entries apart."""

	def __init__(self, run_name: str = 'rusm'):
		if run_name is None:
			raise RusmException('run_name cannot be None')
		self._default_mode: LoggingMode = LoggingMode.Off
		self._last_logging_mode: LoggingMode = LoggingMode.On
		self._mode: LoggingMode = self._default_mode
		self._target = None
		self._cached = CachedEntries()
		self._timestamp_reference_time: datetime or None = None
		self._format_string: str = DEFAULT_FORMAT
		self._line_divider: str = '\n'
		self._log_to_console = False
		self._lock = threading.RLock()
		self._local = threading.local()

		# Public properties
		self.run_name: str = run_name
		"""Name written in the RUN_NAME column, e.g. the algorithm or the experiment name."""
		self.abbreviated_max_len: int = 200
		"""Maximum length of one log string. Default value is 200 characters."""
		self.abbreviated_max_len_list: int = 100
		"""Maximum number of the list elements logged by info_list(). Default value is 100 elements."""
		self.target_auto_flushing: bool = True
		"""If True (default value), the target stream is flushed after each entry."""

	def __str__(self):
		value = f"RunLogger for '{self.run_name}'"
		value += f' mode: {self._mode.name}' if self._mode != LoggingMode.Off else ' OFF'
		if self._log_to_console:
			value += ', target: console'
			if self._target:
				value += ' + stream'
		elif self._target:
			value += ', target: stream'
		return value

	@property
	def _segment(self) -> Segment or None:
		return getattr(self._local, 'segment', None)

	def start_new_segment(self) -> None:
		"""Only relevant for the LoggingMode.Errors. Entries of the calling thread are delayed until end_current_segment().
		Then, only if the segment contains an error, its entries are written to the log."""
		if self._segment:
			self.end_current_segment()
			raise RusmException('Segment was not properly finished before the new one was started.')
		self._local.segment = Segment() if self._mode == LoggingMode.Errors else None

	def end_current_segment(self) -> None:
		"""Writes the segment of the calling thread if it contains an error entry, discards it otherwise."""
		segment = self._segment
		self._local.segment = None
		if segment and self._mode == LoggingMode.Errors and segment.error_present:
			for entry in segment.entries:
				self._write_to_log(entry)

	def set_format_string(self, value: str or None, line_divider: str = '\n') -> None:
		"""Sets new format string and line divider. Enter value=None to only set the line divider.
		The original format string is: ``PAD_LEFT12(%START_TIME%) PAD_LEFT20(%RUN_NAME%) PAD_LEFT12(%DURATION%)  %LOG_STRING_INFO%: %LOG_STRING%``\n
		Additional variables to use: ``%END_TIME%``."""
		if value is not None:
			self._format_string = value
		self._line_divider = line_divider

	def restore_format_string(self) -> None:
		"""Restores the original format string and the line divider to LF."""
		self._format_string = DEFAULT_FORMAT
		self._line_divider = '\n'

	def clear_cached_entries(self) -> None:
		"""Clears cached entries, produced while the logging was ON without any target."""
		with self._lock:
			self._cached.clear()

	def set_logging_target(self, target, console_log: bool or None = None) -> None:
		"""Sets logging target - the target must implement write() and flush().
		You can optionally set the console logging ON or OFF."""
		self._target = target
		if console_log is not None:
			self._log_to_console = console_log
		self._flush_cached_entries()

	def get_logging_target(self):
		"""Returns the logging target stream."""
		return self._target

	@property
	def mode(self) -> LoggingMode:
		"""Sets / returns the logging mode.
		Possible values:

		* LoggingMode.Off  - logging is switched OFF
		* LoggingMode.On  - logging is switched ON
		* LoggingMode.Errors  - only segments with an error entry are logged
		* LoggingMode.Default  - sets the logging to default - the value you have set with logger.default_mode

		"""
		return self._mode

	@mode.setter
	def mode(self, value: LoggingMode) -> None:
		if self._segment:
			raise RusmException(f"Can not change the logging mode when a log segment is active. End the segment with RunLogger.end_current_segment(). Run name: '{self.run_name}'")
		value = self._default_mode if value == LoggingMode.Default else value
		self._mode = value
		if self._mode != LoggingMode.Off:
			self._flush_cached_entries()
		elif self._target:
			self.flush()

	@property
	def default_mode(self) -> LoggingMode:
		"""Sets / returns the default logging mode, recalled by 'logger.mode = LoggingMode.Default'."""
		return self._default_mode

	@default_mode.setter
	def default_mode(self, value: LoggingMode) -> None:
		if value == LoggingMode.Default:
			raise ValueError('LoggingMode.Default can not be set here. Use a specific value.')
		self._default_mode = value

	def start(self) -> None:
		"""Starts the logging with the last defined LoggingMode. Default is LoggingMode.On"""
		self.mode = self._last_logging_mode

	def stop(self) -> None:
		"""Stops the logging. This is the same as: mode = LoggingMode.Off"""
		if self.mode is not LoggingMode.Off:
			self._last_logging_mode = self.mode
		self.mode = LoggingMode.Off

	@property
	def log_to_console(self) -> bool:
		"""Returns logging to console status."""
		return self._log_to_console

	@log_to_console.setter
	def log_to_console(self, value: bool) -> None:
		"""Sets logging to console. Default value is False."""
		self._log_to_console = value
		if value is True:
			self._flush_cached_entries()

	def set_relative_timestamp(self, timestamp: datetime or float) -> None:
		"""If set, the further timestamps are relative to the entered time."""
		self._timestamp_reference_time = convert_ts_to_datetime(timestamp)

	def set_relative_timestamp_now(self) -> None:
		"""Sets the relative timestamp to the current time."""
		self.set_relative_timestamp(datetime.now())

	def clear_relative_timestamp(self) -> None:
		"""Clears the reference time, the further logging continues with absolute times."""
		self._timestamp_reference_time = None

	def _target_exists(self) -> bool:
		return self._target is not None or self._log_to_console is True

	def _flush_cached_entries(self) -> bool:
		"""Flushes the cached entries to the log target. Returns True if flushed."""
		if not self._target_exists():
			return False
		with self._lock:
			entries = list(self._cached.entries)
			truncated = self._cached.truncated_count
			self._cached.clear()
		if truncated > 0:
			self._write_to_log(LogEntry.as_raw_content(f'----- Missing {truncated} oldest entries ----------'))
		for entry in entries:
			self._write_to_log(entry)
		return True

	def _write_to_log(self, entry: LogEntry) -> None:
		"""Writes the entry to the segment, to the cache, or to the targets."""
		segment = self._segment
		if segment:
			segment.add_to_segment(entry)
			return
		with self._lock:
			if not self._target_exists():
				self._cached.append(entry)
				return
			entry.set_timestamp_reference_time(self._timestamp_reference_time)
			content = entry.get_resolved_content(self._format_string)
			if self._log_to_console:
				print(content)
			if self._target:
				try:
					self._target.write(content + self._line_divider)
					if self.target_auto_flushing:
						self._target.flush()
				except Exception as e:
					raise RusmException(f"Error logging to the stream. Message: '{content}'. Error: {e}")

	def _compose(self, start_time, end_time, log_string_info: str, log_string: str, error: bool) -> LogEntry:
		if len(log_string) > self.abbreviated_max_len:
			log_string = shorten_string_middle(log_string, self.abbreviated_max_len)
		return LogEntry(start_time, end_time, self.run_name, log_string_info, log_string, error=error, raw=False)

	def _accepts_info(self) -> bool:
		if self._mode == LoggingMode.Off:
			return False
		# In the Errors mode, info entries are only kept as a context inside a segment
		return self._mode != LoggingMode.Errors or self._segment is not None

	def info_raw(self, log_entry: str) -> None:
		"""Logs the raw string without any formatting."""
		if self._accepts_info():
			self._write_to_log(LogEntry.as_raw_content(log_entry))

	def info(self, start_time: datetime or float or None, end_time: datetime or float or None, log_string_info: str, log_string: str) -> None:
		"""Logs one info entry."""
		if self._accepts_info():
			self._write_to_log(self._compose(start_time, end_time, log_string_info, log_string, error=False))

	def info_list(self, start_time: datetime or float or None, end_time: datetime or float or None, log_string_info: str, list_data: List) -> None:
		"""Logs one info entry with a list of values, long lists are shown by their first and last elements."""
		if not self._accepts_info():
			return
		delimiter = ', '
		if len(list_data) <= self.abbreviated_max_len_list:
			log_string = f'List size {len(list_data)}: {list_to_csv_str(list_data, delimiter=delimiter)}'
		else:
			chunk = self.abbreviated_max_len_list // 2
			log_string = f'List size {len(list_data)}, showing first and last {chunk} elements: '
			log_string += list_to_csv_str(list_data[:chunk], delimiter=delimiter) + ' .... ' + list_to_csv_str(list_data[-chunk:], delimiter=delimiter)
		entry = LogEntry(start_time, end_time, self.run_name, log_string_info, log_string, error=False, raw=False)
		self._write_to_log(entry)

	def error(self, start_time: datetime or float or None, end_time: datetime or float or None, log_string_info: str, log_string: str) -> None:
		"""Logs one error entry. In the Errors mode, it marks the current segment to be written."""
		if self._mode == LoggingMode.Off:
			return
		self._write_to_log(self._compose(start_time, end_time, log_string_info, log_string, error=True))

	def error_raw(self, log_entry: str) -> None:
		"""Logs one error entry without any formatting."""
		if self._mode == LoggingMode.Off:
			return
		self._write_to_log(LogEntry.as_raw_content(log_entry, error=True))

	def flush(self) -> None:
		"""Flushes the target stream."""
		if self._target:
			try:
				# The file might be already closed.
				self._target.flush()
			except ValueError:
				pass
