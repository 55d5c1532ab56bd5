import io
import threading
from datetime import datetime, timedelta

import pytest

from Rusm.Internal import RunLogger as run_logger_module
from Rusm.Internal.RunLogger import RunLogger, LoggingMode
from Rusm.Internal.RusmErrors import RusmException

PLAIN_FORMAT = '%RUN_NAME%|%LOG_STRING_INFO%|%LOG_STRING%'


@pytest.fixture
def stream():
	return io.StringIO()


@pytest.fixture
def logger(stream) -> RunLogger:
	obj = RunLogger('unit')
	obj.set_format_string(PLAIN_FORMAT)
	obj.set_logging_target(stream)
	obj.mode = LoggingMode.On
	return obj


def test_plain_entries(logger, stream):
	logger.info(None, None, 'Trial 0', 'f=1')
	logger.error(None, None, 'Check', 'FAIL')
	assert stream.getvalue() == 'unit|Trial 0|f=1\nunit|Check|FAIL\n'


def test_default_format_with_times(stream):
	logger = RunLogger('dg-det')
	logger.set_logging_target(stream)
	logger.mode = LoggingMode.On
	start = datetime(2026, 10, 1, 10, 0, 0)
	logger.info(start, start + timedelta(microseconds=1500), 'Trial 3', 'f=2')
	line = stream.getvalue()
	assert line.startswith('10:00:00.000')
	assert '1.500 ms' in line
	assert line.rstrip().endswith('Trial 3: f=2')
	assert '              dg-det' in line


def test_relative_timestamps(logger, stream):
	logger.set_format_string('%START_TIME% %LOG_STRING%')
	logger.set_relative_timestamp(datetime(2026, 10, 1, 9, 0, 0))
	logger.info(datetime(2026, 10, 1, 10, 0, 0, 250000), None, '', 'relative')
	logger.clear_relative_timestamp()
	logger.info(datetime(2026, 10, 1, 10, 0, 0, 250000), None, '', 'absolute')
	assert stream.getvalue().splitlines() == ['01:00:00.250 relative', '10:00:00.250 absolute']


def test_restore_format_string(logger, stream):
	logger.restore_format_string()
	logger.info(None, None, 'Experiment', 'ls')
	assert stream.getvalue().rstrip('\n').endswith('Experiment: ls')
	assert 'unit' in stream.getvalue()


def test_line_divider(logger, stream):
	logger.set_format_string(None, line_divider='\r\n')
	logger.info(None, None, 'a', 'b')
	assert stream.getvalue() == 'unit|a|b\r\n'


def test_off_mode_writes_nothing(logger, stream):
	logger.stop()
	assert logger.mode == LoggingMode.Off
	logger.info(None, None, 'a', 'b')
	logger.error(None, None, 'a', 'b')
	assert stream.getvalue() == ''
	logger.start()
	assert logger.mode == LoggingMode.On


def test_default_mode():
	logger = RunLogger('unit')
	with pytest.raises(ValueError):
		logger.default_mode = LoggingMode.Default
	logger.default_mode = LoggingMode.Errors
	logger.mode = LoggingMode.Default
	assert logger.mode == LoggingMode.Errors


def test_raw_entries(logger, stream):
	logger.info_raw('raw text')
	logger.error_raw('raw error')
	assert stream.getvalue() == 'raw text\nraw error\n'


def test_long_strings_are_shortened(logger, stream):
	logger.abbreviated_max_len = 20
	logger.info(None, None, 'x', 'a' * 30 + 'b' * 30)
	text = stream.getvalue()
	assert ' .... ' in text
	assert text.startswith('unit|x|aaaaaaa')
	assert text.rstrip().endswith('bbbbbbb')


def test_info_list(logger, stream):
	logger.info_list(None, None, 'Order', [3, 1, 2.5])
	assert stream.getvalue() == 'unit|Order|List size 3: 3, 1, 2.5\n'
	logger.abbreviated_max_len_list = 4
	logger.info_list(None, None, 'Order', list(range(10)))
	assert 'List size 10, showing first and last 2 elements: 0, 1 .... 8, 9' in stream.getvalue()


def test_entries_are_cached_until_a_target_is_set(stream):
	logger = RunLogger('unit')
	logger.set_format_string(PLAIN_FORMAT)
	logger.mode = LoggingMode.On
	for ix in range(3):
		logger.info(None, None, 'Trial', str(ix))
	logger.set_logging_target(stream)
	assert stream.getvalue() == 'unit|Trial|0\nunit|Trial|1\nunit|Trial|2\n'
	assert logger.get_logging_target() is stream


def test_cleared_cache_is_not_written(stream):
	logger = RunLogger('unit')
	logger.mode = LoggingMode.On
	logger.info(None, None, 'Trial', '0')
	logger.clear_cached_entries()
	logger.set_logging_target(stream)
	assert stream.getvalue() == ''


def test_cache_drops_the_oldest_entries(stream, monkeypatch):
	monkeypatch.setattr(run_logger_module, 'MAX_CACHED_ENTRIES', 2)
	logger = RunLogger('unit')
	logger.set_format_string(PLAIN_FORMAT)
	logger.mode = LoggingMode.On
	for ix in range(5):
		logger.info(None, None, 'Trial', str(ix))
	logger.set_logging_target(stream)
	assert stream.getvalue().splitlines() == ['----- Missing 3 oldest entries ----------', 'unit|Trial|3', 'unit|Trial|4']


def test_errors_mode_writes_only_failed_segments(logger, stream):
	logger.mode = LoggingMode.Errors
	logger.info(None, None, 'Experiment', 'outside any segment')
	logger.start_new_segment()
	logger.info(None, None, 'Trial 0', 'ok')
	logger.end_current_segment()
	logger.start_new_segment()
	logger.info(None, None, 'Trial 1', 'context')
	logger.error(None, None, 'Trial 1', 'ValueError')
	logger.end_current_segment()
	assert stream.getvalue() == 'unit|Trial 1|context\nunit|Trial 1|ValueError\n'


def test_segments_must_be_finished(logger):
	logger.mode = LoggingMode.Errors
	logger.start_new_segment()
	with pytest.raises(RusmException):
		logger.mode = LoggingMode.On
	with pytest.raises(RusmException):
		logger.start_new_segment()
	logger.mode = LoggingMode.On


def test_segments_are_per_thread(logger, stream):
	logger.mode = LoggingMode.Errors
	barrier = threading.Barrier(2)

	def trial(name: str, fail: bool):
		logger.start_new_segment()
		logger.info(None, None, name, 'start')
		barrier.wait()
		if fail:
			logger.error(None, None, name, 'failed')
		barrier.wait()
		logger.end_current_segment()

	threads = [threading.Thread(target=trial, args=('good', False)), threading.Thread(target=trial, args=('bad', True))]
	for thread in threads:
		thread.start()
	for thread in threads:
		thread.join()
	assert stream.getvalue() == 'unit|bad|start\nunit|bad|failed\n'


def test_console_output(capsys):
	logger = RunLogger('console')
	logger.set_format_string(PLAIN_FORMAT)
	logger.set_logging_target(None, console_log=True)
	logger.mode = LoggingMode.On
	logger.info(None, None, 'a', 'b')
	assert capsys.readouterr().out == 'console|a|b\n'
	assert str(logger) == "RunLogger for 'console' mode: On, target: console"


def test_broken_target_raises(logger):
	class Broken:
		def write(self, text):
			raise OSError('disk full')

		def flush(self):
			pass

	logger.set_logging_target(Broken())
	with pytest.raises(RusmException):
		logger.info(None, None, 'a', 'b')


def test_run_name_is_required():
	with pytest.raises(RusmException):
		RunLogger(None)
