"""Definition of Rusm exceptions, assert functions, and other error-related functions."""

import math
from numbers import Integral


class RusmException(Exception):
	"""Exception base class for all the Rusm exceptions."""
	def __init__(self, message: str):
		super(RusmException, self).__init__(message)
		self.message = message


class ParameterDomainError(RusmException):
	"""Exception for parameters outside their domain, e.g. beta outside (0, 1] or an element index out of range."""
	def __init__(self, param_name: str, message: str):
		self.param_name: str = param_name
		super(ParameterDomainError, self).__init__(message)


class ExactLimitError(RusmException):
	"""Exception for exact enumerations requested above the configured size limit."""
	def __init__(self, size: int, limit: int, message: str):
		self.size: int = size
		self.limit: int = limit
		super(ExactLimitError, self).__init__(message)


class SchemaError(RusmException):
	"""Exception for instance JSON documents violating the schema.
	The field field_path names the offending field, e.g. 'ell' or 'g.params.edges[2]'."""
	def __init__(self, field_path: str, message: str):
		self.field_path: str = field_path
		super(SchemaError, self).__init__(message)


class InstanceFileError(RusmException):
	"""Exception for instance files that can not be read or parsed."""
	def __init__(self, path: str, message: str):
		self.path: str = path
		super(InstanceFileError, self).__init__(message)


class GroupStructureError(RusmException):
	"""Exception for orbit structures that are inconsistent with the ground set."""
	def __init__(self, message: str):
		super(GroupStructureError, self).__init__(message)


def _with_context(message: str, context: str) -> str:
	if context:
		return f'{context.strip()}: {message}'
	return message


def assert_probability(value: float, name: str, context: str = '') -> None:
	"""Throws ParameterDomainError if the value is not a probability in [0, 1]."""
	if isinstance(value, (int, float)) and not math.isnan(value) and 0.0 <= value <= 1.0:
		return
	raise ParameterDomainError(name, _with_context(f"Parameter '{name}' must be a probability in [0, 1], actual value: {value}", context))


def assert_in_range(value: float, name: str, low: float, high: float, low_open: bool = False, high_open: bool = False, context: str = '') -> None:
	"""Throws ParameterDomainError if the value is outside the interval.
	Open ends are marked with low_open / high_open. Use math.inf for unbounded ends."""
	ok = not math.isnan(value)
	if ok:
		ok = value > low if low_open else value >= low
	if ok:
		ok = value < high if high_open else value <= high
	if ok:
		return
	interval = f"{'(' if low_open else '['}{low}, {high}{')' if high_open else ']'}"
	raise ParameterDomainError(name, _with_context(f"Parameter '{name}' must be in {interval}, actual value: {value}", context))


def assert_min_int(value: int, name: str, minimum: int, context: str = '') -> None:
	"""Throws ParameterDomainError if the value is not an integer of at least the minimum. numpy integers are accepted."""
	if isinstance(value, Integral) and not isinstance(value, bool) and value >= minimum:
		return
	raise ParameterDomainError(name, _with_context(f"Parameter '{name}' must be an integer >= {minimum}, actual value: {value}", context))


def assert_element_index(u: int, n: int, context: str = '') -> None:
	"""Throws ParameterDomainError if the element index is outside [0, n)."""
	if isinstance(u, Integral) and not isinstance(u, bool) and 0 <= u < n:
		return
	raise ParameterDomainError('u', _with_context(f'Element index {u} out of range for a ground set of {n} elements', context))


def assert_exact_limit(size: int, limit: int, context: str = '') -> None:
	"""Throws ExactLimitError if an exact enumeration over 2^size subsets exceeds the limit."""
	if size <= limit:
		return
	raise ExactLimitError(size, limit, _with_context(
		f"Exact enumeration over 2^{size} subsets exceeds the limit of 2^{limit}. "
		"Use the sampled variant, or raise the limit with the option 'ExactLimit'", context))


def assert_permutation(order, n: int, context: str = '') -> None:
	"""Throws ParameterDomainError if the order is not a permutation of 0..n-1."""
	if order is not None and len(order) == n and sorted(order) == list(range(n)):
		return
	raise ParameterDomainError('element_order', _with_context(f'Element order must be a permutation of 0..{n - 1}, actual value: {order}', context))
