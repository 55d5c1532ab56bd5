"""Value oracles, linear weights and the RUSM instance pairing them."""

import math
import threading
from enum import Enum
from typing import Callable, Sequence, Dict, List

import numpy as np

from .GroundSet import GroundSet, SubsetMask
from .RusmErrors import ParameterDomainError, assert_exact_limit, assert_min_int
from .Utilities import iter_bits

DEFAULT_TABLE_LIMIT = 24


class SetFunctionOracle(object):
	"""Value-query interface of a set function f: 2^N -> R.
	The oracle is immutable after construction; the query counter is its only mutable state.
	The counter keeps a process-wide total and a per-thread tally,
	so concurrent workers sharing one oracle can still attribute their own queries."""
	kind: str = 'custom'

	def __init__(self, n: int):
		assert_min_int(n, 'n', 1, type(self).__name__)
		self._n = n
		self._lock = threading.Lock()
		self._total = 0
		self._local = threading.local()

	@property
	def n(self) -> int:
		"""Size of the ground set the oracle is defined on."""
		return self._n

	def _evaluate(self, mask: SubsetMask) -> float:
		raise NotImplementedError

	def _evaluate_many(self, masks: np.ndarray) -> np.ndarray:
		return np.array([self._evaluate(int(m)) for m in masks], dtype=float)

	def _count(self, amount: int) -> None:
		with self._lock:
			self._total += amount
		self._local.count = getattr(self._local, 'count', 0) + amount

	def evaluate(self, mask: SubsetMask) -> float:
		"""Returns f(S). Increments the query counter by exactly 1."""
		value = float(self._evaluate(mask))
		self._count(1)
		return value

	def __call__(self, mask: SubsetMask) -> float:
		return self.evaluate(mask)

	def evaluate_many(self, masks) -> np.ndarray:
		"""Returns vector of f values for the vector of masks. Increments the query counter by the number of masks."""
		masks = np.asarray(masks, dtype=np.int64)
		values = self._evaluate_many(masks)
		self._count(len(masks))
		return values

	@property
	def query_count(self) -> int:
		"""Total number of queries, over all the threads."""
		with self._lock:
			return self._total

	@property
	def thread_query_count(self) -> int:
		"""Number of queries made by the calling thread."""
		return getattr(self._local, 'count', 0)

	def reset_query_count(self) -> None:
		"""Resets the total count and the calling thread's tally to 0."""
		with self._lock:
			self._total = 0
		self._local.count = 0

	def descriptor(self) -> Dict or None:
		"""Returns the {'kind', 'params'} JSON descriptor, or None if the oracle can not be serialized."""
		return None

	def __repr__(self):
		return f'{type(self).__name__}(n={self._n})'


class CallableOracle(SetFunctionOracle):
	"""Oracle wrapping a python function of the mask."""
	kind = 'callable'

	def __init__(self, n: int, func: Callable[[SubsetMask], float]):
		super(CallableOracle, self).__init__(n)
		self._func = func

	def _evaluate(self, mask: SubsetMask) -> float:
		return self._func(mask)


class TableOracle(SetFunctionOracle):
	"""Oracle given by the explicit list of its 2^n values in mask order."""
	kind = 'table'

	def __init__(self, values: Sequence[float]):
		values = np.asarray(values, dtype=float)
		n = int(round(math.log2(len(values)))) if len(values) > 1 else 0
		if n < 1 or len(values) != 1 << n:
			raise ParameterDomainError('values', f'Table oracle needs 2^n values with n >= 1, actual count: {len(values)}')
		super(TableOracle, self).__init__(n)
		self._values = values
		self._values.flags.writeable = False

	def _evaluate(self, mask: SubsetMask) -> float:
		return float(self._values[mask])

	def _evaluate_many(self, masks: np.ndarray) -> np.ndarray:
		return self._values[masks].copy()

	def descriptor(self) -> Dict:
		return {'kind': self.kind, 'params': {'values': [float(x) for x in self._values]}}


class CachedOracle(SetFunctionOracle):
	"""Memoizing wrapper. Each distinct mask is queried from the inner oracle once,
	the inner oracle's counter therefore counts the distinct queries."""
	kind = 'cached'

	def __init__(self, inner: SetFunctionOracle):
		super(CachedOracle, self).__init__(inner.n)
		self._inner = inner
		self._memo: Dict[int, float] = {}
		self._memo_lock = threading.Lock()

	@property
	def inner(self) -> SetFunctionOracle:
		"""The wrapped oracle."""
		return self._inner

	def _evaluate(self, mask: SubsetMask) -> float:
		with self._memo_lock:
			value = self._memo.get(mask)
		if value is None:
			value = self._inner.evaluate(mask)
			with self._memo_lock:
				self._memo[mask] = value
		return value

	def descriptor(self) -> Dict or None:
		return self._inner.descriptor()


def tabulate(oracle: SetFunctionOracle, limit: int = DEFAULT_TABLE_LIMIT) -> np.ndarray:
	"""Returns the numpy vector of f over all the 2^n masks. Costs exactly 2^n queries."""
	assert_exact_limit(oracle.n, limit, 'tabulate')
	return oracle.evaluate_many(np.arange(1 << oracle.n, dtype=np.int64))


_BYTE_POPCOUNT = np.array([bin(x).count('1') for x in range(256)], dtype=np.int64)


def popcount_array(masks: np.ndarray) -> np.ndarray:
	"""Returns the vector of set-bit counts of the int64 masks."""
	masks = np.ascontiguousarray(masks, dtype=np.int64)
	return _BYTE_POPCOUNT[masks.view(np.uint8)].reshape(len(masks), 8).sum(axis=1)


def additive_table(values: Sequence[float]) -> np.ndarray:
	"""Returns the vector over all the 2^n masks of the sum of values[u] over the bits u of the mask.
	Built by doubling: the second half of each step is the first half plus the new bit's value."""
	table = np.zeros(1, dtype=float)
	for v in values:
		table = np.concatenate((table, table + v))
	return table


def product_table(x: Sequence[float]) -> np.ndarray:
	"""Returns the vector over all the 2^n masks of the product of x_u over the bits of the mask
	and (1 - x_u) over the other bits, i.e. the probabilities of RSet(x)."""
	table = np.ones(1, dtype=float)
	for xu in x:
		table = np.concatenate((table * (1.0 - xu), table * xu))
	return table


class EllSign(Enum):
	"""Sign class of a linear function."""
	zero = 0
	nonneg = 1
	nonpos = 2
	mixed = 3

	@classmethod
	def of(cls, weights: Sequence[float]) -> 'EllSign':
		"""Returns the sign class of the weights."""
		has_pos = any(w > 0 for w in weights)
		has_neg = any(w < 0 for w in weights)
		if has_pos and has_neg:
			return cls.mixed
		if has_pos:
			return cls.nonneg
		if has_neg:
			return cls.nonpos
		return cls.zero

	def is_nonneg(self) -> bool:
		"""True for zero and nonneg."""
		return self in (EllSign.zero, EllSign.nonneg)

	def is_nonpos(self) -> bool:
		"""True for zero and nonpos."""
		return self in (EllSign.zero, EllSign.nonpos)


class LinearWeights(object):
	"""Linear function l(S) = sum of w_u over u in S, with signed real weights."""

	def __init__(self, weights: Sequence[float]):
		weights = [float(x) for x in weights]
		if len(weights) == 0 or any(math.isnan(x) or math.isinf(x) for x in weights):
			raise ParameterDomainError('ell', 'Linear weights must be a non-empty list of finite numbers')
		self._w = tuple(weights)
		self._array = np.array(weights, dtype=float)
		self._array.flags.writeable = False

	def __len__(self) -> int:
		return len(self._w)

	def __getitem__(self, u: int) -> float:
		return self._w[u]

	def __eq__(self, other) -> bool:
		return isinstance(other, LinearWeights) and self._w == other._w

	def __hash__(self):
		return hash(self._w)

	@property
	def weights(self) -> np.ndarray:
		"""Read-only numpy vector of the weights."""
		return self._array

	@property
	def sign(self) -> EllSign:
		"""Sign class of the weights."""
		return EllSign.of(self._w)

	def value(self, mask: SubsetMask) -> float:
		"""Returns l(S), the sum is evaluated fresh for every call."""
		return math.fsum(self._w[u] for u in iter_bits(mask))

	def table(self) -> np.ndarray:
		"""Returns the numpy vector of l over all the 2^n masks."""
		return additive_table(self._w)

	def to_list(self) -> List[float]:
		"""Weights as list of floats."""
		return list(self._w)

	@classmethod
	def zeros(cls, n: int) -> 'LinearWeights':
		"""Returns the zero linear function."""
		return cls([0.0] * n)


class InstanceFlags(object):
	"""Declared properties of g and of l. None means 'not declared'.
	Declared flags are verified by the validators on small instances."""

	def __init__(self, nonneg: bool = True, submodular: bool = True, monotone: bool or None = None, ell_sign: EllSign = None):
		self.nonneg = nonneg
		self.submodular = submodular
		self.monotone = monotone
		self.ell_sign = ell_sign

	def __repr__(self):
		return f'InstanceFlags(nonneg={self.nonneg}, submodular={self.submodular}, monotone={self.monotone}, ell_sign={self.ell_sign})'


class RusmInstance(object):
	"""Instance (g, l) of regularized unconstrained submodular maximization: maximize g(S) + l(S).
	The instance is immutable, value tables are computed lazily once and shared between threads."""

	def __init__(self, g: SetFunctionOracle, ell: LinearWeights, ground: GroundSet = None, flags: InstanceFlags = None):
		if ground is None:
			ground = GroundSet(g.n)
		if g.n != ground.n:
			raise ParameterDomainError('g', f'Oracle size {g.n} differs from the ground set size {ground.n}')
		if len(ell) != ground.n:
			raise ParameterDomainError('ell', f'Linear weights length {len(ell)} differs from the ground set size {ground.n}')
		self.ground = ground
		self.g = g
		self.ell = ell
		self.flags = flags if flags is not None else InstanceFlags(ell_sign=ell.sign)
		if self.flags.ell_sign is None:
			self.flags.ell_sign = ell.sign
		self._tables_lock = threading.Lock()
		self._g_table: np.ndarray or None = None
		self._ell_table: np.ndarray or None = None

	def __repr__(self):
		return f'RusmInstance(n={self.n}, g={self.g!r}, ell_sign={self.ell.sign.name})'

	@property
	def n(self) -> int:
		"""Size of the ground set."""
		return self.ground.n

	def g_value(self, mask: SubsetMask) -> float:
		"""Returns g(S), one oracle query."""
		return self.g.evaluate(mask)

	def ell_value(self, mask: SubsetMask) -> float:
		"""Returns l(S)."""
		return self.ell.value(mask)

	def value(self, mask: SubsetMask) -> float:
		"""Returns f(S) = g(S) + l(S), one oracle query."""
		return self.g.evaluate(mask) + self.ell.value(mask)

	def g_table(self, limit: int = DEFAULT_TABLE_LIMIT) -> np.ndarray:
		"""Returns the cached vector of g over all masks. The first call costs 2^n queries."""
		with self._tables_lock:
			if self._g_table is None:
				table = tabulate(self.g, limit)
				table.flags.writeable = False
				self._g_table = table
			return self._g_table

	def ell_table(self, limit: int = DEFAULT_TABLE_LIMIT) -> np.ndarray:
		"""Returns the cached vector of l over all masks."""
		assert_exact_limit(self.n, limit, 'ell_table')
		with self._tables_lock:
			if self._ell_table is None:
				table = self.ell.table()
				table.flags.writeable = False
				self._ell_table = table
			return self._ell_table

	def descriptor(self) -> Dict or None:
		"""Returns the instance JSON document {'n', 'g', 'ell'}, or None if g can not be serialized."""
		g_desc = self.g.descriptor()
		if g_desc is None:
			return None
		return {'n': self.n, 'g': g_desc, 'ell': self.ell.to_list()}
