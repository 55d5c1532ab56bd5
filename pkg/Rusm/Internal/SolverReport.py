"""Solver outputs: the report with the value breakdown, the local-search move trace and the Double Greedy step trace."""

import json
from enum import Enum
from typing import List, Dict

from .GroundSet import SubsetMask
from .Utilities import iter_bits


class MoveKind(Enum):
	"""Kind of an accepted local-search move, or of a Double Greedy decision."""
	add = 1
	remove = 2


class MoveRecord(object):
	"""One accepted local-search move with its estimated gain of h."""

	def __init__(self, iteration: int, kind: MoveKind, element: int, gain: float):
		self.iteration = iteration
		self.kind = kind
		self.element = element
		self.gain = gain

	def __repr__(self):
		return f'MoveRecord({self.iteration}, {self.kind.name}, {self.element}, {self.gain:.6g})'

	def to_list(self) -> List:
		"""JSON row [iteration, kind, element, gain]."""
		return [self.iteration, self.kind.name, self.element, self.gain]


class DgStep(object):
	"""One Double Greedy step: the marginals a and b, the decision and the cardinalities of X and Y after it.
	probability is the chance the randomized variant had of adding the element (1 or 0 for forced decisions)."""

	def __init__(self, index: int, element: int, a: float, b: float, decision: MoveKind, x_size: int, y_size: int, probability: float):
		self.index = index
		self.element = element
		self.a = a
		self.b = b
		self.decision = decision
		self.x_size = x_size
		self.y_size = y_size
		self.probability = probability

	def __repr__(self):
		return f'DgStep({self.index}, u={self.element}, a={self.a:.6g}, b={self.b:.6g}, {self.decision.name})'

	def to_dict(self) -> Dict:
		"""JSON-ready dictionary."""
		return {'index': self.index, 'element': self.element, 'a': self.a, 'b': self.b, 'decision': self.decision.name,
				'x_size': self.x_size, 'y_size': self.y_size, 'probability': self.probability}


class DgTrace(object):
	"""Step trace of one Double Greedy run with the values f(X_i) and f(Y_i) for i = 0..n."""

	def __init__(self):
		self.steps: List[DgStep] = []
		self.x_values: List[float] = []
		self.y_values: List[float] = []
		self.x_masks: List[SubsetMask] = []
		self.y_masks: List[SubsetMask] = []

	def __len__(self) -> int:
		return len(self.steps)

	def record_sets(self, x: SubsetMask, y: SubsetMask, fx: float, fy: float) -> None:
		"""Appends the state (X_i, Y_i) with the values."""
		self.x_masks.append(x)
		self.y_masks.append(y)
		self.x_values.append(fx)
		self.y_values.append(fy)

	def min_ab_sum(self) -> float:
		"""Returns the minimum of a_i + b_i over the steps, inf for no steps."""
		return min((s.a + s.b for s in self.steps), default=float('inf'))

	def is_nested(self) -> bool:
		"""True if X_{i-1} <= X_i <= Y_i <= Y_{i-1} for every step and X_n = Y_n."""
		for i in range(1, len(self.x_masks)):
			x0, x1, y0, y1 = self.x_masks[i - 1], self.x_masks[i], self.y_masks[i - 1], self.y_masks[i]
			if x0 & ~x1 or x1 & ~y1 or y1 & ~y0:
				return False
		return self.x_masks[-1] == self.y_masks[-1]

	def to_list(self) -> List[Dict]:
		"""JSON-ready list of steps."""
		return [s.to_dict() for s in self.steps]


class SolverReport(object):
	"""Output of one solver run.
	g_value + ell_value is the value f of output_set. oracle_queries counts the queries of g made by the run."""

	def __init__(self, algorithm: str, output_set: SubsetMask, g_value: float, ell_value: float, oracle_queries: int = 0, seed: int or None = None):
		self.algorithm = algorithm
		self.output_set = output_set
		self.g_value = g_value
		self.ell_value = ell_value
		self.oracle_queries = oracle_queries
		self.seed = seed
		self.move_trace: List[MoveRecord] = []
		self.dg_trace: DgTrace or None = None
		# Local-search details, None for the other algorithms
		self.reduced_set: SubsetMask or None = None
		self.delta: float or None = None
		self.iterations: int or None = None
		self.iteration_cap: int or None = None
		self.exit_reason: str or None = None
		self.local_optimum: SubsetMask or None = None
		self.sample_count: int or None = None
		self.expected_subsample_value: float or None = None
		self.expected_value: float or None = None

	@property
	def total(self) -> float:
		"""f(output_set) = g_value + ell_value."""
		return self.g_value + self.ell_value

	def __repr__(self):
		return f'SolverReport({self.algorithm}, total={self.total:.6g}, queries={self.oracle_queries})'

	def to_dict(self) -> Dict:
		"""JSON-ready dictionary. Subsets are written as ascending lists of element indexes."""
		result = {
			'algorithm': self.algorithm,
			'output_set': list(iter_bits(self.output_set)),
			'g_value': self.g_value,
			'ell_value': self.ell_value,
			'total': self.total,
			'oracle_queries': self.oracle_queries,
			'seed': self.seed,
			'move_trace': [m.to_list() for m in self.move_trace]}
		if self.dg_trace is not None:
			result['dg_trace'] = self.dg_trace.to_list()
		for name in ('delta', 'iterations', 'iteration_cap', 'exit_reason', 'sample_count', 'expected_subsample_value', 'expected_value'):
			value = getattr(self, name)
			if value is not None:
				result[name] = value
		for name in ('reduced_set', 'local_optimum'):
			value = getattr(self, name)
			if value is not None:
				result[name] = list(iter_bits(value))
		return result

	def to_json(self) -> str:
		"""JSON string with sorted keys."""
		return json.dumps(self.to_dict(), sort_keys=True, indent=2)

	def write_json(self, path: str) -> None:
		"""Writes the report as UTF-8 JSON file."""
		with open(path, 'w', encoding='utf-8') as file:
			file.write(self.to_json())
			file.write('\n')
