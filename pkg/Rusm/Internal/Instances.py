"""Constructors of the hard-instance families, of the weighted cut and coverage families, and of random test instances."""

from enum import Enum
from typing import Sequence, Tuple, Dict, List, Mapping, Hashable

import networkx as nx
import numpy as np

from .GroundSet import GroundSet, SubsetMask
from .SetFunctions import SetFunctionOracle, LinearWeights, RusmInstance, InstanceFlags, EllSign
from .Symmetry import PermutationGroup, transposition, cycle, compose
from .RusmErrors import ParameterDomainError, assert_in_range, assert_min_int
from .Utilities import iter_bits
from . import Conversions


class HardFamily(Enum):
	"""Families of the symmetric hard instances."""
	monotone_sec3 = 1
	negative_sec5 = 2
	positive_sec61 = 3


class HardInstanceDescriptor(object):
	"""Parameters of one hard instance. n is the satellite-block size, not the ground-set size.
	monotone_sec3: n >= 2, r in (0, 1]
	negative_sec5: n >= 1, t >= 1, r in (0, 1/2]
	positive_sec61: n >= 2, r and t are ignored"""

	def __init__(self, family: HardFamily or str, n: int, r: float = None, t: float = None):
		if isinstance(family, str):
			parsed = Conversions.str_to_simple_scalar_enum(family, HardFamily, case_sensitive=False)
			if parsed is None:
				raise ParameterDomainError('family', f"Unknown hard-instance family '{family}'. Valid values: {', '.join(x.name for x in HardFamily)}")
			family = parsed
		self.family: HardFamily = family
		self.n: int = n
		self.r: float or None = None if r is None else float(r)
		self.t: float or None = None if t is None else float(t)
		if family == HardFamily.positive_sec61:
			self.r = None
			self.t = None
		self.validate()

	def validate(self) -> None:
		"""Throws ParameterDomainError for parameters outside the family's domain."""
		context = self.family.name
		if self.family == HardFamily.monotone_sec3:
			assert_min_int(self.n, 'n', 2, context)
			self._assert_given('r')
			assert_in_range(self.r, 'r', 0.0, 1.0, low_open=True, context=context)
		elif self.family == HardFamily.negative_sec5:
			assert_min_int(self.n, 'n', 1, context)
			self._assert_given('r')
			self._assert_given('t')
			assert_in_range(self.t, 't', 1.0, np.inf, context=context)
			assert_in_range(self.r, 'r', 0.0, 0.5, low_open=True, context=context)
		else:
			assert_min_int(self.n, 'n', 2, context)

	def _assert_given(self, name: str) -> None:
		if getattr(self, name) is None:
			raise ParameterDomainError(name, f"Family {self.family.name} requires the parameter '{name}'")

	@property
	def ground_size(self) -> int:
		"""Number of elements of the instance's ground set."""
		if self.family == HardFamily.negative_sec5:
			return 2 * self.n + 2
		if self.family == HardFamily.positive_sec61:
			return self.n + 2
		return self.n

	def params(self) -> Dict:
		"""Returns the 'params' part of the JSON descriptor."""
		params = {'n': self.n}
		if self.r is not None:
			params['r'] = self.r
		if self.t is not None:
			params['t'] = self.t
		return params

	def __eq__(self, other) -> bool:
		return isinstance(other, HardInstanceDescriptor) and (self.family, self.n, self.r, self.t) == (other.family, other.n, other.r, other.t)

	def __repr__(self):
		return f'HardInstanceDescriptor({self.family.name}, n={self.n}, r={self.r}, t={self.t})'


class InstanceBundle(object):
	"""Hard instance together with its symmetry group and its descriptor."""

	def __init__(self, instance: RusmInstance, group: PermutationGroup, descriptor: HardInstanceDescriptor):
		self.instance = instance
		self.group = group
		self.descriptor = descriptor

	def __repr__(self):
		return f'InstanceBundle({self.descriptor!r})'


class _HardOracle(SetFunctionOracle):
	"""Closed-form oracle of a hard family, the queries cost O(1) big-integer operations."""

	def __init__(self, descriptor: HardInstanceDescriptor):
		super(_HardOracle, self).__init__(descriptor.ground_size)
		self.hard_descriptor = descriptor
		self.kind = descriptor.family.name

	def descriptor(self) -> Dict:
		return {'kind': self.kind, 'params': self.hard_descriptor.params()}


class MonotoneHardOracle(_HardOracle):
	"""g(S) = min{|S|, 1}."""

	def _evaluate(self, mask: SubsetMask) -> float:
		return 1.0 if mask else 0.0

	def _evaluate_many(self, masks: np.ndarray) -> np.ndarray:
		return (masks != 0).astype(float)


class NegativeHardOracle(_HardOracle):
	"""Ground set a, b, a_1..a_n, b_1..b_n with the indexes 0, 1, 2..n+1, n+2..2n+1.
	g(S) = t * (|S & {a, b}| mod 2) + [a not in S][S meets the a-block] + [b not in S][S meets the b-block]."""

	def __init__(self, descriptor: HardInstanceDescriptor):
		super(NegativeHardOracle, self).__init__(descriptor)
		n = descriptor.n
		self._t = descriptor.t
		self._block_a = ((1 << n) - 1) << 2
		self._block_b = ((1 << n) - 1) << (n + 2)

	def _evaluate(self, mask: SubsetMask) -> float:
		a = mask & 1
		b = mask >> 1 & 1
		value = self._t * (a ^ b)
		if not a and mask & self._block_a:
			value += 1.0
		if not b and mask & self._block_b:
			value += 1.0
		return value

	def _evaluate_many(self, masks: np.ndarray) -> np.ndarray:
		a = masks & 1
		b = masks >> 1 & 1
		value = self._t * (a ^ b)
		value = value + (1 - a) * ((masks & self._block_a) != 0)
		return value + (1 - b) * ((masks & self._block_b) != 0)


class PositiveHardOracle(_HardOracle):
	"""Ground set a, b, c_1..c_n with the indexes 0, 1, 2..n+1.
	g(S) = 2 * (|S & {a, b}| mod 2) + [S meets {a, b}][some c_i is missing from S]."""

	def __init__(self, descriptor: HardInstanceDescriptor):
		super(PositiveHardOracle, self).__init__(descriptor)
		self._block_c = ((1 << descriptor.n) - 1) << 2

	def _evaluate(self, mask: SubsetMask) -> float:
		a = mask & 1
		b = mask >> 1 & 1
		value = 2.0 * (a ^ b)
		if (a or b) and mask & self._block_c != self._block_c:
			value += 1.0
		return value

	def _evaluate_many(self, masks: np.ndarray) -> np.ndarray:
		a = masks & 1
		b = masks >> 1 & 1
		return 2.0 * (a ^ b) + ((a | b) == 1) * ((masks & self._block_c) != self._block_c)


class CutOracle(SetFunctionOracle):
	"""Weighted cut function of an undirected graph: g(S) = total weight of the edges between S and its complement."""
	kind = 'cut'

	def __init__(self, graph: nx.Graph):
		super(CutOracle, self).__init__(graph.number_of_nodes())
		if sorted(graph.nodes) != list(range(self.n)):
			raise ParameterDomainError('edges', f'Graph nodes must be 0..{self.n - 1}')
		self._graph = graph
		edges = sorted((min(u, v), max(u, v), float(w)) for u, v, w in graph.edges(data='weight', default=1.0) if u != v)
		self._edges: List[Tuple[int, int, float]] = edges

	@property
	def graph(self) -> nx.Graph:
		"""The underlying networkx graph, edge weights in the attribute 'weight'."""
		return self._graph

	@property
	def edges(self) -> List[Tuple[int, int, float]]:
		"""Sorted list of (u, v, weight) with u < v."""
		return list(self._edges)

	def _evaluate(self, mask: SubsetMask) -> float:
		return sum(w for u, v, w in self._edges if (mask >> u ^ mask >> v) & 1)

	def _evaluate_many(self, masks: np.ndarray) -> np.ndarray:
		values = np.zeros(len(masks), dtype=float)
		for u, v, w in self._edges:
			values += w * ((masks >> u ^ masks >> v) & 1)
		return values

	def descriptor(self) -> Dict:
		return {'kind': self.kind, 'params': {'edges': [[u, v, w] for u, v, w in self._edges]}}


class CoverageOracle(SetFunctionOracle):
	"""Weighted coverage function: g(S) = total value of the universe items covered by the sets chosen by S."""
	kind = 'coverage'

	def __init__(self, sets: Sequence[Sequence[Hashable]], universe: Sequence[Hashable], values: Sequence[float]):
		super(CoverageOracle, self).__init__(len(sets))
		self._universe = list(universe)
		self._values = [float(x) for x in values]
		position = {item: ix for ix, item in enumerate(self._universe)}
		self._sets = [sorted(set(s), key=position.get) for s in sets]
		# Per ground element the mask of covered items, and per item the mask of the elements covering it
		self._set_masks = [sum(1 << position[item] for item in s) for s in self._sets]
		self._cover_masks = [0] * len(self._universe)
		for u, s in enumerate(self._sets):
			for item in s:
				self._cover_masks[position[item]] |= 1 << u

	@property
	def universe(self) -> List[Hashable]:
		"""Universe items in the order of their values."""
		return list(self._universe)

	def _evaluate(self, mask: SubsetMask) -> float:
		covered = 0
		for u in iter_bits(mask):
			covered |= self._set_masks[u]
		return sum(self._values[ix] for ix in iter_bits(covered))

	def _evaluate_many(self, masks: np.ndarray) -> np.ndarray:
		values = np.zeros(len(masks), dtype=float)
		for cover, value in zip(self._cover_masks, self._values):
			if cover and value:
				values += value * ((masks & cover) != 0)
		return values

	def descriptor(self) -> Dict:
		return {'kind': self.kind, 'params': {'sets': [list(s) for s in self._sets], 'universe': list(self._universe), 'values': list(self._values)}}


# Hard families ___________________________________________________________________________________


def _hard_labels(descriptor: HardInstanceDescriptor) -> List[str] or None:
	n = descriptor.n
	if descriptor.family == HardFamily.negative_sec5:
		return ['a', 'b'] + [f'a_{i}' for i in range(1, n + 1)] + [f'b_{i}' for i in range(1, n + 1)]
	if descriptor.family == HardFamily.positive_sec61:
		return ['a', 'b'] + [f'c_{i}' for i in range(1, n + 1)]
	return None


def hard_ell_weights(descriptor: HardInstanceDescriptor) -> List[float]:
	"""Returns the linear weights implied by the descriptor."""
	n = descriptor.n
	if descriptor.family == HardFamily.monotone_sec3:
		return [-descriptor.r] * n
	if descriptor.family == HardFamily.negative_sec5:
		return [0.0, 0.0] + [-descriptor.r] * (2 * n)
	return [0.0, 0.0] + [1.0 / 3.0] * n


def _hard_group(descriptor: HardInstanceDescriptor) -> PermutationGroup:
	n = descriptor.n
	size = descriptor.ground_size
	if descriptor.family == HardFamily.monotone_sec3:
		return PermutationGroup.symmetric(n)
	if descriptor.family == HardFamily.negative_sec5:
		block_a = list(range(2, n + 2))
		block_b = list(range(n + 2, 2 * n + 2))
		# a <-> b together with a_i <-> b_i
		swap = transposition(size, 0, 1)
		for u, v in zip(block_a, block_b):
			swap = compose(swap, transposition(size, u, v))
		gens = [swap]
		if n >= 2:
			gens.append(compose(transposition(size, block_a[0], block_a[1]), transposition(size, block_b[0], block_b[1])))
			gens.append(compose(cycle(size, block_a), cycle(size, block_b)))
		return PermutationGroup(size, [[0, 1], block_a + block_b], gens)
	block_c = list(range(2, n + 2))
	gens = [transposition(size, 0, 1), transposition(size, block_c[0], block_c[1]), cycle(size, block_c)]
	return PermutationGroup(size, [[0, 1], block_c], gens)


def make_hard_instance(descriptor: HardInstanceDescriptor) -> InstanceBundle:
	"""Builds the instance, its group and the declared flags for the descriptor."""
	if descriptor.family == HardFamily.monotone_sec3:
		oracle = MonotoneHardOracle(descriptor)
		flags = InstanceFlags(monotone=True, ell_sign=EllSign.nonpos)
	elif descriptor.family == HardFamily.negative_sec5:
		oracle = NegativeHardOracle(descriptor)
		flags = InstanceFlags(monotone=False, ell_sign=EllSign.nonpos)
	else:
		oracle = PositiveHardOracle(descriptor)
		flags = InstanceFlags(monotone=False, ell_sign=EllSign.nonneg)
	ground = GroundSet(descriptor.ground_size, _hard_labels(descriptor))
	instance = RusmInstance(oracle, LinearWeights(hard_ell_weights(descriptor)), ground, flags)
	return InstanceBundle(instance, _hard_group(descriptor), descriptor)


def make_monotone_hard(n: int, r: float) -> InstanceBundle:
	"""Monotone family: g(S) = min{|S|, 1}, l(S) = -r |S|, invariant under all permutations."""
	return make_hard_instance(HardInstanceDescriptor(HardFamily.monotone_sec3, n, r=r))


def make_negative_hard(n: int, t: float, r: float) -> InstanceBundle:
	"""Non-positive regularizer family over {a, b} and the blocks a_i, b_i with the weight -r on every block element."""
	return make_hard_instance(HardInstanceDescriptor(HardFamily.negative_sec5, n, r=r, t=t))


def make_positive_hard(n: int) -> InstanceBundle:
	"""Non-negative regularizer family over {a, b} and the block c_i with the weight 1/3 on every c_i."""
	return make_hard_instance(HardInstanceDescriptor(HardFamily.positive_sec61, n))


# Cut and coverage families _______________________________________________________________________


def make_cut_graph(n: int, edges: Sequence[Sequence]) -> nx.Graph:
	"""Returns the networkx graph with nodes 0..n-1. Edges are (u, v) or (u, v, weight), parallel edges are summed."""
	graph = nx.Graph()
	graph.add_nodes_from(range(n))
	for ix, edge in enumerate(edges):
		u, v = int(edge[0]), int(edge[1])
		w = float(edge[2]) if len(edge) > 2 else 1.0
		if not (0 <= u < n and 0 <= v < n):
			raise ParameterDomainError('edges', f'Edge [{ix}] ({u}, {v}) has a node outside 0..{n - 1}')
		if w < 0 or np.isnan(w):
			raise ParameterDomainError('edges', f'Edge [{ix}] ({u}, {v}) has a negative weight {w}')
		if u == v:
			continue
		if graph.has_edge(u, v):
			graph[u][v]['weight'] += w
		else:
			graph.add_edge(u, v, weight=w)
	return graph


def make_cut_instance(edges: Sequence[Sequence], ell: LinearWeights or Sequence[float]) -> RusmInstance:
	"""Weighted cut instance. The ground set size is the length of ell.
	g is non-negative, submodular and symmetric: g(S) = g(N - S)."""
	if not isinstance(ell, LinearWeights):
		ell = LinearWeights(ell)
	oracle = CutOracle(make_cut_graph(len(ell), edges))
	return RusmInstance(oracle, ell, flags=InstanceFlags(monotone=None, ell_sign=ell.sign))


def make_coverage_instance(sets: Sequence[Sequence[Hashable]], element_values: Mapping[Hashable, float] or None, ell: LinearWeights or Sequence[float]) -> RusmInstance:
	"""Weighted coverage instance: ground element u chooses sets[u]. Missing item values default to 1.
	g is monotone, non-negative and submodular."""
	if not isinstance(ell, LinearWeights):
		ell = LinearWeights(ell)
	if len(sets) != len(ell):
		raise ParameterDomainError('sets', f'Coverage instance needs one set per element: {len(ell)} sets, actual count: {len(sets)}')
	element_values = element_values or {}
	universe = []
	for s in sets:
		for item in s:
			if item not in universe:
				universe.append(item)
	universe.extend(x for x in element_values if x not in universe)
	values = [float(element_values.get(item, 1.0)) for item in universe]
	if any(v < 0 or np.isnan(v) for v in values):
		raise ParameterDomainError('element_values', 'Coverage item values must be non-negative')
	oracle = CoverageOracle(sets, universe, values)
	return RusmInstance(oracle, ell, flags=InstanceFlags(monotone=True, ell_sign=ell.sign))


# Random instances ________________________________________________________________________________


class RandomFamily(Enum):
	"""Families of the random test instances."""
	cut = 1
	coverage = 2


class RandomFamilyParams(object):
	"""Parameters of make_random_instance().
	Weights and values are drawn as multiples of 1/8, so the sums are exact in double precision."""

	def __init__(self, family: RandomFamily or str = RandomFamily.cut, ell_sign: EllSign or str = EllSign.mixed, edge_prob: float = 0.5, universe_size: int = None, set_density: float = 0.3, max_weight: int = 8, ell_scale: float = 1.0):
		if isinstance(family, str):
			family = RandomFamily[family]
		if isinstance(ell_sign, str):
			ell_sign = EllSign[ell_sign]
		self.family: RandomFamily = family
		self.ell_sign: EllSign = ell_sign
		self.edge_prob = edge_prob
		self.universe_size = universe_size
		self.set_density = set_density
		self.max_weight = max_weight
		self.ell_scale = ell_scale

	@classmethod
	def from_dict(cls, params: Mapping or None) -> 'RandomFamilyParams':
		"""Returns the params from a dictionary, missing keys take the defaults."""
		if params is None:
			return cls()
		if isinstance(params, RandomFamilyParams):
			return params
		return cls(**dict(params))


def _random_ell(n: int, params: RandomFamilyParams, rng: np.random.Generator) -> LinearWeights:
	if params.ell_sign == EllSign.zero:
		return LinearWeights.zeros(n)
	if params.ell_sign == EllSign.nonneg:
		ints = rng.integers(0, 9, n)
	elif params.ell_sign == EllSign.nonpos:
		ints = -rng.integers(0, 9, n)
	else:
		ints = rng.integers(-8, 9, n)
	return LinearWeights([params.ell_scale * int(x) / 8.0 for x in ints])


def make_random_instance(n: int, family_params: RandomFamilyParams or Mapping = None, rng: np.random.Generator = None) -> RusmInstance:
	"""Random weighted cut or coverage instance plus random l of the requested sign, reproducible from the rng state.
	Intended for brute-force verifiable sizes n <= 14."""
	assert_min_int(n, 'n', 1, 'make_random_instance')
	params = RandomFamilyParams.from_dict(family_params)
	if rng is None:
		rng = np.random.default_rng()
	if params.family == RandomFamily.cut:
		graph = nx.gnp_random_graph(n, params.edge_prob, seed=int(rng.integers(2 ** 31)))
		weights = rng.integers(1, params.max_weight + 1, graph.number_of_edges())
		edges = [(u, v, int(w) / 8.0) for (u, v), w in zip(sorted(graph.edges), weights)]
		ell = _random_ell(n, params, rng)
		return make_cut_instance(edges, ell)
	size = params.universe_size or 2 * n
	hits = rng.random((n, size)) < params.set_density
	values = rng.integers(1, params.max_weight + 1, size)
	sets = [[int(x) for x in np.flatnonzero(row)] for row in hits]
	ell = _random_ell(n, params, rng)
	return make_coverage_instance(sets, {ix: int(values[ix]) / 8.0 for ix in range(size)}, ell)
