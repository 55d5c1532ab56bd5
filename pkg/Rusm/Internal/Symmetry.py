"""Permutation groups given by their orbits, and the orbit-averaging symmetrization of distribution vectors."""

from typing import List, Sequence, Tuple

import numpy as np

from .GroundSet import SubsetMask
from .Multilinear import distribution_vector
from .RusmErrors import GroupStructureError, assert_min_int
from .Utilities import iter_bits


class PermutationGroup(object):
	"""Group of permutations over the ground set represented by its orbit partition.
	Symmetrization only needs the orbit means, so the group elements are never enumerated.
	Optional generators are explicit permutations used to check invariance of g and l.
	Paired blocks (e.g. swapping a <-> b together with a_i <-> b_i) are a single orbit."""

	def __init__(self, n: int, orbits: Sequence[Sequence[int]], generators: Sequence[Sequence[int]] = None):
		assert_min_int(n, 'n', 1, 'PermutationGroup')
		orbits = [sorted(int(u) for u in orbit) for orbit in orbits]
		seen = [u for orbit in orbits for u in orbit]
		if any(len(orbit) == 0 for orbit in orbits):
			raise GroupStructureError('Group orbits must be non-empty')
		if sorted(seen) != list(range(n)):
			raise GroupStructureError(f'Group orbits must partition the elements 0..{n - 1}, actual orbits: {orbits}')
		self._n = n
		self._orbits: List[List[int]] = orbits
		self._orbit_of = np.zeros(n, dtype=int)
		for ix, orbit in enumerate(orbits):
			self._orbit_of[orbit] = ix
		self._generators: List[Tuple[int, ...]] = []
		for gen in generators or []:
			gen = tuple(int(x) for x in gen)
			if sorted(gen) != list(range(n)):
				raise GroupStructureError(f'Group generator must be a permutation of 0..{n - 1}, actual value: {gen}')
			if any(self._orbit_of[gen[u]] != self._orbit_of[u] for u in range(n)):
				raise GroupStructureError(f'Group generator {gen} moves an element out of its orbit')
			self._generators.append(gen)

	def __repr__(self):
		return f'PermutationGroup(n={self._n}, orbits={len(self._orbits)}, generators={len(self._generators)})'

	@property
	def n(self) -> int:
		"""Size of the ground set the group acts on."""
		return self._n

	@property
	def orbits(self) -> List[List[int]]:
		"""Orbit partition of the ground set, each orbit sorted ascending."""
		return [list(x) for x in self._orbits]

	@property
	def generators(self) -> List[Tuple[int, ...]]:
		"""Explicit permutations of the group, as tuples of images."""
		return list(self._generators)

	def orbit_index(self, u: int) -> int:
		"""Returns the index of the orbit containing u."""
		return int(self._orbit_of[u])

	@staticmethod
	def apply(perm: Sequence[int], mask: SubsetMask) -> SubsetMask:
		"""Returns sigma(S) = {sigma(u) : u in S}."""
		result = 0
		for u in iter_bits(mask):
			result |= 1 << perm[u]
		return result

	@staticmethod
	def apply_vector(perm: Sequence[int], x: Sequence[float]) -> np.ndarray:
		"""Returns sigma(x) with sigma(x)[sigma(u)] = x[u]."""
		x = np.asarray(x, dtype=float)
		result = np.empty_like(x)
		result[np.asarray(perm, dtype=int)] = x
		return result

	def symmetrize(self, x: Sequence[float]) -> np.ndarray:
		"""Returns the expected vector of sigma(x) for uniformly random sigma of the group:
		each coordinate is replaced by the mean over its orbit."""
		x = distribution_vector(x, self._n)
		result = np.empty(self._n, dtype=float)
		for orbit in self._orbits:
			result[orbit] = np.mean(x[orbit])
		return result

	@classmethod
	def symmetric(cls, n: int) -> 'PermutationGroup':
		"""Full symmetric group: one orbit, generated by a transposition and the n-cycle."""
		gens = []
		if n >= 2:
			gens.append(transposition(n, 0, 1))
			gens.append(cycle(n, list(range(n))))
		return cls(n, [list(range(n))], gens)

	@classmethod
	def trivial(cls, n: int) -> 'PermutationGroup':
		"""Group containing only the identity: every element is its own orbit."""
		return cls(n, [[u] for u in range(n)])


def transposition(n: int, u: int, v: int) -> Tuple[int, ...]:
	"""Permutation swapping u and v."""
	perm = list(range(n))
	perm[u], perm[v] = v, u
	return tuple(perm)


def cycle(n: int, elements: Sequence[int]) -> Tuple[int, ...]:
	"""Permutation mapping each listed element to the next one, the last to the first."""
	perm = list(range(n))
	for ix, u in enumerate(elements):
		perm[u] = elements[(ix + 1) % len(elements)]
	return tuple(perm)


def compose(first: Sequence[int], second: Sequence[int]) -> Tuple[int, ...]:
	"""Returns the permutation applying first, then second."""
	return tuple(second[first[u]] for u in range(len(first)))


def symmetrize(x: Sequence[float], group: PermutationGroup) -> np.ndarray:
	"""Returns the orbit-averaged vector of x under the group. Idempotent, preserves the sum of x."""
	return group.symmetrize(x)
