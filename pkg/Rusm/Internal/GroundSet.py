"""See the docstring for the GroundSet class."""

from typing import List, Sequence, Iterator

from .RusmErrors import ParameterDomainError, assert_element_index, assert_min_int
from .Utilities import popcount, iter_bits, bits_to_mask, format_subset

SubsetMask = int
"""Subset of the ground set as a bit-mask: bit u is set if the element u belongs to the subset."""

EMPTY: SubsetMask = 0


class GroundSet(object):
	"""Finite ground set of n elements with optional distinct labels.
	Subsets are plain integer bit-masks, the GroundSet supplies the shorthands |S|, S + u and S - u."""

	def __init__(self, n: int, labels: Sequence[str] = None):
		assert_min_int(n, 'n', 1, 'GroundSet')
		if labels is not None:
			labels = [str(x) for x in labels]
			if len(labels) != n:
				raise ParameterDomainError('labels', f'GroundSet labels must have length {n}, actual length: {len(labels)}')
			if len(set(labels)) != n:
				raise ParameterDomainError('labels', 'GroundSet labels must be distinct')
		self._n = int(n)
		self._labels: List[str] or None = labels
		self._full = (1 << self._n) - 1

	def __len__(self) -> int:
		return self._n

	def __eq__(self, other) -> bool:
		return isinstance(other, GroundSet) and self._n == other._n and self._labels == other._labels

	def __hash__(self):
		return hash((self._n, tuple(self._labels) if self._labels else None))

	def __repr__(self):
		return f'GroundSet(n={self._n})'

	@property
	def n(self) -> int:
		"""Number of elements."""
		return self._n

	@property
	def labels(self) -> List[str] or None:
		"""Element names, or None if the elements are only indexed."""
		return self._labels

	@property
	def full(self) -> SubsetMask:
		"""Mask of the whole ground set."""
		return self._full

	def label(self, u: int) -> str:
		"""Returns the name of the element u: its label, or the index as string."""
		assert_element_index(u, self._n)
		return self._labels[u] if self._labels else str(u)

	def index_of(self, label: str) -> int:
		"""Returns the index of the element with the entered label."""
		if self._labels and label in self._labels:
			return self._labels.index(label)
		raise ParameterDomainError('label', f"Element '{label}' does not exist in the ground set")

	def assert_mask(self, mask: SubsetMask) -> None:
		"""Throws ParameterDomainError if the mask contains bits beyond n."""
		if mask < 0 or mask & ~self._full:
			raise ParameterDomainError('mask', f'Subset mask {mask:#x} has bits outside the ground set of {self._n} elements')

	def mask_of_labels(self, labels: Sequence[str]) -> SubsetMask:
		"""Returns the mask of the elements with the entered labels, e.g. ['a', 'b_1']."""
		return bits_to_mask([self.index_of(x) for x in labels])

	def elements(self, mask: SubsetMask) -> List[int]:
		"""Returns the ascending list of element indexes of the mask."""
		return list(iter_bits(mask))

	def complement(self, mask: SubsetMask) -> SubsetMask:
		"""Returns N minus S."""
		return self._full & ~mask

	def add(self, mask: SubsetMask, u: int) -> SubsetMask:
		"""Returns S + u."""
		assert_element_index(u, self._n)
		return mask | (1 << int(u))

	def remove(self, mask: SubsetMask, u: int) -> SubsetMask:
		"""Returns S - u."""
		assert_element_index(u, self._n)
		return mask & ~(1 << int(u))

	@staticmethod
	def contains(mask: SubsetMask, u: int) -> bool:
		"""Returns True if u belongs to S."""
		return bool(mask >> u & 1)

	@staticmethod
	def cardinality(mask: SubsetMask) -> int:
		"""Returns |S|."""
		return popcount(mask)

	def singletons(self) -> Iterator[SubsetMask]:
		"""Yields the masks {u} for u = 0..n-1."""
		for u in range(self._n):
			yield 1 << u

	def format(self, mask: SubsetMask) -> str:
		"""Returns user-readable subset string."""
		return format_subset(mask, self._labels)
