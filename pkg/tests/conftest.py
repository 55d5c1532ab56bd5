"""Shared fixtures: seeded random instance corpora and small hand-made instances."""

from typing import List

import numpy as np
import pytest

from Rusm.Internal.SetFunctions import RusmInstance, TableOracle, LinearWeights, InstanceFlags
from Rusm.Internal.Instances import make_random_instance, make_cut_instance


def random_corpus(count: int, sizes: range, ell_sign: str, seed: int = 2026) -> List[RusmInstance]:
	"""Cut and coverage instances alternating, sizes cycling over the range, reproducible from the seed."""
	rng = np.random.default_rng(seed)
	sizes = list(sizes)
	result = []
	for ix in range(count):
		family = 'cut' if ix % 2 == 0 else 'coverage'
		result.append(make_random_instance(sizes[ix % len(sizes)], {'family': family, 'ell_sign': ell_sign}, rng))
	return result


@pytest.fixture
def rng() -> np.random.Generator:
	return np.random.default_rng(12345)


@pytest.fixture
def edge_cut() -> RusmInstance:
	"""Single unit edge between elements 0 and 1, l = 0."""
	return make_cut_instance([(0, 1, 1.0)], [0.0, 0.0])


@pytest.fixture
def supermodular_instance() -> RusmInstance:
	"""g(S) = |S|^2 on 3 elements: non-negative and monotone, but not submodular."""
	values = [float(bin(mask).count('1') ** 2) for mask in range(8)]
	return RusmInstance(TableOracle(values), LinearWeights.zeros(3), flags=InstanceFlags(submodular=False, monotone=True))


@pytest.fixture
def corpus():
	"""Factory fixture of the random corpora, see random_corpus()."""
	return random_corpus
