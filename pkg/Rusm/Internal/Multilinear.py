"""Marginals, independent subsampling and the multilinear extension (exact and Monte-Carlo)."""

import math
from fractions import Fraction
from typing import Sequence, Tuple, List

import numpy as np

from .GroundSet import SubsetMask
from .SetFunctions import SetFunctionOracle, product_table, tabulate
from .RusmErrors import ParameterDomainError, assert_element_index, assert_probability, assert_exact_limit, assert_min_int
from .Utilities import iter_bits, popcount

DEFAULT_EXACT_LIMIT = 20
TOLERANCE = 1e-9


def distribution_vector(x: Sequence[float], n: int) -> np.ndarray:
	"""Validates and returns x in [0, 1]^n as numpy vector."""
	x = np.asarray(x, dtype=float)
	if x.ndim != 1 or len(x) != n:
		raise ParameterDomainError('x', f'Distribution vector must have {n} coordinates, actual shape: {x.shape}')
	if np.any(np.isnan(x)) or np.any(x < 0.0) or np.any(x > 1.0):
		raise ParameterDomainError('x', f'Every coordinate of the distribution vector must be in [0, 1], actual value: {x.tolist()}')
	return x


def indicator_vector(mask: SubsetMask, n: int) -> np.ndarray:
	"""Returns the characteristic vector of S."""
	return np.array([1.0 if mask >> u & 1 else 0.0 for u in range(n)])


def marginal(f: SetFunctionOracle, u: int, mask: SubsetMask) -> float:
	"""Returns f(u | S) = f(S + u) - f(S). Exactly 2 oracle queries, also for u in S."""
	assert_element_index(u, f.n, 'marginal')
	return f.evaluate(mask | (1 << int(u))) - f.evaluate(mask)


def subsample(mask: SubsetMask, p: float, rng: np.random.Generator) -> SubsetMask:
	"""Returns the random subset S(p): every element of S is kept independently with probability p.
	One uniform draw is consumed per element of S, in ascending element order."""
	assert_probability(p, 'p', 'subsample')
	elements = list(iter_bits(mask))
	if not elements:
		return 0
	draws = rng.random(len(elements))
	result = 0
	for u, draw in zip(elements, draws):
		if draw < p:
			result |= 1 << u
	return result


def submask_list(mask: SubsetMask) -> List[int]:
	"""Returns the submasks of S in the doubling order matching product_table() of S's elements."""
	masks = [0]
	for u in iter_bits(mask):
		bit = 1 << u
		masks = masks + [m | bit for m in masks]
	return masks


def evaluate_masks(f: SetFunctionOracle, masks: List[int]) -> np.ndarray:
	"""Evaluates the list of masks, vectorized when the masks fit into int64."""
	if f.n <= 62:
		return f.evaluate_many(np.array(masks, dtype=np.int64))
	return np.array([f.evaluate(m) for m in masks], dtype=float)


def subsample_expectation(f: SetFunctionOracle, mask: SubsetMask, p: float, exact_limit: int = DEFAULT_EXACT_LIMIT) -> float:
	"""Returns E[f(S(p))] by enumerating the 2^|S| subsets of S weighted p^|R| (1-p)^(|S|-|R|)."""
	assert_probability(p, 'p', 'subsample_expectation')
	size = popcount(mask)
	assert_exact_limit(size, exact_limit, 'subsample_expectation')
	probs = product_table([p] * size)
	values = evaluate_masks(f, submask_list(mask))
	return float(probs @ values)


def subsample_expectation_exact(f: SetFunctionOracle, mask: SubsetMask, p: float, exact_limit: int = DEFAULT_EXACT_LIMIT) -> Fraction:
	"""Returns E[f(S(p))] in rational arithmetic, exact for the binary values of p and of f."""
	assert_probability(p, 'p', 'subsample_expectation_exact')
	size = popcount(mask)
	assert_exact_limit(size, exact_limit, 'subsample_expectation_exact')
	keep = Fraction(p)
	drop = 1 - keep
	weights = [keep ** k * drop ** (size - k) for k in range(size + 1)]
	masks = submask_list(mask)
	values = evaluate_masks(f, masks)
	return sum((weights[popcount(m)] * Fraction(float(v)) for m, v in zip(masks, values)), Fraction(0))


def multilinear_exact(f: SetFunctionOracle, x: Sequence[float], exact_limit: int = DEFAULT_EXACT_LIMIT, table: np.ndarray = None) -> float:
	"""Returns F(x) = sum over S of f(S) * prod_{u in S} x_u * prod_{u not in S} (1 - x_u).
	Costs exactly 2^n queries, or none if the value table is entered.
	For a 0/1 vector x the result equals f(S) bit-exactly."""
	n = f.n
	assert_exact_limit(n, exact_limit, 'multilinear_exact')
	x = distribution_vector(x, n)
	if table is None:
		table = tabulate(f, exact_limit)
	elif len(table) != 1 << n:
		raise ParameterDomainError('table', f'Value table must have 2^{n} entries, actual count: {len(table)}')
	return float(product_table(x) @ table)


def random_set_masks(x: np.ndarray, num_samples: int, rng: np.random.Generator) -> List[int]:
	"""Draws num_samples masks of RSet(x), row by row from one uniform matrix."""
	hits = rng.random((num_samples, len(x))) < x
	if len(x) <= 62:
		weights = np.left_shift(np.int64(1), np.arange(len(x), dtype=np.int64))
		return [int(m) for m in hits.astype(np.int64) @ weights]
	return [sum(1 << int(u) for u in np.flatnonzero(row)) for row in hits]


def mean_and_stderr(values: Sequence[float]) -> Tuple[float, float]:
	"""Returns the sample mean and the sample standard deviation divided by sqrt(count).
	A single value has stderr 0."""
	values = np.asarray(values, dtype=float)
	mean = float(np.mean(values))
	if len(values) < 2:
		return mean, 0.0
	return mean, float(np.std(values, ddof=1) / math.sqrt(len(values)))


def multilinear_mc(f: SetFunctionOracle, x: Sequence[float], num_samples: int, rng: np.random.Generator) -> Tuple[float, float]:
	"""Monte-Carlo estimate of F(x): returns (estimate, stderr) over num_samples samples of RSet(x)."""
	assert_min_int(num_samples, 'num_samples', 1, 'multilinear_mc')
	x = distribution_vector(x, f.n)
	masks = random_set_masks(x, num_samples, rng)
	return mean_and_stderr(evaluate_masks(f, masks))


def sampling_lemma_values(f: SetFunctionOracle, mask: SubsetMask, p: float, trials: int = 0, rng: np.random.Generator = None, exact_limit: int = DEFAULT_EXACT_LIMIT) -> Tuple[float, float, float]:
	"""Returns (E[f(A_p)], (1-p) f(empty) + p f(A), stderr).
	With trials == 0 the expectation is exact and the stderr is 0."""
	assert_probability(p, 'p', 'sampling_lemma_check')
	rhs = (1.0 - p) * f.evaluate(0) + p * f.evaluate(mask)
	if trials == 0:
		return subsample_expectation(f, mask, p, exact_limit), rhs, 0.0
	assert_min_int(trials, 'trials', 1, 'sampling_lemma_check')
	if rng is None:
		raise ParameterDomainError('rng', 'Sampled check requires a random generator')
	values = [f.evaluate(subsample(mask, p, rng)) for _ in range(trials)]
	mean, stderr = mean_and_stderr(values)
	return mean, rhs, stderr


def sampling_lemma_check(f: SetFunctionOracle, mask: SubsetMask, p: float, trials: int, rng: np.random.Generator = None, exact_limit: int = DEFAULT_EXACT_LIMIT) -> bool:
	"""Checks E[f(A_p)] >= (1-p) f(empty) + p f(A) for a non-negative submodular f.
	trials > 0: passes iff the empirical mean is >= RHS - 4 stderr.
	trials == 0: both sides in rational arithmetic, passes iff the expectation is >= RHS with zero tolerance."""
	if trials == 0:
		assert_probability(p, 'p', 'sampling_lemma_check')
		keep = Fraction(p)
		rhs = (1 - keep) * Fraction(float(f.evaluate(0))) + keep * Fraction(float(f.evaluate(mask)))
		return subsample_expectation_exact(f, mask, p, exact_limit) >= rhs
	lhs, rhs, stderr = sampling_lemma_values(f, mask, p, trials, rng, exact_limit)
	return lhs >= rhs - 4.0 * stderr - TOLERANCE
