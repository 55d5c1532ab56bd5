"""Non-oblivious local search on the auxiliary function h(S) = E[g(S(beta))] + beta (1 + beta) l(S).

The run filters the ground set to the elements with alpha(beta) g(u) + beta l(u) >= 0,
searches an approximate local maximum T of h with add / remove moves of gain at least delta,
outputs the independent beta-subsample of T (or the empty set if its value is negative),
and finally returns the best of that output, the empty set and all the singletons."""

import math
from enum import Enum
from typing import Dict, List

import numpy as np

from .GroundSet import SubsetMask
from .SetFunctions import RusmInstance, CachedOracle, SetFunctionOracle, additive_table, product_table
from .Multilinear import subsample, subsample_expectation, submask_list, evaluate_masks, DEFAULT_EXACT_LIMIT
from .SolverReport import SolverReport, MoveRecord, MoveKind
from .ContextManagers import QueryCountScope
from .RunLogger import RunLogger
from .RusmErrors import ParameterDomainError, assert_in_range, assert_min_int, assert_exact_limit
from .Utilities import iter_bits, popcount
from . import Conversions

DEFAULT_AUX_SAMPLES = 1000


class MarginalMode(Enum):
	"""Evaluation of the expected marginals: exact enumeration of the subsets of T, or sampling."""
	exact = 1
	sampled = 2


class ExitReason(Enum):
	"""Why the local search stopped."""
	local_optimum = 1
	iteration_cap = 2
	zero_function = 3
	empty_ground = 4


def alpha_of_beta(beta: float) -> float:
	"""alpha(beta) = beta (1 - beta) / (1 + beta), the g coefficient guaranteed for the l coefficient beta."""
	return beta * (1.0 - beta) / (1.0 + beta)


def default_sample_count(n: int, epsilon: float, beta: float) -> int:
	"""Sample count k = ceil(128 n^4 eps^-2 beta^2 ln(10 n^4 / eps)) per marginal estimate."""
	return int(math.ceil(128.0 * n ** 4 / epsilon ** 2 * beta ** 2 * math.log(10.0 * n ** 4 / epsilon)))


def default_iteration_cap(n: int, epsilon: float) -> int:
	"""Iteration cap ceil(4 n^2 / eps) + 1."""
	return int(math.ceil(4.0 * n * n / epsilon)) + 1


class LsConfig(object):
	"""Configuration of the local search.
	:param beta: l coefficient in (0, 1]
	:param epsilon: accuracy, default 0.05 * alpha(beta). With guarantee_mode, it must be in (0, alpha(beta))
	:param marginal_mode: exact or sampled expected marginals
	:param sample_count_override: sampled mode: samples per marginal instead of the default count
	:param iteration_cap_override: replaces the default iteration cap
	:param seed: seed of the generator used when no generator is entered to local_search()"""

	def __init__(self, beta: float = 0.5, epsilon: float = None, marginal_mode: MarginalMode or str = MarginalMode.exact, sample_count_override: int = None,
				iteration_cap_override: int = None, seed: int = None, guarantee_mode: bool = True, exact_limit: int = DEFAULT_EXACT_LIMIT):
		if isinstance(marginal_mode, str):
			value = Conversions.str_to_simple_scalar_enum(marginal_mode, MarginalMode, case_sensitive=False)
			if value is None:
				raise ValueError(f"Unknown marginal mode '{marginal_mode}'. Valid values: {', '.join(x.name for x in MarginalMode)}")
			marginal_mode = value
		self.beta = beta
		self.epsilon = epsilon
		self.marginal_mode: MarginalMode = marginal_mode
		self.sample_count_override = sample_count_override
		self.iteration_cap_override = iteration_cap_override
		self.seed = seed
		self.guarantee_mode = guarantee_mode
		self.exact_limit = exact_limit
		if self.epsilon is None:
			alpha = alpha_of_beta(beta) if isinstance(beta, (int, float)) else 0.0
			self.epsilon = 0.05 * alpha if alpha > 0 else 0.05
		self.validate()

	@property
	def alpha(self) -> float:
		"""alpha(beta) of the configured beta."""
		return alpha_of_beta(self.beta)

	def validate(self) -> None:
		"""Throws ParameterDomainError for parameters outside their domain."""
		assert_in_range(self.beta, 'beta', 0.0, 1.0, low_open=True, context='LsConfig')
		if self.guarantee_mode:
			assert_in_range(self.epsilon, 'epsilon', 0.0, self.alpha, low_open=True, high_open=True, context='LsConfig (guarantee mode)')
		else:
			assert_in_range(self.epsilon, 'epsilon', 0.0, math.inf, low_open=True, high_open=True, context='LsConfig')
		if self.sample_count_override is not None:
			assert_min_int(self.sample_count_override, 'sample_count_override', 1, 'LsConfig')
		if self.iteration_cap_override is not None:
			assert_min_int(self.iteration_cap_override, 'iteration_cap_override', 1, 'LsConfig')
		assert_min_int(self.exact_limit, 'exact_limit', 0, 'LsConfig')

	def __repr__(self):
		return f'LsConfig(beta={self.beta}, epsilon={self.epsilon:.6g}, marginal_mode={self.marginal_mode.name})'


class LsState(object):
	"""Mutable state of one local-search run."""

	def __init__(self, t: SubsetMask, delta: float):
		self.t: SubsetMask = t
		self.delta: float = delta
		self.iteration: int = 0
		self.omega: Dict[int, float] = {}


def _singleton_values(g: SetFunctionOracle) -> np.ndarray:
	return evaluate_masks(g, [1 << u for u in range(g.n)])


def reduce_ground_set(instance: RusmInstance, beta: float) -> SubsetMask:
	"""Returns the mask of the elements u with alpha(beta) g({u}) + beta l(u) >= 0. Costs n queries."""
	assert_in_range(beta, 'beta', 0.0, 1.0, low_open=True, context='reduce_ground_set')
	return _reduce(_singleton_values(instance.g), instance.ell.weights, beta)


def _reduce(singles: np.ndarray, weights: np.ndarray, beta: float) -> SubsetMask:
	alpha = alpha_of_beta(beta)
	mask = 0
	for u in range(len(weights)):
		if alpha * singles[u] + beta * weights[u] >= 0:
			mask |= 1 << u
	return mask


def aux_value_h(instance: RusmInstance, mask: SubsetMask, beta: float, mode: MarginalMode = MarginalMode.exact, rng: np.random.Generator = None, samples: int = DEFAULT_AUX_SAMPLES, exact_limit: int = DEFAULT_EXACT_LIMIT) -> float:
	"""Returns h(S) = E[g(S(beta))] + beta (1 + beta) l(S).
	Exact mode enumerates the 2^|S| subsets of S, the sampled mode averages g over the samples."""
	assert_in_range(beta, 'beta', 0.0, 1.0, low_open=True, context='aux_value_h')
	linear = beta * (1.0 + beta) * instance.ell_value(mask)
	if mode == MarginalMode.exact:
		assert_exact_limit(popcount(mask), exact_limit, 'aux_value_h')
		return subsample_expectation(instance.g, mask, beta, exact_limit) + linear
	assert_min_int(samples, 'samples', 1, 'aux_value_h')
	if rng is None:
		raise ParameterDomainError('rng', 'Sampled mode of aux_value_h requires a random generator')
	values = [instance.g.evaluate(subsample(mask, beta, rng)) for _ in range(samples)]
	return float(np.mean(values)) + linear


class _LocalSearchRun(object):
	"""One run of the local search. All the g queries go through a memoizing wrapper,
	so the counted queries are the distinct sets asked."""

	def __init__(self, instance: RusmInstance, config: LsConfig, rng: np.random.Generator, logger: RunLogger or None):
		self.instance = instance
		self.config = config
		self.rng = rng
		self.logger = logger
		self.g = CachedOracle(instance.g)
		self.w = instance.ell.weights
		self.beta = config.beta
		self.lin = config.beta * (1.0 + config.beta)
		self.sample_count: int or None = None

	def _log(self, info: str, message: str) -> None:
		if self.logger:
			self.logger.info(None, None, info, message)

	def omega(self, t: SubsetMask, u: int) -> float:
		"""beta * E[g(u | T(beta) - u)]."""
		bit = 1 << u
		rest = t & ~bit
		if self.config.marginal_mode == MarginalMode.exact:
			assert_exact_limit(popcount(rest), self.config.exact_limit, 'local search exact marginal')
			masks = submask_list(rest)
			gains = evaluate_masks(self.g, [m | bit for m in masks]) - evaluate_masks(self.g, masks)
			return self.beta * float(product_table([self.beta] * popcount(rest)) @ gains)
		total = 0.0
		for _ in range(self.sample_count):
			r = subsample(rest, self.beta, self.rng)
			total += self.g.evaluate(r | bit) - self.g.evaluate(r)
		return self.beta * total / self.sample_count

	def find_move(self, state: LsState, ground: SubsetMask) -> MoveRecord or None:
		"""Add moves first, then remove moves, each scanned in ascending element order. The first hit wins."""
		t = state.t
		for u in iter_bits(ground & ~t):
			om = self.omega(t, u)
			state.omega[u] = om
			gain = om + self.lin * self.w[u]
			if gain >= state.delta:
				return MoveRecord(state.iteration, MoveKind.add, u, gain)
		for u in iter_bits(t):
			om = self.omega(t, u)
			state.omega[u] = om
			gain = -(om + self.lin * self.w[u])
			if gain >= state.delta:
				return MoveRecord(state.iteration, MoveKind.remove, u, gain)
		return None

	def f_value(self, mask: SubsetMask) -> float:
		return self.g.evaluate(mask) + self.instance.ell_value(mask)

	def run(self) -> SolverReport:
		instance = self.instance
		n = instance.n
		singles = _singleton_values(self.g)
		g_empty = self.g.evaluate(0)
		reduced = _reduce(singles, self.w, self.beta)
		n_red = popcount(reduced)
		positive = sum(1 << u for u in iter_bits(reduced) if self.w[u] > 0)
		self._log('Reduction', f'{n_red} of {n} elements kept: {instance.ground.format(reduced)}')

		report = SolverReport('ls', 0, 0.0, 0.0, seed=self.config.seed)
		report.reduced_set = reduced
		report.iterations = 0
		moves: List[MoveRecord] = []
		top = max([g_empty] + [singles[u] for u in iter_bits(reduced)])
		if n_red == 0:
			exit_reason = ExitReason.empty_ground
			t = 0
			output = 0
		elif top == 0:
			# Non-negative submodular g with zero value on the empty set and on all the singletons is zero
			exit_reason = ExitReason.zero_function
			t = positive
			output = positive
		else:
			cap = self.config.iteration_cap_override or default_iteration_cap(n_red, self.config.epsilon)
			if self.config.marginal_mode == MarginalMode.sampled:
				self.sample_count = self.config.sample_count_override or default_sample_count(n_red, self.config.epsilon, self.beta)
				report.sample_count = self.sample_count
			state = LsState(positive, self.config.epsilon / (2.0 * n_red) * top)
			assert state.delta > 0, 'Threshold delta must be positive after the zero-function shortcut'
			report.delta = state.delta
			report.iteration_cap = cap
			exit_reason = ExitReason.iteration_cap
			while state.iteration < cap:
				state.iteration += 1
				move = self.find_move(state, reduced)
				if move is None:
					exit_reason = ExitReason.local_optimum
					break
				state.t = state.t | (1 << move.element) if move.kind == MoveKind.add else state.t & ~(1 << move.element)
				moves.append(move)
				self._log(f'Move {state.iteration}', f'{move.kind.name} {instance.ground.label(move.element)}, gain={move.gain:.6g}')
			report.iterations = state.iteration
			t = state.t
			t_hat = subsample(t, self.beta, self.rng)
			output = t_hat if self.f_value(t_hat) >= 0 else 0
		self._log('Exit', f'{exit_reason.name}, T = {instance.ground.format(t)}')

		best = output
		best_value = self.f_value(output)
		for candidate in [0] + [1 << u for u in range(n)]:
			value = self.f_value(candidate)
			if value > best_value:
				best, best_value = candidate, value
		report.output_set = best
		report.g_value = self.g.evaluate(best)
		report.ell_value = instance.ell_value(best)
		report.exit_reason = exit_reason.name
		report.local_optimum = t
		report.move_trace = moves
		return report

	def fill_expectations(self, report: SolverReport) -> None:
		"""Exact E[f(T(beta))] and the exact expected value of the final output, when T is small enough."""
		t = report.local_optimum
		reason = report.exit_reason
		if reason in (ExitReason.zero_function.name, ExitReason.empty_ground.name):
			report.expected_subsample_value = self.f_value(t)
			report.expected_value = report.total
			return
		if self.config.marginal_mode != MarginalMode.exact or popcount(t) > self.config.exact_limit:
			return
		masks = submask_list(t)
		values = evaluate_masks(self.g, masks) + additive_table([self.w[u] for u in iter_bits(t)])
		probs = product_table([self.beta] * popcount(t))
		floor = max(self.f_value(m) for m in [0] + [1 << u for u in range(self.instance.n)])
		report.expected_subsample_value = float(probs @ values)
		report.expected_value = float(probs @ np.maximum(values, floor))


def local_search(instance: RusmInstance, config: LsConfig = None, rng: np.random.Generator = None, logger: RunLogger = None) -> SolverReport:
	"""Runs the full local-search pipeline and returns its report.
	The report's oracle_queries counts the distinct g queries of the run itself, excluding the exact expectations
	added afterwards (exact marginal mode, |T| <= exact_limit)."""
	config = config or LsConfig()
	if rng is None:
		rng = np.random.default_rng(config.seed)
	run = _LocalSearchRun(instance, config, rng, logger)
	with QueryCountScope(instance.g) as scope:
		report = run.run()
	report.oracle_queries = scope.count
	run.fill_expectations(report)
	return report
