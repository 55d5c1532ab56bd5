import math

import numpy as np
import pytest

from Rusm.Internal.LocalSearch import LsConfig, MarginalMode, ExitReason, alpha_of_beta, default_iteration_cap, default_sample_count, reduce_ground_set, aux_value_h, local_search
from Rusm.Internal.SolverReport import MoveKind
from Rusm.Internal.BruteForce import brute_force_opt
from Rusm.Internal.SetFunctions import RusmInstance, CallableOracle, LinearWeights
from Rusm.Internal.Instances import make_monotone_hard
from Rusm.Internal.Utilities import iter_bits
from Rusm.Internal.RusmErrors import ParameterDomainError


def test_alpha_of_beta():
	assert alpha_of_beta(0.5) == pytest.approx(1.0 / 6.0)
	assert alpha_of_beta(1.0) == 0.0


def test_default_counts():
	assert default_iteration_cap(6, 0.25) == 577
	expected = math.ceil(128 * 3 ** 4 / 0.1 ** 2 * 0.25 * math.log(10 * 3 ** 4 / 0.1))
	assert default_sample_count(3, 0.1, 0.5) == expected


def test_config_defaults():
	config = LsConfig()
	assert config.beta == 0.5
	assert config.epsilon == pytest.approx(0.05 / 6.0)
	assert config.marginal_mode == MarginalMode.exact
	assert LsConfig(marginal_mode='SAMPLED').marginal_mode == MarginalMode.sampled


@pytest.mark.parametrize('kwargs', [
	{'beta': 0.0},
	{'beta': 1.2},
	{'beta': 0.5, 'epsilon': 0.2},
	{'beta': 0.5, 'epsilon': 0.0},
	{'sample_count_override': 0},
	{'iteration_cap_override': 0},
])
def test_config_domain(kwargs):
	with pytest.raises(ParameterDomainError):
		LsConfig(**kwargs)


def test_config_outside_guarantee_mode():
	config = LsConfig(beta=0.5, epsilon=0.2, guarantee_mode=False)
	assert config.epsilon == 0.2
	with pytest.raises(ValueError):
		LsConfig(marginal_mode='approximate')


def test_reduce_ground_set():
	instance = make_monotone_hard(4, 0.5).instance
	# alpha(1/2) * 1 - 1/2 * 1/2 < 0 for every element
	assert reduce_ground_set(instance, 0.5) == 0
	instance = make_monotone_hard(4, 0.1).instance
	assert reduce_ground_set(instance, 0.5) == 0b1111


def test_aux_value(edge_cut):
	assert aux_value_h(edge_cut, 0, 0.5) == 0.0
	# beta = 1 keeps the whole set: h(S) = g(S) + 2 l(S)
	instance = RusmInstance(edge_cut.g, LinearWeights([0.25, -0.5]))
	assert aux_value_h(instance, 0b01, 1.0) == pytest.approx(1.5)
	assert aux_value_h(instance, 0b11, 0.5) == pytest.approx(0.5 + 0.75 * -0.25)
	with pytest.raises(ParameterDomainError):
		aux_value_h(instance, 0b11, 0.5, MarginalMode.sampled)
	sampled = aux_value_h(instance, 0b11, 0.5, MarginalMode.sampled, rng=np.random.default_rng(1), samples=4000)
	assert sampled == pytest.approx(0.5 + 0.75 * -0.25, abs=0.05)


def test_zero_function_with_negative_ell_returns_empty():
	instance = RusmInstance(CallableOracle(4, lambda m: 0.0), LinearWeights([-1.0] * 4))
	report = local_search(instance, LsConfig(seed=0))
	assert report.output_set == 0
	assert report.total == 0.0
	assert report.exit_reason == ExitReason.empty_ground.name


def test_zero_function_keeps_the_positive_weights():
	instance = RusmInstance(CallableOracle(4, lambda m: 0.0), LinearWeights([0.5, -1.0, 0.25, 0.0]))
	report = local_search(instance, LsConfig(seed=0))
	assert report.exit_reason == ExitReason.zero_function.name
	assert report.output_set == 0b0101
	assert report.move_trace == []
	assert report.expected_value == 0.75


def test_single_edge_guarantee(edge_cut):
	config = LsConfig(beta=0.5, epsilon=0.05)
	report = local_search(edge_cut, config, rng=np.random.default_rng(0))
	assert report.exit_reason == ExitReason.local_optimum.name
	assert report.expected_value >= (config.alpha - config.epsilon) * 1.0
	assert report.total >= 0.0


def _replay_moves(instance, report, beta):
	"""Replays the move trace from the positive-weight start and checks every gain against h."""
	t = sum(1 << u for u in iter_bits(report.reduced_set) if instance.ell[u] > 0)
	for move in report.move_trace:
		nxt = t | (1 << move.element) if move.kind == MoveKind.add else t & ~(1 << move.element)
		gain = aux_value_h(instance, nxt, beta) - aux_value_h(instance, t, beta)
		assert move.gain == pytest.approx(gain, abs=1e-9)
		assert move.gain >= report.delta - 1e-12
		t = nxt
	return t


def test_moves_are_improving_and_stop_at_a_local_optimum(corpus):
	beta = 0.5
	for instance in corpus(16, range(2, 9), 'mixed', seed=7):
		report = local_search(instance, LsConfig(beta=beta), rng=np.random.default_rng(3))
		if report.exit_reason in (ExitReason.zero_function.name, ExitReason.empty_ground.name):
			assert report.move_trace == []
			continue
		assert report.iterations <= report.iteration_cap
		final = _replay_moves(instance, report, beta)
		assert final == report.local_optimum
		assert report.exit_reason == ExitReason.local_optimum.name
		h = aux_value_h(instance, final, beta)
		for u in iter_bits(report.reduced_set):
			assert aux_value_h(instance, final ^ (1 << u), beta) - h < report.delta + 1e-9


def test_output_is_at_least_empty_and_singletons(corpus):
	for instance in corpus(12, range(2, 9), 'nonpos', seed=8):
		report = local_search(instance, LsConfig(beta=0.7), rng=np.random.default_rng(1))
		floor = max([instance.value(0)] + [instance.value(1 << u) for u in range(instance.n)])
		assert report.total >= floor
		assert report.total == instance.value(report.output_set)


def _check_guarantee(instances, betas):
	for instance in instances:
		for beta in betas:
			config = LsConfig(beta=beta)
			report = local_search(instance, config, rng=np.random.default_rng(5))
			_, rhs = brute_force_opt(instance, config.alpha - config.epsilon, beta - config.epsilon)
			assert report.expected_value is not None
			assert report.expected_value >= rhs - 1e-9
			assert report.expected_subsample_value <= report.expected_value + 1e-12


def test_expected_guarantee(corpus):
	_check_guarantee(corpus(8, range(4, 8), 'mixed', seed=21), [0.3, 0.5, 0.7])


@pytest.mark.slow
def test_expected_guarantee_full_corpus(corpus):
	_check_guarantee(corpus(20, range(4, 11), 'mixed', seed=22), [0.3, 0.5, 0.7])


def test_iteration_cap_override(corpus):
	instance = corpus(1, range(8, 9), 'nonneg', seed=4)[0]
	report = local_search(instance, LsConfig(beta=0.5, iteration_cap_override=1), rng=np.random.default_rng(0))
	assert report.iteration_cap == 1
	assert report.iterations <= 1


def test_sampled_mode_is_reproducible(corpus):
	instance = corpus(1, range(6, 7), 'mixed', seed=9)[0]
	config = LsConfig(beta=0.5, marginal_mode='sampled', sample_count_override=40, seed=17)
	first = local_search(instance, config)
	second = local_search(instance, config)
	assert first.to_json() == second.to_json()
	if first.exit_reason in (ExitReason.local_optimum.name, ExitReason.iteration_cap.name):
		assert first.sample_count == 40
	assert first.expected_value is None or first.exit_reason in (ExitReason.zero_function.name, ExitReason.empty_ground.name)


def test_query_count_covers_only_the_run(corpus):
	instance = corpus(1, range(6, 7), 'nonneg', seed=10)[0]
	report = local_search(instance, LsConfig(beta=0.5), rng=np.random.default_rng(0))
	assert 0 < report.oracle_queries <= 1 << instance.n
