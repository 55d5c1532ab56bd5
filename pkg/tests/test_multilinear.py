from fractions import Fraction

import numpy as np
import pytest

from Rusm.Internal.Multilinear import marginal, subsample, multilinear_exact, multilinear_mc, mean_and_stderr, subsample_expectation, subsample_expectation_exact, sampling_lemma_values, sampling_lemma_check, indicator_vector
from Rusm.Internal.SetFunctions import CallableOracle, tabulate
from Rusm.Internal.Instances import make_monotone_hard, make_cut_instance
from Rusm.Internal.GroundSet import GroundSet
from Rusm.Internal.RusmErrors import ParameterDomainError, ExactLimitError


def test_marginal_of_cut_edge(edge_cut):
	g = edge_cut.g
	g.reset_query_count()
	assert marginal(g, 1, 0b01) == -1.0
	assert g.query_count == 2
	assert marginal(g, 0, 0b01) == 0.0
	assert g.query_count == 4


def test_marginal_rejects_foreign_element(edge_cut):
	with pytest.raises(ParameterDomainError):
		marginal(edge_cut.g, 5, 0)
	with pytest.raises(ParameterDomainError):
		marginal(edge_cut.g, 1.0, 0)


def test_marginal_accepts_numpy_indexes(edge_cut):
	assert marginal(edge_cut.g, np.int64(1), 0b01) == -1.0
	for u in np.flatnonzero([1, 1]):
		assert marginal(edge_cut.g, u, 0) == 1.0
	assert edge_cut.ground.add(0, np.int32(1)) == 0b10
	assert GroundSet(np.int64(3)).full == 0b111


def test_subsample_extremes(rng):
	assert subsample(0b1011, 1.0, rng) == 0b1011
	assert subsample(0b1011, 0.0, rng) == 0
	assert subsample(0, 0.5, rng) == 0
	for _ in range(20):
		assert subsample(0b1011, 0.5, rng) & ~0b1011 == 0


def test_subsample_rejects_bad_probability(rng):
	with pytest.raises(ParameterDomainError):
		subsample(0b11, 1.5, rng)


def test_subsample_is_reproducible():
	first = [subsample(0b111111, 0.3, np.random.default_rng(7)) for _ in range(3)]
	second = [subsample(0b111111, 0.3, np.random.default_rng(7)) for _ in range(3)]
	assert first == second


@pytest.mark.parametrize('t', [0.0, 0.25, 0.5, 0.9, 1.0])
def test_multilinear_of_monotone_hard_pair(t):
	g = make_monotone_hard(2, 0.5).instance.g
	assert multilinear_exact(g, [t, t]) == pytest.approx(1.0 - (1.0 - t) ** 2, abs=1e-12)


def test_multilinear_of_edge_cut(edge_cut):
	assert multilinear_exact(edge_cut.g, [0.5, 0.5]) == pytest.approx(0.5)


def test_multilinear_at_indicator_is_exact(edge_cut):
	for mask in range(4):
		assert multilinear_exact(edge_cut.g, indicator_vector(mask, 2)) == edge_cut.g.evaluate(mask)


def test_multilinear_with_table_makes_no_queries():
	g = make_monotone_hard(4, 0.5).instance.g
	table = tabulate(g)
	g.reset_query_count()
	value = multilinear_exact(g, [0.2] * 4, table=table)
	assert g.query_count == 0
	assert value == pytest.approx(1.0 - 0.8 ** 4)


def test_multilinear_exact_limit():
	with pytest.raises(ExactLimitError):
		multilinear_exact(CallableOracle(25, lambda m: 0.0), [0.5] * 25)


@pytest.mark.parametrize('x', [[2.0, 0.0], [0.5], [float('nan'), 0.5]])
def test_multilinear_rejects_bad_vector(edge_cut, x):
	with pytest.raises(ParameterDomainError):
		multilinear_exact(edge_cut.g, x)


def test_multilinear_mc_on_indicator_has_no_spread(edge_cut, rng):
	estimate, stderr = multilinear_mc(edge_cut.g, [1.0, 0.0], 50, rng)
	assert estimate == 1.0
	assert stderr == 0.0


def test_multilinear_mc_agrees_with_exact(rng):
	g = make_monotone_hard(6, 0.5).instance.g
	x = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6]
	estimate, stderr = multilinear_mc(g, x, 20000, rng)
	assert abs(estimate - multilinear_exact(g, x)) <= 5 * stderr + 1e-12


def test_mean_and_stderr():
	assert mean_and_stderr([3.0]) == (3.0, 0.0)
	mean, stderr = mean_and_stderr([1.0, 2.0, 3.0, 4.0])
	assert mean == 2.5
	assert stderr == pytest.approx(np.std([1.0, 2.0, 3.0, 4.0], ddof=1) / 2.0)


def test_subsample_expectation_matches_product_formula():
	g = make_monotone_hard(5, 0.5).instance.g
	assert subsample_expectation(g, 0b11111, 0.3) == pytest.approx(1.0 - 0.7 ** 5)


def test_sampling_lemma_monotone_full_set():
	g = make_monotone_hard(6, 0.5).instance.g
	lhs, rhs, stderr = sampling_lemma_values(g, 0b111111, 0.5)
	assert lhs == pytest.approx(1.0 - 2.0 ** -6)
	assert rhs == 0.5
	assert stderr == 0.0
	assert sampling_lemma_check(g, 0b111111, 0.5, trials=0)


@pytest.mark.parametrize('p', [0.0, 1.0])
def test_sampling_lemma_extremes_are_tight(p):
	g = make_monotone_hard(4, 0.5).instance.g
	lhs, rhs, _ = sampling_lemma_values(g, 0b1010, p)
	assert lhs == pytest.approx(rhs, abs=1e-12)


def test_sampling_lemma_sampled_needs_generator():
	g = make_monotone_hard(4, 0.5).instance.g
	with pytest.raises(ParameterDomainError):
		sampling_lemma_check(g, 0b1111, 0.5, trials=10)


def test_sampling_lemma_sampled(rng):
	g = make_monotone_hard(6, 0.5).instance.g
	assert sampling_lemma_check(g, 0b111111, 0.5, trials=2000, rng=rng)


@pytest.mark.parametrize('p', [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9])
def test_sampling_lemma_exact_on_the_corpus(corpus, p):
	rng = np.random.default_rng(int(p * 10))
	for instance in corpus(100, range(1, 9), 'zero'):
		mask = int(rng.integers(0, 1 << instance.n))
		assert sampling_lemma_check(instance.g, mask, p, trials=0)
		assert sampling_lemma_check(instance.g, instance.ground.full, p, trials=0)


def test_exact_expectation_matches_the_float_sum(corpus):
	for instance in corpus(10, range(1, 7), 'zero'):
		mask = instance.ground.full
		exact = subsample_expectation_exact(instance.g, mask, 0.3)
		assert isinstance(exact, Fraction)
		assert float(exact) == pytest.approx(subsample_expectation(instance.g, mask, 0.3), abs=1e-12)


def test_single_element_is_tight_without_tolerance():
	instance = make_cut_instance([(0, 1, 0.375)], [0.0, 0.0])
	assert subsample_expectation_exact(instance.g, 0b01, 0.7) == Fraction(0.7) * Fraction(0.375)
	assert sampling_lemma_check(instance.g, 0b01, 0.7, trials=0)
