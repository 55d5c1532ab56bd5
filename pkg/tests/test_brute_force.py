import pytest

from Rusm.Internal.BruteForce import brute_force_opt, brute_force_many, brute_force_solve, brute_force_values
from Rusm.Internal.Instances import make_monotone_hard, make_cut_instance
from Rusm.Internal.RusmErrors import ExactLimitError


def test_zero_coefficients_pick_the_empty_set(edge_cut):
	assert brute_force_opt(edge_cut, 0.0, 0.0) == (0, 0.0)


def test_ties_go_to_the_smallest_mask(edge_cut):
	best, value = brute_force_opt(edge_cut)
	assert (best, value) == (0b01, 1.0)


def test_monotone_family_optimum():
	instance = make_monotone_hard(5, 0.25).instance
	best, value = brute_force_opt(instance, 1.0, 1.0)
	assert best == 0b00001
	assert value == 0.75
	assert brute_force_opt(instance, 0.2, 1.0) == (0, 0.0)


def test_many_targets_share_the_table():
	instance = make_cut_instance([(0, 1, 1.0), (1, 2, 1.0)], [0.0, -0.5, 0.0])
	results = brute_force_many(instance, [(1.0, 1.0), (0.5, 0.0)])
	assert results == [(0b101, 2.0), (0b010, 1.0)]
	instance.g.reset_query_count()
	brute_force_values(instance, 1.0, 2.0)
	assert instance.g.query_count == 0


def test_solver_wrapper(edge_cut):
	report = brute_force_solve(edge_cut)
	assert report.algorithm == 'brute'
	assert report.output_set == 0b01
	assert report.total == 1.0


def test_limit():
	with pytest.raises(ExactLimitError):
		brute_force_opt(make_monotone_hard(30, 0.5).instance, limit=24)
