import threading

import numpy as np
import pytest

from Rusm.Internal.GroundSet import GroundSet
from Rusm.Internal.SetFunctions import CallableOracle, TableOracle, CachedOracle, LinearWeights, EllSign, RusmInstance, tabulate, additive_table, product_table, popcount_array
from Rusm.Internal.ContextManagers import QueryCountScope
from Rusm.Internal.RusmErrors import ParameterDomainError, ExactLimitError
from Rusm.Internal.Utilities import popcount, iter_bits, bits_to_mask, submasks, format_subset


def test_bit_helpers():
	assert popcount(0b101101) == 4
	assert list(iter_bits(0b101001)) == [0, 3, 5]
	assert bits_to_mask([0, 3, 5]) == 0b101001
	assert sorted(submasks(0b101)) == [0, 1, 4, 5]
	assert format_subset(0b1001, None) == '{0, 3}'


def test_ground_set_labels_and_format():
	ground = GroundSet(3, ['a', 'b', 'c'])
	assert ground.full == 0b111
	assert ground.mask_of_labels(['a', 'c']) == 0b101
	assert ground.index_of('b') == 1
	assert ground.complement(0b001) == 0b110
	assert ground.add(0, 2) == 0b100
	assert ground.remove(0b110, 1) == 0b100
	assert GroundSet.cardinality(0b111) == 3
	assert 'a' in ground.format(0b001)
	assert list(ground.singletons()) == [1, 2, 4]


@pytest.mark.parametrize('labels', [['a', 'a', 'b'], ['a', 'b']])
def test_ground_set_rejects_bad_labels(labels):
	with pytest.raises(ParameterDomainError) as info:
		GroundSet(3, labels)
	assert info.value.param_name == 'labels'


def test_ground_set_rejects_foreign_bits():
	with pytest.raises(ParameterDomainError):
		GroundSet(3).assert_mask(0b1000)


def test_query_counter_counts_every_call():
	oracle = CallableOracle(3, lambda m: float(popcount(m)))
	oracle.evaluate(0b011)
	oracle(0b111)
	values = oracle.evaluate_many([0, 1, 2, 3])
	assert values.tolist() == [0.0, 1.0, 1.0, 2.0]
	assert oracle.query_count == 6
	oracle.reset_query_count()
	assert oracle.query_count == 0


def test_tabulate_costs_two_to_the_n_queries():
	oracle = CallableOracle(4, lambda m: float(m))
	table = tabulate(oracle)
	assert oracle.query_count == 16
	assert table[9] == 9.0


def test_tabulate_refuses_large_ground_sets():
	with pytest.raises(ExactLimitError):
		tabulate(CallableOracle(30, lambda m: 0.0), limit=24)


def test_table_oracle_needs_power_of_two_values():
	with pytest.raises(ParameterDomainError):
		TableOracle([1.0, 2.0, 3.0])
	with pytest.raises(ParameterDomainError):
		TableOracle([1.0])
	oracle = TableOracle([0.0, 1.0, 2.0, 4.0])
	assert oracle.n == 2
	assert oracle.descriptor()['kind'] == 'table'


def test_cached_oracle_queries_distinct_masks_once():
	inner = CallableOracle(3, lambda m: float(popcount(m)))
	cached = CachedOracle(inner)
	for _ in range(5):
		cached.evaluate(0b101)
	cached.evaluate(0b001)
	assert cached.query_count == 6
	assert inner.query_count == 2
	assert cached.inner is inner


def test_query_scope_counts_only_its_own_thread():
	oracle = CallableOracle(4, lambda m: 1.0)
	counts = {}

	def work(name: str, amount: int):
		with QueryCountScope(oracle) as scope:
			for _ in range(amount):
				oracle.evaluate(1)
		counts[name] = scope.count

	threads = [threading.Thread(target=work, args=(f'w{ix}', 50 * (ix + 1))) for ix in range(4)]
	for thread in threads:
		thread.start()
	for thread in threads:
		thread.join()
	assert counts == {'w0': 50, 'w1': 100, 'w2': 150, 'w3': 200}
	assert oracle.query_count == 500


def test_table_helpers():
	assert additive_table([1.0, 2.0]).tolist() == [0.0, 1.0, 2.0, 3.0]
	assert product_table([0.25, 0.5]).tolist() == pytest.approx([0.375, 0.125, 0.375, 0.125])
	assert popcount_array(np.array([0, 7, 255, 256], dtype=np.int64)).tolist() == [0, 3, 8, 1]


def test_linear_weights_sign_and_value():
	assert LinearWeights([0.0, 0.0]).sign == EllSign.zero
	assert LinearWeights([0.5, 0.0]).sign == EllSign.nonneg
	assert LinearWeights([-0.5, 0.0]).sign == EllSign.nonpos
	assert LinearWeights([-0.5, 0.25]).sign == EllSign.mixed
	assert EllSign.zero.is_nonneg() and EllSign.zero.is_nonpos()
	ell = LinearWeights([0.5, -0.25, 1.0])
	assert ell.value(0b101) == 1.5
	assert ell.table().tolist() == [0.0, 0.5, -0.25, 0.25, 1.0, 1.5, 0.75, 1.25]
	with pytest.raises(ValueError):
		ell.weights[0] = 2.0


@pytest.mark.parametrize('weights', [[], [1.0, float('nan')], [float('inf')]])
def test_linear_weights_rejects_bad_values(weights):
	with pytest.raises(ParameterDomainError) as info:
		LinearWeights(weights)
	assert info.value.param_name == 'ell'


def test_instance_size_mismatch():
	with pytest.raises(ParameterDomainError):
		RusmInstance(CallableOracle(3, lambda m: 0.0), LinearWeights.zeros(2))


def test_instance_value_is_g_plus_ell(edge_cut):
	assert edge_cut.value(0b01) == 1.0
	assert edge_cut.value(0b11) == 0.0
	assert edge_cut.g_table().tolist() == [0.0, 1.0, 1.0, 0.0]
