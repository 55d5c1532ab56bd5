import math

import numpy as np
import pytest

from Rusm.Internal.Frontiers import CurveId, NegativeOptConfig, CurvePoint, alpha_monotone, alpha_general, alpha_algo_negative, alpha_negative, negative_minimand, negative_log_argument, emit_curves, curve_values, write_curves_csv, read_curves_csv
from Rusm.Internal.Conversions import parse_grid_string
from Rusm.Internal.RusmErrors import ParameterDomainError


@pytest.fixture(scope='module')
def unit_curves():
	return emit_curves(parse_grid_string('0:1:0.01'), threads=4)


def test_closed_form_curves():
	assert alpha_monotone(0.0) == 0.0
	assert alpha_monotone(math.log(2.0)) == pytest.approx(0.5, abs=1e-15)
	assert alpha_monotone(1.0) == pytest.approx(1.0 - math.exp(-1.0))
	assert alpha_general(0.5) == pytest.approx(1.0 / 6.0)
	assert alpha_general(1.0) == 0.0
	assert alpha_general(math.sqrt(2) - 1) == pytest.approx(3 - 2 * math.sqrt(2))
	assert alpha_algo_negative(0.5) == pytest.approx(0.3032653298563167)
	assert alpha_algo_negative(1.0) == pytest.approx(math.exp(-1.0))


@pytest.mark.parametrize('func, beta', [(alpha_general, 0.0), (alpha_general, 1.5), (alpha_algo_negative, 1.2), (alpha_monotone, -0.1)])
def test_curve_domains(func, beta):
	with pytest.raises(ParameterDomainError):
		func(beta)


@pytest.mark.parametrize('beta', [0.0, 0.3, 0.7, 1.0])
def test_minimand_at_the_corner(beta):
	assert negative_minimand(1.0, 0.5, beta) == pytest.approx((1.0 + beta) / 4.0, abs=1e-15)
	assert negative_log_argument(1.0, 0.5) == pytest.approx(1.0)


def test_minimand_is_vectorized():
	t = np.array([1.0, 2.0, 5.0])
	r = np.array([0.5, 0.4, 0.1])
	values = negative_minimand(t, r, 0.5)
	assert values.shape == (3,)
	assert values[1] == pytest.approx(negative_minimand(2.0, 0.4, 0.5))
	assert 0.0 < negative_log_argument(2.0, 0.4) <= 1.0


def test_negative_curve_at_zero():
	value, t, r = alpha_negative(0.0)
	assert value == pytest.approx(0.25, abs=1e-9)
	assert t == pytest.approx(1.0, abs=1e-3)
	assert r == pytest.approx(0.5, abs=1e-3)


def test_negative_curve_at_one():
	value, t, r = alpha_negative(1.0)
	assert value == pytest.approx(0.478, abs=3e-3)
	assert 1.0 < t < 10.0
	assert 0.0 < r <= 0.5
	assert negative_minimand(t, r, 1.0) == pytest.approx(value, abs=1e-12)


def test_negative_curve_methods_agree():
	grid_value, _, _ = alpha_negative(1.0, NegativeOptConfig('grid_golden'))
	scipy_value, _, _ = alpha_negative(1.0, NegativeOptConfig('scipy_bounded'))
	assert abs(grid_value - scipy_value) <= 1e-4


def test_negative_curve_against_dense_grid():
	t = np.geomspace(1.0, 20.0, 1500)
	r = np.linspace(0.05, 0.5, 1500)
	tt, rr = np.meshgrid(t, r, indexing='ij')
	dense = float(np.min(negative_minimand(tt, rr, 1.0)))
	value, _, _ = alpha_negative(1.0)
	assert value <= dense + 1e-7
	assert dense - value <= 1e-4


def test_unknown_optimizer_method():
	with pytest.raises(ValueError):
		NegativeOptConfig('newton')


def test_unit_grid_rows(unit_curves):
	assert len(unit_curves) == 404
	assert [p.curve_id for p in unit_curves[:4]] == [CurveId.monotone_thm1, CurveId.general_thm2, CurveId.negative_thm3, CurveId.algo_negative_beta_e]
	first = {p.curve_id: p.alpha for p in unit_curves[:4]}
	assert first[CurveId.monotone_thm1] == 0.0
	assert first[CurveId.general_thm2] == 0.0
	assert first[CurveId.negative_thm3] == pytest.approx(0.25, abs=1e-9)
	assert first[CurveId.algo_negative_beta_e] == 0.0
	assert unit_curves[-1].beta == 1.0


def test_curve_orderings(unit_curves):
	monotone = dict(curve_values(unit_curves, CurveId.monotone_thm1))
	negative = dict(curve_values(unit_curves, CurveId.negative_thm3))
	algo = dict(curve_values(unit_curves, CurveId.algo_negative_beta_e))
	for beta in monotone:
		assert algo[beta] <= negative[beta] + 1e-12
		assert min(monotone[beta], negative[beta]) >= algo[beta] - 1e-12
		if beta >= 0.5:
			assert negative[beta] <= monotone[beta] + 1e-12


def test_negative_curve_is_continuous_and_nondecreasing(unit_curves):
	values = [alpha for _, alpha in curve_values(unit_curves, CurveId.negative_thm3)]
	steps = np.diff(values)
	assert np.all(steps >= -1e-7)
	assert np.all(steps <= 0.01)


def test_grid_above_one_omits_the_unit_curves():
	points = emit_curves([1.5])
	assert [p.curve_id for p in points] == [CurveId.monotone_thm1, CurveId.negative_thm3]
	with pytest.raises(ParameterDomainError):
		emit_curves([2.5])


def test_csv_round_trip(tmp_path):
	points = [CurvePoint(0.25, CurveId.monotone_thm1, alpha_monotone(0.25)), CurvePoint(0.25, CurveId.general_thm2, alpha_general(0.25))]
	path = str(tmp_path / 'curves.csv')
	write_curves_csv(points, path)
	with open(path, encoding='utf-8') as file:
		assert file.readline().strip() == 'beta,curve_id,alpha'
	loaded = read_curves_csv(path)
	assert [p.curve_id for p in loaded] == [CurveId.monotone_thm1, CurveId.general_thm2]
	assert loaded[0].alpha == pytest.approx(points[0].alpha, rel=1e-11)


def test_csv_with_wrong_header(tmp_path):
	path = tmp_path / 'bad.csv'
	path.write_text('b,id,a\n0,monotone_thm1,0\n', encoding='utf-8')
	with pytest.raises(ParameterDomainError):
		read_curves_csv(str(path))
