import numpy as np
import pytest

from Rusm.Internal.Experiment import ExperimentSpec, run_experiment, guarantee_label, trial_stream, GUARANTEED, EXPLORATORY, CSV_COLUMNS
from Rusm.Internal.LocalSearch import LsConfig
from Rusm.Internal.SetFunctions import EllSign
from Rusm.Internal.Instances import make_monotone_hard, make_random_instance
from Rusm.Internal.RunLogger import RunLogger, LoggingMode
from Rusm.Internal.RusmErrors import ParameterDomainError, ExactLimitError


def _without_wall_time(result):
	doc = result.to_dict()
	doc.pop('wall_time')
	return doc


@pytest.fixture
def nonneg_instance():
	return make_random_instance(8, {'family': 'cut', 'ell_sign': 'nonneg'}, np.random.default_rng(31))


def test_trial_streams_are_independent_of_order():
	first, seed_first = trial_stream(5, 3)
	second, seed_second = trial_stream(5, 3)
	assert seed_first == seed_second
	assert first.random() == second.random()
	assert trial_stream(5, 4)[1] != seed_first


def test_deterministic_trials_are_identical(nonneg_instance):
	result = run_experiment(ExperimentSpec(nonneg_instance, 'dg-det', trials=5, checks=[(1.0 / 3.0, 2.0 / 3.0)]))
	assert len(set(result.values)) == 1
	assert result.stderr == 0.0
	assert result.slack == 0.0
	check = result.checks[0]
	assert check['label'] == GUARANTEED
	assert check['passed']
	assert result.failed_guaranteed == []


def test_randomized_double_greedy_with_exact_expectation(nonneg_instance):
	result = run_experiment(ExperimentSpec(nonneg_instance, 'dg-rand', trials=200, master_seed=3, checks=[(0.5, 0.75)]))
	assert result.exact_expectation is not None
	check = result.checks[0]
	assert check['exact_passed']
	assert check['label'] == GUARANTEED
	assert abs(result.mean - result.exact_expectation) <= 5.0 * result.stderr + 1e-9


def test_results_do_not_depend_on_threads(nonneg_instance):
	serial = run_experiment(ExperimentSpec(nonneg_instance, 'dg-rand', trials=64, master_seed=9, threads=1))
	parallel = run_experiment(ExperimentSpec(nonneg_instance, 'dg-rand', trials=64, master_seed=9, threads=4))
	assert serial.values == parallel.values
	assert [r.queries for r in serial.records] == [r.queries for r in parallel.records]
	assert _without_wall_time(serial) == _without_wall_time(parallel)


def test_repeated_runs_write_identical_files(tmp_path, nonneg_instance):
	outputs = []
	for ix in range(2):
		csv_path = tmp_path / f'trials{ix}.csv'
		spec = ExperimentSpec(nonneg_instance, 'ls', config=LsConfig(beta=0.5), trials=6, master_seed=1, output_json=str(tmp_path / f'result{ix}.json'), output_csv=str(csv_path))
		outputs.append((_without_wall_time(run_experiment(spec)), csv_path.read_bytes()))
	assert outputs[0] == outputs[1]
	lines = outputs[0][1].decode('utf-8').splitlines()
	assert lines[0] == ','.join(CSV_COLUMNS)
	assert len(lines) == 7


def test_local_search_experiment_on_monotone_family():
	instance = make_monotone_hard(6, 0.1).instance
	config = LsConfig(beta=0.5, epsilon=0.05)
	spec = ExperimentSpec(instance, 'ls', config=config, trials=200, master_seed=2, checks=[(config.alpha - config.epsilon, config.beta - config.epsilon)])
	result = run_experiment(spec)
	check = result.checks[0]
	assert check['label'] == GUARANTEED
	assert check['passed']
	assert check['exact_passed']


@pytest.mark.slow
def test_local_search_experiment_many_trials():
	instance = make_monotone_hard(6, 0.1).instance
	config = LsConfig(beta=0.5, epsilon=0.05)
	spec = ExperimentSpec(instance, 'ls', config=config, trials=10_000, master_seed=2, threads=4, checks=[(config.alpha - config.epsilon, config.beta - config.epsilon)])
	assert run_experiment(spec).all_passed


@pytest.mark.slow
def test_randomized_double_greedy_many_trials():
	instance = make_random_instance(10, {'family': 'coverage', 'ell_sign': 'nonneg'}, np.random.default_rng(8))
	result = run_experiment(ExperimentSpec(instance, 'dg-rand', trials=100_000, master_seed=4, threads=4, checks=[(0.5, 0.75)]))
	assert result.all_passed
	assert abs(result.mean - result.exact_expectation) <= 4.0 * result.stderr + 1e-9


def test_events_are_raised(nonneg_instance):
	trials, checks = [], []
	run_experiment(ExperimentSpec(nonneg_instance, 'brute', trials=3, checks=[(1.0, 1.0), (0.2, 0.5)]), on_trial=trials.append, on_check=checks.append)
	assert sorted(e.trial for e in trials) == [0, 1, 2]
	assert all(e.queries is not None for e in trials)
	assert [e.check['alpha'] for e in checks] == [1.0, 0.2]
	assert len({e.event_id for e in trials + checks}) == 5
	assert 'check' in str(checks[0])


def test_failed_check_is_logged_as_error(nonneg_instance):
	logger = RunLogger('exp')
	logger.mode = LoggingMode.Errors
	logger.start()
	# the target 2 * OPT lies above the value of every set
	result = run_experiment(ExperimentSpec(nonneg_instance, 'dg-det', checks=[(2.0, 2.0)]), logger=logger)
	assert not result.checks[0]['passed']
	assert result.checks[0]['label'] == EXPLORATORY
	assert result.failed_guaranteed == []


def test_generator_document_spec():
	spec = ExperimentSpec({'generator': 'random', 'n': 6, 'family': {'family': 'coverage'}, 'seed': 1}, 'dg-det')
	assert spec.instance.n == 6
	assert spec.instance_source == 'generator'
	assert spec.to_dict()['algorithm'] == 'dg-det'
	assert 'config' not in spec.to_dict()


def test_spec_validation(nonneg_instance):
	with pytest.raises(ParameterDomainError):
		ExperimentSpec(nonneg_instance, 'dg-det', trials=0)
	with pytest.raises(ValueError):
		ExperimentSpec(nonneg_instance, 'simulated-annealing')
	with pytest.raises(ExactLimitError):
		ExperimentSpec(make_monotone_hard(30, 0.5).instance, 'dg-det', checks=[(0.3, 0.7)])


@pytest.mark.parametrize('algorithm, alpha, beta, sign, expected', [
	('dg-det', 1.0 / 3.0, 2.0 / 3.0, EllSign.nonneg, GUARANTEED),
	('dg-det', 0.4, 0.6, EllSign.nonneg, EXPLORATORY),
	('dg-det', 0.3, 0.7, EllSign.mixed, EXPLORATORY),
	('dg-rand', 0.5, 0.75, EllSign.zero, GUARANTEED),
	('dg-rand', 0.5, 0.8, EllSign.nonneg, EXPLORATORY),
	('brute', 1.0, 1.0, EllSign.mixed, GUARANTEED),
	('brute', 1.0, 0.9, EllSign.nonneg, GUARANTEED),
	('brute', 1.0, 0.9, EllSign.nonpos, EXPLORATORY),
])
def test_guarantee_label(algorithm, alpha, beta, sign, expected):
	assert guarantee_label(algorithm, None, alpha, beta, sign) == expected


def test_guarantee_label_of_local_search():
	config = LsConfig(beta=0.5, epsilon=0.05)
	assert guarantee_label('ls', config, config.alpha - config.epsilon, 0.45, EllSign.mixed) == GUARANTEED
	assert guarantee_label('ls', config, config.alpha - config.epsilon, 0.4, EllSign.mixed) == EXPLORATORY
	assert guarantee_label('ls', config, config.alpha - config.epsilon, 0.5, EllSign.nonpos) == GUARANTEED
	assert guarantee_label('ls', config, config.alpha, 0.45, EllSign.mixed) == EXPLORATORY
