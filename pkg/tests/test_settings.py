import pytest

from Rusm.Internal.RusmSettings import RusmSettings, Algorithm, parse_algorithm, threads_cap, THREADS_ENV_VAR
from Rusm.Internal.RunLogger import LoggingMode
from Rusm.Internal.LocalSearch import MarginalMode


def test_defaults():
	settings = RusmSettings()
	assert settings.algorithm == Algorithm.ls
	assert settings.beta == 0.5
	assert settings.marginal_mode == 'exact'
	assert settings.trials == 1
	assert settings.logging_mode == LoggingMode.Off


def test_empty_options_change_nothing():
	settings = RusmSettings()
	settings.apply_option_settings('')
	settings.apply_option_settings(None)
	assert settings.beta == 0.5


@pytest.mark.parametrize('text, expected', [('ls', Algorithm.ls), ('dg-det', Algorithm.dg_det), ('DG_RAND', Algorithm.dg_rand), ('Brute', Algorithm.brute)])
def test_parse_algorithm(text, expected):
	assert parse_algorithm(text) == expected
	assert parse_algorithm(expected) is expected


def test_parse_algorithm_unknown():
	with pytest.raises(ValueError):
		parse_algorithm('simulated-annealing')


def test_algorithm_labels():
	assert Algorithm.dg_rand.label == 'dg-rand'
	assert Algorithm.ls.is_randomized
	assert not Algorithm.dg_det.is_randomized


def test_plain_keys_are_case_insensitive():
	settings = RusmSettings()
	settings.apply_option_settings('algorithm=dg-rand, BETA=0.3, seed=7, Trials=1E3, threads=4, tolerance=1e-6')
	assert settings.algorithm == Algorithm.dg_rand
	assert settings.beta == 0.3
	assert settings.seed == 7
	assert settings.trials == 1000
	assert settings.threads == 4
	assert settings.tolerance == 1e-6


def test_group_key_has_priority_over_plain_key():
	settings = RusmSettings()
	settings.apply_option_settings('Beta=0.9, LocalSearch=(Beta=0.25, Epsilon=0.001, MarginalMode=sampled, Samples=500), Experiment=(Seed=11)')
	assert settings.beta == 0.25
	assert settings.epsilon == 0.001
	assert settings.marginal_mode == 'sampled'
	assert settings.sample_count == 500
	assert settings.seed == 11


def test_local_search_flags():
	settings = RusmSettings()
	settings.apply_option_settings('LocalSearch=(IterationCap=40, GuaranteeMode=off, ExactLimit=16)')
	assert settings.iteration_cap == 40
	assert settings.guarantee_mode is False
	assert settings.exact_limit == 16


def test_quoted_values_keep_commas():
	settings = RusmSettings()
	settings.apply_option_settings("Logging=(LoggingName='first, second', LoggingMode=Errors), Beta=0.4")
	assert settings.logging_name == 'first, second'
	assert settings.logging_mode == LoggingMode.Errors
	assert settings.beta == 0.4


def test_logging_underscore_keys():
	settings = RusmSettings()
	settings.apply_option_settings('Logging_Mode=On, Logging_ToConsole=True, Logging_Name=sweep')
	assert settings.logging_mode == LoggingMode.On
	assert settings.log_to_console is True
	assert settings.logging_name == 'sweep'


@pytest.mark.parametrize('text', ['MarginalMode=approximate', 'LoggingMode=Verbose', 'Algorithm=greedy'])
def test_unknown_values_raise(text):
	with pytest.raises(ValueError):
		RusmSettings().apply_option_settings(text)


def test_ls_config_from_settings():
	settings = RusmSettings()
	settings.apply_option_settings('Beta=0.25, LocalSearch=(Epsilon=0.01, IterationCap=12), Seed=5')
	config = settings.ls_config()
	assert config.beta == 0.25
	assert config.epsilon == 0.01
	assert config.iteration_cap_override == 12
	assert config.seed == 5
	assert config.marginal_mode == MarginalMode.exact


def test_threads_cap(monkeypatch):
	monkeypatch.delenv(THREADS_ENV_VAR, raising=False)
	assert threads_cap(8) == 8
	assert threads_cap(0) == 1
	monkeypatch.setenv(THREADS_ENV_VAR, '2')
	assert threads_cap(8) == 2
	assert threads_cap(1) == 1
	monkeypatch.setenv(THREADS_ENV_VAR, 'many')
	assert threads_cap(3) == 3


def test_effective_threads(monkeypatch):
	monkeypatch.setenv(THREADS_ENV_VAR, '3')
	settings = RusmSettings()
	settings.apply_option_settings('Threads=16')
	assert settings.effective_threads == 3
