"""Seeded experiment runner: repeated solver trials on one instance with guarantee checks against brute-force optima."""

import csv
import json
import time
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime
from typing import Callable, Dict, List, Mapping, Sequence, Tuple

import numpy as np

from .SetFunctions import RusmInstance, EllSign
from .Instances import make_random_instance
from .InstanceIo import load_instance, instance_from_document
from .LocalSearch import LsConfig, MarginalMode, local_search, alpha_of_beta
from .DoubleGreedy import double_greedy_det, double_greedy_rand, double_greedy_rand_expectation, DG_EXACT_LIMIT
from .BruteForce import brute_force_opt, brute_force_solve
from .Multilinear import mean_and_stderr
from .RunLogger import RunLogger
from .RusmSettings import Algorithm, parse_algorithm, threads_cap
from .TrialEventArgs import TrialEventArgs
from .RusmErrors import assert_min_int, assert_exact_limit
from .Utilities import iter_bits, get_plural_string

DEFAULT_BRUTE_LIMIT = 24
GUARANTEED = 'guaranteed'
EXPLORATORY = 'exploratory'
LABEL_TOLERANCE = 1e-12
CSV_COLUMNS = ['trial', 'seed', 'g_value', 'ell_value', 'total', 'queries']


def _beta_matches(beta: float, beta0: float, ell_sign: EllSign) -> bool:
	"""The check coefficient beta is covered by the proven beta0 if equal,
	or if it is smaller for l >= 0, or larger for l <= 0."""
	if abs(beta - beta0) <= LABEL_TOLERANCE or ell_sign == EllSign.zero:
		return True
	if ell_sign == EllSign.nonneg:
		return beta <= beta0 + LABEL_TOLERANCE
	if ell_sign == EllSign.nonpos:
		return beta >= beta0 - LABEL_TOLERANCE
	return False


def guarantee_label(algorithm: Algorithm or str, config: LsConfig or None, alpha: float, beta: float, ell_sign: EllSign) -> str:
	"""Returns 'guaranteed' if the (alpha, beta) check lies in the proven region of the algorithm for the sign class of l,
	'exploratory' otherwise.
	ls: alpha <= alpha(b) - eps and beta around b - eps, with b and eps of the config.
	dg-det: l >= 0 and alpha <= min(1/3, 1 - beta).
	dg-rand: l >= 0 and alpha <= min(1/2, 2(1 - beta)).
	brute: alpha <= 1 and beta around 1."""
	algorithm = parse_algorithm(algorithm)
	tol = LABEL_TOLERANCE
	if algorithm == Algorithm.ls:
		config = config or LsConfig()
		ok = alpha <= alpha_of_beta(config.beta) - config.epsilon + tol and _beta_matches(beta, config.beta - config.epsilon, ell_sign)
	elif algorithm == Algorithm.dg_det:
		ok = ell_sign.is_nonneg() and alpha <= min(1.0 / 3.0, 1.0 - beta) + tol
	elif algorithm == Algorithm.dg_rand:
		ok = ell_sign.is_nonneg() and alpha <= min(0.5, 2.0 * (1.0 - beta)) + tol
	else:
		ok = alpha <= 1.0 + tol and _beta_matches(beta, 1.0, ell_sign)
	return GUARANTEED if ok else EXPLORATORY


class ExperimentSpec(object):
	"""Definition of one experiment.
	:param instance: RusmInstance, path of an instance JSON file, instance document,
		or generator document {"generator": "random", "n": 10, "family": {...}, "seed": 1}
	:param algorithm: ls, dg-det, dg-rand or brute
	:param config: local-search configuration, ls only
	:param trials: number of trials, trial i uses the random stream SeedSequence([master_seed, i])
	:param checks: list of (alpha, beta) guarantee targets checked against the brute-force maximum
	:param element_order: Double Greedy element order, None for the ascending order
	:param shuffle_order: Double Greedy order drawn from each trial's stream
	:param threads: worker threads, capped by the environment variable RUSM_THREADS
	:param tolerance: float comparison tolerance of the checks"""

	def __init__(self, instance: RusmInstance or str or Mapping, algorithm: Algorithm or str = Algorithm.ls, config: LsConfig = None, trials: int = 1, master_seed: int = 0,
				checks: Sequence[Tuple[float, float]] = (), element_order: Sequence[int] = None, shuffle_order: bool = False, threads: int = 1,
				tolerance: float = 1e-9, brute_limit: int = DEFAULT_BRUTE_LIMIT, output_json: str = None, output_csv: str = None):
		self.instance_source: str = 'instance'
		if isinstance(instance, str):
			self.instance_source = instance
			instance = load_instance(instance)
		elif isinstance(instance, Mapping):
			if 'generator' in instance:
				self.instance_source = 'generator'
				instance = make_random_instance(instance['n'], instance.get('family'), np.random.default_rng(instance.get('seed', 0)))
			else:
				self.instance_source = 'document'
				instance = instance_from_document(instance)
		self.instance: RusmInstance = instance
		self.algorithm: Algorithm = parse_algorithm(algorithm)
		self.config: LsConfig or None = (config or LsConfig()) if self.algorithm == Algorithm.ls else config
		self.trials = trials
		self.master_seed = master_seed
		self.checks: List[Tuple[float, float]] = [(float(a), float(b)) for a, b in checks]
		self.element_order = None if element_order is None else [int(u) for u in element_order]
		self.shuffle_order = shuffle_order
		self.threads = threads
		self.tolerance = tolerance
		self.brute_limit = brute_limit
		self.output_json = output_json
		self.output_csv = output_csv
		self.validate()

	def validate(self) -> None:
		"""Throws ParameterDomainError or ExactLimitError for an inconsistent spec."""
		assert_min_int(self.trials, 'trials', 1, 'ExperimentSpec')
		assert_min_int(self.master_seed, 'master_seed', 0, 'ExperimentSpec')
		assert_min_int(self.threads, 'threads', 1, 'ExperimentSpec')
		if self.checks:
			assert_exact_limit(self.instance.n, self.brute_limit, 'guarantee checks need the brute-force optimum')

	@property
	def is_randomized(self) -> bool:
		"""True if the trial outputs depend on the random streams."""
		return self.algorithm.is_randomized or (self.shuffle_order and self.algorithm != Algorithm.brute)

	def context(self) -> str:
		"""Short description for the logs and the events."""
		return f'{self.algorithm.label} on {self.instance_source} (n={self.instance.n}, {self.instance.g.kind})'

	def to_dict(self) -> Dict:
		"""JSON-ready dictionary of the spec, the instance is included by its descriptor."""
		result = {
			'algorithm': self.algorithm.label,
			'instance': self.instance.descriptor(),
			'trials': self.trials,
			'master_seed': self.master_seed,
			'checks': [[a, b] for a, b in self.checks],
			'element_order': self.element_order,
			'shuffle_order': self.shuffle_order}
		if self.config is not None:
			c = self.config
			result['config'] = {
				'beta': c.beta, 'epsilon': c.epsilon, 'marginal_mode': c.marginal_mode.name, 'sample_count_override': c.sample_count_override,
				'iteration_cap_override': c.iteration_cap_override, 'guarantee_mode': c.guarantee_mode, 'exact_limit': c.exact_limit}
		return result


class TrialRecord(object):
	"""Outcome of one trial."""

	def __init__(self, trial: int, seed: int, g_value: float, ell_value: float, queries: int, expected_value: float = None):
		self.trial = trial
		self.seed = seed
		self.g_value = g_value
		self.ell_value = ell_value
		self.queries = queries
		self.expected_value = expected_value

	@property
	def total(self) -> float:
		"""f of the trial output."""
		return self.g_value + self.ell_value

	def to_row(self) -> List:
		"""CSV row in the order trial,seed,g_value,ell_value,total,queries."""
		return [self.trial, self.seed, repr(self.g_value), repr(self.ell_value), repr(self.total), self.queries]


class ExperimentResult(object):
	"""Aggregated outcome of an experiment. Checks pass if mean >= rhs - slack - tolerance,
	slack = 4 * stderr for randomized algorithms and 0 for deterministic ones."""

	def __init__(self, spec: ExperimentSpec, records: List[TrialRecord]):
		self.spec = spec
		self.records = sorted(records, key=lambda x: x.trial)
		self.mean, self.stderr = mean_and_stderr([r.total for r in self.records])
		self.total_queries = sum(r.queries for r in self.records)
		self.exact_expectation: float or None = None
		self.checks: List[Dict] = []
		self.wall_time: float = 0.0

	@property
	def values(self) -> List[float]:
		"""Per-trial f values in the trial order."""
		return [r.total for r in self.records]

	@property
	def slack(self) -> float:
		"""Statistical slack of the checks."""
		return 4.0 * self.stderr if self.spec.is_randomized else 0.0

	@property
	def failed_guaranteed(self) -> List[Dict]:
		"""Checks labeled 'guaranteed' that failed."""
		return [c for c in self.checks if c['label'] == GUARANTEED and not c['passed']]

	@property
	def all_passed(self) -> bool:
		"""True if every check passed, exploratory ones included."""
		return all(c['passed'] for c in self.checks)

	def __repr__(self):
		return f'ExperimentResult({self.spec.algorithm.label}, trials={len(self.records)}, mean={self.mean:.9g}, stderr={self.stderr:.3g})'

	def to_dict(self) -> Dict:
		"""JSON-ready dictionary. wall_time is the only field that differs between repeated runs."""
		return {
			'spec': self.spec.to_dict(),
			'mean': self.mean,
			'stderr': self.stderr,
			'slack': self.slack,
			'total_queries': self.total_queries,
			'exact_expectation': self.exact_expectation,
			'checks': self.checks,
			'wall_time': self.wall_time}

	def to_json(self) -> str:
		"""JSON string with sorted keys."""
		return json.dumps(self.to_dict(), sort_keys=True, indent=2)

	def write_json(self, path: str) -> None:
		"""Writes the result as UTF-8 JSON file."""
		with open(path, 'w', encoding='utf-8') as file:
			file.write(self.to_json())
			file.write('\n')

	def write_csv(self, path: str) -> None:
		"""Writes the per-trial CSV with the columns trial,seed,g_value,ell_value,total,queries."""
		with open(path, 'w', newline='', encoding='utf-8') as file:
			writer = csv.writer(file, lineterminator='\n')
			writer.writerow(CSV_COLUMNS)
			for record in self.records:
				writer.writerow(record.to_row())


def trial_stream(master_seed: int, trial: int) -> Tuple[np.random.Generator, int]:
	"""Returns the generator of the trial and its seed number, the first word of the stream's state."""
	seq = np.random.SeedSequence([master_seed, trial])
	return np.random.default_rng(seq), int(seq.generate_state(1)[0])


def _run_trial(spec: ExperimentSpec, trial: int, logger: RunLogger or None, on_trial: Callable or None) -> TrialRecord:
	rng, seed = trial_stream(spec.master_seed, trial)
	instance = spec.instance
	order = spec.element_order
	if spec.shuffle_order and spec.algorithm in (Algorithm.dg_det, Algorithm.dg_rand):
		order = [int(u) for u in rng.permutation(instance.n)]
	start = datetime.now()
	if logger:
		logger.start_new_segment()
	try:
		if spec.algorithm == Algorithm.ls:
			report = local_search(instance, spec.config, rng=rng, logger=logger)
		elif spec.algorithm == Algorithm.dg_det:
			report = double_greedy_det(instance, order, logger=logger)
		elif spec.algorithm == Algorithm.dg_rand:
			report = double_greedy_rand(instance, order, rng=rng, logger=logger)
		else:
			report = brute_force_solve(instance, spec.brute_limit)
	except Exception as e:
		if logger:
			logger.error(start, datetime.now(), f'Trial {trial}', f'{type(e).__name__}: {e}')
			logger.end_current_segment()
		raise
	record = TrialRecord(trial, seed, report.g_value, report.ell_value, report.oracle_queries, report.expected_value)
	if logger:
		logger.info(start, datetime.now(), f'Trial {trial}', f'f={record.total:.9g}, set={instance.ground.format(report.output_set)}, queries={record.queries}')
		logger.end_current_segment()
	if on_trial:
		on_trial(TrialEventArgs.for_trial(trial, seed, record.total, record.queries, spec.context()))
	return record


def _exact_expectation(spec: ExperimentSpec, records: List[TrialRecord]) -> float or None:
	"""Exact expected output value where the algorithm allows it:
	ls in exact marginal mode with |T| <= exact_limit, dg-rand with a fixed order and n <= 20."""
	if spec.algorithm == Algorithm.ls and spec.config.marginal_mode == MarginalMode.exact:
		return records[0].expected_value
	if spec.algorithm == Algorithm.dg_rand and not spec.shuffle_order and spec.instance.n <= DG_EXACT_LIMIT:
		return double_greedy_rand_expectation(spec.instance, spec.element_order)
	return None


def run_experiment(spec: ExperimentSpec, logger: RunLogger = None, on_trial: Callable[[TrialEventArgs], None] = None, on_check: Callable[[TrialEventArgs], None] = None) -> ExperimentResult:
	"""Runs the trials, evaluates the checks and writes the JSON / CSV outputs entered in the spec.
	The per-trial values do not depend on the number of threads."""
	started = time.perf_counter()
	instance = spec.instance
	if spec.checks or spec.algorithm == Algorithm.brute:
		# Shared by all the workers, computed once
		instance.g_table(spec.brute_limit)
		instance.ell_table(spec.brute_limit)
	threads = threads_cap(spec.threads)
	if logger:
		logger.info(None, None, 'Experiment', f'{spec.context()}, {get_plural_string("trial", spec.trials)}, {get_plural_string("thread", threads)}')
	if threads > 1 and spec.trials > 1:
		with ThreadPoolExecutor(max_workers=threads) as executor:
			records = list(executor.map(lambda i: _run_trial(spec, i, logger, on_trial), range(spec.trials)))
	else:
		records = [_run_trial(spec, i, logger, on_trial) for i in range(spec.trials)]
	result = ExperimentResult(spec, records)
	result.exact_expectation = _exact_expectation(spec, result.records)

	for alpha, beta in spec.checks:
		best, rhs = brute_force_opt(instance, alpha, beta, spec.brute_limit)
		check = {
			'alpha': alpha,
			'beta': beta,
			'rhs': rhs,
			'rhs_set': list(iter_bits(best)),
			'mean': result.mean,
			'slack': result.slack,
			'passed': result.mean >= rhs - result.slack - spec.tolerance,
			'label': guarantee_label(spec.algorithm, spec.config, alpha, beta, instance.ell.sign)}
		if result.exact_expectation is not None:
			check['exact_passed'] = result.exact_expectation >= rhs - spec.tolerance
		result.checks.append(check)
		if logger:
			logger.start_new_segment()
			text = f"{check['label']} alpha={alpha:.6g}, beta={beta:.6g}: mean={result.mean:.9g} vs rhs={rhs:.9g} - slack {result.slack:.3g}"
			if check['passed']:
				logger.info(None, None, 'Check', f'{text}: pass')
			else:
				logger.error(None, None, 'Check', f'{text}: FAIL')
			logger.end_current_segment()
		if on_check:
			on_check(TrialEventArgs.for_check(check, spec.context()))

	result.wall_time = time.perf_counter() - started
	if spec.output_json:
		result.write_json(spec.output_json)
	if spec.output_csv:
		result.write_csv(spec.output_csv)
	return result
