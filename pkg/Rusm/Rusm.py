"""Root class of a Rusm session: solvers, experiments, frontier curves and the symmetry gap."""

from typing import List, Sequence, Tuple, Mapping

import numpy as np

from .Fixed_Files.Events import Events
from .Internal.Core import Core
from .Internal.RunLogger import RunLogger
from .Internal.RusmSettings import RusmSettings, Algorithm, parse_algorithm
from .Internal.SetFunctions import RusmInstance
from .Internal.SolverReport import SolverReport
from .Internal.Instances import HardFamily, HardInstanceDescriptor, InstanceBundle, make_hard_instance, make_random_instance
from .Internal import InstanceIo
from .Internal.LocalSearch import local_search
from .Internal.DoubleGreedy import double_greedy_det, double_greedy_rand
from .Internal.BruteForce import brute_force_solve
from .Internal import Experiment
from .Internal.Frontiers import CurvePoint, NegativeOptConfig, emit_curves
from .Internal.SymmetryGap import GapEvaluation, verify_gap
from .Internal.Validators import ValidationReport, InstanceProperty, validate, validate_declared


class Rusm:
	"""Root class of a Rusm session."""
	_driver_version_const = '1.2.0'

	def __init__(self, options: str = None):
		"""Initializes new Rusm session. \n

		:param options: string tokens altering the session settings

		Parameter options tokens examples:
			- ``Algorithm=dg-rand`` - solver used by solve() and run_experiment(). Values: ls, dg-det, dg-rand, brute. Default: ``ls``
			- ``LocalSearch=(Beta=0.3, Epsilon=0.001)`` - local-search coefficient and accuracy. Default: ``Beta=0.5``, epsilon ``0.05 * alpha(beta)``
			- ``MarginalMode=sampled, Samples=200`` - local-search marginals estimated from 200 samples. Default: ``exact``
			- ``IterationCap=100`` - overrides the local-search iteration cap. Default: ``ceil(4n^2/eps) + 1``
			- ``GuaranteeMode=False`` - allows epsilon >= alpha(beta). Default: ``True``
			- ``Experiment=(Seed=7, Trials=1000, Threads=4)`` - experiment master seed, trials and worker threads. Default: ``0, 1, 1``
			- ``Tolerance=1e-9`` - float tolerance of the guarantee checks. Default: ``1e-9``
			- ``LoggingMode=On`` - logging mode: Off, On, Errors. Default: ``Off``
			- ``LoggingToConsole=True`` - logs to the console. Default: ``False``
			- ``LoggingName='LS beta=0.3'`` - run name shown in the log. Default: ``Rusm``"""
		self._core = Core(options)
		self._core.driver_version = Rusm._driver_version_const
		self._events = Events(self._core)

	def __str__(self):
		"""String representation of the object."""
		return f"Rusm session '{self._core.settings.algorithm.label}', beta={self._core.settings.beta}"

	def __enter__(self) -> 'Rusm':
		"""Stuff to do when entering the context. Returns the Rusm object."""
		return self

	def __exit__(self, exc_type, value, traceback):
		"""Stuff to do when leaving the context. Flushes the logger."""
		self.close()

	def close(self) -> None:
		"""Flushes the session logger and switches it off."""
		if self._core.logger.get_logging_target() is not None:
			self._core.logger.flush()
		self._core.logger.stop()

	@property
	def events(self) -> Events:
		"""Interface for event handlers, see :class:`Events`."""
		return self._events

	@property
	def logger(self) -> RunLogger:
		"""Session logger."""
		return self._core.logger

	@property
	def settings(self) -> RusmSettings:
		"""Current session settings."""
		return self._core.settings

	@property
	def driver_version(self) -> str:
		"""Returns the Rusm package version."""
		return self._core.driver_version

	def apply_options(self, options: str) -> None:
		"""Applies further options tokens to the session settings, same format as the constructor options."""
		self._core.apply_options(options)

	# Instances

	@staticmethod
	def load_instance(path: str) -> RusmInstance:
		"""Reads an instance JSON file."""
		return InstanceIo.load_instance(path)

	@staticmethod
	def save_instance(instance: RusmInstance, path: str) -> None:
		"""Writes the instance JSON file. Hard families are written by their parameters."""
		InstanceIo.save_instance(instance, path)

	@staticmethod
	def hard_instance(family: HardFamily or str, n: int, r: float = None, t: float = None) -> InstanceBundle:
		"""Returns the hard instance bundle: the instance and its symmetry group."""
		return make_hard_instance(HardInstanceDescriptor(family, n, r=r, t=t))

	@staticmethod
	def random_instance(n: int, family: Mapping = None, seed: int = 0) -> RusmInstance:
		"""Returns a random cut or coverage instance, e.g. family={'family': 'cut', 'ell_sign': 'nonneg'}."""
		return make_random_instance(n, family, np.random.default_rng(seed))

	# Solvers

	def solve(self, instance: RusmInstance, algorithm: Algorithm or str = None, element_order: Sequence[int] = None, seed: int = None) -> SolverReport:
		"""Runs one algorithm once. Without the algorithm and seed, the session settings apply.
		:param element_order: Double Greedy element order, default ascending"""
		settings = self._core.settings
		algorithm = parse_algorithm(algorithm) if algorithm is not None else settings.algorithm
		seed = settings.seed if seed is None else seed
		logger = self._core.active_logger
		if algorithm == Algorithm.ls:
			config = settings.ls_config()
			config.seed = seed
			return local_search(instance, config, logger=logger)
		if algorithm == Algorithm.dg_det:
			return double_greedy_det(instance, element_order, logger=logger)
		if algorithm == Algorithm.dg_rand:
			return double_greedy_rand(instance, element_order, rng=np.random.default_rng(seed), seed=seed, logger=logger)
		return brute_force_solve(instance)

	def run_experiment(self, instance: RusmInstance or str or Mapping, checks: Sequence[Tuple[float, float]] = (), element_order: Sequence[int] = None,
					shuffle_order: bool = False, output_json: str = None, output_csv: str = None) -> Experiment.ExperimentResult:
		"""Runs the seeded trials with the session settings (algorithm, trials, seed, threads, tolerance) and evaluates the guarantee checks.
		The on_trial and on_check event handlers are invoked."""
		settings = self._core.settings
		config = settings.ls_config() if settings.algorithm == Algorithm.ls else None
		spec = Experiment.ExperimentSpec(
			instance, settings.algorithm, config, settings.trials, settings.seed, checks, element_order, shuffle_order,
			settings.threads, settings.tolerance, output_json=output_json, output_csv=output_csv)
		return Experiment.run_experiment(spec, self._core.active_logger, self._core.on_trial_handler, self._core.on_check_handler)

	# Curves and gap

	def curves(self, beta_grid: Sequence[float], config: NegativeOptConfig = None) -> List[CurvePoint]:
		"""Evaluates the frontier curves on the beta grid, with the session threads."""
		return emit_curves(beta_grid, config, self._core.settings.effective_threads)

	def gap(self, family: HardFamily or str, n: int, alpha: float, beta: float, r: float = None, t: float = None, slack: float = 0.0) -> GapEvaluation:
		"""Evaluates the symmetry-gap inequality of the hard family at (alpha, beta)."""
		return verify_gap(HardInstanceDescriptor(family, n, r=r, t=t), alpha, beta, slack, logger=self._core.active_logger)

	@staticmethod
	def validate(instance: RusmInstance, properties: Sequence[InstanceProperty or str] = None) -> List[ValidationReport]:
		"""Validates the properties, or the declared flags of the instance if no properties are entered."""
		if not properties:
			return validate_declared(instance)
		return [validate(instance, prop) for prop in properties]
