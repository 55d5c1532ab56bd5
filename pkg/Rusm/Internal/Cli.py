"""Command-line interface: rusm {solve, verify, curve, gap, validate}.
Exit codes: 0 success, 1 failed guaranteed check / validation / gap, 2 usage or input error."""

import argparse
import sys
from typing import List, Sequence

import numpy as np

from .Instances import HardFamily, HardInstanceDescriptor, make_hard_instance, make_random_instance, InstanceBundle
from .InstanceIo import load_instance
from .SetFunctions import RusmInstance
from .LocalSearch import local_search
from .DoubleGreedy import double_greedy_det, double_greedy_rand
from .BruteForce import brute_force_solve
from .Experiment import ExperimentSpec, run_experiment
from .Frontiers import emit_curves, write_curves_csv, NegativeOptConfig
from .SymmetryGap import verify_gap
from .Validators import InstanceProperty, validate, validate_declared, check_group_invariance
from .RusmSettings import RusmSettings, Algorithm, parse_algorithm
from .RunLogger import RunLogger, LoggingMode
from .RusmErrors import RusmException
from . import Conversions

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _add_instance_args(parser: argparse.ArgumentParser) -> None:
	group = parser.add_argument_group('instance')
	group.add_argument('--file', help='instance JSON file')
	group.add_argument('--family', choices=[x.name for x in HardFamily], help='hard-instance family')
	group.add_argument('--n', type=int, help='block size of the hard family, or the size of the random instance')
	group.add_argument('--r', type=float, help='hard-family parameter r')
	group.add_argument('--t', type=float, help='hard-family parameter t')
	group.add_argument('--random', choices=['cut', 'coverage'], help='random instance family of size --n')
	group.add_argument('--ell-sign', default='mixed', choices=['zero', 'nonneg', 'nonpos', 'mixed'], help='sign class of the random l')
	group.add_argument('--instance-seed', type=int, default=0, help='seed of the random instance')


def _add_solver_args(parser: argparse.ArgumentParser) -> None:
	parser.add_argument('--options', default='', help="options string, e.g. \"Beta=0.3, LocalSearch=(Epsilon=0.001), LoggingMode=On\"")
	parser.add_argument('--algorithm', help='ls, dg-det, dg-rand or brute')
	parser.add_argument('--beta', type=float, help='local-search l coefficient in (0, 1]')
	parser.add_argument('--epsilon', type=float, help='local-search accuracy')
	parser.add_argument('--marginal-mode', choices=['exact', 'sampled'])
	parser.add_argument('--samples', type=int, help='sampled mode: samples per marginal')
	parser.add_argument('--seed', type=int, help='random seed')
	parser.add_argument('--order', help='Double Greedy element order, comma-separated indexes')


def _hard_descriptor(args) -> HardInstanceDescriptor:
	if args.n is None:
		raise RusmException('--family requires --n')
	return HardInstanceDescriptor(args.family, args.n, r=args.r, t=args.t)


def _load_bundle(args) -> InstanceBundle or None:
	return make_hard_instance(_hard_descriptor(args)) if args.family else None


def _load_instance(args) -> RusmInstance:
	sources = [x for x in (args.file, args.family, args.random) if x]
	if len(sources) != 1:
		raise RusmException('Enter exactly one instance source: --file, --family or --random')
	if args.file:
		return load_instance(args.file)
	if args.family:
		return _load_bundle(args).instance
	if args.n is None:
		raise RusmException('--random requires --n')
	return make_random_instance(args.n, {'family': args.random, 'ell_sign': args.ell_sign}, np.random.default_rng(args.instance_seed))


def _settings(args) -> RusmSettings:
	settings = RusmSettings()
	settings.apply_option_settings(args.options)
	if args.algorithm:
		settings.algorithm = parse_algorithm(args.algorithm)
	if args.beta is not None:
		settings.beta = args.beta
	if args.epsilon is not None:
		settings.epsilon = args.epsilon
	if args.marginal_mode:
		settings.marginal_mode = args.marginal_mode
	if args.samples is not None:
		settings.sample_count = args.samples
	if args.seed is not None:
		settings.seed = args.seed
	return settings


def _logger(settings: RusmSettings) -> RunLogger or None:
	if settings.logging_mode == LoggingMode.Off:
		return None
	logger = RunLogger(settings.logging_name or settings.algorithm.label)
	if settings.logging_format:
		logger.set_format_string(settings.logging_format)
	logger.set_logging_target(None if settings.log_to_console else sys.stderr, console_log=settings.log_to_console)
	logger.mode = settings.logging_mode
	logger.set_relative_timestamp_now()
	return logger


def _order(args) -> List[int] or None:
	if not args.order:
		return None
	return [int(x) for x in args.order.split(',') if x.strip()]


def cmd_solve(args) -> int:
	"""Runs one algorithm once and prints the report."""
	instance = _load_instance(args)
	settings = _settings(args)
	logger = _logger(settings)
	rng = np.random.default_rng(settings.seed)
	if settings.algorithm == Algorithm.ls:
		report = local_search(instance, settings.ls_config(), rng=rng, logger=logger)
	elif settings.algorithm == Algorithm.dg_det:
		report = double_greedy_det(instance, _order(args), logger=logger)
	elif settings.algorithm == Algorithm.dg_rand:
		report = double_greedy_rand(instance, _order(args), rng=rng, seed=settings.seed, logger=logger)
	else:
		report = brute_force_solve(instance)
	if args.out:
		report.write_json(args.out)
	print(f'{report.algorithm}: f = {report.total:.9g} (g = {report.g_value:.9g}, l = {report.ell_value:.9g}), '
		f'set = {instance.ground.format(report.output_set)}, queries = {report.oracle_queries}')
	return EXIT_OK


def _parse_check(text: str) -> List[float]:
	parts = [Conversions.str_to_float(x) for x in text.split(',')]
	if len(parts) != 2 or any(x is None for x in parts):
		raise argparse.ArgumentTypeError(f"Check must be 'alpha,beta', actual value: '{text}'")
	return parts


def cmd_verify(args) -> int:
	"""Runs the experiment, exit code 1 if a guaranteed check failed."""
	instance = _load_instance(args)
	settings = _settings(args)
	if args.trials is not None:
		settings.trials = args.trials
	if args.threads is not None:
		settings.threads = args.threads
	config = settings.ls_config() if settings.algorithm == Algorithm.ls else None
	spec = ExperimentSpec(instance, settings.algorithm, config, settings.trials, settings.seed, args.check or [], _order(args), args.shuffle_order,
						settings.threads, settings.tolerance, output_json=args.out_json, output_csv=args.out_csv)
	if args.file:
		spec.instance_source = args.file
	result = run_experiment(spec, _logger(settings))
	print(f'{spec.context()}: {len(result.records)} trials, mean = {result.mean:.9g}, stderr = {result.stderr:.3g}, queries = {result.total_queries}')
	if result.exact_expectation is not None:
		print(f'exact expectation = {result.exact_expectation:.9g}')
	for check in result.checks:
		state = 'pass' if check['passed'] else 'FAIL'
		exact = f", exact {'pass' if check['exact_passed'] else 'FAIL'}" if 'exact_passed' in check else ''
		print(f"check ({check['alpha']:.6g}, {check['beta']:.6g}) {check['label']}: rhs = {check['rhs']:.9g}, slack = {check['slack']:.3g}: {state}{exact}")
	return EXIT_FAILED if result.failed_guaranteed else EXIT_OK


def cmd_curve(args) -> int:
	"""Evaluates the frontier curves on the grid and writes the CSV."""
	grid = Conversions.parse_grid_string(args.grid)
	points = emit_curves(grid, NegativeOptConfig(args.method), args.threads)
	if args.out:
		write_curves_csv(points, args.out)
		print(f'{len(points)} curve points written to {args.out}')
	else:
		print('beta,curve_id,alpha')
		for p in points:
			print(f'{p.beta:.12g},{p.curve_id.name},{p.alpha:.12g}')
	return EXIT_OK


def cmd_gap(args) -> int:
	"""Evaluates the symmetry-gap inequality, exit code 1 if it fails."""
	settings = RusmSettings()
	settings.apply_option_settings(args.options)
	evaluation = verify_gap(_hard_descriptor(args), args.alpha, args.beta, args.slack, logger=_logger(settings))
	if args.out:
		evaluation.write_json(args.out)
	print(f"{args.family}: lhs = {evaluation.lhs:.12g}, rhs = {evaluation.rhs:.12g}, margin = {evaluation.margin:.3g}, slack = {evaluation.slack:.3g}: "
		f"{'pass' if evaluation.passed else 'FAIL'}")
	return EXIT_OK if evaluation.passed else EXIT_FAILED


def cmd_validate(args) -> int:
	"""Runs the validators, exit code 1 with the witness if one fails."""
	instance = _load_instance(args)
	reports = []
	if not args.property:
		reports = validate_declared(instance)
	for prop in args.property or []:
		if prop == InstanceProperty.group_invariant.name:
			bundle = _load_bundle(args)
			if bundle is None:
				raise RusmException('Property group_invariant requires a hard family (--family)')
			reports.append(check_group_invariance(bundle.instance, bundle.group))
		else:
			reports.append(validate(instance, prop))
	for report in reports:
		print(report)
	return EXIT_OK if all(reports) else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
	"""Returns the argument parser with all the subcommands."""
	parser = argparse.ArgumentParser(prog='rusm', description='Regularized unconstrained submodular maximization toolkit')
	sub = parser.add_subparsers(dest='command', required=True)

	p = sub.add_parser('solve', help='run one algorithm once')
	_add_instance_args(p)
	_add_solver_args(p)
	p.add_argument('--out', help='report JSON file')
	p.set_defaults(func=cmd_solve)

	p = sub.add_parser('verify', help='run seeded trials with guarantee checks')
	_add_instance_args(p)
	_add_solver_args(p)
	p.add_argument('--trials', type=int)
	p.add_argument('--threads', type=int)
	p.add_argument('--check', type=_parse_check, action='append', help="guarantee target 'alpha,beta', repeatable")
	p.add_argument('--shuffle-order', action='store_true', help='Double Greedy order drawn per trial')
	p.add_argument('--out-json', help='result JSON file')
	p.add_argument('--out-csv', help='per-trial CSV file')
	p.set_defaults(func=cmd_verify)

	p = sub.add_parser('curve', help='evaluate the frontier curves')
	p.add_argument('--grid', default='0:1:0.01', help="beta grid 'start:stop:step' or comma-separated values")
	p.add_argument('--out', help='CSV file')
	p.add_argument('--method', default='grid_golden', choices=['grid_golden', 'scipy_bounded'])
	p.add_argument('--threads', type=int, default=1)
	p.set_defaults(func=cmd_curve)

	p = sub.add_parser('gap', help='evaluate the symmetry gap of a hard instance')
	p.add_argument('--family', required=True, choices=[x.name for x in HardFamily])
	p.add_argument('--n', type=int, required=True)
	p.add_argument('--r', type=float)
	p.add_argument('--t', type=float)
	p.add_argument('--alpha', type=float, required=True)
	p.add_argument('--beta', type=float, required=True)
	p.add_argument('--slack', type=float, default=0.0, help='allowance added to the right side, e.g. 10/n at large n')
	p.add_argument('--options', default='')
	p.add_argument('--out', help='gap JSON report')
	p.set_defaults(func=cmd_gap)

	p = sub.add_parser('validate', help='validate the properties of an instance')
	_add_instance_args(p)
	p.add_argument('--property', action='append', choices=[x.name for x in InstanceProperty], help='property to validate, repeatable; default: the declared flags')
	p.set_defaults(func=cmd_validate)
	return parser


def cli_main(argv: Sequence[str] = None) -> int:
	"""Entry point of the rusm console script. Returns the exit code."""
	parser = build_parser()
	try:
		args = parser.parse_args(argv)
	except SystemExit as e:
		return EXIT_OK if e.code == 0 else EXIT_USAGE
	try:
		return args.func(args)
	except (RusmException, ValueError) as e:
		print(f'rusm {args.command}: {e}', file=sys.stderr)
		return EXIT_USAGE
