"""Approximability and inapproximability frontiers alpha(beta) for the regularized problem:
the monotone hardness curve 1 - exp(-beta), the local-search guarantee beta (1 - beta) / (1 + beta),
the hardness curve for non-positive regularizers (a 2-D minimization) and the algorithmic curve beta exp(-beta)."""

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from typing import List, Sequence, Tuple

import numpy as np
from scipy import optimize

from .Optimize1D import golden_section_min
from .RusmErrors import RusmException, ParameterDomainError, assert_in_range, assert_min_int
from .Utilities import trim_str_response
from . import Conversions

T_MIN = 1.0
T_MAX = 1e4
R_MIN = 1e-6
R_MAX = 0.5
BETA_MAX = 2.0


class CurveId(Enum):
	"""Identifiers of the four frontier curves."""
	monotone_thm1 = 1
	general_thm2 = 2
	negative_thm3 = 3
	algo_negative_beta_e = 4


class NegativeOptMethod(Enum):
	"""Optimizer configurations of alpha_negative()."""
	grid_golden = 1
	scipy_bounded = 2


class NegativeOptConfig(object):
	"""Optimizer configuration of alpha_negative().
	The t grid is logarithmic on [1, 1e4], the r grid is logarithmic on [1e-6, 1/2] merged with a linear grid.
	strict_boundary raises an exception if the minimum lies on the truncated ends t = 1e4 or r = 1e-6."""

	def __init__(self, method: NegativeOptMethod or str = NegativeOptMethod.grid_golden, t_points: int = 241, r_points: int = 241, tol: float = 1e-7, max_rounds: int = 100, starts: int = 5, strict_boundary: bool = True):
		if isinstance(method, str):
			value = Conversions.str_to_simple_scalar_enum(method, NegativeOptMethod, case_sensitive=False)
			if value is None:
				raise ValueError(f"Unknown optimizer method '{method}'. Valid values: {', '.join(x.name for x in NegativeOptMethod)}")
			method = value
		assert_min_int(t_points, 't_points', 2, 'NegativeOptConfig')
		assert_min_int(r_points, 'r_points', 2, 'NegativeOptConfig')
		assert_min_int(starts, 'starts', 1, 'NegativeOptConfig')
		self.method: NegativeOptMethod = method
		self.t_points = t_points
		self.r_points = r_points
		self.tol = tol
		self.max_rounds = max_rounds
		self.starts = starts
		self.strict_boundary = strict_boundary

	def __repr__(self):
		return f'NegativeOptConfig(method={self.method.name}, t_points={self.t_points}, r_points={self.r_points})'


class CurvePoint(object):
	"""One point of a frontier curve."""

	def __init__(self, beta: float, curve_id: CurveId, alpha: float):
		self.beta = float(beta)
		self.curve_id = curve_id
		self.alpha = float(alpha)

	def __repr__(self):
		return f'CurvePoint({self.beta:.6g}, {self.curve_id.name}, {self.alpha:.6g})'

	def __eq__(self, other) -> bool:
		return isinstance(other, CurvePoint) and (self.beta, self.curve_id, self.alpha) == (other.beta, other.curve_id, other.alpha)


def alpha_monotone(beta: float) -> float:
	"""1 - exp(-beta): no (1 - exp(-beta) + eps, beta)-approximation exists for monotone g and non-positive l."""
	assert_in_range(beta, 'beta', 0.0, math.inf, context='alpha_monotone')
	return -math.expm1(-beta)


def alpha_general(beta: float) -> float:
	"""beta (1 - beta) / (1 + beta), the g coefficient of the local search for the l coefficient beta in (0, 1].
	Maximum 3 - 2 sqrt(2) at beta = sqrt(2) - 1."""
	assert_in_range(beta, 'beta', 0.0, 1.0, low_open=True, context='alpha_general')
	return beta * (1.0 - beta) / (1.0 + beta)


def alpha_algo_negative(beta: float) -> float:
	"""beta exp(-beta), the algorithmic curve for non-positive l."""
	assert_in_range(beta, 'beta', 0.0, 1.0, context='alpha_algo_negative')
	return beta * math.exp(-beta)


def negative_minimand(t, r, beta: float):
	"""(t + 1 + sqrt(D)) / (4t) - r / (t + 1) * (1 - beta - 2 ln(rho)) with D = (t + 1)^2 - 8tr
	and rho = (t + 1 - sqrt(D)) / 2, computed as 4tr / (t + 1 + sqrt(D)) to avoid the cancellation.
	D >= (t - 1)^2 >= 0 and rho is in (0, 1] on the domain t >= 1, r in (0, 1/2].
	Accepts scalars or numpy arrays of t and r."""
	t = np.asarray(t, dtype=float)
	r = np.asarray(r, dtype=float)
	sq = np.sqrt(np.maximum((t + 1.0) ** 2 - 8.0 * t * r, 0.0))
	rho = 4.0 * t * r / (t + 1.0 + sq)
	value = (t + 1.0 + sq) / (4.0 * t) - r / (t + 1.0) * (1.0 - beta - 2.0 * np.log(rho))
	return float(value) if value.ndim == 0 else value


def negative_log_argument(t: float, r: float) -> float:
	"""rho = (t + 1 - sqrt((t + 1)^2 - 8tr)) / 2, the smaller root, in (0, 1]."""
	sq = math.sqrt(max((t + 1.0) ** 2 - 8.0 * t * r, 0.0))
	return 4.0 * t * r / (t + 1.0 + sq)


def _grids(config: NegativeOptConfig) -> Tuple[np.ndarray, np.ndarray]:
	t_grid = np.geomspace(T_MIN, T_MAX, config.t_points)
	r_grid = np.union1d(np.geomspace(R_MIN, R_MAX, config.r_points), np.linspace(R_MAX / 50, R_MAX, 50))
	return t_grid, r_grid


def _grid_candidates(beta: float, config: NegativeOptConfig) -> List[Tuple[float, float, float]]:
	"""Returns the best grid points as (value, t, r), ascending by value."""
	t_grid, r_grid = _grids(config)
	tt, rr = np.meshgrid(t_grid, r_grid, indexing='ij')
	values = negative_minimand(tt, rr, beta)
	order = np.argsort(values, axis=None, kind='stable')[:config.starts]
	return [(float(values.flat[ix]), float(tt.flat[ix]), float(rr.flat[ix])) for ix in order]


def _refine_alternating(beta: float, t: float, r: float, config: NegativeOptConfig) -> Tuple[float, float, float]:
	"""Alternating 1-D golden-section refinement, t on the log scale, each step on a bracket re-centred at the current point."""
	t_grid, r_grid = _grids(config)
	log_step = 2.0 * math.log(T_MAX / T_MIN) / (len(t_grid) - 1)
	r_step = 2.0 * float(np.max(np.diff(r_grid)))
	value = negative_minimand(t, r, beta)
	for _ in range(config.max_rounds):
		tau = math.log(t)
		tau, _ = golden_section_min(lambda x: negative_minimand(math.exp(x), r, beta), max(0.0, tau - log_step), min(math.log(T_MAX), tau + log_step), config.tol)
		t = math.exp(tau)
		r, new_value = golden_section_min(lambda x: negative_minimand(t, x, beta), max(R_MIN, r - r_step), min(R_MAX, r + r_step), config.tol)
		if value - new_value <= 1e-15:
			value = min(value, new_value)
			break
		value = new_value
	return value, t, r


def _refine_scipy(beta: float, t: float, r: float, config: NegativeOptConfig) -> Tuple[float, float, float]:
	result = optimize.minimize(lambda v: negative_minimand(math.exp(v[0]), v[1], beta), np.array([math.log(t), r]), method='L-BFGS-B',
							bounds=[(0.0, math.log(T_MAX)), (R_MIN, R_MAX)], options={'ftol': 1e-15, 'gtol': 1e-12, 'maxiter': 1000})
	t_opt, r_opt = math.exp(float(result.x[0])), float(result.x[1])
	return negative_minimand(t_opt, r_opt, beta), t_opt, r_opt


def alpha_negative(beta: float, config: NegativeOptConfig = None) -> Tuple[float, float, float]:
	"""Hardness frontier for non-positive l: the minimum of negative_minimand() over t in [1, 1e4] and r in [1e-6, 1/2].
	Returns (value, witness t, witness r). The value is at least 1/4, with equality at beta = 0 (t = 1, r = 1/2)."""
	assert_in_range(beta, 'beta', 0.0, math.inf, context='alpha_negative')
	config = config or NegativeOptConfig()
	refine = _refine_alternating if config.method == NegativeOptMethod.grid_golden else _refine_scipy
	best = None
	for grid_value, t, r in _grid_candidates(beta, config):
		candidate = min(refine(beta, t, r, config), (grid_value, t, r))
		if best is None or candidate[0] < best[0]:
			best = candidate
	value, t, r = best
	if config.strict_boundary and (t >= T_MAX * (1.0 - 1e-6) or r <= R_MIN * (1.0 + 1e-6)):
		raise RusmException(f'alpha_negative({beta}): the minimum lies on the truncated domain end t={t:.6g}, r={r:.6g}')
	return value, t, r


def emit_curves(beta_grid: Sequence[float], config: NegativeOptConfig = None, threads: int = 1) -> List[CurvePoint]:
	"""Evaluates the four curves on the grid, grid values in [0, 2].
	general_thm2 and algo_negative_beta_e are defined on [0, 1] only, above 1 they are omitted.
	Points are ordered by the grid, then by the curve id."""
	grid = [float(b) for b in beta_grid]
	for beta in grid:
		assert_in_range(beta, 'beta_grid', 0.0, BETA_MAX, context='emit_curves')
	config = config or NegativeOptConfig()

	def negative(beta: float) -> float:
		cfg = config
		if beta > 1.0 and config.strict_boundary:
			cfg = NegativeOptConfig(config.method, config.t_points, config.r_points, config.tol, config.max_rounds, config.starts, strict_boundary=False)
		return alpha_negative(beta, cfg)[0]

	if threads > 1:
		with ThreadPoolExecutor(max_workers=threads) as executor:
			negatives = list(executor.map(negative, grid))
	else:
		negatives = [negative(beta) for beta in grid]
	points = []
	for beta, neg in zip(grid, negatives):
		points.append(CurvePoint(beta, CurveId.monotone_thm1, alpha_monotone(beta)))
		if beta <= 1.0:
			points.append(CurvePoint(beta, CurveId.general_thm2, alpha_general(beta) if beta > 0 else 0.0))
		points.append(CurvePoint(beta, CurveId.negative_thm3, neg))
		if beta <= 1.0:
			points.append(CurvePoint(beta, CurveId.algo_negative_beta_e, alpha_algo_negative(beta)))
	return points


def curve_values(points: Sequence[CurvePoint], curve_id: CurveId) -> List[Tuple[float, float]]:
	"""Returns the (beta, alpha) pairs of one curve."""
	return [(p.beta, p.alpha) for p in points if p.curve_id == curve_id]


def write_curves_csv(points: Sequence[CurvePoint], path: str) -> None:
	"""Writes the points as CSV with the header beta,curve_id,alpha."""
	with open(path, 'w', newline='', encoding='utf-8') as file:
		writer = csv.writer(file, lineterminator='\n')
		writer.writerow(['beta', 'curve_id', 'alpha'])
		for p in points:
			writer.writerow([f'{p.beta:.12g}', p.curve_id.name, f'{p.alpha:.12g}'])


def read_curves_csv(path: str) -> List[CurvePoint]:
	"""Reads the CSV written by write_curves_csv()."""
	with open(path, 'r', newline='', encoding='utf-8') as file:
		reader = csv.DictReader(file)
		if reader.fieldnames != ['beta', 'curve_id', 'alpha']:
			raise ParameterDomainError('path', f"Curve CSV '{path}' must have the header beta,curve_id,alpha, actual: {reader.fieldnames}")
		return [CurvePoint(Conversions.str_to_float(row['beta']), CurveId[trim_str_response(row['curve_id'])], Conversions.str_to_float(row['alpha'])) for row in reader]
