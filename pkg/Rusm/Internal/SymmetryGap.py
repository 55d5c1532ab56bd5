"""Symmetry-gap quantities of the hard families.

The left side is the maximum of G + L over the symmetrized vectors, G the multilinear extension of g:
all the elements of an orbit share one coordinate, so the maximization runs over one to two variables.
The right side is the maximum of alpha * g(S) + beta * l(S) over all the sets S."""

import itertools
import json
import math
from typing import Dict, List, Tuple

import numpy as np

from .GroundSet import SubsetMask
from .Instances import HardFamily, HardInstanceDescriptor, InstanceBundle, make_hard_instance
from .BruteForce import brute_force_opt
from .Optimize1D import grid_then_golden_max
from .RunLogger import RunLogger
from .RusmErrors import RusmException, assert_in_range, assert_min_int
from .Utilities import iter_bits

POSITIVE_BRACKET = (0.411, 0.412)
POSITIVE_BRACKET_MIN_N = 1000
DEFAULT_BRUTE_LIMIT = 24
OPT_TOLERANCE = 1e-12


class GapLhs(object):
	"""Maximum of G + L over the symmetrized vectors with the maximizing coordinates.
	asymptotic is the large-n closed form, where one exists."""

	def __init__(self, value: float, witness: Dict[str, float], asymptotic: float = None):
		self.value = float(value)
		self.witness = witness
		self.asymptotic = asymptotic

	def __repr__(self):
		return f'GapLhs({self.value:.9g}, {self.witness})'


class GapEvaluation(object):
	"""Both sides of the gap inequality lhs <= rhs for one hard instance.
	passed is lhs <= rhs + slack, margin is rhs - lhs."""

	def __init__(self, descriptor: HardInstanceDescriptor, alpha: float, beta: float, lhs: GapLhs, rhs: float, rhs_set: SubsetMask, slack: float):
		self.descriptor = descriptor
		self.alpha = alpha
		self.beta = beta
		self.lhs = lhs.value
		self.optimizer_witness = lhs.witness
		self.asymptotic = lhs.asymptotic
		self.rhs = rhs
		self.rhs_set = rhs_set
		self.rhs_brute: float or None = None
		self.slack = slack

	@property
	def margin(self) -> float:
		"""rhs - lhs, negative if the left side is larger."""
		return self.rhs - self.lhs

	@property
	def passed(self) -> bool:
		"""True if lhs <= rhs + slack."""
		return self.lhs <= self.rhs + self.slack

	@property
	def rhs_positive(self) -> bool:
		"""True if the right side is positive."""
		return self.rhs > 0

	def __repr__(self):
		return f"GapEvaluation({self.descriptor}, lhs={self.lhs:.9g}, rhs={self.rhs:.9g}, {'pass' if self.passed else 'FAIL'})"

	def to_dict(self) -> Dict:
		"""JSON-ready dictionary."""
		return {
			'family': self.descriptor.family.name,
			'params': self.descriptor.params(),
			'alpha': self.alpha,
			'beta': self.beta,
			'lhs': self.lhs,
			'rhs': self.rhs,
			'rhs_brute': self.rhs_brute,
			'rhs_set': list(iter_bits(self.rhs_set)),
			'asymptotic': self.asymptotic,
			'optimizer_witness': self.optimizer_witness,
			'margin': self.margin,
			'slack': self.slack,
			'pass': self.passed,
			'rhs_positive': self.rhs_positive}

	def to_json(self) -> str:
		"""JSON string with sorted keys."""
		return json.dumps(self.to_dict(), sort_keys=True, indent=2)

	def write_json(self, path: str) -> None:
		"""Writes the evaluation as UTF-8 JSON file."""
		with open(path, 'w', encoding='utf-8') as file:
			file.write(self.to_json())
			file.write('\n')


# Objectives over the symmetrized coordinates _____________________________________________________


def monotone_objective(x: float, n: int, r: float) -> float:
	"""G + L of the monotone family at the uniform vector x: 1 - (1 - x)^n - x r n."""
	return 1.0 - (1.0 - x) ** n - x * r * n


def negative_objective(z: float, w: float, n: int, t: float, r: float) -> float:
	"""G + L of the non-positive family with z on {a, b} and w on the blocks: 2(1 - z)[tz + 1 - (1 - w)^n] - 2rwn."""
	return 2.0 * (1.0 - z) * (t * z + 1.0 - (1.0 - w) ** n) - 2.0 * r * w * n


def positive_objective(z: float, w: float, n: int) -> float:
	"""G + L of the non-negative family with z on {a, b} and w on the c block: 4z(1 - z) + (2z - z^2)(1 - w^n) + nw/3."""
	return 4.0 * z * (1.0 - z) + (2.0 * z - z * z) * (1.0 - w ** n) + n * w / 3.0


def _unit_grid(points: int = 1001) -> np.ndarray:
	return np.union1d(np.linspace(0.0, 1.0, points), np.geomspace(1e-9, 1.0, points))


def gap_lhs_monotone(n: int, r: float) -> GapLhs:
	"""Closed form max_x [1 - (1 - x)^n - x r n] = 1 - r - r(n - 1)(1 - r^(1/(n-1))) at x = 1 - r^(1/(n-1))."""
	assert_min_int(n, 'n', 2, 'gap_lhs_monotone')
	assert_in_range(r, 'r', 0.0, 1.0, low_open=True, context='gap_lhs_monotone')
	x = -math.expm1(math.log(r) / (n - 1))
	value = 1.0 - r - r * (n - 1) * x
	return GapLhs(value, {'x': x})


def gap_lhs_monotone_numeric(n: int, r: float) -> GapLhs:
	"""Numerical maximization of the monotone objective over x in [0, 1], the cross-check of gap_lhs_monotone()."""
	assert_min_int(n, 'n', 2, 'gap_lhs_monotone_numeric')
	assert_in_range(r, 'r', 0.0, 1.0, low_open=True, context='gap_lhs_monotone_numeric')
	x, value = grid_then_golden_max(lambda v: monotone_objective(v, n, r), _unit_grid(), OPT_TOLERANCE)
	return GapLhs(value, {'x': x})


def negative_asymptotic(t: float, r: float) -> float:
	"""Large-n value (t + 1 + sqrt(D))^2 / (8t) + 2r ln(rho), D = (t + 1)^2 - 8tr, rho = (t + 1 - sqrt(D)) / 2."""
	sq = math.sqrt(max((t + 1.0) ** 2 - 8.0 * t * r, 0.0))
	rho = 4.0 * t * r / (t + 1.0 + sq)
	return (t + 1.0 + sq) ** 2 / (8.0 * t) + 2.0 * r * math.log(rho)


def gap_lhs_negative(n: int, t: float, r: float) -> GapLhs:
	"""Maximum of negative_objective() over z, w in [0, 1].
	The optimal z = (t - 1 + (1 - w)^n) / (2t) is eliminated, leaving (t + 1 - (1 - w)^n)^2 / (2t) - 2rwn over w."""
	HardInstanceDescriptor(HardFamily.negative_sec5, n, r=r, t=t)

	def reduced(w: float) -> float:
		e = (1.0 - w) ** n
		return (t + 1.0 - e) ** 2 / (2.0 * t) - 2.0 * r * w * n

	w, value = grid_then_golden_max(reduced, _unit_grid(), OPT_TOLERANCE)
	z = (t - 1.0 + (1.0 - w) ** n) / (2.0 * t)
	return GapLhs(value, {'z': z, 'w': w}, negative_asymptotic(t, r))


def gap_lhs_positive(n: int, check_bracket: bool = True) -> GapLhs:
	"""Maximum of positive_objective() over z, w in [0, 1].
	The optimal z = 1 - 2/(5 - w^n) is eliminated, leaving 1 - w^n + 4/(5 - w^n) + nw/3.
	The search runs over x = w^n, which keeps the optimum away from the end w = 1.
	For n >= 1000 and check_bracket, the maximizing w^n must lie in [0.411, 0.412]."""
	assert_min_int(n, 'n', 2, 'gap_lhs_positive')

	def reduced(x: float) -> float:
		w = math.exp(math.log(x) / n) if x > 0 else 0.0
		return 1.0 - x + 4.0 / (5.0 - x) + n * w / 3.0

	x, value = grid_then_golden_max(reduced, np.union1d(np.linspace(0.0, 1.0, 2001), np.geomspace(1e-12, 1.0, 500)), OPT_TOLERANCE)
	w = math.exp(math.log(x) / n) if x > 0 else 0.0
	if check_bracket and n >= POSITIVE_BRACKET_MIN_N and not POSITIVE_BRACKET[0] <= x <= POSITIVE_BRACKET[1]:
		raise RusmException(f'gap_lhs_positive({n}): the maximizing w^n = {x:.6g} is outside [{POSITIVE_BRACKET[0]}, {POSITIVE_BRACKET[1]}]')
	return GapLhs(value, {'z': 1.0 - 2.0 / (5.0 - x), 'w': w, 'w_pow_n': x})


def gap_lhs(descriptor: HardInstanceDescriptor) -> GapLhs:
	"""Left side of the gap inequality for the descriptor's family."""
	if descriptor.family == HardFamily.monotone_sec3:
		return gap_lhs_monotone(descriptor.n, descriptor.r)
	if descriptor.family == HardFamily.negative_sec5:
		return gap_lhs_negative(descriptor.n, descriptor.t, descriptor.r)
	return gap_lhs_positive(descriptor.n)


# Right side ______________________________________________________________________________________


def hard_blocks(descriptor: HardInstanceDescriptor) -> List[List[int]]:
	"""Element blocks on which g of the family depends through emptiness / fullness only."""
	n = descriptor.n
	if descriptor.family == HardFamily.monotone_sec3:
		return [list(range(n))]
	if descriptor.family == HardFamily.negative_sec5:
		return [[0], [1], list(range(2, n + 2)), list(range(n + 2, 2 * n + 2))]
	return [[0], [1], list(range(2, n + 2))]


def block_representatives(descriptor: HardInstanceDescriptor) -> List[SubsetMask]:
	"""Representative sets with per-block cardinalities in {0, 1, size - 1, size}.
	g only sees whether a block is empty or full, and l is uniform on each block,
	so the maximum of alpha * g + beta * l over all the sets is attained on a representative."""
	choices = []
	for block in hard_blocks(descriptor):
		size = len(block)
		prefixes = []
		for count in sorted({0, 1, size - 1, size}):
			prefixes.append(sum(1 << u for u in block[:count]))
		choices.append(prefixes)
	return [sum(parts) for parts in itertools.product(*choices)]


def gap_rhs(bundle: InstanceBundle, alpha: float, beta: float) -> Tuple[float, SubsetMask]:
	"""max_S [alpha * g(S) + beta * l(S)] over the block representatives. Returns (value, maximizing set), the first maximum wins."""
	instance = bundle.instance
	best_mask, best_value = None, -math.inf
	for mask in block_representatives(bundle.descriptor):
		value = alpha * instance.g_value(mask) + beta * instance.ell_value(mask)
		if value > best_value:
			best_mask, best_value = mask, value
	return best_value, best_mask


def verify_gap(descriptor: HardInstanceDescriptor, alpha: float, beta: float, slack: float = 0.0, brute_limit: int = DEFAULT_BRUTE_LIMIT, logger: RunLogger = None) -> GapEvaluation:
	"""Evaluates both sides of max_x [G(x) + L(x)] <= max_S [alpha * g(S) + beta * l(S)].
	The slack allows for the finite-n deviation of the asymptotic parameter choices, 10/n at large n.
	Ground sets up to brute_limit elements cross-check the right side by full enumeration."""
	assert_in_range(alpha, 'alpha', -math.inf, math.inf, context='verify_gap')
	assert_in_range(beta, 'beta', -math.inf, math.inf, context='verify_gap')
	bundle = make_hard_instance(descriptor)
	lhs = gap_lhs(descriptor)
	rhs, rhs_set = gap_rhs(bundle, alpha, beta)
	evaluation = GapEvaluation(descriptor, alpha, beta, lhs, rhs, rhs_set, slack)
	if descriptor.ground_size <= brute_limit:
		_, brute = brute_force_opt(bundle.instance, alpha, beta, brute_limit)
		if abs(brute - rhs) > 1e-9 * max(1.0, abs(rhs)):
			raise RusmException(f'verify_gap: block-representative maximum {rhs!r} differs from the enumerated maximum {brute!r}')
		evaluation.rhs_brute = brute
	if logger:
		logger.info(None, None, f'Gap {descriptor.family.name}', f"lhs={evaluation.lhs:.9g}, rhs={rhs:.9g}, slack={slack:.3g}: {'pass' if evaluation.passed else 'FAIL'}")
	return evaluation
