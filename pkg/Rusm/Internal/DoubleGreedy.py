"""Deterministic and randomized Double Greedy for f = g + l, with the exact expectation of the randomized variant."""

from typing import Sequence, List, Tuple

import numpy as np

from .GroundSet import SubsetMask
from .SetFunctions import RusmInstance
from .SolverReport import SolverReport, DgTrace, DgStep, MoveKind
from .ContextManagers import QueryCountScope
from .RunLogger import RunLogger
from .RusmErrors import assert_permutation, assert_exact_limit
from .Utilities import popcount

DG_EXACT_LIMIT = 20


def _resolve_order(instance: RusmInstance, element_order: Sequence[int] or None) -> List[int]:
	if element_order is None:
		return list(range(instance.n))
	order = [int(u) for u in element_order]
	assert_permutation(order, instance.n, 'double greedy')
	return order


def _double_greedy(instance: RusmInstance, order: List[int], rng: np.random.Generator or None, logger: RunLogger or None) -> Tuple[SubsetMask, float, DgTrace]:
	"""Single pass over the order. rng None selects the deterministic rule a >= b.
	Every step queries g(X + u), g(X), g(Y - u) and g(Y). The values of the sets in the trace come from these queries."""
	g = instance.g
	w = instance.ell.weights
	trace = DgTrace()
	x = 0
	y = instance.ground.full
	gx = gy = 0.0
	for i, u in enumerate(order, start=1):
		bit = 1 << u
		gx_add = g.evaluate(x | bit)
		gx = g.evaluate(x)
		gy_rem = g.evaluate(y & ~bit)
		gy = g.evaluate(y)
		if i == 1:
			trace.record_sets(x, y, gx + instance.ell_value(x), gy + instance.ell_value(y))
		a = gx_add - gx + w[u]
		b = gy_rem - gy - w[u]
		if rng is None:
			add = a >= b
			probability = 1.0 if add else 0.0
		elif b <= 0:
			add, probability = True, 1.0
		elif a <= 0:
			add, probability = False, 0.0
		else:
			probability = a / (a + b)
			add = bool(rng.random() < probability)
		if add:
			x |= bit
			gx = gx_add
		else:
			y &= ~bit
			gy = gy_rem
		decision = MoveKind.add if add else MoveKind.remove
		trace.steps.append(DgStep(i, u, float(a), float(b), decision, popcount(x), popcount(y), probability))
		trace.record_sets(x, y, gx + instance.ell_value(x), gy + instance.ell_value(y))
		if logger:
			logger.info(None, None, f'Step {i}', f'{decision.name} {instance.ground.label(u)}, a={a:.6g}, b={b:.6g}')
	return x, gx, trace


def double_greedy_det(instance: RusmInstance, element_order: Sequence[int] = None, logger: RunLogger = None) -> SolverReport:
	"""Deterministic Double Greedy: X_0 = empty, Y_0 = N. For each element u of the order,
	with a = f(u | X) and b = -f(u | Y - u), adds u to X if a >= b, otherwise removes it from Y.
	Exactly 4 queries per element. The output is X_n = Y_n."""
	order = _resolve_order(instance, element_order)
	with QueryCountScope(instance.g) as scope:
		x, gx, trace = _double_greedy(instance, order, None, logger)
	report = SolverReport('dg-det', x, gx, instance.ell_value(x), scope.count)
	report.dg_trace = trace
	return report


def double_greedy_rand(instance: RusmInstance, element_order: Sequence[int] = None, rng: np.random.Generator = None, seed: int = None, logger: RunLogger = None) -> SolverReport:
	"""Randomized Double Greedy. For each element u: if b <= 0 add u to X, else if a <= 0 remove u from Y,
	else add with the probability a / (a + b). a = b = 0 adds.
	One uniform draw is consumed per randomized decision only."""
	order = _resolve_order(instance, element_order)
	if rng is None:
		rng = np.random.default_rng(seed)
	with QueryCountScope(instance.g) as scope:
		x, gx, trace = _double_greedy(instance, order, rng, logger)
	report = SolverReport('dg-rand', x, gx, instance.ell_value(x), scope.count, seed)
	report.dg_trace = trace
	return report


def double_greedy_rand_distribution(instance: RusmInstance, element_order: Sequence[int] = None, limit: int = DG_EXACT_LIMIT) -> List[Tuple[SubsetMask, float]]:
	"""Returns the output distribution of the randomized Double Greedy as list of (X_n, probability),
	by enumerating its decision tree. The tree has at most 2^n leaves.
	g values are memoized, each distinct set is queried once."""
	order = _resolve_order(instance, element_order)
	assert_exact_limit(len(order), limit, 'double_greedy_rand_expectation')
	memo = {}
	w = instance.ell.weights

	def g_value(mask: SubsetMask) -> float:
		value = memo.get(mask)
		if value is None:
			value = instance.g.evaluate(mask)
			memo[mask] = value
		return value

	# Depth-first over the states (step, X, Y, probability), leaves in the order of decisions add-first
	leaves: List[Tuple[SubsetMask, float]] = []
	stack = [(0, 0, instance.ground.full, 1.0)]
	while stack:
		i, x, y, prob = stack.pop()
		if i == len(order):
			leaves.append((x, prob))
			continue
		u = order[i]
		bit = 1 << u
		a = g_value(x | bit) - g_value(x) + w[u]
		b = g_value(y & ~bit) - g_value(y) - w[u]
		if b <= 0:
			stack.append((i + 1, x | bit, y, prob))
		elif a <= 0:
			stack.append((i + 1, x, y & ~bit, prob))
		else:
			p = a / (a + b)
			stack.append((i + 1, x, y & ~bit, prob * (1.0 - p)))
			stack.append((i + 1, x | bit, y, prob * p))
	return leaves


def double_greedy_rand_expectation(instance: RusmInstance, element_order: Sequence[int] = None, limit: int = DG_EXACT_LIMIT) -> float:
	"""Returns the exact expected value E[f(output)] of the randomized Double Greedy."""
	leaves = double_greedy_rand_distribution(instance, element_order, limit)
	return float(sum(prob * instance.value(x) for x, prob in leaves))
