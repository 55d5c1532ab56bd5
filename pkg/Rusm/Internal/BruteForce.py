"""Exact optimizer by full enumeration, the reference for every guarantee check."""

from typing import Tuple, Sequence, List

import numpy as np

from .GroundSet import SubsetMask
from .SetFunctions import RusmInstance, DEFAULT_TABLE_LIMIT
from .SolverReport import SolverReport
from .ContextManagers import QueryCountScope
from .RusmErrors import assert_exact_limit


def brute_force_values(instance: RusmInstance, alpha: float, beta: float, limit: int = DEFAULT_TABLE_LIMIT) -> np.ndarray:
	"""Returns the vector of alpha * g(S) + beta * l(S) over all the masks."""
	assert_exact_limit(instance.n, limit, 'brute_force_opt')
	return alpha * instance.g_table(limit) + beta * instance.ell_table(limit)


def brute_force_opt(instance: RusmInstance, alpha: float = 1.0, beta: float = 1.0, limit: int = DEFAULT_TABLE_LIMIT) -> Tuple[SubsetMask, float]:
	"""Returns the argmax and the max of alpha * g(S) + beta * l(S) over all S.
	Ties are broken by the smallest mask value. The first call on an instance costs 2^n queries, the g table is cached."""
	values = brute_force_values(instance, alpha, beta, limit)
	best = int(np.argmax(values))
	return best, float(values[best])


def brute_force_many(instance: RusmInstance, targets: Sequence[Tuple[float, float]], limit: int = DEFAULT_TABLE_LIMIT) -> List[Tuple[SubsetMask, float]]:
	"""Returns brute_force_opt() for each (alpha, beta) target."""
	return [brute_force_opt(instance, alpha, beta, limit) for alpha, beta in targets]


def brute_force_solve(instance: RusmInstance, limit: int = DEFAULT_TABLE_LIMIT) -> SolverReport:
	"""Solver wrapper: the exact maximizer of g + l as SolverReport."""
	with QueryCountScope(instance.g) as scope:
		best, _ = brute_force_opt(instance, 1.0, 1.0, limit)
		g_value = float(instance.g_table(limit)[best])
	return SolverReport('brute', best, g_value, instance.ell_value(best), scope.count)
