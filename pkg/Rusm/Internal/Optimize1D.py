"""Golden-section search and the grid-bracketed variants used by the frontier and gap evaluations."""

import math
from typing import Callable, Tuple, Sequence

import numpy as np

from .RusmErrors import ParameterDomainError

INV_PHI = (math.sqrt(5) - 1) / 2
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2
DEFAULT_TOLERANCE = 1e-9


def golden_section_min(f: Callable[[float], float], a: float, b: float, tol: float = DEFAULT_TOLERANCE) -> Tuple[float, float]:
	"""Minimum of the unimodal f on [a, b]. Returns (argmin, min).
	The number of steps follows from the tolerance on the argument. The end points are compared at the end,
	so a monotone f returns its boundary minimum."""
	if tol <= 0:
		raise ParameterDomainError('tol', f'Golden-section tolerance must be positive, actual value: {tol}')
	a, b = min(a, b), max(a, b)
	lo, hi = a, b
	h = b - a
	if h > tol:
		steps = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))
		c = a + INV_PHI_SQUARE * h
		d = a + INV_PHI * h
		yc = f(c)
		yd = f(d)
		for _ in range(steps - 1):
			h *= INV_PHI
			if yc < yd:
				b, d, yd = d, c, yc
				c = a + INV_PHI_SQUARE * h
				yc = f(c)
			else:
				a, c, yc = c, d, yd
				d = a + INV_PHI * h
				yd = f(d)
		if yc < yd:
			b = d
		else:
			a = c
	x = (a + b) / 2
	best = x, f(x)
	for end in (lo, hi):
		value = f(end)
		if value < best[1]:
			best = end, value
	return best


def golden_section_max(f: Callable[[float], float], a: float, b: float, tol: float = DEFAULT_TOLERANCE) -> Tuple[float, float]:
	"""Maximum of the unimodal f on [a, b]. Returns (argmax, max)."""
	x, value = golden_section_min(lambda v: -f(v), a, b, tol)
	return x, -value


def grid_then_golden_max(f: Callable[[float], float], grid: Sequence[float], tol: float = DEFAULT_TOLERANCE) -> Tuple[float, float]:
	"""Evaluates f on the sorted grid, then refines the best grid point by golden-section search
	between its two neighbours. Returns (argmax, max), never worse than the best grid point."""
	points = np.unique(np.asarray(grid, dtype=float))
	if len(points) == 0:
		raise ParameterDomainError('grid', 'Search grid must not be empty')
	values = np.array([f(x) for x in points])
	ix = int(np.argmax(values))
	best = float(points[ix]), float(values[ix])
	if len(points) == 1:
		return best
	lo = points[max(ix - 1, 0)]
	hi = points[min(ix + 1, len(points) - 1)]
	refined = golden_section_max(f, float(lo), float(hi), tol)
	return refined if refined[1] >= best[1] else best


def grid_then_golden_min(f: Callable[[float], float], grid: Sequence[float], tol: float = DEFAULT_TOLERANCE) -> Tuple[float, float]:
	"""Minimization counterpart of grid_then_golden_max()."""
	x, value = grid_then_golden_max(lambda v: -f(v), grid, tol)
	return x, -value
