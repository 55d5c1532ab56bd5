"""Brute-force validators of the declared instance properties. Validators report violations, they never repair them."""

from enum import Enum
from typing import Dict, List

import numpy as np

from .GroundSet import SubsetMask
from .SetFunctions import RusmInstance, EllSign
from .Symmetry import PermutationGroup
from .RusmErrors import assert_exact_limit
from . import Conversions

VALIDATOR_LIMIT = 14
LATTICE_LIMIT = 12
TOLERANCE = 1e-9


class InstanceProperty(Enum):
	"""Properties the validators can check."""
	nonneg = 1
	submodular = 2
	submodular_lattice = 3
	monotone = 4
	ell_sign = 5
	ell_nonneg = 6
	ell_nonpos = 7
	group_invariant = 8


class ValidationReport(object):
	"""Result of one validation: passed flag, and for a failure the first violating witness.
	Witness keys: 'S', 'T' (subset masks) and 'u' (element index), depending on the property."""

	def __init__(self, prop: InstanceProperty, passed: bool, witness: Dict or None = None, message: str = ''):
		self.property = prop
		self.passed = passed
		self.witness = witness
		self.message = message

	def __bool__(self) -> bool:
		return self.passed

	def __repr__(self):
		return f'ValidationReport({self.property.name}, passed={self.passed}, witness={self.witness})'

	def __str__(self):
		state = 'PASS' if self.passed else 'FAIL'
		return f'{self.property.name}: {state}' + (f' - {self.message}' if self.message else '')

	def to_dict(self) -> Dict:
		"""JSON-ready dictionary."""
		return {'property': self.property.name, 'passed': self.passed, 'witness': self.witness, 'message': self.message}


def _parse_property(prop: InstanceProperty or str) -> InstanceProperty:
	if isinstance(prop, InstanceProperty):
		return prop
	value = Conversions.str_to_simple_scalar_enum(prop, InstanceProperty, case_sensitive=False, ignore_underscores=True)
	if value is None:
		raise ValueError(f"Unknown property '{prop}'. Valid values: {', '.join(x.name for x in InstanceProperty)}")
	return value


def _fmt(instance: RusmInstance, mask: SubsetMask) -> str:
	return instance.ground.format(mask)


def check_nonneg(instance: RusmInstance, tolerance: float = TOLERANCE, limit: int = VALIDATOR_LIMIT) -> ValidationReport:
	"""g(S) >= 0 for every S."""
	assert_exact_limit(instance.n, limit, 'nonneg validator')
	table = instance.g_table()
	bad = np.flatnonzero(table < -tolerance)
	if len(bad) == 0:
		return ValidationReport(InstanceProperty.nonneg, True)
	s = int(bad[0])
	return ValidationReport(InstanceProperty.nonneg, False, {'S': s}, f'g({_fmt(instance, s)}) = {table[s]} < 0')


def check_submodular(instance: RusmInstance, tolerance: float = TOLERANCE, limit: int = VALIDATOR_LIMIT) -> ValidationReport:
	"""Marginal form over neighbouring pairs: g(u | S) >= g(u | S + v) for every S and u, v not in S.
	Equivalent to the lattice inequality, at O(2^n n^2) cost. The witness is (S, T = S + v, u)."""
	n = instance.n
	assert_exact_limit(n, limit, 'submodular validator')
	table = instance.g_table()
	masks = np.arange(1 << n, dtype=np.int64)
	for u in range(n):
		bu = 1 << u
		for v in range(u + 1, n):
			bv = 1 << v
			s = masks[(masks & (bu | bv)) == 0]
			excess = table[s | bu | bv] + table[s] - table[s | bu] - table[s | bv]
			bad = np.flatnonzero(excess > tolerance)
			if len(bad):
				first = int(s[bad[0]])
				witness = {'S': first, 'T': first | bv, 'u': u}
				message = f'g({instance.ground.label(u)} | {_fmt(instance, first)}) < g({instance.ground.label(u)} | {_fmt(instance, first | bv)}) by {excess[bad[0]]:.6g}'
				return ValidationReport(InstanceProperty.submodular, False, witness, message)
	return ValidationReport(InstanceProperty.submodular, True)


def check_submodular_lattice(instance: RusmInstance, tolerance: float = TOLERANCE, limit: int = LATTICE_LIMIT) -> ValidationReport:
	"""Lattice form g(S) + g(T) >= g(S | T) + g(S & T) over all the pairs (S, T), O(4^n)."""
	n = instance.n
	assert_exact_limit(n, limit, 'lattice submodular validator')
	table = instance.g_table()
	masks = np.arange(1 << n, dtype=np.int64)
	for s in range(1 << n):
		excess = table[masks | s] + table[masks & s] - table[s] - table
		bad = np.flatnonzero(excess > tolerance)
		if len(bad):
			t = int(bad[0])
			message = f'g(S) + g(T) < g(S | T) + g(S & T) by {excess[t]:.6g} for S = {_fmt(instance, s)}, T = {_fmt(instance, t)}'
			return ValidationReport(InstanceProperty.submodular_lattice, False, {'S': s, 'T': t}, message)
	return ValidationReport(InstanceProperty.submodular_lattice, True)


def check_monotone(instance: RusmInstance, tolerance: float = TOLERANCE, limit: int = VALIDATOR_LIMIT) -> ValidationReport:
	"""g(S + u) >= g(S) for every S and u. The witness is (S, u)."""
	n = instance.n
	assert_exact_limit(n, limit, 'monotone validator')
	table = instance.g_table()
	masks = np.arange(1 << n, dtype=np.int64)
	for u in range(n):
		bu = 1 << u
		s = masks[(masks & bu) == 0]
		drop = table[s] - table[s | bu]
		bad = np.flatnonzero(drop > tolerance)
		if len(bad):
			first = int(s[bad[0]])
			message = f'Adding {instance.ground.label(u)} to {_fmt(instance, first)} decreases g by {drop[bad[0]]:.6g}'
			return ValidationReport(InstanceProperty.monotone, False, {'S': first, 'u': u}, message)
	return ValidationReport(InstanceProperty.monotone, True)


def check_ell_sign(instance: RusmInstance, sign: EllSign = None) -> ValidationReport:
	"""Checks the weights of l against the sign class, by default the declared one. The witness is the element u."""
	sign = sign if sign is not None else instance.flags.ell_sign
	prop = {EllSign.nonneg: InstanceProperty.ell_nonneg, EllSign.nonpos: InstanceProperty.ell_nonpos}.get(sign, InstanceProperty.ell_sign)
	weights = instance.ell.weights
	if sign == EllSign.mixed:
		return ValidationReport(prop, True)
	if sign == EllSign.zero:
		bad = np.flatnonzero(weights != 0.0)
	elif sign == EllSign.nonneg:
		bad = np.flatnonzero(weights < 0.0)
	else:
		bad = np.flatnonzero(weights > 0.0)
	if len(bad) == 0:
		return ValidationReport(prop, True)
	u = int(bad[0])
	return ValidationReport(prop, False, {'u': u}, f'Weight of {instance.ground.label(u)} is {weights[u]}, expected sign class {sign.name}')


def validate(instance: RusmInstance, prop: InstanceProperty or str, tolerance: float = TOLERANCE, limit: int = VALIDATOR_LIMIT) -> ValidationReport:
	"""Runs one validator, the property can be entered as string, e.g. 'submodular'."""
	prop = _parse_property(prop)
	if prop == InstanceProperty.nonneg:
		return check_nonneg(instance, tolerance, limit)
	if prop == InstanceProperty.submodular:
		return check_submodular(instance, tolerance, limit)
	if prop == InstanceProperty.submodular_lattice:
		return check_submodular_lattice(instance, tolerance, min(limit, LATTICE_LIMIT))
	if prop == InstanceProperty.monotone:
		return check_monotone(instance, tolerance, limit)
	if prop == InstanceProperty.ell_nonneg:
		return check_ell_sign(instance, EllSign.nonneg)
	if prop == InstanceProperty.ell_nonpos:
		return check_ell_sign(instance, EllSign.nonpos)
	if prop == InstanceProperty.group_invariant:
		raise ValueError("Group invariance needs the group, use check_group_invariance()")
	return check_ell_sign(instance)


def _declared_report(prop: InstanceProperty, declared: bool, report: ValidationReport) -> ValidationReport:
	if declared:
		return report
	message = f'declared non-{prop.name}' + (f': {report.message}' if report.message else '')
	return ValidationReport(prop, not report.passed, report.witness, message)


def validate_declared(instance: RusmInstance, tolerance: float = TOLERANCE, limit: int = VALIDATOR_LIMIT) -> List[ValidationReport]:
	"""Validates every declared flag of the instance.
	A flag declared False must fail its validator, the returned report then passes if it did."""
	flags = instance.flags
	checks = [
		(InstanceProperty.nonneg, flags.nonneg, check_nonneg),
		(InstanceProperty.submodular, flags.submodular, check_submodular),
		(InstanceProperty.monotone, flags.monotone, check_monotone),
	]
	reports = []
	for prop, declared, validator in checks:
		if declared is not None:
			reports.append(_declared_report(prop, declared, validator(instance, tolerance, limit)))
	reports.append(check_ell_sign(instance))
	return reports


def check_group_invariance(instance: RusmInstance, group: PermutationGroup, limit: int = VALIDATOR_LIMIT) -> ValidationReport:
	"""Checks g(sigma(S)) = g(S) and l(sigma(S)) = l(S) exactly, for all S and every generator sigma of the group.
	The witness is (S, generator index)."""
	n = instance.n
	assert_exact_limit(n, limit, 'group invariance validator')
	g_table = instance.g_table()
	ell_table = instance.ell_table()
	masks = np.arange(1 << n, dtype=np.int64)
	for ix, perm in enumerate(group.generators):
		images = np.zeros(1 << n, dtype=np.int64)
		for u in range(n):
			images |= ((masks >> u) & 1) << perm[u]
		bad = np.flatnonzero((g_table[images] != g_table) | (ell_table[images] != ell_table))
		if len(bad):
			s = int(bad[0])
			message = f'Generator {ix} maps {_fmt(instance, s)} to {_fmt(instance, int(images[s]))} with a different value'
			return ValidationReport(InstanceProperty.group_invariant, False, {'S': s, 'generator': ix}, message)
	return ValidationReport(InstanceProperty.group_invariant, True)
