"""Reading and writing of instance JSON documents.

Document layout: {"n": 6, "g": {"kind": "cut", "params": {...}}, "ell": [w_0, ..., w_5]}, optionally "labels".
Kinds and params:
	monotone_sec3: {"n", "r"}
	negative_sec5: {"n", "t", "r"}
	positive_sec61: {"n"}
	cut: {"edges": [[u, v, weight], ...]}
	coverage: {"sets": [[item, ...], ...], "universe": [item, ...], "values": [value, ...]}
	table: {"values": [g(mask) for mask in 0..2^n - 1]}
Generated families are rebuilt from their parameters, never tabulated."""

import json
import math
import numbers
from typing import Dict, List, Mapping

from .GroundSet import GroundSet
from .Instances import HardFamily, HardInstanceDescriptor, make_hard_instance, hard_ell_weights, make_cut_instance, make_coverage_instance
from .SetFunctions import RusmInstance, LinearWeights, TableOracle, InstanceFlags
from .RusmErrors import RusmException, SchemaError, InstanceFileError

KINDS = [x.name for x in HardFamily] + ['cut', 'coverage', 'table']


def _require(doc: Mapping, key: str, path: str):
	if not isinstance(doc, Mapping):
		raise SchemaError(path or '$', f"Field '{path or '$'}' must be an object")
	if key not in doc:
		field = f'{path}.{key}' if path else key
		raise SchemaError(field, f"Missing field '{field}'")
	return doc[key]


def _number(value, path: str) -> float:
	if isinstance(value, bool) or not isinstance(value, numbers.Real) or math.isnan(value) or math.isinf(value):
		raise SchemaError(path, f"Field '{path}' must be a finite number, actual value: {value!r}")
	return float(value)


def _integer(value, path: str, minimum: int) -> int:
	if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
		raise SchemaError(path, f"Field '{path}' must be an integer >= {minimum}, actual value: {value!r}")
	return value


def _number_list(value, path: str) -> List[float]:
	if not isinstance(value, list):
		raise SchemaError(path, f"Field '{path}' must be a list of numbers")
	return [_number(x, f'{path}[{ix}]') for ix, x in enumerate(value)]


def _hard_instance(kind: str, params: Mapping, n: int, ell: List[float]) -> RusmInstance:
	family = HardFamily[kind]
	block_n = _integer(_require(params, 'n', 'g.params'), 'g.params.n', 1)
	r = _number(_require(params, 'r', 'g.params'), 'g.params.r') if family != HardFamily.positive_sec61 else None
	t = _number(_require(params, 't', 'g.params'), 'g.params.t') if family == HardFamily.negative_sec5 else None
	try:
		descriptor = HardInstanceDescriptor(family, block_n, r=r, t=t)
	except RusmException as e:
		raise SchemaError(f'g.params.{getattr(e, "param_name", "n")}', e.message)
	if descriptor.ground_size != n:
		raise SchemaError('n', f"Field 'n' = {n} differs from the ground set size {descriptor.ground_size} of {kind} with block size {block_n}")
	expected = hard_ell_weights(descriptor)
	if any(abs(a - b) > 1e-12 for a, b in zip(ell, expected)):
		raise SchemaError('ell', f"Field 'ell' does not match the weights implied by {kind}: {expected}")
	return make_hard_instance(descriptor).instance


def _cut_instance(params: Mapping, ell: List[float]) -> RusmInstance:
	edges = _require(params, 'edges', 'g.params')
	if not isinstance(edges, list):
		raise SchemaError('g.params.edges', "Field 'g.params.edges' must be a list of [u, v, weight]")
	parsed = []
	for ix, edge in enumerate(edges):
		path = f'g.params.edges[{ix}]'
		if not isinstance(edge, list) or len(edge) not in (2, 3):
			raise SchemaError(path, f"Field '{path}' must be [u, v] or [u, v, weight]")
		u = _integer(edge[0], f'{path}[0]', 0)
		v = _integer(edge[1], f'{path}[1]', 0)
		if u >= len(ell) or v >= len(ell):
			raise SchemaError(path, f"Field '{path}' has a node outside 0..{len(ell) - 1}")
		w = _number(edge[2], f'{path}[2]') if len(edge) == 3 else 1.0
		if w < 0:
			raise SchemaError(f'{path}[2]', f"Field '{path}[2]' must be a non-negative weight, actual value: {w}")
		parsed.append((u, v, w))
	return make_cut_instance(parsed, ell)


def _coverage_instance(params: Mapping, ell: List[float]) -> RusmInstance:
	sets = _require(params, 'sets', 'g.params')
	if not isinstance(sets, list) or len(sets) != len(ell):
		raise SchemaError('g.params.sets', f"Field 'g.params.sets' must be a list of {len(ell)} lists of items")
	for ix, s in enumerate(sets):
		if not isinstance(s, list):
			raise SchemaError(f'g.params.sets[{ix}]', f"Field 'g.params.sets[{ix}]' must be a list of items")
	universe = params.get('universe')
	values = params.get('values')
	element_values = None
	if universe is not None or values is not None:
		if not isinstance(universe, list):
			raise SchemaError('g.params.universe', "Field 'g.params.universe' must be a list of items")
		values = _number_list(values, 'g.params.values')
		if len(values) != len(universe):
			raise SchemaError('g.params.values', f"Field 'g.params.values' must have one value per universe item, {len(universe)} items")
		if any(x < 0 for x in values):
			raise SchemaError('g.params.values', "Field 'g.params.values' must be non-negative")
		element_values = dict(zip(universe, values))
	# JSON lists are not hashable, items are either scalars or strings
	for ix, s in enumerate(sets):
		for jx, item in enumerate(s):
			if isinstance(item, (list, dict)):
				raise SchemaError(f'g.params.sets[{ix}][{jx}]', 'Coverage items must be numbers or strings')
	return make_coverage_instance(sets, element_values, ell)


def _table_instance(params: Mapping, n: int, ell: List[float]) -> RusmInstance:
	values = _number_list(_require(params, 'values', 'g.params'), 'g.params.values')
	if len(values) != 1 << n:
		raise SchemaError('g.params.values', f"Field 'g.params.values' must have 2^{n} = {1 << n} values, actual count: {len(values)}")
	flags = InstanceFlags(nonneg=None, submodular=None)
	return RusmInstance(TableOracle(values), LinearWeights(ell), flags=flags)


def instance_from_document(doc: Mapping) -> RusmInstance:
	"""Builds the instance from the JSON document. Throws SchemaError naming the offending field."""
	n = _integer(_require(doc, 'n', ''), 'n', 1)
	ell = _number_list(_require(doc, 'ell', ''), 'ell')
	if len(ell) != n:
		raise SchemaError('ell', f"Field 'ell' must have n = {n} weights, actual count: {len(ell)}")
	g = _require(doc, 'g', '')
	kind = _require(g, 'kind', 'g')
	if kind not in KINDS:
		raise SchemaError('g.kind', f"Unknown kind '{kind}'. Valid values: {', '.join(KINDS)}")
	params = g.get('params', {})
	if not isinstance(params, Mapping):
		raise SchemaError('g.params', "Field 'g.params' must be an object")
	if kind in HardFamily.__members__:
		instance = _hard_instance(kind, params, n, ell)
	elif kind == 'cut':
		instance = _cut_instance(params, ell)
	elif kind == 'coverage':
		instance = _coverage_instance(params, ell)
	else:
		instance = _table_instance(params, n, ell)
	labels = doc.get('labels')
	if labels is not None:
		if not isinstance(labels, list) or len(labels) != n or not all(isinstance(x, str) for x in labels):
			raise SchemaError('labels', f"Field 'labels' must be a list of {n} strings")
		instance = RusmInstance(instance.g, instance.ell, GroundSet(n, labels), instance.flags)
	return instance


def instance_to_document(instance: RusmInstance) -> Dict:
	"""Returns the JSON document of the instance. Throws SchemaError for oracles without a descriptor."""
	doc = instance.descriptor()
	if doc is None:
		raise SchemaError('g', f"Oracle kind '{instance.g.kind}' can not be serialized, tabulate it first")
	if instance.ground.labels and instance.g.kind in ('cut', 'coverage', 'table'):
		doc['labels'] = list(instance.ground.labels)
	return doc


def load_instance(path: str) -> RusmInstance:
	"""Reads the instance from the UTF-8 JSON file."""
	try:
		with open(path, 'r', encoding='utf-8') as file:
			doc = json.load(file)
	except OSError as e:
		raise InstanceFileError(path, f"Instance file '{path}' can not be read: {e}")
	except ValueError as e:
		raise InstanceFileError(path, f"Instance file '{path}' is not valid JSON: {e}")
	return instance_from_document(doc)


def save_instance(instance: RusmInstance, path: str) -> None:
	"""Writes the instance as UTF-8 JSON file."""
	doc = instance_to_document(instance)
	with open(path, 'w', encoding='utf-8') as file:
		json.dump(doc, file, indent=2)
		file.write('\n')
