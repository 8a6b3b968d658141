"""Python interface to the orbitsolve library.

Templates and reducts are named by catalog id or by a path to a JSON file.
Instances may be given as a dict in the instance format or as a path.
Results come back as plain dicts and lists.
"""

import json
import os

from . import _core
from ._core import CapacityError, InputError, default_capacity

__all__ = [
    "CapacityError",
    "InputError",
    "catalog_export",
    "catalog_list",
    "default_capacity",
    "minimality",
    "oracle",
    "orbit_count",
    "orbits",
    "reduce",
    "run_suite",
    "solve",
    "suite_names",
]


def _instance_text(instance):
    if isinstance(instance, (str, os.PathLike)):
        with open(instance, encoding="utf-8") as f:
            return f.read()
    return json.dumps(instance)


def orbit_count(template, n, capacity=default_capacity):
    return _core.orbit_count(str(template), n, capacity)


def orbits(template, n, capacity=default_capacity):
    return json.loads(_core.orbits(str(template), n, capacity))


def oracle(reduct, instance, weak_order=False, capacity=default_capacity):
    return json.loads(_core.oracle(str(reduct), _instance_text(instance), weak_order, capacity))


def minimality(reduct, instance, a=2, b=3, domains=False, reverse=False, capacity=default_capacity):
    text = _core.minimality(str(reduct), _instance_text(instance), a, b, domains, reverse, capacity)
    return json.loads(text)


def reduce(reduct, instance, window=None, capacity=default_capacity):
    return json.loads(_core.reduce(str(reduct), _instance_text(instance), window, capacity))


def solve(template, instance, node_budget=None, capacity=default_capacity):
    args = [str(template), _instance_text(instance)]
    if node_budget is not None:
        args.append(node_budget)
    return json.loads(_core.solve(*args, capacity=capacity))


def suite_names():
    return _core.suite_names()


def run_suite(name):
    return json.loads(_core.run_suite(name))


def catalog_list():
    return json.loads(_core.catalog_list())


def catalog_export(entry_id):
    return json.loads(_core.catalog_export(entry_id))
