import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from supchar.fields import field_make
from supchar import triangular as tri
from supchar.superclasses import superclass_partition

# (n, p, k) for every configuration the oracle-equivalence gate covers
ACCEPTANCE_CONFIGS = [
    (2, 2, 1),
    (2, 3, 1),
    (2, 2, 2),
    (3, 2, 1),
    (3, 3, 1),
    (4, 2, 1),
]

_fields = {}
_specs = {}
_partitions = {}


def get_field(p, k=1):
    key = (p, k)
    if key not in _fields:
        _fields[key] = field_make(p, k)
    return _fields[key]


def get_spec(n, p, k=1):
    key = (n, p, k)
    if key not in _specs:
        _specs[key] = tri.make_triangular(n, get_field(p, k))
    return _specs[key]


def get_partition(n, p, k=1):
    key = (n, p, k)
    if key not in _partitions:
        _partitions[key] = superclass_partition(get_spec(n, p, k))
    return _partitions[key]


@pytest.fixture(scope="session")
def acceptance_configs():
    return list(ACCEPTANCE_CONFIGS)
