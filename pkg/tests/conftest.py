from fractions import Fraction

import numpy as np
import pytest

from smallcancel.models import ConstructionParams, GroupSpec
from smallcancel.services.cancellation import verify_cprime
from smallcancel.services.polish_group import materialize_family, parse_perm


@pytest.fixture(scope="session")
def trivial_family():
    """Family of the trivial group, k in {2, 3}, n_rep = 80, certified C'(1/10)."""
    family = materialize_family(GroupSpec(), ConstructionParams(n_rep=80, k_min=2, k_max=3))
    certificate = verify_cprime(family, Fraction(1, 10))
    assert certificate.passed
    return family


@pytest.fixture(scope="session")
def certified_families():
    """Trivial-group families at n_rep = 80 keyed by (k_min, k_max), each certified C'(1/10) on first use."""
    cache = {}

    def build(k_min, k_max):
        if (k_min, k_max) not in cache:
            family = materialize_family(GroupSpec(), ConstructionParams(n_rep=80, k_min=k_min, k_max=k_max))
            assert verify_cprime(family, Fraction(1, 10)).passed
            cache[(k_min, k_max)] = family
        return cache[(k_min, k_max)]

    return build


@pytest.fixture(scope="session")
def small_family():
    """Short relators (n_rep = 2) over the trivial group; not C'(1/6)."""
    return materialize_family(GroupSpec(), ConstructionParams(n_rep=2, k_min=2, k_max=3))


@pytest.fixture(scope="session")
def s3_spec():
    return GroupSpec(generators=(parse_perm("(0 1)"), parse_perm("(1 2)")), closure_depth=4)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def group_files(tmp_path):
    """Spec files for nested groups P <= Q <= R on five points."""
    files = {
        "trivial": "depth=0\n",
        "p": "# cyclic of order 3\ndepth=6\n(0 1 2)\n",
        "q": "depth=8\n(0 1 2)\n(3 4)\n",
        "r": "depth=12\n(0 1 2)\n(0 1)\n(3 4)\n",
    }
    paths = {}
    for name, body in files.items():
        path = tmp_path / f"{name}.group"
        path.write_text(body)
        paths[name] = path
    return paths
