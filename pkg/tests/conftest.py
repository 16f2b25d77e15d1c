import pytest

from refleig.groups import builtin
from refleig.harmonics import compute_harmonics, find_fundamental_invariants

REFLECTION_BATTERY = (
    "dihedral:3",
    "dihedral:4",
    "dihedral:5",
    "dihedral:6",
    "dihedral:7",
    "dihedral:8",
    "symmetric:2",
    "symmetric:3",
    "symmetric:4",
    "hyperoctahedral:2",
    "hyperoctahedral:3",
)


@pytest.fixture(scope="session")
def pipeline():
    """Memoized (group, invariants, harmonics) per builtin spec string."""
    cache = {}

    def load(spec):
        if spec not in cache:
            group = builtin(spec)
            invariants = find_fundamental_invariants(group)
            harmonics = compute_harmonics(group, invariants)
            cache[spec] = (group, invariants, harmonics)
        return cache[spec]

    return load
