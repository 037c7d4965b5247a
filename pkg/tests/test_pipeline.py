import math

import numpy as np
import pytest

from hellmann._pipeline import (
    bracket_roots,
    distance_mod_pi,
    ordered_map,
    sum_partial_waves,
    wrap_2pi,
    wrap_pi,
)
from hellmann.errors import NonConvergentSum
from hellmann.results import RadialSolution


@pytest.mark.parametrize("x", [0.0, -1e-300, 2 * math.pi, -math.pi, 7.5, -20.1, 1e6])
def test_wrapping_ranges(x):
    assert 0 <= wrap_2pi(x) < 2 * math.pi
    assert -math.pi < wrap_pi(x) <= math.pi
    assert abs(math.remainder(wrap_2pi(x) - x, 2 * math.pi)) < 1e-9


def test_distance_mod_pi():
    assert distance_mod_pi(0.1, 0.1 + math.pi) < 1e-15
    assert distance_mod_pi(3.1, 0.0) == pytest.approx(math.pi - 3.1)


def test_sum_partial_waves():
    assert sum_partial_waves(lambda l: 1.0, 3) == (4.0, 4, [1.0] * 4)
    total, used, _ = sum_partial_waves(lambda l: 2.0**-l, 60, tol=1e-6)
    assert used < 30 and total == pytest.approx(2.0, rel=1e-5)
    assert sum_partial_waves(lambda l: 0.0, 10, tol=1e-3)[1] == 3
    with pytest.raises(NonConvergentSum):
        sum_partial_waves(lambda l: 1.0, 5, tol=1e-3)
    with pytest.raises(ValueError):
        sum_partial_waves(lambda l: 1.0, -1)


def test_bracket_roots_simple_and_close_pair():
    roots = bracket_roots(lambda x: math.sin(x), 0.5, 10.0, 200)
    assert roots == pytest.approx([math.pi, 2 * math.pi, 3 * math.pi], abs=1e-11)
    # two roots 1e-4 apart inside a single grid cell
    pair = bracket_roots(lambda x: (x - 0.3) * (x - 0.3001), 0.0, 1.0, 101)
    assert pair == pytest.approx([0.3, 0.3001], abs=1e-10)
    assert bracket_roots(lambda x: x * x + 1, -1, 1, 100) == []
    assert all(isinstance(r, float) for r in roots)
    with pytest.raises(ValueError):
        bracket_roots(math.sin, 1.0, 0.0, 10)


def test_ordered_map_preserves_order():
    items = list(range(50))
    assert ordered_map(lambda x: x * x, items, jobs=8) == [x * x for x in items]


def test_radial_solution_validation():
    with pytest.raises(ValueError):
        RadialSolution(r_values=[1.0, 0.5], u_values=[0, 0], k=1.0)
    with pytest.raises(ValueError):
        RadialSolution(r_values=[1.0, 2.0], u_values=[0], k=1.0)
    sol = RadialSolution(r_values=np.array([1.0, 2.0]), u_values=[1, 2], k=1.0)
    assert sol.u_values.dtype == complex
