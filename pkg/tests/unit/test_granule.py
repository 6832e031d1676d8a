#
# Copyright 2026 The egnn Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#

# pylint: disable=missing-docstring

from typing import Any

import numpy as np
import pytest

import egnn
from egnn.granule import (OUTER_HI, OUTER_LO, check_instance, new_pointwise,
                          similarity)
from tests.unit import assert_well_formed, make_granule, random_granule

#
# (support lo, core lo, core hi, support hi, x, expected similarity)
#
SIMILARITY_TABLE = [
    (0.2, 0.25, 0.35, 0.4, 0.3, 0.625),
    (0.2, 0.25, 0.35, 0.4, 0.6, 0.25),
    (0.5, 0.5, 0.5, 0.5, 0.5, 1.0),
    (0.5, 0.5, 0.5, 0.5, 0.7, 0.0),
    (0.0, 0.0, 1.0, 1.0, 0.5, 0.5),
]


@pytest.mark.parametrize(  # type: ignore[misc]
    'lo,ilo,ihi,hi,x,expected', SIMILARITY_TABLE)
def test_similarity_values(lo: float, ilo: float, ihi: float, hi: float,
                           x: float, expected: float) -> None:
    g = make_granule([lo], [hi], core=([ilo], [ihi]))

    sims = g.feature_similarity(np.array([x]))

    assert sims[0] == pytest.approx(expected, abs=1e-12)


def test_similarity_stacked_granules() -> None:
    rng = np.random.default_rng(3)
    granules = [random_granule(rng, 4) for _ in range(5)]
    x = rng.random(4)

    stacked = similarity(np.stack([g.bounds for g in granules]), x)

    assert stacked.shape == (5, 4)
    for i, g in enumerate(granules):
        assert np.allclose(stacked[i], g.feature_similarity(x), atol=0)
    assert np.all((stacked >= 0.0) & (stacked <= 1.0))


def test_new_pointwise() -> None:
    g = new_pointwise([0.1, 0.9], label=3, step=7)

    assert g.label == 3
    assert g.created_step == 7
    assert g.last_win_step == 7
    assert np.array_equal(g.bounds, [[0.1] * 4, [0.9] * 4])
    assert np.array_equal(g.weights, [1.0, 1.0])
    assert g.is_degenerate()
    assert g.core(1) == (0.9, 0.9)
    assert g.support(0) == (0.1, 0.1)


def test_expansion_region() -> None:
    g = make_granule([0.4], [0.6], core=([0.45], [0.55]))

    lo, hi = g.expansion_region(0, 0.4)

    assert g.midpoint(0) == pytest.approx(0.5)
    assert g.width(0) == pytest.approx(0.2)
    assert lo == pytest.approx(0.3)
    assert hi == pytest.approx(0.7)
    assert g.covers_expansion(np.array([0.69]), 0.4)
    assert not g.covers_expansion(np.array([0.71]), 0.4)


def test_expansion_region_may_leave_unit_interval() -> None:
    g = new_pointwise([0.05], 1, 0)

    lo, _ = g.expansion_region(0, 0.5)

    assert lo < 0.0


#
# (x, bounds after the granule [0.5, 0.5, 0.5, 0.6] adapts to x
# with rho = 0.4)
#
ADAPT_TABLE = [
    # grow the support downward
    (0.45, [0.45, 0.5, 0.5, 0.6]),
    # inside the support, above the midpoint: the core grows up
    (0.55, [0.5, 0.5, 0.55, 0.6]),
    # grow the support upward
    (0.65, [0.5, 0.5, 0.5, 0.65]),
    # outside the expansion region: untouched
    (0.8, [0.5, 0.5, 0.5, 0.6]),
    (0.25, [0.5, 0.5, 0.5, 0.6]),
]


@pytest.mark.parametrize('x,expected', ADAPT_TABLE)  # type: ignore[misc]
def test_adapt_cases(x: float, expected: Any) -> None:
    g = make_granule([0.5], [0.6], core=([0.5], [0.5]))

    g.adapt(np.array([x]), 0.4)

    assert np.allclose(g.bounds[0], expected, atol=1e-12)
    assert_well_formed(g, 0.4)


def test_adapt_pointwise_grows_support() -> None:
    g = new_pointwise([0.5, 0.5], 1, 0)

    g.adapt(np.array([0.6, 0.5]), 0.4)

    assert np.allclose(g.bounds[0], [0.5, 0.5, 0.5, 0.6])
    assert np.allclose(g.bounds[1], [0.5, 0.5, 0.5, 0.5])


def test_adapt_core_below_midpoint() -> None:
    g = make_granule([0.4], [0.6], core=([0.45], [0.55]))

    g.adapt(np.array([0.42]), 0.4)

    assert np.allclose(g.bounds[0], [0.4, 0.42, 0.5, 0.6])


def test_enforce_max_width() -> None:
    g = make_granule([0.1, 0.0], [0.9, 1.0], core=([0.4, 0.1], [0.6, 0.9]))

    g.enforce_max_width(0.4)

    assert np.allclose(g.bounds[0], [0.3, 0.4, 0.6, 0.7])
    assert np.allclose(g.bounds[1], [0.3, 0.3, 0.7, 0.7])
    assert_well_formed(g, 0.4)


def test_enforce_max_width_keeps_narrow_granules() -> None:
    g = make_granule([0.45], [0.55], core=([0.48], [0.52]))
    before = g.bounds.copy()

    g.enforce_max_width(0.5)

    assert np.array_equal(g.bounds, before)


def test_random_adaptations_stay_well_formed() -> None:
    rng = np.random.default_rng(11)
    for _ in range(200):
        rho = float(rng.uniform(0.01, 1.0))
        g = new_pointwise(rng.random(3), 1, 0)
        for x in rng.random((20, 3)):
            g.adapt(x, rho)
            assert_well_formed(g, rho)


def test_adapt_at_midpoint_is_idempotent() -> None:
    rng = np.random.default_rng(5)
    for _ in range(100):
        g = random_granule(rng, 4)
        x = g.midpoints()
        b = g.bounds
        reach = np.maximum(x - b[:, OUTER_LO], b[:, OUTER_HI] - x)
        rho = 2.0 * float(reach.max()) + 1e-9

        once = g.copy().adapt(x, rho)
        twice = g.copy().adapt(x, rho).adapt(x, rho)

        assert np.array_equal(once.bounds, twice.bounds)
        assert np.array_equal(once.midpoints(), x)
        support = [OUTER_LO, OUTER_HI]
        assert np.array_equal(once.bounds[:, support], b[:, support])


def test_checkpoint_dict() -> None:
    g = make_granule([0.1, 0.2], [0.3, 0.5],
                     label=2,
                     core=([0.15, 0.3], [0.2, 0.4]),
                     weights=[0.5, 0.25])
    g.right_count, g.wrong_count, g.last_win_step = 4, 1, 9

    copy = egnn.Granule.from_dict(g.to_dict())

    assert np.array_equal(copy.bounds, g.bounds)
    assert np.array_equal(copy.weights, g.weights)
    assert (copy.label, copy.right_count, copy.wrong_count,
            copy.last_win_step) == (2, 4, 1, 9)


def test_copy_is_independent() -> None:
    g = new_pointwise([0.5], 1, 0)

    c = g.copy()
    c.adapt(np.array([0.6]), 0.4)

    assert g.widths()[0] == 0.0
    assert c.widths()[0] == pytest.approx(0.1)


BAD_INSTANCES = [
    [float("nan"), 0.5],
    [float("inf"), 0.5],
    [1.5, 0.5],
    [-0.1, 0.5],
    [[0.1, 0.2]],
    [],
]


@pytest.mark.parametrize('x', BAD_INSTANCES)  # type: ignore[misc]
def test_check_instance_rejects(x: Any) -> None:
    with pytest.raises(egnn.InstanceError) as err:
        check_instance(x)

    assert err.value.text.startswith("egnn: invalid instance")


def test_check_instance_length() -> None:
    with pytest.raises(egnn.InstanceError):
        check_instance([0.1, 0.2], n_features=3)

    assert check_instance([0.0, 1.0], n_features=2).dtype == np.float64
