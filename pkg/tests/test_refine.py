from fractions import Fraction

import pytest

from phiplane.exchange import (Point, build_base_exchange,
                               build_translation_exchange, exchange_tower,
                               sample_points)
from phiplane.fastorbit import BaseExchangeOrbit
from phiplane.field import ONE, QPhi, ZERO, phi_power
from phiplane.refine import (complexity_csv_rows, complexity_table,
                             language_from_refinement, matching_horizon,
                             max_cell_area, preimage, refine,
                             refinement_chain, three_distance_gaps)
from phiplane.words import factors


@pytest.fixture(scope="module")
def base():
    return build_base_exchange()


@pytest.fixture(scope="module")
def translation():
    return build_translation_exchange(phi_power(-2), phi_power(-3),
                                      check_independence=False)


def test_depth_one_cells_are_pieces(base):
    cells = refine(base, 1)
    assert [c.word for c in cells] == [(1,), (2,)]
    assert cells[0].cell_area == phi_power(-1)
    assert cells[1].cell_area == phi_power(-2)


def test_depth_rejects_nonpositive(base):
    with pytest.raises(ValueError):
        refine(base, 0)
    with pytest.raises(ValueError):
        refinement_chain(base, 0)


def test_cell_areas_partition_domain(base):
    for cells in refinement_chain(base, 5):
        total = sum((c.cell_area for c in cells), ZERO)
        assert total == base.domain_area()
        assert all(c.cell_area > ZERO for c in cells)


def test_refine_matches_chain(base):
    chain = refinement_chain(base, 4)
    assert [c.word for c in refine(base, 4)] == [c.word for c in chain[-1]]


def test_cell_words_cover_orbit_factors(base):
    # every factor observed along long orbits must be a positive-area cell
    depth = 6
    words = {c.word for c in refine(base, depth)}
    bo = BaseExchangeOrbit()
    for p in sample_points(base, 5, seed=21):
        code = bo.code_orbit(p, 4000)
        assert factors(code, depth) <= words


def test_translation_complexity_is_square(translation):
    table = complexity_table(translation, 4)
    assert table == [(n, (n + 1) ** 2) for n in range(1, 5)]


def test_matching_horizon_along_tower():
    tower = exchange_tower(4)
    assert [matching_horizon(E, cap=8) for E in tower] == [1, 2, 4, 7]


def test_language_from_refinement_consistent(base):
    lang = language_from_refinement(base, 4)
    table = dict(complexity_table(base, 4))
    for n in range(1, 5):
        assert lang.complexity(n) == table[n]
    assert lang.complexity(0) == 1


def test_preimage_is_exact(base):
    # p maps into R under the branch of its piece iff p lies in the preimage
    cells = refine(base, 1)
    target = cells[0].region
    pts = sample_points(base, 40, seed=5)
    for p in pts:
        label, q = base.step(p)
        pre = preimage(base, label, target)
        assert target.contains(q.x, q.y) == pre.contains(p.x, p.y)


def test_max_cell_area_decreases(base):
    areas = [max_cell_area(base, n) for n in range(1, 6)]
    for a, b in zip(areas, areas[1:]):
        assert b <= a
    assert areas[-1] < areas[0]


def test_three_distance_gaps():
    alpha = phi_power(-2)
    for n in (3, 5, 8, 13):
        gaps = three_distance_gaps(alpha, n)
        assert len(gaps) == n + 1
        assert sum(gaps, ZERO) == ONE
        assert len(set(gaps)) <= 3


def test_three_distance_bounds_translation_cells(translation):
    # a depth-(n+1) cell is contained in a gap-rectangle of both rotations
    n = 3
    gx = three_distance_gaps(phi_power(-2), n)[-1]
    gy = three_distance_gaps(phi_power(-3), n)[-1]
    assert max_cell_area(translation, n + 1) <= gx * gy


def test_complexity_csv_rows(base):
    rows = complexity_csv_rows(1, complexity_table(base, 3))
    assert rows[0] == (1, 1, 2)
    assert all(r[0] == 1 for r in rows)
