"""End-to-end smoke checks of the compiled module."""

import math
from fractions import Fraction

import rsklab


def test_version():
    assert rsklab.__version__ == "0.1.0"


def test_rsk_small_word():
    out = rsklab.rsk([3.0, 1.0, 2.0])
    assert out["shape"] == [2, 1]
    assert out["P"] == [[1.0, 2.0], [3.0]]
    assert out["Q"] == [[1, 3], [2]]


def test_tableau_matches_rsk():
    word = [0.31, 0.77, 0.12, 0.55, 0.94, 0.23]
    t = rsklab.Tableau()
    for a in word:
        t.insert(a)
    assert t.rows == rsklab.rsk(word)["P"]
    assert t.shape == rsklab.rsk(word)["shape"]


def test_bottom_rows_truncation():
    b = rsklab.BottomRows(0)
    assert b.insert(0.5) == 0
    # 0.2 settles in row 0 and bumps 0.5 out of the kept range.
    assert b.insert(0.2) is None
    assert b.insert(0.9) == 0
    assert b.rows == [[0.2, 0.9]]


def test_dimension_and_pmf():
    assert rsklab.dimension([2, 1]) == 2
    assert rsklab.dimension([1, 1, 1, 1]) == 1
    for n in range(1, 9):
        pmf = rsklab.plancherel_pmf(n)
        assert sum(p for _, p in pmf) == Fraction(1)
        for shape, p in pmf:
            d = rsklab.dimension(list(shape))
            assert p == Fraction(d * d, rsklab.factorial(n))


def test_transition_probabilities():
    exact = dict(rsklab.transition_probabilities_exact([3, 1]))
    assert sum(exact.values()) == Fraction(1)
    approx = dict(rsklab.transition_probabilities([3, 1]))
    assert approx.keys() == exact.keys()
    for row, p in exact.items():
        assert math.isclose(approx[row], float(p), rel_tol=1e-12)


def test_grow_shape():
    shape = rsklab.grow(200, seed=3)
    assert sum(shape) == 200
    assert all(a >= b for a, b in zip(shape, shape[1:]))
    assert shape == rsklab.grow(200, seed=3)  # deterministic in the seed


def test_growth_observations():
    obs = rsklab.grow_rsk(500, 4, 1, seed=2)
    assert len(obs["labels"]) == 4
    assert all(v is None or v in (0, 1) for v in obs["labels"])
    assert len(obs["bottom_row_lengths"]) == 2
    sur = rsklab.sample_vbar(500, 4, 1, seed=2)
    assert len(sur["labels"]) == 4


def test_s_table():
    table = rsklab.s_table(1, 12)
    assert [row["n"] for row in table] == list(range(1, 13))
    assert all(row["bound_holds"] and row["monotone"] for row in table)
    s = [row["s"] for row in table]
    assert all(a >= b for a, b in zip(s, s[1:]))
    assert table[0]["s"] == Fraction(1)  # the first box lands in row 0


def test_hammersley_matches_insertion():
    word = [0.62, 0.11, 0.45, 0.83, 0.27]
    points = [(x, float(i + 1)) for i, x in enumerate(word)]
    run = rsklab.hammersley(points, 2)
    assert run["lines"][:2] == rsklab.rsk(word)["P"][:2]
    report = rsklab.check_rsk_equivalence(word, 3)
    assert report["equal"] and report["first_mismatch"] is None
