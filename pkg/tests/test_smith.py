import random
from math import prod

import pytest
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from plaingroups.smith import (
    IntegerMatrix,
    elementary_divisors,
    invariant_factors_from_minors,
    smith_normal_form,
)


def m(rows, cols=None):
    return IntegerMatrix.from_rows(rows, cols)


@pytest.mark.parametrize(
    "rows, factors, defect",
    [
        ([[2]], (2,), 0),
        ([[2, 0], [0, 3]], (1, 6), 0),
        ([[1, 1], [1, 1]], (1,), 1),
        ([[0, 0], [0, 0]], (), 2),
        ([[2, 0, 0], [0, 1, 1], [0, 1, 1], [0, 2, -1], [0, -1, 2]], (1, 1, 6), 0),
    ],
)
def test_examples(rows, factors, defect):
    snf = smith_normal_form(m(rows))
    assert snf.invariant_factors == factors
    assert snf.free_rank_defect == defect


def test_empty_matrix():
    snf = smith_normal_form(m([], 3))
    assert snf.invariant_factors == () and snf.free_rank_defect == 3


def test_dimension_check():
    with pytest.raises(ValueError):
        IntegerMatrix(2, 2, ((1, 2),))


def test_elementary_divisors():
    assert elementary_divisors([6]) == [2, 3]
    assert elementary_divisors([1, 12, 2]) == [2, 3, 4]


def random_matrix(rng, max_dim=4, span=3):
    r, c = rng.randint(1, max_dim), rng.randint(1, max_dim)
    return m([[rng.randint(-span, span) for _ in range(c)] for _ in range(r)], c)


def test_divisibility_and_minors_agree():
    rng = random.Random(11)
    for _ in range(300):
        a = random_matrix(rng)
        snf = smith_normal_form(a)
        d = snf.invariant_factors
        assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))
        assert d == invariant_factors_from_minors(a)
        assert snf.free_rank_defect == a.cols - len(d)


def test_against_sympy():
    rng = random.Random(3)
    for _ in range(150):
        a = random_matrix(rng, 4, 5)
        ours = smith_normal_form(a).invariant_factors
        diag = sympy_snf(Matrix(a.entries))
        theirs = tuple(abs(int(diag[i, i])) for i in range(min(a.rows, a.cols)) if diag[i, i] != 0)
        assert sorted(ours) == sorted(theirs)
        assert prod(ours) == prod(theirs)


def test_large_entries_exact():
    big = 10**30
    snf = smith_normal_form(m([[big, 0], [0, big * 6]]))
    assert snf.invariant_factors == (big, big * 6)


def test_lattice_residue_membership_matches_smith_index():
    from plaingroups.smith import hermite_rows, lattice_residue

    rng = random.Random(5)
    for _ in range(500):
        a = random_matrix(rng)
        h = hermite_rows(a)
        v = [rng.randint(-5, 5) for _ in range(a.cols)]
        before = smith_normal_form(a).invariant_factors
        after = smith_normal_form(m([list(r) for r in a.entries] + [v], a.cols)).invariant_factors
        in_lattice = len(before) == len(after) and prod(before) == prod(after)
        assert (lattice_residue(h, v) == (0,) * a.cols) == in_lattice
        row = a.entries[rng.randrange(a.rows)]
        shifted = [x + 3 * y for x, y in zip(v, row)]
        assert lattice_residue(h, shifted) == lattice_residue(h, v)
