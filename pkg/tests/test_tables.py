import pytest

from corpus import fixture
from plaingroups.groups import detect_dfl_subgroups
from plaingroups.sampler import table_system
from plaingroups.tables import GroupTable


def cyclic(n):
    s = table_system([str(i) if i else "e" for i in range(n)], lambda i, j: (i + j) % n)
    return GroupTable.from_elements(s, [(x,) for x in range(n - 1)])


def test_cyclic_table():
    t = cyclic(5)
    assert t.order == 5 and t.is_group() and t.is_cyclic() and t.is_abelian()
    assert t.abelianization_divisors() == [5]
    assert sorted(t.element_order(i) for i in range(5)) == [1, 5, 5, 5, 5]


def test_klein_vs_z4():
    (k,) = detect_dfl_subgroups(fixture("klein"))
    (z,) = detect_dfl_subgroups(fixture("z4"))
    assert not k.table.is_isomorphic(z.table)
    assert k.table.abelianization_divisors() == [2, 2]
    assert z.table.abelianization_divisors() == [4]
    assert z.table.is_isomorphic(cyclic(4))


def test_s3_abelianization():
    (d,) = detect_dfl_subgroups(fixture("s3"))
    assert d.table.order == 6 and not d.table.is_abelian()
    assert d.table.abelianization_divisors() == [2]
    assert not d.table.is_isomorphic(cyclic(6))
    assert d.table.is_isomorphic(d.table)


def test_not_closed():
    s = fixture("z2z3")
    with pytest.raises(ValueError):
        GroupTable.from_elements(s, [(0,), (1,)])


def test_closure_and_inverse():
    t = cyclic(6)
    g = t.generator()
    assert t.closure([g]) == frozenset(range(6))
    for i in range(6):
        assert t.mul(i, t.inverse(i)) == 0
