import pytest

from corpus import GROUP_FIXTURES, fixture, group_pool
from plaingroups.cayley import ball_order, build_ball
from plaingroups.errors import LemmaViolation, NotAGroup, PreconditionFailed, SizeBudgetExceeded
from plaingroups.groups import (
    DflSubgroup,
    afl_profile,
    check_dfl_properties,
    check_not_rc,
    conjugate,
    cycle_and_reduce,
    cyclically_irreducible,
    default_bound,
    detect_dfl_subgroups,
    detect_rc_subgroups,
    group_status,
    inverse_word,
    order_of,
    unique_afl_rotation,
)
from plaingroups.system import system_from_rules


def w(s, text):
    return s.parse_word(text)


def test_status_z2():
    s = fixture("z2")
    st = group_status(s, 3)
    assert st.is_group == "yes" and st.inverses == {0: (0,)}


def test_status_z3():
    s = fixture("z3")
    st = group_status(s, 3)
    assert st.is_group == "yes"
    assert st.inverses == {0: w(s, "B"), 1: w(s, "b")}


def test_status_bicyclic_is_no_with_certificate():
    s = fixture("bicyclic")
    st = group_status(s, 6)
    assert st.is_group == "no"
    assert "b" in st.certificate
    # independent check: right multiplication by b is not injective on the ball
    ball = list(s.irreducible_words(4))
    images = [s.normal_form(u + (1,)) for u in ball]
    assert len(set(images)) < len(images)
    # and no word V of length <= 6 has b V = 1
    assert all(s.normal_form((1,) + v) != () for v in s.irreducible_words(6))


def test_status_unknown_when_inverse_exceeds_bound():
    s = fixture("z3_tail")
    st = group_status(s, 1)
    assert st.is_group == "unknown"
    assert group_status(s).is_group == "yes"


def test_default_bound():
    assert default_bound(fixture("z2z3")) == 2 * 2 * 3


def test_inverses_are_two_sided_on_fixtures():
    for name in GROUP_FIXTURES:
        s = fixture(name)
        st = group_status(s)
        assert st.is_group == "yes", name
        for x, v in st.inverses.items():
            assert s.normal_form((x,) + v) == () == s.normal_form(v + (x,))


def test_inverse_word_and_conjugate():
    s = fixture("z2z3")
    st = group_status(s)
    u = w(s, "abaB")
    assert s.normal_form(u + inverse_word(s, st, u)) == ()
    assert conjugate(s, st, w(s, "a"), ()) == w(s, "a")
    assert conjugate(s, st, w(s, "ba"), w(s, "b")) == w(s, "ab")


def test_require_group():
    with pytest.raises(NotAGroup):
        detect_dfl_subgroups(fixture("bicyclic"))


def test_order_of_examples():
    assert order_of(fixture("z2"), (0,), 10) == 2
    assert order_of(fixture("z3"), (0,), 10) == 3
    assert order_of(fixture("free1"), (0,), 50) is None
    assert order_of(fixture("s3"), (), 5) == 1


def largest_ball(s, radius, cap):
    while True:
        try:
            return build_ball(s, radius, cap)
        except SizeBudgetExceeded:
            radius -= 1


def test_order_of_agrees_with_ball_walk():
    systems = [fixture(n) for n in GROUP_FIXTURES] + list(group_pool())[:15]
    for s in systems:
        ball = largest_ball(s, 10, 4_000)
        for u in s.irreducible_words(3):
            if not u:
                continue
            cap = ball.radius // len(u)
            expected = order_of(s, u, cap)
            walked = ball_order(ball, u, cap)
            if walked is not None:
                assert walked == expected
            elif expected is not None:
                # the walk may leave the ball; the power sequence must then be long
                assert max(len(s.normal_form(u * k)) for k in range(1, expected)) > ball.radius - len(u)


def test_cycle_and_reduce_dinf():
    s = fixture("dinf")
    st = group_status(s)
    m = cycle_and_reduce(s, w(s, "bab"))
    assert (m.minimal, m.conjugator, m.ell) == (w(s, "a"), w(s, "b"), 1)
    assert conjugate(s, st, m.input, m.conjugator) == m.minimal


def test_cycle_and_reduce_single_letter():
    for name in ("z2", "dinf"):
        s = fixture(name)
        m = cycle_and_reduce(s, (0,))
        assert (m.minimal, m.conjugator, m.ell) == ((0,), (), 1)


def test_cycle_and_reduce_invariants():
    for s in [fixture(n) for n in ("z2z3", "s3", "z3_tail", "klein")] + list(group_pool())[:20]:
        st = group_status(s)
        for u in s.irreducible_words(4):
            if not u:
                continue
            m = cycle_and_reduce(s, u)
            assert s.is_irreducible(m.minimal)
            assert m.ell == len(m.minimal) <= len(u)
            assert conjugate(s, st, u, m.conjugator) == m.minimal


def test_cycle_and_reduce_rejects_reducible():
    with pytest.raises(PreconditionFailed):
        cycle_and_reduce(fixture("z2"), (0, 0))


def test_afl_profile():
    assert afl_profile(fixture("z2"), (0,)).reducible
    s = fixture("dinf")
    assert not afl_profile(s, w(s, "ab")).reducible
    assert afl_profile(fixture("z3"), (0,)).reducible


def test_detect_dfl_klein():
    s = fixture("klein")
    dfls = detect_dfl_subgroups(s)
    assert len(dfls) == 1
    d = dfls[0]
    assert d.tail == () and d.first_letters == (0, 1, 2) and d.order == 4
    assert d.inverse_letter is None
    assert d.table.is_group() and d.table.is_abelian() and not d.table.is_cyclic()
    # every nontrivial element has order 2
    assert all(d.table.element_order(i) == 2 for i in range(1, 4))


def test_detect_dfl_none():
    assert detect_dfl_subgroups(fixture("z2")) == []
    assert detect_dfl_subgroups(fixture("dinf")) == []


def test_detect_dfl_with_tail():
    s = fixture("z3_tail")
    (d,) = detect_dfl_subgroups(s)
    assert d.tail == w(s, "w") and d.first_letters == (0, 1)
    assert d.inverse_letter == s.letter("V")
    assert s.normal_form(d.tail + (d.inverse_letter,)) == ()
    assert d.table.is_cyclic() and d.order == 3


def test_dfl_tables_match_reduction():
    for name in ("klein", "s3", "z4", "z3", "z2z3", "z3_tail"):
        s = fixture(name)
        for d in detect_dfl_subgroups(s):
            elems = d.table.elements
            for i, a in enumerate(elems):
                for j, b in enumerate(elems):
                    assert s.normal_form(a + b) == elems[d.table.mul(i, j)]


def test_detect_rc_examples():
    z2 = fixture("z2")
    (rc,) = detect_rc_subgroups(z2, 2, 10)
    assert (rc.generator, rc.order) == ((0,), 2)
    assert detect_rc_subgroups(fixture("z3"), 1, 10) == []
    assert detect_rc_subgroups(fixture("free1"), 3, 10) == []


def test_rc_invariants():
    for s in [fixture(n) for n in GROUP_FIXTURES] + list(group_pool())[:20]:
        for rc in detect_rc_subgroups(s, 3, 8):
            assert s.normal_form(rc.generator * rc.order) == ()
            for i in range(1, rc.order):
                assert s.is_irreducible(rc.generator * i)


def test_check_not_rc_klein():
    s = fixture("klein")
    elems = [(), w(s, "p"), w(s, "q"), w(s, "r")]
    assert check_not_rc(s, elems, s.letter("p"), ())
    assert not any(r.order == 4 for r in detect_rc_subgroups(s, 3, 4))


def test_check_not_rc_z4():
    s = fixture("z4")
    elems = [(), w(s, "g"), w(s, "h"), w(s, "k")]
    # h has order 2 and hh is reducible; the cyclic group of order 4 is
    # visible in DFL form and has no RC presentation
    assert check_not_rc(s, elems, s.letter("h"), ())
    assert not any(r.elements == frozenset(elems) for r in detect_rc_subgroups(s, 3, 4))
    assert [d.order for d in detect_dfl_subgroups(s)] == [4]


def test_check_not_rc_preconditions():
    s = fixture("z4")
    elems = [(), w(s, "g"), w(s, "h"), w(s, "k")]
    with pytest.raises(PreconditionFailed):
        check_not_rc(s, elems, s.letter("g"), ())  # g has order 4
    with pytest.raises(PreconditionFailed):
        check_not_rc(fixture("z2"), [(), (0,)], 0, ())  # order 2 subgroup


def test_unique_afl_rotation():
    s = fixture("klein")
    assert unique_afl_rotation(s, w(s, "p")) == 0
    s = fixture("z3_tail")
    assert unique_afl_rotation(s, w(s, "xw")) == 0
    with pytest.raises(PreconditionFailed):
        unique_afl_rotation(fixture("dinf"), (0, 1))


def test_unique_afl_rotation_detects_violation():
    # "xw" is cyclically irreducible but both rotations are AFL-reducible
    s = system_from_rules("x w", [("xwx", ""), ("wxw", ""), ("xx", "w"), ("ww", "x")])
    assert cyclically_irreducible(s, (0, 1))
    fake = DflSubgroup((1,), (0,), None, None)
    with pytest.raises(LemmaViolation):
        unique_afl_rotation(s, (0, 1), [fake])


def test_check_dfl_properties_fixtures():
    for name in ("klein", "s3", "z4", "z3", "z2z3", "z3_tail"):
        s = fixture(name)
        for d in detect_dfl_subgroups(s):
            report = check_dfl_properties(s, d)
            assert report.witnesses and report.checks > 0


def test_check_dfl_properties_catches_bad_subgroup():
    s = fixture("klein")
    (d,) = detect_dfl_subgroups(s)
    bogus = type(d)(d.tail, d.first_letters[:1] * 2, d.inverse_letter, d.table)
    with pytest.raises(LemmaViolation):
        check_dfl_properties(s, bogus)
