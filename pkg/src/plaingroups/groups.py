"""Group structure of normalized, confluent, monadic systems.

Covers inverses and element orders, the rotate-and-reduce conjugation
procedure, and detection of finite subgroups whose nontrivial normal forms
either share a tail word behind distinct first letters (DFL form) or are
the literal powers of one word (RC form).
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Literal

from .errors import IterationBudgetExceeded, LemmaViolation, NotAGroup, PreconditionFailed
from .system import EMPTY, RewritingSystem, Rule, Word
from .tables import GroupTable


@dataclass(frozen=True)
class GroupStatus:
    is_group: Literal["yes", "no", "unknown"]
    inverses: dict[int, Word]
    search_bound: int
    certificate: str | None = None


def default_bound(system: RewritingSystem) -> int:
    return 2 * system.max_lhs_len * system.size


def group_status(system: RewritingSystem, bound: int | None = None) -> GroupStatus:
    """Decide whether the presented monoid is a group.

    If ``xV`` reduces to 1 with ``V`` irreducible, every rewrite of ``xV``
    touches the first position, so the derivation is a chain of rules
    ``(x U1, y1), (y1 U2, y2), ..., (yk Uk+1, 1)`` and ``V = U1 ... Uk+1``.
    A shortest such chain is found per letter. A letter with no chain has no
    right inverse, which certifies a non-group; an inverse longer than
    ``bound`` yields ``unknown``.
    """
    if bound is None:
        bound = default_bound(system)
    # best[x]: shortest word V found so far with x V ->* 1
    best: dict[int, Word] = {}
    changed = True
    while changed:
        changed = False
        for rule in system.rules:
            head, tail = rule.lhs[0], rule.lhs[1:]
            if not rule.rhs:
                cand = tail
            elif len(rule.rhs) == 1 and rule.rhs[0] in best:
                cand = tail + best[rule.rhs[0]]
            else:
                continue
            if head not in best or len(cand) < len(best[head]):
                best[head] = cand
                changed = True
    inverses: dict[int, Word] = {}
    unknown = False
    for x in range(system.size):
        name = system.alphabet[x]
        if x not in best:
            return GroupStatus(
                "no", {}, bound, f"letter {name} has no right inverse: no rule chain from {name} to 1"
            )
        v = system.normal_form(best[x])
        if system.normal_form((x,) + v) != EMPTY:
            raise LemmaViolation(f"rule chain for {name} does not reduce to 1")
        if system.normal_form(v + (x,)) != EMPTY:
            return GroupStatus(
                "no",
                {},
                bound,
                f"{name}·{system.format_word(v)} = 1 but {system.format_word(v)}·{name} ≠ 1",
            )
        if len(v) > bound:
            unknown = True
        inverses[x] = v
    if unknown:
        return GroupStatus("unknown", {}, bound)
    return GroupStatus("yes", inverses, bound)


def require_group(system: RewritingSystem, status: GroupStatus | None = None) -> GroupStatus:
    if not system.flags.monadic:
        raise PreconditionFailed("monadic")
    if status is None:
        status = group_status(system)
    if status.is_group != "yes":
        raise NotAGroup(status.certificate or f"group status {status.is_group}")
    return status


def inverse_word(system: RewritingSystem, status: GroupStatus, word: Sequence[int]) -> Word:
    out: Word = EMPTY
    for x in reversed(word):
        out += status.inverses[x]
    return system.normal_form(out)


def conjugate(system: RewritingSystem, status: GroupStatus, word: Word, by: Word) -> Word:
    """Normal form of by⁻¹ · word · by."""
    return system.normal_form(inverse_word(system, status, by) + word + by)


def order_of(system: RewritingSystem, word: Sequence[int], max_order: int) -> int | None:
    power = system.normal_form(word)
    for n in range(1, max_order + 1):
        if power == EMPTY:
            return n
        power = system.normal_form(power + tuple(word))
    return None


@dataclass(frozen=True)
class MinimalConjugate:
    input: Word
    minimal: Word
    conjugator: Word
    ell: int


def rotations(word: Word) -> list[Word]:
    return [word[r:] + word[:r] for r in range(len(word))]


def cyclically_irreducible(system: RewritingSystem, word: Word) -> bool:
    return all(system.is_irreducible(w) for w in rotations(word))


def cycle_and_reduce(system: RewritingSystem, word: Word, max_iter: int | None = None) -> MinimalConjugate:
    """Rotate the first letter to the end and reduce, until a state repeats.

    Each rotation conjugates by the moved letter. Returns the first of the
    shortest words met, with the conjugator accumulated up to that point.
    """
    word = tuple(word)
    if not word or not system.is_irreducible(word):
        raise PreconditionFailed("irreducible nonempty word")
    if max_iter is None:
        max_iter = 4 * len(word) * system.size
    seen: set[Word] = set()
    current, moved = word, EMPTY
    best, best_conj = word, EMPTY
    for _ in range(max_iter + 1):
        if current in seen or not current:
            return MinimalConjugate(word, best, system.normal_form(best_conj), len(best))
        seen.add(current)
        if len(current) < len(best):
            best, best_conj = current, moved
        moved += current[:1]
        current = system.normal_form(current[1:] + current[:1])
    raise IterationBudgetExceeded(max_iter)


@dataclass(frozen=True)
class AflProfile:
    word: Word
    reducible: bool


def afl_profile(system: RewritingSystem, word: Word) -> AflProfile:
    word = tuple(word)
    if not word or not system.is_irreducible(word):
        raise PreconditionFailed("irreducible nonempty word")
    return AflProfile(word, not system.is_irreducible(word + word[:1]))


@dataclass(frozen=True)
class DflSubgroup:
    tail: Word
    first_letters: tuple[int, ...]
    inverse_letter: int | None
    table: GroupTable = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.first_letters) + 1

    @property
    def representatives(self) -> tuple[Word, ...]:
        return tuple((x,) + self.tail for x in self.first_letters)

    @property
    def elements(self) -> frozenset[Word]:
        return frozenset(self.representatives) | {EMPTY}


@dataclass(frozen=True)
class RcSubgroup:
    generator: Word
    order: int

    @property
    def elements(self) -> frozenset[Word]:
        return frozenset(self.generator * i for i in range(self.order))


def is_dfl_form(elements: Iterable[Word]) -> bool:
    """Do the nontrivial normal forms start with at least two distinct letters?"""
    return len({e[0] for e in elements if e}) >= 2


def _tail_closure(
    system: RewritingSystem, tail: Word, letters: Iterable[int]
) -> frozenset[int] | None:
    """Close {x W} under products; None if a product leaves the x·W shape."""
    found = set(letters)
    frontier = list(found)
    while frontier:
        nxt = []
        for a in list(found):
            for b in frontier:
                for u, v in ((a, b), (b, a)):
                    c = system.normal_form((u,) + tail + (v,) + tail)
                    if c == EMPTY:
                        continue
                    if len(c) != len(tail) + 1 or c[1:] != tail:
                        return None
                    if c[0] not in found:
                        found.add(c[0])
                        nxt.append(c[0])
        frontier = nxt
    return frozenset(found)


def candidate_tails(system: RewritingSystem) -> list[Word]:
    tails = {EMPTY} | {r.lhs[1:-1] for r in system.rules if len(r.lhs) >= 2}
    return sorted(tails, key=lambda w: (len(w), w))


def detect_dfl_subgroups(
    system: RewritingSystem, status: GroupStatus | None = None
) -> list[DflSubgroup]:
    status = require_group(system, status)
    found: list[DflSubgroup] = []
    for tail in candidate_tails(system):
        letters: set[int] = set()
        for rule in system.rules:
            if len(rule.lhs) >= 2 and rule.lhs[1:-1] == tail:
                letters.update((rule.lhs[0], rule.lhs[-1]) + rule.rhs)
        good = sorted(x for x in letters if system.is_irreducible((x,) + tail))
        closed: set[frozenset[int]] = set()
        frontier = []
        for x in good:
            c = _tail_closure(system, tail, [x])
            if c is not None and c not in closed:
                closed.add(c)
                frontier.append(c)
        while frontier:
            nxt = []
            for s in frontier:
                for x in good:
                    if x in s:
                        continue
                    c = _tail_closure(system, tail, s | {x})
                    if c is not None and c not in closed:
                        closed.add(c)
                        nxt.append(c)
            frontier = nxt
        maximal = [s for s in closed if len(s) >= 2 and not any(s < t for t in closed)]
        for s in sorted(maximal, key=sorted):
            first = tuple(sorted(s))
            table = GroupTable.from_elements(system, [(x,) + tail for x in first])
            if not table.is_group():
                continue
            inverse_letter = None
            if tail:
                v = inverse_word(system, status, tail)
                if len(v) != 1:
                    raise LemmaViolation(
                        f"inverse of tail {system.format_word(tail)} is not a single letter"
                    )
                inverse_letter = v[0]
            found.append(DflSubgroup(tail, first, inverse_letter, table))
    return found


def detect_rc_subgroups(
    system: RewritingSystem,
    max_gen_len: int,
    max_order: int,
    status: GroupStatus | None = None,
) -> list[RcSubgroup]:
    require_group(system, status)
    out: list[RcSubgroup] = []
    seen: set[frozenset[Word]] = set()
    for u in system.irreducible_words(max_gen_len):
        if not u:
            continue
        for n in range(2, max_order + 1):
            power = u * n
            if system.normal_form(power) == EMPTY:
                sub = RcSubgroup(u, n)
                if sub.elements not in seen:
                    seen.add(sub.elements)
                    out.append(sub)
                break
            if not system.is_irreducible(power):
                break
    return out


def check_not_rc(
    system: RewritingSystem,
    subgroup: Iterable[Word],
    z: int,
    tail: Word,
    status: GroupStatus | None = None,
) -> bool:
    """A finite subgroup holding an order-2 element ``zW`` with ``zWz``
    reducible should have no RC form. True when none is found among
    generators up to the longest element length."""
    status = require_group(system, status)
    elements = frozenset(tuple(w) for w in subgroup) | {EMPTY}
    c = (z,) + tuple(tail)
    if len(elements) < 3:
        raise PreconditionFailed("order >= 3")
    if not system.is_irreducible(c) or c not in elements:
        raise PreconditionFailed("zW is a reduced element of the subgroup")
    if order_of(system, c, 2) != 2:
        raise PreconditionFailed("zW has order 2")
    if system.is_irreducible(c + (z,)):
        raise PreconditionFailed("zWz reducible")
    rc = detect_rc_subgroups(system, max(len(e) for e in elements), len(elements), status)
    return not any(r.elements == elements for r in rc)


def unique_afl_rotation(
    system: RewritingSystem,
    word: Word,
    subgroups: Sequence[DflSubgroup] | None = None,
    status: GroupStatus | None = None,
) -> int:
    """Index of the only AFL-reducible rotation of a DFL representative.

    ``word`` must be cyclically irreducible (no rotation reducible), which
    is how minimal length in the conjugacy class is certified here.
    """
    word = tuple(word)
    if subgroups is None:
        subgroups = detect_dfl_subgroups(system, status)
    if not any(word in s.representatives for s in subgroups):
        raise PreconditionFailed("member of a detected DFL subgroup")
    if not cyclically_irreducible(system, word):
        raise PreconditionFailed("cyclically irreducible")
    hits = [r for r, w in enumerate(rotations(word)) if afl_profile(system, w).reducible]
    if len(hits) != 1:
        raise LemmaViolation(f"AFL-reducible rotations at {hits}, expected exactly one")
    return hits[0]


@dataclass
class DflCheckReport:
    subgroup: DflSubgroup
    witnesses: list[int] = field(default_factory=list)
    checks: int = 0


def witness_letters(system: RewritingSystem, dfl: DflSubgroup) -> list[int]:
    return [x for x in dfl.first_letters if cyclically_irreducible(system, (x,) + dfl.tail)]


def check_dfl_properties(
    system: RewritingSystem, dfl: DflSubgroup, status: GroupStatus | None = None
) -> DflCheckReport:
    """Assert the structural facts every DFL subgroup must satisfy.

    Raises LemmaViolation on the first failure.
    """
    status = require_group(system, status)
    report = DflCheckReport(dfl)
    w = dfl.tail
    reps = dfl.representatives

    def expect(ok: bool, what: str) -> None:
        report.checks += 1
        if not ok:
            raise LemmaViolation(f"tail {system.format_word(w, '1')}: {what}")

    expect(len(set(dfl.first_letters)) == len(dfl.first_letters) >= 2, "first letters distinct")
    expect(all(system.normal_form(r) == r for r in reps), "representatives share the tail")
    expect(len({len(r) for r in reps}) == 1, "representatives of equal length")
    if w:
        v = dfl.inverse_letter
        expect(v is not None and system.normal_form(w + (v,)) == EMPTY, "tail·V reduces to 1")
    else:
        expect(dfl.inverse_letter is None, "empty tail has empty inverse")
    rhs_identity = () if dfl.inverse_letter is None else (dfl.inverse_letter,)
    rules = set(system.rules)
    index = {e: i for i, e in enumerate(dfl.table.elements)}
    report.witnesses = witness_letters(system, dfl)
    for xj in report.witnesses:
        j = index[(xj,) + w]
        for xi in dfl.first_letters:
            k = dfl.table.mul(index[(xi,) + w], j)
            lhs = (xi,) + w + (xj,)
            rhs = rhs_identity if k == 0 else dfl.table.elements[k][:1]
            expect(Rule(lhs, rhs) in rules, f"rule {system.format_rule(Rule(lhs, rhs))} in T")
        expect(system.is_irreducible(w + (xj,) + w), "W·x_j·W irreducible")
        rep = (xj,) + w
        expect(unique_afl_rotation(system, rep, [dfl]) == 0, "unique AFL-reducible rotation")
        for cut in range(1, len(rep)):
            conj = {conjugate(system, status, e, rep[:cut]) for e in dfl.elements}
            expect(not is_dfl_form(conj), "conjugate by a proper prefix is not in DFL form")
    return report
