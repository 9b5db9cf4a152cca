"""Critical pairs and the confluence decision for terminating systems."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .errors import BudgetExceeded, NotTerminating
from .system import RewritingSystem, Word, all_words


@dataclass(frozen=True)
class CriticalPair:
    source: Word
    left_result: Word
    right_result: Word
    rule_a: int
    rule_b: int
    overlap_kind: Literal["suffix-prefix", "containment"]
    offset: int
    """Start of rule_b's redex inside ``source``; rule_a's redex starts at 0."""

    def trivially_joinable(self) -> bool:
        return self.left_result == self.right_result


@dataclass(frozen=True)
class ConfluenceReport:
    confluent: bool
    pairs_checked: int
    witness: CriticalPair | None = None
    witness_normal_forms: tuple[Word, Word] | None = None


def critical_pairs(system: RewritingSystem) -> list[CriticalPair]:
    """All overlaps between ordered pairs of rules, each listed once."""
    rules = system.rules
    seen: set[tuple] = set()
    pairs: list[CriticalPair] = []

    def emit(a: int, b: int, source: Word, offset: int, kind) -> None:
        ra, rb = rules[a], rules[b]
        redexes = tuple(sorted([(0, a), (offset, b)]))
        key = (source, redexes)
        if key in seen:
            return
        seen.add(key)
        left = ra.rhs + source[len(ra.lhs) :]
        right = source[:offset] + rb.rhs + source[offset + len(rb.lhs) :]
        pairs.append(CriticalPair(source, left, right, a, b, kind, offset))

    for a, ra in enumerate(rules):
        la = ra.lhs
        for b, rb in enumerate(rules):
            lb = rb.lhs
            for k in range(1, min(len(la), len(lb))):
                if la[-k:] == lb[:k]:
                    emit(a, b, la + lb[k:], len(la) - k, "suffix-prefix")
            if len(lb) <= len(la):
                for offset in range(len(la) - len(lb) + 1):
                    if a == b and offset == 0:
                        continue
                    if la[offset : offset + len(lb)] == lb:
                        emit(a, b, la, offset, "containment")
    return pairs


def is_confluent(system: RewritingSystem) -> ConfluenceReport:
    """Decide confluence by checking that every critical pair rejoins.

    Both sides of each pair are reduced to normal form; on a mismatch the
    reported witness is a pair that no derivation can rejoin (one exists
    whenever local confluence fails).
    """
    if not system.flags.terminating:
        raise NotTerminating("confluence is only decided for terminating systems")
    pairs = critical_pairs(system)
    suspects = [
        p
        for p in pairs
        if system.normal_form(p.left_result) != system.normal_form(p.right_result)
    ]
    if not suspects:
        return ConfluenceReport(True, len(pairs))
    suspects.sort(key=lambda p: len(p.source))
    limit = max(len(p.source) for p in suspects)
    witness = next(
        (p for p in suspects if not joinable_oracle(system, p.left_result, p.right_result, limit)),
        suspects[0],
    )
    return ConfluenceReport(
        False,
        len(pairs),
        witness,
        (system.normal_form(witness.left_result), system.normal_form(witness.right_result)),
    )


def irreducible_descendants(system: RewritingSystem, word: Word, max_len: int) -> frozenset[Word]:
    """Every irreducible word reachable from ``word`` along any derivation."""
    memo: dict[Word, frozenset[Word]] = {}
    return _descend(system, word, max_len, memo)


def _descend(system, word, max_len, memo):
    if word in memo:
        return memo[word]
    if len(word) > max_len:
        raise BudgetExceeded(f"intermediate word longer than {max_len}")
    stack = [(word, iter(sorted(system.successors(word))), set())]
    while stack:
        w, it, acc = stack[-1]
        for nxt in it:
            if nxt in memo:
                acc |= memo[nxt]
                continue
            if len(nxt) > max_len:
                raise BudgetExceeded(f"intermediate word longer than {max_len}")
            stack.append((nxt, iter(sorted(system.successors(nxt))), set()))
            break
        else:
            stack.pop()
            result = frozenset(acc) if acc else frozenset([w])
            memo[w] = result
            if stack:
                stack[-1][2].update(result)
    return memo[word]


def joinable_oracle(system: RewritingSystem, u: Word, v: Word, max_len: int) -> bool:
    """Brute force: do ``u`` and ``v`` share a descendant?

    Explores the full rewrite graph below each word. For a terminating
    system a common descendant exists exactly when the sets of irreducible
    descendants meet.
    """
    if not system.flags.terminating:
        raise NotTerminating("oracle needs a terminating system")
    memo: dict[Word, frozenset[Word]] = {}
    return bool(
        _descend(system, tuple(u), max_len, memo) & _descend(system, tuple(v), max_len, memo)
    )


def locally_confluent_bruteforce(system: RewritingSystem, max_len: int) -> bool:
    """Check that all one-step successors of every word up to ``max_len`` rejoin."""
    memo: dict[Word, frozenset[Word]] = {}
    for w in all_words(system.size, max_len):
        succ = sorted(system.successors(w))
        if len(succ) < 2:
            continue
        sets = [_descend(system, s, max_len, memo) for s in succ]
        for i in range(len(sets)):
            for j in range(i + 1, len(sets)):
                if not sets[i] & sets[j]:
                    return False
    return True
