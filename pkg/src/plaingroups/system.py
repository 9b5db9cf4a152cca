"""Rewriting systems over a finite alphabet: data model, classification, reduction.

Letters are small integers indexing the alphabet; a word is a tuple of
letter ids and the empty tuple is the empty word. Every object here is
immutable once constructed.
"""

from __future__ import annotations

import random
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import lru_cache

from .automaton import PatternAutomaton
from .errors import NonTerminatingRisk, UnknownLetter

Word = tuple[int, ...]

EMPTY: Word = ()

STRATEGIES = ("leftmost", "rightmost", "random")


@dataclass(frozen=True)
class Rule:
    lhs: Word
    rhs: Word

    def __post_init__(self) -> None:
        if not self.lhs:
            raise ValueError("rule left-hand side must be nonempty")


@dataclass(frozen=True)
class Classification:
    finite: bool
    length_reducing: bool
    special: bool
    monadic: bool
    two_monadic: bool
    normalized: bool
    terminating: bool

    def as_dict(self) -> dict[str, bool]:
        return {
            "finite": self.finite,
            "length_reducing": self.length_reducing,
            "special": self.special,
            "monadic": self.monadic,
            "two_monadic": self.two_monadic,
            "normalized": self.normalized,
            "terminating": self.terminating,
        }


@dataclass(frozen=True)
class RewriteStep:
    position: int
    rule: Rule
    before: Word
    after: Word


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[RewriteStep, ...]
    result: Word

    def replay(self, start: Word) -> Word:
        word = start
        for step in self.steps:
            lhs = step.rule.lhs
            if word[step.position : step.position + len(lhs)] != lhs:
                raise ValueError(f"rule lhs not found at position {step.position}")
            word = word[: step.position] + step.rule.rhs + word[step.position + len(lhs) :]
        return word


@dataclass(frozen=True, eq=False)
class RewritingSystem:
    """A finite alphabet together with an ordered list of rules.

    Exact duplicate rules are dropped (first occurrence wins). Two systems
    compare equal when alphabet and rule list coincide.
    """

    alphabet: tuple[str, ...]
    rules: tuple[Rule, ...]
    flags: Classification = field(init=False, repr=False)
    automaton: PatternAutomaton = field(init=False, repr=False)

    def __post_init__(self) -> None:
        alphabet = tuple(self.alphabet)
        if not alphabet:
            raise ValueError("alphabet must be nonempty")
        if len(set(alphabet)) != len(alphabet):
            raise ValueError("alphabet symbols must be distinct")
        for symbol in alphabet:
            if not symbol or any(ch.isspace() for ch in symbol) or "#" in symbol or symbol == "->":
                raise ValueError(f"invalid letter symbol {symbol!r}")
        seen: set[Rule] = set()
        rules: list[Rule] = []
        for rule in self.rules:
            for letter in rule.lhs + rule.rhs:
                if not 0 <= letter < len(alphabet):
                    raise ValueError(f"letter id {letter} outside alphabet")
            if rule not in seen:
                seen.add(rule)
                rules.append(rule)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "rules", tuple(rules))
        object.__setattr__(
            self, "automaton", PatternAutomaton(len(alphabet), [r.lhs for r in rules])
        )
        object.__setattr__(self, "flags", classify(self))
        object.__setattr__(self, "_nf_cache", lru_cache(maxsize=1 << 16)(self._normal_form))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RewritingSystem):
            return NotImplemented
        return self.alphabet == other.alphabet and self.rules == other.rules

    def __hash__(self) -> int:
        return hash((self.alphabet, self.rules))

    @property
    def size(self) -> int:
        return len(self.alphabet)

    @property
    def max_lhs_len(self) -> int:
        return max((len(r.lhs) for r in self.rules), default=0)

    # -- words -----------------------------------------------------------

    def letter(self, symbol: str) -> int:
        try:
            return self.alphabet.index(symbol)
        except ValueError:
            raise UnknownLetter(symbol) from None

    def parse_word(self, text: str) -> Word:
        """Read a word from whitespace-separated symbols.

        A token that is not itself a symbol is split into characters when
        every character is a symbol, so ``"bab"`` works for one-character
        alphabets. ``""``, ``"1"`` (when ``1`` is not a letter) and
        ``"(empty)"`` denote the empty word.
        """
        text = text.strip()
        if text in ("", "(empty)") or (text == "1" and "1" not in self.alphabet):
            return EMPTY
        index = {s: i for i, s in enumerate(self.alphabet)}
        letters: list[int] = []
        for token in text.split():
            if token in index:
                letters.append(index[token])
            elif all(ch in index for ch in token):
                letters.extend(index[ch] for ch in token)
            elif len(token) > 1 and any(ch in index for ch in token):
                raise UnknownLetter(next(ch for ch in token if ch not in index))
            else:
                raise UnknownLetter(token)
        return tuple(letters)

    def format_word(self, word: Sequence[int], empty: str = "") -> str:
        if not word:
            return empty
        sep = "" if all(len(s) == 1 for s in self.alphabet) else " "
        return sep.join(self.alphabet[i] for i in word)

    def format_rule(self, rule: Rule) -> str:
        return f"{self.format_word(rule.lhs, '1')} -> {self.format_word(rule.rhs, '1')}"

    # -- matching ----------------------------------------------------------

    def matches(self, word: Sequence[int]) -> list[tuple[int, int]]:
        """All redexes of ``word`` as ``(position, rule_index)``, sorted."""
        return sorted(self.automaton.iter_matches(word))

    def is_irreducible(self, word: Sequence[int]) -> bool:
        return not self.automaton.contains_any(word)

    def successors(self, word: Word) -> set[Word]:
        """Every word obtained from ``word`` by one rule application."""
        out = set()
        for pos, index in self.automaton.iter_matches(word):
            rule = self.rules[index]
            out.add(word[:pos] + rule.rhs + word[pos + len(rule.lhs) :])
        return out

    def irreducible_words(self, max_len: int) -> Iterator[Word]:
        """Irreducible words of length <= max_len in shortlex order."""
        layer: list[tuple[Word, int]] = [(EMPTY, 0)]
        yield EMPTY
        step, outputs = self.automaton.step, self.automaton.outputs
        for _ in range(max_len):
            nxt = []
            for word, state in layer:
                for letter in range(self.size):
                    s = step(state, letter)
                    if not outputs(s):
                        nxt.append((word + (letter,), s))
            for word, _ in nxt:
                yield word
            layer = nxt
            if not layer:
                return

    # -- reduction -----------------------------------------------------------

    def normal_form(self, word: Sequence[int]) -> Word:
        """Irreducible descendant of ``word``.

        Rewrites the redex that ends first, using a stack of automaton
        states so no prefix is rescanned. For a confluent system this is the
        unique normal form; callers needing a specific strategy use ``reduce``.
        """
        if not self.flags.terminating:
            raise NonTerminatingRisk("system is not known to terminate")
        return self._nf_cache(tuple(word))

    def _normal_form(self, word: Word) -> Word:
        step, outputs, rules = self.automaton.step, self.automaton.outputs, self.rules
        letters: list[int] = []
        states = [0]
        pending = list(reversed(word))
        while pending:
            letter = pending.pop()
            state = step(states[-1], letter)
            letters.append(letter)
            states.append(state)
            found = outputs(state)
            if found:
                rule = rules[found[0]]
                del letters[len(letters) - len(rule.lhs) :]
                del states[len(states) - len(rule.lhs) :]
                pending.extend(reversed(rule.rhs))
        return tuple(letters)

    def concat_nf(self, *words: Sequence[int]) -> Word:
        out: Word = EMPTY
        for w in words:
            out += tuple(w)
        return self.normal_form(out)


def classify(system: RewritingSystem) -> Classification:
    rules = system.rules
    length_reducing = all(len(r.rhs) < len(r.lhs) for r in rules)
    monadic = all(len(r.rhs) <= 1 for r in rules)
    special = all(not r.rhs for r in rules)
    two_monadic = length_reducing and all(len(r.lhs) <= 2 for r in rules)
    normalized = all(len(r.lhs) >= 2 for r in rules) and all(
        not system.automaton.contains_any(r.lhs[:-1])
        and not system.automaton.contains_any(r.lhs[1:])
        for r in rules
    )
    return Classification(
        finite=True,
        length_reducing=length_reducing,
        special=special,
        monadic=monadic,
        two_monadic=two_monadic,
        normalized=normalized,
        terminating=_terminates(rules),
    )


def _terminates(rules: Sequence[Rule]) -> bool:
    # Decided only when every rule shortens or renames one letter: then an
    # infinite derivation must eventually cycle through renames alone.
    renames: dict[int, set[int]] = {}
    for r in rules:
        if len(r.rhs) < len(r.lhs):
            continue
        if len(r.lhs) == 1 and len(r.rhs) == 1:
            renames.setdefault(r.lhs[0], set()).add(r.rhs[0])
            continue
        return False
    done: set[int] = set()
    active: set[int] = set()

    def acyclic_from(v: int) -> bool:
        if v in done:
            return True
        if v in active:
            return False
        active.add(v)
        ok = all(acyclic_from(w) for w in renames.get(v, ()))
        active.discard(v)
        done.add(v)
        return ok

    return all(acyclic_from(v) for v in list(renames))


def is_reducible(system: RewritingSystem, word: Sequence[int]) -> tuple[int, Rule] | None:
    """Leftmost redex, ties broken by lowest rule index."""
    best: tuple[int, int] | None = None
    horizon = None
    for pos, index in system.automaton.iter_matches(word):
        if horizon is not None and pos + len(system.rules[index].lhs) - 1 > horizon:
            break
        if best is None or (pos, index) < best:
            best = (pos, index)
            horizon = pos + system.max_lhs_len - 1
    if best is None:
        return None
    return best[0], system.rules[best[1]]


def reduce(
    system: RewritingSystem,
    word: Sequence[int],
    strategy: str = "leftmost",
    seed: int | None = None,
    max_steps: int | None = None,
) -> ReductionTrace:
    """Rewrite ``word`` to an irreducible word, recording every step.

    ``leftmost`` and ``rightmost`` pick the redex by start position (lowest
    rule index on ties); ``random`` picks uniformly among all redexes using
    ``random.Random(seed)``.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if max_steps is None and not system.flags.terminating:
        raise NonTerminatingRisk("system is not known to terminate; pass max_steps")
    rng = random.Random(seed) if strategy == "random" else None
    current = tuple(word)
    steps: list[RewriteStep] = []
    while True:
        redexes = system.matches(current)
        if not redexes:
            return ReductionTrace(tuple(steps), current)
        if max_steps is not None and len(steps) >= max_steps:
            raise NonTerminatingRisk(f"step budget {max_steps} exhausted")
        if strategy == "leftmost":
            pos, index = redexes[0]
        elif strategy == "rightmost":
            top = redexes[-1][0]
            pos, index = next(m for m in redexes if m[0] == top)
        else:
            pos, index = rng.choice(redexes)
        rule = system.rules[index]
        after = current[:pos] + rule.rhs + current[pos + len(rule.lhs) :]
        steps.append(RewriteStep(pos, rule, current, after))
        current = after


def all_words(alphabet_size: int, max_len: int) -> Iterator[Word]:
    """Every word of length <= max_len, shortlex."""
    layer: list[Word] = [EMPTY]
    yield EMPTY
    for _ in range(max_len):
        layer = [w + (x,) for w in layer for x in range(alphabet_size)]
        yield from layer


def system_from_rules(alphabet: str | Iterable[str], rules: Iterable[tuple[str, str]]) -> RewritingSystem:
    """Build a system from symbol strings, e.g. ``system_from_rules("a b", [("aa", "")])``."""
    symbols = tuple(alphabet.split() if isinstance(alphabet, str) else alphabet)
    probe = RewritingSystem(symbols, ())
    return RewritingSystem(
        symbols, tuple(Rule(probe.parse_word(l), probe.parse_word(r)) for l, r in rules)
    )
