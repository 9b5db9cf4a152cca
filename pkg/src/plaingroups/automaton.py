"""Aho-Corasick automaton over a small integer alphabet.

Patterns are rule left-hand sides, stored as tuples of letter ids. The
automaton is built once and then only read, so a single instance may be
shared between threads.

The transition function is completed into a dense table (one row per
state, one column per letter), which keeps the hot scanning loop free of
failure-link chasing.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterator, Sequence


class PatternAutomaton:
    def __init__(self, alphabet_size: int, patterns: Sequence[tuple[int, ...]]) -> None:
        self.alphabet_size = alphabet_size
        self.patterns = tuple(patterns)
        goto: list[dict[int, int]] = [{}]
        own: list[list[int]] = [[]]
        for index, pattern in enumerate(self.patterns):
            state = 0
            for letter in pattern:
                nxt = goto[state].get(letter)
                if nxt is None:
                    nxt = len(goto)
                    goto[state][letter] = nxt
                    goto.append({})
                    own.append([])
                state = nxt
            own[state].append(index)

        n = len(goto)
        fail = [0] * n
        delta = [[0] * alphabet_size for _ in range(n)]
        # out[s] lists every pattern that is a suffix of the string spelled by s.
        out: list[tuple[int, ...]] = [()] * n
        out[0] = tuple(sorted(own[0]))
        for letter in range(alphabet_size):
            delta[0][letter] = goto[0].get(letter, 0)
        queue = deque(goto[0].values())
        while queue:
            state = queue.popleft()
            out[state] = tuple(sorted(set(own[state]) | set(out[fail[state]])))
            for letter in range(alphabet_size):
                child = goto[state].get(letter)
                if child is None:
                    delta[state][letter] = delta[fail[state]][letter]
                else:
                    fail[child] = delta[fail[state]][letter]
                    delta[state][letter] = child
                    queue.append(child)
        self._delta = delta
        self._out = out

    @property
    def num_states(self) -> int:
        return len(self._delta)

    def step(self, state: int, letter: int) -> int:
        return self._delta[state][letter]

    def outputs(self, state: int) -> tuple[int, ...]:
        return self._out[state]

    def iter_matches(self, word: Sequence[int]) -> Iterator[tuple[int, int]]:
        """Yield ``(start, pattern_index)`` for every occurrence, ordered by end position."""
        delta, out, patterns = self._delta, self._out, self.patterns
        state = 0
        for end, letter in enumerate(word):
            state = delta[state][letter]
            for index in out[state]:
                yield end - len(patterns[index]) + 1, index

    def contains_any(self, word: Sequence[int]) -> bool:
        delta, out = self._delta, self._out
        state = 0
        for letter in word:
            state = delta[state][letter]
            if out[state]:
                return True
        return False
