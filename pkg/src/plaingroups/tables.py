"""Finite groups given by explicit multiplication tables."""

from __future__ import annotations

from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass
from itertools import product

from .smith import prime_factors
from .system import RewritingSystem, Word


@dataclass(frozen=True)
class GroupTable:
    """Elements are normal-form words; ``elements[0]`` is the identity."""

    elements: tuple[Word, ...]
    table: tuple[tuple[int, ...], ...]

    @classmethod
    def from_elements(cls, system: RewritingSystem, elements: Sequence[Word]) -> GroupTable:
        ordered = [()] + sorted((e for e in set(elements) if e), key=lambda w: (len(w), w))
        index = {e: i for i, e in enumerate(ordered)}
        rows = []
        for a in ordered:
            row = []
            for b in ordered:
                c = system.normal_form(a + b)
                if c not in index:
                    raise ValueError("element set is not closed under multiplication")
                row.append(index[c])
            rows.append(tuple(row))
        return cls(tuple(ordered), tuple(rows))

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def is_group(self) -> bool:
        n, t = self.order, self.table
        if self.elements[0] != ():
            return False
        if any(t[0][i] != i or t[i][0] != i for i in range(n)):
            return False
        for row in t:
            if sorted(row) != list(range(n)):
                return False
        return all(t[t[a][b]][c] == t[a][t[b][c]] for a, b, c in product(range(n), repeat=3))

    def inverse(self, i: int) -> int:
        return self.table[i].index(0)

    def element_order(self, i: int) -> int:
        k, cur = 1, i
        while cur != 0:
            cur = self.table[cur][i]
            k += 1
            if k > self.order:
                raise ValueError("not a group table")
        return k

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def generator(self) -> int | None:
        """Index of an element generating the whole group, if it is cyclic."""
        for i in range(self.order):
            if self.element_order(i) == self.order:
                return i
        return None

    def is_cyclic(self) -> bool:
        return self.generator() is not None

    def closure(self, gens: Sequence[int]) -> frozenset[int]:
        found = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    c = self.table[a][g]
                    if c not in found:
                        found.add(c)
                        nxt.append(c)
            frontier = nxt
        return frozenset(found)

    def abelianization_divisors(self) -> list[int]:
        """Elementary divisors (prime powers) of G / [G, G], sorted."""
        t, n = self.table, self.order
        inv = [self.inverse(i) for i in range(n)]
        commutators = {t[t[t[a][b]][inv[a]]][inv[b]] for a in range(n) for b in range(n)}
        derived = self.closure(sorted(commutators))
        coset_of: dict[int, int] = {}
        reps: list[int] = []
        for a in range(n):
            if a in coset_of:
                continue
            idx = len(reps)
            reps.append(a)
            for k in derived:
                coset_of[t[a][k]] = idx
        m = len(reps)
        q = [[coset_of[t[reps[i]][reps[j]]] for j in range(m)] for i in range(m)]
        identity = coset_of[0]

        def power(i: int, e: int) -> int:
            acc = identity
            for _ in range(e):
                acc = q[acc][i]
            return acc

        divisors: list[int] = []
        for p, mult in Counter(prime_factors(m)).items():
            # log_p #{x : x^(p^k) = 1} = sum_i min(k, e_i)
            logs = [0]
            for k in range(1, mult + 1):
                count = sum(1 for i in range(m) if power(i, p**k) == identity)
                e = 0
                while count % p == 0 and count > 1:
                    count //= p
                    e += 1
                logs.append(e)
            at_least = [logs[k] - logs[k - 1] for k in range(1, mult + 1)] + [0]
            for k in range(1, mult + 1):
                divisors += [p**k] * (at_least[k - 1] - at_least[k])
        return sorted(divisors)

    def is_isomorphic(self, other: GroupTable) -> bool:
        if self.order != other.order:
            return False
        mine = Counter(self.element_order(i) for i in range(self.order))
        theirs = Counter(other.element_order(i) for i in range(other.order))
        if mine != theirs:
            return False
        gens: list[int] = []
        span = frozenset([0])
        for i in sorted(range(self.order), key=lambda i: -self.element_order(i)):
            if i not in span:
                gens.append(i)
                span = self.closure(gens)
        return self._extend({0: 0}, gens, other)

    def _extend(self, partial: dict[int, int], gens: list[int], other: GroupTable) -> bool:
        if not gens:
            return len(partial) == self.order
        g = gens[0]
        used = set(partial.values())
        for image in range(other.order):
            if image in used or other.element_order(image) != self.element_order(g):
                continue
            trial = self._close_map({**partial, g: image}, other)
            if trial is not None and self._extend(trial, gens[1:], other):
                return True
        return False

    def _close_map(self, mapping: dict[int, int], other: GroupTable) -> dict[int, int] | None:
        mapping = dict(mapping)
        changed = True
        while changed:
            changed = False
            for a, fa in list(mapping.items()):
                for b, fb in list(mapping.items()):
                    c, fc = self.table[a][b], other.table[fa][fb]
                    if c in mapping:
                        if mapping[c] != fc:
                            return None
                    else:
                        if fc in mapping.values():
                            return None
                        mapping[c] = fc
                        changed = True
        return mapping
