"""Integer Smith normal form, with exact Python integers throughout."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from math import gcd


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry grid does not match dimensions")

    @classmethod
    def from_rows(cls, rows: list[list[int]], cols: int | None = None) -> IntegerMatrix:
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(tuple(int(x) for x in r) for r in rows))


@dataclass(frozen=True)
class SmithForm:
    invariant_factors: tuple[int, ...]
    """Nonzero diagonal entries d_1 | d_2 | ... | d_k."""
    free_rank_defect: int

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d > 1)


def smith_normal_form(m: IntegerMatrix) -> SmithForm:
    a = [list(r) for r in m.entries]
    rows, cols = m.rows, m.cols
    diag: list[int] = []
    t = 0
    while t < min(rows, cols):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            pivot = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = a[i][t] // pivot
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, cols):
                q = a[t][j] // pivot
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    dirty = True
            if not dirty:
                bad = next(
                    (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % pivot),
                    None,
                )
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad])]
                continue
            # a remainder is smaller than the pivot: make it the new pivot
            _, pi, pj = min(
                [(abs(a[i][t]), i, t) for i in range(t + 1, rows) if a[i][t]]
                + [(abs(a[t][j]), t, j) for j in range(t + 1, cols) if a[t][j]]
            )
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return SmithForm(tuple(diag), cols - len(diag))


def _det(rows: list[list[int]]) -> int:
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = sign
        for i, j in enumerate(perm):
            term *= rows[i][j]
            if not term:
                break
        total += term
    return total


def invariant_factors_from_minors(m: IntegerMatrix) -> tuple[int, ...]:
    """Invariant factors as ratios of determinantal divisors.

    The k-th determinantal divisor is the gcd of all k x k minors; this is
    independent of any row or column reduction.
    """
    previous = 1
    factors: list[int] = []
    for k in range(1, min(m.rows, m.cols) + 1):
        g = 0
        for rs in combinations(range(m.rows), k):
            for cs in combinations(range(m.cols), k):
                g = gcd(g, _det([[m.entries[i][j] for j in cs] for i in rs]))
        if g == 0:
            break
        factors.append(g // previous)
        previous = g
    return tuple(factors)


def prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def elementary_divisors(factors) -> list[int]:
    """Prime-power decomposition of ⊕ Z/d over the given d (1s dropped)."""
    out = []
    for d in factors:
        powers: dict[int, int] = {}
        for p in prime_factors(abs(d)):
            powers[p] = powers.get(p, 1) * p
        out.extend(powers.values())
    return sorted(out)


def hermite_rows(m: IntegerMatrix) -> list[list[int]]:
    """Row-style Hermite normal form of the row lattice of ``m`` (zero rows dropped).

    Pivots are positive and entries above each pivot lie in [0, pivot).
    """
    a = [list(r) for r in m.entries]
    out: list[list[int]] = []
    col = 0
    while a and col < m.cols:
        live = [r for r in a if r[col]]
        if not live:
            col += 1
            continue
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            p = live[0]
            rest = []
            for r in live[1:]:
                q = r[col] // p[col]
                r = [x - q * y for x, y in zip(r, p)]
                rest.append(r)
            live = [p] + [r for r in rest if r[col]]
            a = [r for r in a if not r[col]] + [r for r in rest if not r[col]]
        p = live[0]
        if p[col] < 0:
            p = [-x for x in p]
        a = [r for r in a if r[col] == 0 and any(r)]
        out.append(p)
        col += 1
    pivots = [next(j for j, x in enumerate(r) if x) for r in out]
    for i, (r, c) in enumerate(zip(out, pivots)):
        for k in range(i):
            q = out[k][c] // r[c]
            if q:
                out[k] = [x - q * y for x, y in zip(out[k], r)]
    return out


def lattice_residue(hermite: list[list[int]], v) -> tuple[int, ...]:
    """Canonical representative of ``v`` modulo the lattice spanned by ``hermite``."""
    v = list(v)
    for r in hermite:
        c = next(j for j, x in enumerate(r) if x)
        q = v[c] // r[c]
        if q:
            v = [x - q * y for x, y in zip(v, r)]
    return tuple(v)
