"""Random monadic length-reducing systems, filtered for confluence and groups."""

from __future__ import annotations

import random
import string
from dataclasses import dataclass, field
from pathlib import Path

from .confluence import is_confluent
from .groups import group_status
from .mrs import render_system
from .normalization import normalize
from .system import RewritingSystem, Rule


@dataclass(frozen=True)
class SamplerConfig:
    alphabet_size: int = 3
    max_rules: int = 4
    max_lhs_len: int = 3
    allow_special_only: bool = False
    seed: int = 0

    def __post_init__(self) -> None:
        if min(self.alphabet_size, self.max_rules, self.max_lhs_len) < 1:
            raise ValueError("sampler counts must be >= 1")
        if self.alphabet_size > len(string.ascii_lowercase):
            raise ValueError("alphabet_size too large")


def sample_system(config: SamplerConfig) -> RewritingSystem:
    """One system, a pure function of ``config``.

    Left-hand sides have length 2..max_lhs_len (exactly 1 when
    max_lhs_len is 1) and the first ``alphabet_size`` rules start with
    distinct letters, since a letter that starts no left-hand side can
    never be cancelled. Right-hand sides are empty with probability 1/2,
    otherwise a single letter; always empty under ``allow_special_only``.
    No two rules share a left-hand side.
    """
    rng = random.Random(config.seed)
    k = config.alphabet_size
    alphabet = tuple(string.ascii_lowercase[:k])
    n_rules = rng.randint(1, config.max_rules)
    low = min(2, config.max_lhs_len)
    rules: list[Rule] = []
    used: set[tuple[int, ...]] = set()
    for i in range(n_rules):
        for _attempt in range(20):
            length = rng.randint(low, config.max_lhs_len)
            first = i if i < k else rng.randrange(k)
            lhs = (first,) + tuple(rng.randrange(k) for _ in range(length - 1))
            if lhs not in used:
                break
        else:
            continue
        if config.allow_special_only or len(lhs) == 1 or rng.random() < 0.5:
            rhs: tuple[int, ...] = ()
        else:
            rhs = (rng.randrange(k),)
        used.add(lhs)
        rules.append(Rule(lhs, rhs))
    return RewritingSystem(alphabet, tuple(rules))


@dataclass
class SampleBatch:
    systems: list[RewritingSystem] = field(default_factory=list)
    attempts: int = 0
    not_confluent: int = 0
    not_group: int = 0

    def __iter__(self):
        return iter(self.systems)

    def __len__(self) -> int:
        return len(self.systems)


def attempt_seed(seed: int, attempt: int) -> int:
    return (seed * 1_000_003 + attempt) & 0xFFFFFFFFFFFFFFFF


def sample_group_systems(
    config: SamplerConfig,
    want: int,
    budget: int,
    vary_alphabet: bool = False,
    distinct: bool = False,
) -> SampleBatch:
    """Rejection-sample confluent systems presenting groups.

    Accepted systems are returned normalized. With ``vary_alphabet`` each
    attempt draws an alphabet size between 1 and ``config.alphabet_size``;
    with ``distinct`` repeats of an accepted system are rejected.
    """
    batch = SampleBatch()
    seen: set[RewritingSystem] = set()
    while len(batch.systems) < want and batch.attempts < budget:
        seed = attempt_seed(config.seed, batch.attempts)
        batch.attempts += 1
        size = config.alphabet_size
        if vary_alphabet:
            size = random.Random(seed ^ 0x5EED).randint(1, config.alphabet_size)
        trial = SamplerConfig(size, config.max_rules, config.max_lhs_len, config.allow_special_only, seed)
        system = sample_system(trial)
        if not is_confluent(system).confluent:
            batch.not_confluent += 1
            continue
        try:
            system = normalize(system).system
        except Exception:
            batch.not_group += 1
            continue
        if group_status(system).is_group != "yes":
            batch.not_group += 1
            continue
        if distinct:
            if system in seen:
                continue
            seen.add(system)
        batch.systems.append(system)
    return batch


def free_product(systems: list[RewritingSystem], rng: random.Random | None = None) -> RewritingSystem:
    """Disjoint union of the rule sets, letters renamed apart.

    No left-hand side can overlap one from another factor, so confluence,
    normalization and group-ness carry over. With ``rng`` the combined
    alphabet order is shuffled.
    """
    total = sum(s.size for s in systems)
    names = _letter_names(total)
    order = list(range(total))
    if rng is not None:
        rng.shuffle(order)
    rules: list[Rule] = []
    offset = 0
    for system in systems:
        ids = [order[offset + x] for x in range(system.size)]
        rules += [Rule(tuple(ids[x] for x in r.lhs), tuple(ids[x] for x in r.rhs)) for r in system.rules]
        offset += system.size
    return RewritingSystem(tuple(names), tuple(rules))


def _letter_names(n: int) -> list[str]:
    if n <= 26:
        return list(string.ascii_lowercase[:n])
    return [f"x{i}" for i in range(n)]


def sample_free_products(
    pool: list[RewritingSystem], want: int, seed: int, max_factors: int = 2
) -> list[RewritingSystem]:
    """Distinct free products of 1..max_factors systems drawn from ``pool``."""
    rng = random.Random(seed)
    out: list[RewritingSystem] = []
    seen: set[RewritingSystem] = set()
    attempts = 0
    while len(out) < want and attempts < 50 * want:
        attempts += 1
        parts = [rng.choice(pool) for _ in range(rng.randint(1, max_factors))]
        system = free_product(parts, rng)
        if system not in seen:
            seen.add(system)
            out.append(system)
    return out


def write_corpus(systems: list[RewritingSystem], out_dir: str | Path, seed: int) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for i, system in enumerate(systems):
        path = out / f"seed{seed}_{i:04d}.mrs"
        path.write_text(render_system(system), encoding="utf-8")
        paths.append(path)
    return paths


def table_system(names: list[str], multiply) -> RewritingSystem:
    """Multiplication-table system of a finite group.

    ``names[0]`` is the identity and gets no letter; ``multiply(i, j)``
    returns the index of the product of elements i and j.
    """
    alphabet = tuple(names[1:])
    rules = []
    for i in range(1, len(names)):
        for j in range(1, len(names)):
            k = multiply(i, j)
            rules.append(Rule((i - 1, j - 1), () if k == 0 else (k - 1,)))
    return RewritingSystem(alphabet, tuple(rules))
