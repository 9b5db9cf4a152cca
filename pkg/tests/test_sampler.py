import json

import pytest

from corpus import FIXTURES, group_pool
from plaingroups.confluence import is_confluent
from plaingroups.decomposition import check_cochet
from plaingroups.groups import group_status
from plaingroups.mrs import load_system, render_system
from plaingroups.sampler import (
    SamplerConfig,
    free_product,
    sample_free_products,
    sample_group_systems,
    sample_system,
    table_system,
    write_corpus,
)
from plaingroups.system import Rule

YIELD = json.loads((FIXTURES / "sampler_yield.json").read_text())


def test_config_validation():
    with pytest.raises(ValueError):
        SamplerConfig(alphabet_size=0)
    with pytest.raises(ValueError):
        SamplerConfig(max_rules=0)


def test_deterministic():
    c = SamplerConfig(3, 4, 3, False, 42)
    assert render_system(sample_system(c)) == render_system(sample_system(c))


def test_one_letter_rule_space():
    legal = {Rule((0, 0), ()), Rule((0, 0), (0,))}
    for seed in range(200):
        s = sample_system(SamplerConfig(1, 3, 2, False, seed))
        assert set(s.rules) <= legal


def test_special_only():
    for seed in range(200):
        s = sample_system(SamplerConfig(3, 4, 3, True, seed))
        assert all(r.rhs == () for r in s.rules)


def test_shape_by_construction():
    for seed in range(500):
        s = sample_system(SamplerConfig(3, 4, 3, False, seed))
        assert s.flags.monadic and s.flags.length_reducing
        assert len({r.lhs for r in s.rules}) == len(s.rules)
        assert all(2 <= len(r.lhs) <= 3 for r in s.rules)


def test_want_zero():
    batch = sample_group_systems(SamplerConfig(), 0, 100)
    assert list(batch) == [] and batch.attempts == 0


def test_recorded_yield():
    c = YIELD["config"]
    config = SamplerConfig(c["alphabet_size"], c["max_rules"], c["max_lhs_len"], False, c["seed"])
    first = sample_group_systems(config, 1, 10**5)
    assert len(first) == 1 and first.attempts == YIELD["first_hit_attempt"]
    batch = sample_group_systems(config, 10**6, YIELD["attempts"])
    assert len(batch) == YIELD["accepted"]
    assert batch.attempts == batch.not_confluent + batch.not_group + len(batch)
    special = SamplerConfig(c["alphabet_size"], c["max_rules"], c["max_lhs_len"], True, c["seed"])
    assert len(sample_group_systems(special, 10**6, YIELD["attempts"])) == YIELD["accepted_special_only"]


def test_accepted_systems_are_groups():
    for s in sample_group_systems(SamplerConfig(3, 4, 3, False, 1), 20, 20_000):
        assert s.flags.normalized and is_confluent(s).confluent
        assert group_status(s).is_group == "yes"


def test_special_batch_passes_cochet():
    for s in sample_group_systems(SamplerConfig(3, 4, 3, True, 3), 30, 20_000):
        check_cochet(s)


def test_distinct():
    batch = sample_group_systems(SamplerConfig(3, 4, 3, False, 1), 15, 50_000, vary_alphabet=True, distinct=True)
    assert len(set(batch)) == len(batch)


def test_free_products():
    pool = list(group_pool())[:10]
    products = sample_free_products(pool, 40, seed=2)
    assert len(set(products)) == 40
    for s in products:
        assert s.flags.normalized and s.flags.monadic
        assert is_confluent(s).confluent and group_status(s).is_group == "yes"
    z2 = pool[0]
    both = free_product([z2, z2])
    assert both.size == 2 * z2.size and len(both.rules) == 2 * len(z2.rules)


def test_table_system_klein():
    names = ["1", "p", "q", "r"]
    s = table_system(names, lambda i, j: i ^ j)
    klein = load_system(FIXTURES / "klein.mrs")
    assert s.alphabet == klein.alphabet and set(s.rules) == set(klein.rules)


def test_write_corpus_byte_identical(tmp_path):
    systems = list(sample_group_systems(SamplerConfig(3, 4, 3, False, 7), 5, 20_000))
    a = write_corpus(systems, tmp_path / "a", 7)
    b = write_corpus(list(sample_group_systems(SamplerConfig(3, 4, 3, False, 7), 5, 20_000)), tmp_path / "b", 7)
    assert [p.name for p in a] == [f"seed7_{i:04d}.mrs" for i in range(len(a))]
    assert [p.read_bytes() for p in a] == [p.read_bytes() for p in b]
