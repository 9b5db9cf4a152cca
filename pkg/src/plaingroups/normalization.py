"""Rewrite a convergent monadic system into normalized form.

Letters that are themselves reducible are eliminated (each is replaced by
its normal form, a single surviving letter or the empty word). A rule is
kept only when every proper subword of its left-hand side is irreducible;
its right-hand side becomes the normal form of the left-hand side.

Why this presents the same monoid: the irreducible words of the input are
exactly the words over the surviving letters that avoid the kept
left-hand sides, since any minimal reducible word *is* some left-hand
side. Both systems therefore have the same set of irreducible words, each
kept rule is an equality of the input monoid, and so every class of the
new system contains exactly one irreducible word.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

from .confluence import is_confluent
from .errors import LemmaViolation, PreconditionFailed
from .mrs import render_system
from .system import RewritingSystem, Rule, Word


@dataclass(frozen=True)
class NormalizationResult:
    system: RewritingSystem
    letter_map: dict[int, Word]
    """Old letter id -> word over the new alphabet."""
    log: tuple[str, ...]

    def translate(self, word: Word) -> Word:
        out: Word = ()
        for letter in word:
            out += self.letter_map[letter]
        return self.system.normal_form(out)


def _require_convergent_monadic(system: RewritingSystem) -> None:
    if not system.flags.monadic:
        raise PreconditionFailed("monadic")
    if not system.flags.terminating:
        raise PreconditionFailed("terminating")
    if not is_confluent(system).confluent:
        raise PreconditionFailed("confluent")


def normalize(system: RewritingSystem) -> NormalizationResult:
    _require_convergent_monadic(system)
    log: list[str] = []
    survivors = [x for x in range(system.size) if system.is_irreducible((x,))]
    if not survivors:
        raise PreconditionFailed("nontrivial", "every letter reduces to the empty word")
    new_id = {old: new for new, old in enumerate(survivors)}

    def remap(word: Word) -> Word:
        return tuple(new_id[x] for x in word)

    letter_map: dict[int, Word] = {}
    for x in range(system.size):
        image = system.normal_form((x,))
        letter_map[x] = remap(image)
        if x not in new_id:
            log.append(
                f"eliminate letter {system.alphabet[x]} := {system.format_word(image, '1')}"
            )

    rules: list[Rule] = []
    kept_lhs: set[Word] = set()
    for rule in system.rules:
        text = system.format_rule(rule)
        lhs = rule.lhs
        if len(lhs) < 2:
            log.append(f"drop rule {text}: unit left-hand side")
            continue
        if not (system.is_irreducible(lhs[:-1]) and system.is_irreducible(lhs[1:])):
            log.append(f"drop rule {text}: reducible proper subword")
            continue
        if lhs in kept_lhs:
            log.append(f"drop rule {text}: repeated left-hand side")
            continue
        rhs = system.normal_form(lhs)
        if rhs != rule.rhs:
            log.append(f"replace right-hand side of {text} by {system.format_word(rhs, '1')}")
        kept_lhs.add(lhs)
        rules.append(Rule(remap(lhs), remap(rhs)))

    result = RewritingSystem(tuple(system.alphabet[x] for x in survivors), tuple(rules))
    if not (result.flags.normalized and result.flags.monadic and result.flags.length_reducing):
        raise LemmaViolation("normalization produced a system that is not normalized")
    if not is_confluent(result).confluent:
        raise LemmaViolation("normalization lost confluence")
    return NormalizationResult(result, letter_map, tuple(log))


def render_normalization(original: RewritingSystem, result: NormalizationResult) -> str:
    lines = [
        f"# map: {original.alphabet[x]} -> {result.system.format_word(w, '1')}"
        for x, w in sorted(result.letter_map.items())
    ]
    return "\n".join(lines) + "\n" + render_system(result.system)


def _image(system_b: RewritingSystem, letter_map: Mapping[int, Word], word: Word) -> Word:
    out: Word = ()
    for x in word:
        out += tuple(letter_map[x])
    return system_b.normal_form(out)


def check_isomorphic_balls(
    sys_a: RewritingSystem,
    sys_b: RewritingSystem,
    letter_map: Mapping[int, Word],
    radius: int,
) -> bool:
    """Does ``letter_map`` induce an isomorphism of radius-``radius`` tables?

    The induced map must send the normal forms of length <= radius in
    ``sys_a`` bijectively onto those of ``sys_b`` and respect every product
    in the table.
    """
    if set(letter_map) != set(range(sys_a.size)):
        return False
    ball_a = list(sys_a.irreducible_words(radius))
    ball_b = set(sys_b.irreducible_words(radius))
    image = {u: _image(sys_b, letter_map, u) for u in ball_a}
    if len(set(image.values())) != len(ball_a) or set(image.values()) != ball_b:
        return False
    for x in range(sys_a.size):
        if _image(sys_b, letter_map, sys_a.normal_form((x,))) != _image(sys_b, letter_map, (x,)):
            return False
    for u in ball_a:
        for v in ball_a:
            product = sys_a.normal_form(u + v)
            lhs = image.get(product)
            if lhs is None:
                lhs = _image(sys_b, letter_map, product)
            if lhs != sys_b.normal_form(image[u] + image[v]):
                return False
    return True
