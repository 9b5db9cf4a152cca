"""Reading and writing the line-oriented ``.mrs`` format.

::

    # Z/2 * Z/3
    alphabet: a b B
    rule: a a ->
    rule: b B ->
    rule: b b -> B

Exactly one ``alphabet:`` line, before any ``rule:`` line. Symbols are
whitespace-delimited; an empty right-hand side is the empty word.
"""

from __future__ import annotations

from pathlib import Path

from .errors import DuplicateLetter, EmptyLhs, MrsSyntaxError, UnknownLetter
from .system import RewritingSystem, Rule


def _tokens(line: str, start: int) -> list[tuple[str, int]]:
    """Whitespace-delimited tokens of ``line[start:]`` with 1-based columns."""
    out = []
    i = start
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace():
            j += 1
        out.append((line[i:j], i + 1))
        i = j
    return out


def parse_system(text: str) -> RewritingSystem:
    alphabet: list[str] | None = None
    index: dict[str, int] = {}
    rules: list[Rule] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        lead = len(line) - len(line.lstrip())
        if stripped.startswith("alphabet:"):
            if alphabet is not None:
                raise MrsSyntaxError("second alphabet line", lineno, lead + 1)
            alphabet = []
            for symbol, col in _tokens(line, lead + len("alphabet:")):
                if symbol == "->" or "#" in symbol:
                    raise MrsSyntaxError(f"invalid letter symbol {symbol!r}", lineno, col)
                if symbol in index:
                    raise DuplicateLetter(f"duplicate letter {symbol!r}", lineno, col)
                index[symbol] = len(alphabet)
                alphabet.append(symbol)
            if not alphabet:
                raise MrsSyntaxError("alphabet must list at least one letter", lineno, lead + 1)
        elif stripped.startswith("rule:"):
            if alphabet is None:
                raise MrsSyntaxError("rule before alphabet line", lineno, lead + 1)
            tokens = _tokens(line, lead + len("rule:"))
            arrows = [k for k, (tok, _) in enumerate(tokens) if tok == "->"]
            if len(arrows) != 1:
                col = tokens[arrows[1]][1] if len(arrows) > 1 else len(line) + 1
                raise MrsSyntaxError("rule needs exactly one '->'", lineno, col)
            k = arrows[0]
            if k == 0:
                raise EmptyLhs("rule has empty left-hand side", lineno, tokens[0][1])
            sides = []
            for part in (tokens[:k], tokens[k + 1 :]):
                letters = []
                for symbol, col in part:
                    if symbol not in index:
                        raise UnknownLetter(symbol, lineno, col)
                    letters.append(index[symbol])
                sides.append(tuple(letters))
            rules.append(Rule(sides[0], sides[1]))
        else:
            raise MrsSyntaxError("expected 'alphabet:', 'rule:' or '# comment'", lineno, lead + 1)
    if alphabet is None:
        raise MrsSyntaxError("missing alphabet line", max(1, len(text.splitlines())), 1)
    return RewritingSystem(tuple(alphabet), tuple(rules))


def render_system(system: RewritingSystem) -> str:
    lines = ["alphabet: " + " ".join(system.alphabet)]
    for rule in system.rules:
        lhs = " ".join(system.alphabet[i] for i in rule.lhs)
        rhs = " ".join(system.alphabet[i] for i in rule.rhs)
        lines.append(f"rule: {lhs} ->" + (f" {rhs}" if rhs else ""))
    return "\n".join(lines) + "\n"


def load_system(path: str | Path) -> RewritingSystem:
    return parse_system(Path(path).read_text(encoding="utf-8"))
