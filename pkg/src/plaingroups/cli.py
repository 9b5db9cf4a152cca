"""Command-line front end: one subcommand per analysis over `.mrs` files.

Exit codes: 0 success, 1 the analysis answered "no" (or a lemma check
fired), 2 parse error, 3 unknown letter in a word argument, 4 termination
not established, 5 any other precondition or budget failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .cayley import (
    DEFAULT_MAX_VERTICES,
    build_ball,
    check_path_confinement,
    check_simple_graph,
    check_single_edge,
    export_dot,
)
from .confluence import is_confluent
from .decomposition import check_cochet, decompose, render_decomposition
from .errors import (
    LemmaViolation,
    MrsSyntaxError,
    NonTerminatingRisk,
    NotAGroup,
    NotConfluent,
    NotMonadic,
    NotTerminating,
    OutOfBall,
    RewritingError,
    UnknownLetter,
)
from .groups import (
    check_dfl_properties,
    detect_dfl_subgroups,
    detect_rc_subgroups,
    group_status,
    inverse_word,
)
from .mrs import load_system
from .normalization import normalize, render_normalization
from .sampler import SamplerConfig, sample_group_systems, write_corpus
from .system import STRATEGIES, RewritingSystem, reduce

EXIT_OK, EXIT_NO, EXIT_PARSE, EXIT_LETTER, EXIT_NONTERM, EXIT_OTHER = range(6)
EMPTY_DISPLAY = "(empty)"
LEMMAS = ("plain-geometry", "single-edge", "dfl-props", "cochet")


class _Done(Exception):
    def __init__(self, code: int) -> None:
        self.code = code


def _word(system: RewritingSystem, word) -> str:
    return system.format_word(word, EMPTY_DISPLAY)


def _value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


class Output:
    """Collects a report and prints it in the chosen mode."""

    def __init__(self, mode: str) -> None:
        self.mode = mode
        self.kv: dict[str, str] = {}
        self.lines: list[str] = []

    def put(self, key: str, value) -> None:
        self.kv[key] = _value(value)

    def say(self, line: str) -> None:
        self.lines.append(line)

    def flush(self) -> None:
        if self.mode == "kv":
            text = "".join(f"{k}={self.kv[k]}\n" for k in sorted(self.kv))
        else:
            text = "".join(line + "\n" for line in self.lines)
        sys.stdout.write(text)


def _load(path: str) -> RewritingSystem:
    try:
        return load_system(path)
    except (MrsSyntaxError, UnknownLetter) as exc:
        print(f"{path}: {exc}", file=sys.stderr)
        raise _Done(EXIT_PARSE)
    except OSError as exc:
        print(f"{path}: {exc.strerror}", file=sys.stderr)
        raise _Done(EXIT_PARSE)


def cmd_validate(args, out: Output) -> int:
    system = _load(args.path)
    flags = system.flags.as_dict()
    out.put("letters", system.size)
    out.put("rules", len(system.rules))
    for k, v in flags.items():
        out.put(k, v)
    out.say(f"{system.size} letters, {len(system.rules)} rules")
    out.say(" ".join(f"{k}={_value(v)}" for k, v in flags.items()))
    return EXIT_OK


def cmd_reduce(args, out: Output) -> int:
    system = _load(args.path)
    try:
        word = system.parse_word(args.word)
    except UnknownLetter as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LETTER
    trace = reduce(system, word, args.strategy, args.seed)
    out.put("input", _word(system, word))
    out.put("normal_form", _word(system, trace.result))
    out.put("steps", len(trace.steps))
    out.put("strategy", args.strategy)
    out.say(_word(system, trace.result))
    if args.trace:
        width = len(str(len(trace.steps)))
        for i, step in enumerate(trace.steps):
            desc = f"{_word(system, step.before)} @{step.position} {system.format_rule(step.rule)} => {_word(system, step.after)}"
            out.put(f"step.{i:0{width}d}", desc)
            out.say(f"  {i}: {desc}")
    return EXIT_OK


def cmd_confluence(args, out: Output) -> int:
    system = _load(args.path)
    report = is_confluent(system)
    out.put("confluent", report.confluent)
    out.put("critical_pairs", report.pairs_checked)
    if report.confluent:
        out.say(f"confluent ({report.pairs_checked} critical pairs rejoin)")
        return EXIT_OK
    p = report.witness
    left, right = report.witness_normal_forms
    out.put("witness.source", _word(system, p.source))
    out.put("witness.left", _word(system, left))
    out.put("witness.right", _word(system, right))
    out.put("witness.rules", f"{system.format_rule(system.rules[p.rule_a])} | {system.format_rule(system.rules[p.rule_b])}")
    out.say(f"not confluent ({report.pairs_checked} critical pairs)")
    out.say(f"  {_word(system, p.source)} rewrites to {_word(system, left)} and {_word(system, right)}")
    return EXIT_NO


def cmd_normalize(args, out: Output) -> int:
    system = _load(args.path)
    result = normalize(system)
    text = render_normalization(system, result)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    new = result.system
    out.put("letters", new.size)
    out.put("rules", len(new.rules))
    for old, image in sorted(result.letter_map.items()):
        out.put(f"map.{system.alphabet[old]}", _word(new, image))
    out.lines.extend(text.rstrip("\n").split("\n"))
    return EXIT_OK


def cmd_analyze(args, out: Output) -> int:
    system = _load(args.path)
    if not system.flags.monadic:
        raise NotMonadic()
    if not is_confluent(system).confluent:
        raise NotConfluent()
    out.put("normalized_input", system.flags.normalized)
    if not system.flags.normalized:
        system = normalize(system).system
        out.say("input not normalized; analyzing the normalized system")
    status = group_status(system, args.bound)
    out.put("is_group", status.is_group)
    out.put("search_bound", status.search_bound)
    out.say(f"group: {status.is_group} (search bound {status.search_bound})")
    if status.certificate:
        out.put("certificate", status.certificate)
        out.say(f"  {status.certificate}")
    if status.is_group != "yes":
        return EXIT_NO if status.is_group == "no" else EXIT_OK
    for x in range(system.size):
        inv = _word(system, inverse_word(system, status, (x,)))
        out.put(f"inverse.{system.alphabet[x]}", inv)
        out.say(f"  {system.alphabet[x]}^-1 = {inv}")
    dfls = detect_dfl_subgroups(system, status)
    out.put("dfl_subgroups", len(dfls))
    for i, d in enumerate(dfls):
        tail = system.format_word(d.tail, "1")
        letters = " ".join(system.alphabet[x] for x in d.first_letters)
        out.put(f"dfl.{i}.tail", tail)
        out.put(f"dfl.{i}.letters", letters)
        out.put(f"dfl.{i}.order", d.order)
        out.say(f"DFL subgroup of order {d.order}: tail {tail}, letters {letters}")
    rcs = detect_rc_subgroups(system, system.max_lhs_len, 2 * system.max_lhs_len + 2, status)
    out.put("rc_subgroups", len(rcs))
    for i, r in enumerate(rcs):
        out.put(f"rc.{i}.generator", _word(system, r.generator))
        out.put(f"rc.{i}.order", r.order)
        out.say(f"RC subgroup of order {r.order} generated by {_word(system, r.generator)}")
    return EXIT_OK


def cmd_decompose(args, out: Output) -> int:
    system = _load(args.path)
    d = decompose(system, args.conjugacy_bound)
    s = d.system
    out.put("free_rank", d.free_rank)
    out.put("factors", len(d.finite_factors))
    out.put("factor_orders", ",".join(str(n) for n in d.factor_orders))
    for i, f in enumerate(d.finite_factors):
        out.put(f"factor.{i}.order", f.order)
        out.put(f"factor.{i}.source", f.source)
        out.put(f"factor.{i}.elements", " ".join(s.format_word(e, "1") for e in f.table.elements))
    out.put("conjugacy_bound", d.conjugacy_bound)
    out.put("merges", len(d.merges))
    out.put("consistency", d.consistency)
    out.put("confidence", d.confidence)
    out.lines.extend(render_decomposition(d).rstrip("\n").split("\n"))
    return EXIT_OK if d.confidence == "exact" else EXIT_NO


def cmd_ball(args, out: Output) -> int:
    system = _load(args.path)
    ball = build_ball(system, args.radius, args.max_vertices)
    edges = sum(len(s) for s in ball.out)
    if args.dot:
        text = export_dot(ball)
        if args.dot == "-":
            sys.stdout.write(text)
            return EXIT_OK
        Path(args.dot).write_text(text, encoding="utf-8")
    out.put("radius", args.radius)
    out.put("vertices", len(ball.vertices))
    out.put("edges", edges)
    out.say(f"ball of radius {args.radius}: {len(ball.vertices)} vertices, {edges} edges")
    return EXIT_OK


def _check_plain_geometry(system: RewritingSystem, radius: int, out: Output) -> None:
    ball = build_ball(system, radius)
    pairs = paths = 0
    for g in ball.vertices:
        for h in ball.vertices:
            if g == h:
                continue
            try:
                report = check_path_confinement(ball, g, h)
            except OutOfBall:
                continue
            pairs += 1
            paths += report.paths_checked
    out.put("pairs_checked", pairs)
    out.put("paths_checked", paths)
    out.say(f"path confinement: {pairs} pairs, {paths} dipaths, all through the geodesic")


def _check_single_edge(system: RewritingSystem, radius: int, out: Output) -> None:
    ball = build_ball(system, radius)
    check_simple_graph(ball)
    report = check_single_edge(ball)
    out.put("roots", report.roots)
    out.put("unseparated_pairs", report.unseparated_pairs)
    out.say(f"single edge: {report.unseparated_pairs} unseparated pairs over {report.roots} roots, all edges")


def _check_dfl(system: RewritingSystem, out: Output) -> None:
    status = group_status(system)
    if status.is_group != "yes":
        raise NotAGroup(status.certificate or "")
    dfls = detect_dfl_subgroups(system, status)
    checks = sum(check_dfl_properties(system, d, status).checks for d in dfls)
    out.put("subgroups", len(dfls))
    out.put("checks", checks)
    out.say(f"DFL properties: {checks} assertions over {len(dfls)} subgroups")


def _check_cochet(system: RewritingSystem, out: Output) -> None:
    report = check_cochet(system)
    out.put("free_rank", report.free_rank)
    out.put("factor_orders", ",".join(str(n) for n, _ in sorted(report.factors)))
    out.say(f"cyclic factors: {', '.join(f'Z/{n}' for n, _ in sorted(report.factors)) or 'none'}; free rank {report.free_rank}")


def cmd_check(args, out: Output) -> int:
    system = _load(args.path)
    out.put("lemma", args.lemma)
    try:
        if args.lemma == "plain-geometry":
            _check_plain_geometry(system, args.radius, out)
        elif args.lemma == "single-edge":
            _check_single_edge(system, args.radius, out)
        elif args.lemma == "dfl-props":
            _check_dfl(system, out)
        else:
            _check_cochet(system, out)
    except LemmaViolation as exc:
        out.put("ok", False)
        out.put("violation", str(exc))
        out.say(f"VIOLATION: {exc}")
        return EXIT_NO
    out.put("ok", True)
    return EXIT_OK


def cmd_sample(args, out: Output) -> int:
    config = SamplerConfig(args.alphabet_size, args.max_rules, args.max_lhs_len, args.special_only, args.seed)
    batch = sample_group_systems(config, args.want, args.budget)
    out.put("accepted", len(batch))
    out.put("attempts", batch.attempts)
    out.put("not_confluent", batch.not_confluent)
    out.put("not_group", batch.not_group)
    out.say(f"{len(batch)} group systems from {batch.attempts} attempts")
    if args.out_dir:
        paths = write_corpus(batch.systems, args.out_dir, args.seed)
        out.put("written", len(paths))
        out.say(f"wrote {len(paths)} files to {args.out_dir}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plaingroups", description="Analyze monadic rewriting systems.")
    parser.add_argument("--mode", choices=("human", "kv"), default="human")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help_text, path=True):
        p = sub.add_parser(name, help=help_text)
        if path:
            p.add_argument("path", help=".mrs file")
        p.add_argument("--mode", choices=("human", "kv"), default=argparse.SUPPRESS)
        p.set_defaults(func=func)
        return p

    command("validate", cmd_validate, "parse and classify")
    p = command("reduce", cmd_reduce, "reduce a word to normal form")
    p.add_argument("word", help='word, space-separated or as one string; "" for the empty word')
    p.add_argument("--strategy", choices=STRATEGIES, default="leftmost")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--trace", action="store_true")
    command("confluence", cmd_confluence, "decide confluence")
    p = command("normalize", cmd_normalize, "normalized equivalent system")
    p.add_argument("--out", help="write the normalized .mrs here")
    p = command("analyze", cmd_analyze, "group status and finite subgroups")
    p.add_argument("--bound", type=int, default=None, help="inverse search bound")
    p = command("decompose", cmd_decompose, "free product decomposition")
    p.add_argument("--conjugacy-bound", type=int, default=None)
    p = command("ball", cmd_ball, "Cayley graph ball")
    p.add_argument("--radius", type=int, default=3)
    p.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES)
    p.add_argument("--dot", help="write DOT text here ('-' for stdout)")
    p = command("check", cmd_check, "run a structural check")
    p.add_argument("--lemma", choices=LEMMAS, required=True)
    p.add_argument("--radius", type=int, default=4, help="ball radius for the geometric checks")
    p = command("sample", cmd_sample, "sample confluent group systems", path=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alphabet-size", type=int, default=3)
    p.add_argument("--max-rules", type=int, default=4)
    p.add_argument("--max-lhs-len", type=int, default=3)
    p.add_argument("--special-only", action="store_true")
    p.add_argument("--want", type=int, default=10)
    p.add_argument("--budget", type=int, default=10_000)
    p.add_argument("--out-dir")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = Output(args.mode)
    try:
        code = args.func(args, out)
    except _Done as done:
        return done.code
    except (NonTerminatingRisk, NotTerminating) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONTERM
    except (NotConfluent, NotAGroup, NotMonadic) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO
    except LemmaViolation as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_NO
    except (RewritingError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OTHER
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
