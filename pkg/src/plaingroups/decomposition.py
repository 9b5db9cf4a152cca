"""Free product decomposition: finite factors plus the rank of the free part.

The free rank is read off the abelianization: for F_r * A_1 * ... * A_p the
abelianization is Z^r ⊕ A_1^ab ⊕ ... ⊕ A_p^ab. Finite factors come from the
DFL and RC detectors, reduced to one representative per conjugacy class
(searched over conjugators of bounded length) and to maximal subgroups.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from .confluence import is_confluent
from .errors import NotConfluent, NotMonadic, PreconditionFailed, TheoremViolation
from .groups import (
    GroupStatus,
    conjugate,
    detect_dfl_subgroups,
    detect_rc_subgroups,
    group_status,
    require_group,
)
from .normalization import normalize
from .smith import (
    IntegerMatrix,
    SmithForm,
    elementary_divisors,
    hermite_rows,
    lattice_residue,
    smith_normal_form,
)
from .system import RewritingSystem, Word
from .tables import GroupTable


def abelianized_matrix(system: RewritingSystem) -> IntegerMatrix:
    rows = []
    for rule in system.rules:
        row = [0] * system.size
        for x in rule.lhs:
            row[x] += 1
        for x in rule.rhs:
            row[x] -= 1
        rows.append(row)
    return IntegerMatrix.from_rows(rows, system.size)


@dataclass(frozen=True)
class Factor:
    table: GroupTable
    source: Literal["DFL", "RC"]

    @property
    def order(self) -> int:
        return self.table.order

    @property
    def elements(self) -> frozenset[Word]:
        return frozenset(self.table.elements)


@dataclass
class PlainDecomposition:
    system: RewritingSystem
    """The normalized system the factors are spelled in."""
    free_rank: int
    finite_factors: list[Factor]
    smith: SmithForm
    consistency: str
    confidence: Literal["exact", "partial"]
    conjugacy_bound: int
    merges: list[str] = field(default_factory=list)
    normalized_input: bool = True

    @property
    def factor_orders(self) -> list[int]:
        return sorted(f.order for f in self.finite_factors)


class _AbelianKey:
    """Image of a word in the abelianization, as a canonical lattice residue.

    Conjugate elements share an image, so a subgroup whose images are not
    among another's cannot be conjugated into it.
    """

    def __init__(self, system: RewritingSystem) -> None:
        self.size = system.size
        self.hermite = hermite_rows(abelianized_matrix(system))

    def __call__(self, word: Word) -> tuple[int, ...]:
        v = [0] * self.size
        for x in word:
            v[x] += 1
        return lattice_residue(self.hermite, v)


def _conjugate_into(
    system: RewritingSystem,
    status: GroupStatus,
    small: frozenset[Word],
    big: frozenset[Word],
    bound: int,
    key: _AbelianKey,
) -> Word | None:
    if len(small) > len(big) or not {key(e) for e in small} <= {key(e) for e in big}:
        return None
    for g in system.irreducible_words(bound):
        if all(conjugate(system, status, e, g) in big for e in small):
            return g
    return None


def decompose(system: RewritingSystem, conjugacy_bound: int | None = None) -> PlainDecomposition:
    if not system.flags.monadic:
        raise NotMonadic()
    if not system.flags.terminating or not is_confluent(system).confluent:
        raise NotConfluent()
    normalized_input = system.flags.normalized
    if not normalized_input:
        system = normalize(system).system
    status = require_group(system, group_status(system))

    smith = smith_normal_form(abelianized_matrix(system))

    candidates: list[Factor] = []
    for dfl in detect_dfl_subgroups(system, status):
        candidates.append(Factor(dfl.table, "DFL"))
    max_order = 2 * system.max_lhs_len + 2
    for rc in detect_rc_subgroups(system, system.max_lhs_len, max_order, status):
        candidates.append(Factor(GroupTable.from_elements(system, sorted(rc.elements)), "RC"))

    longest = max((len(e) for f in candidates for e in f.elements), default=0)
    if conjugacy_bound is None:
        conjugacy_bound = 2 * longest
    key = _AbelianKey(system)

    candidates.sort(key=lambda f: (-f.order, f.source, sorted(f.elements, key=lambda w: (len(w), w))))
    kept: list[Factor] = []
    merges: list[str] = []
    for cand in candidates:
        for other in kept:
            g = _conjugate_into(system, status, cand.elements, other.elements, conjugacy_bound, key)
            if g is not None:
                how = "equal to" if cand.order == other.order else "inside"
                gen = system.format_word(max(cand.elements, key=len))
                merges.append(
                    f"order-{cand.order} {cand.source} subgroup of {gen} is conjugate "
                    f"{how} an order-{other.order} factor (by {system.format_word(g, '1')})"
                )
                break
        else:
            kept.append(cand)

    torsion = elementary_divisors(smith.torsion)
    from_factors = sorted(d for f in kept for d in f.table.abelianization_divisors())
    if torsion == from_factors:
        consistency = "ok"
    else:
        consistency = f"mismatch(abelianization={torsion} factors={from_factors})"
    return PlainDecomposition(
        system=system,
        free_rank=smith.free_rank_defect,
        finite_factors=kept,
        smith=smith,
        consistency=consistency,
        confidence="exact" if consistency == "ok" else "partial",
        conjugacy_bound=conjugacy_bound,
        merges=merges,
        normalized_input=normalized_input,
    )


def render_decomposition(d: PlainDecomposition) -> str:
    s = d.system
    lines = [f"free_rank: {d.free_rank}"]
    for i, f in enumerate(d.finite_factors):
        names = [s.format_word(e, "1") for e in f.table.elements]
        lines.append(f"factor {i}: order {f.order} ({f.source})")
        lines.append("  elements: " + " ".join(names))
        for name, row in zip(names, f.table.table):
            lines.append(f"  {name}: " + " ".join(names[k] for k in row))
    lines.append(f"conjugacy_bound: {d.conjugacy_bound}")
    for m in d.merges:
        lines.append(f"merged: {m}")
    lines.append(f"consistency: {d.consistency}")
    lines.append(f"confidence: {d.confidence}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class CochetReport:
    factors: list[tuple[int, Word]]
    """(order, generator) per finite factor."""
    free_rank: int


def check_cochet(system: RewritingSystem) -> CochetReport:
    """Every finite factor of a special confluent group system is cyclic."""
    if not system.flags.special:
        raise PreconditionFailed("special")
    d = decompose(system)
    factors = []
    for f in d.finite_factors:
        g = f.table.generator()
        if g is None:
            raise TheoremViolation(f"non-cyclic factor of order {f.order}")
        factors.append((f.order, f.table.elements[g]))
    return CochetReport(factors, d.free_rank)
