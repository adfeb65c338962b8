"""Fixpoint search for megaideals and truncation-stability filtering."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .lie import (
    LieAlgebra,
    bracket_subspace,
    centralizer,
    commutator_stabilizer,
)
from .linalg import Subspace, subspace_intersect, subspace_sum

DEFAULT_MAX_DEPTH = 6
DEFAULT_MAX_COUNT = 64

_Z_LABEL = re.compile(r"^Z(\d+)$")


@dataclass
class ClosureResult:
    members: list[Subspace]
    complete: bool
    rounds: int
    origin: dict[Subspace, str] = field(default_factory=dict, repr=False)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, s: Subspace) -> bool:
        return s in self.origin


class _Memo:
    def __init__(self, g: LieAlgebra):
        self.g = g
        self.cache: dict[tuple, Subspace] = {}

    def __call__(self, name: str, *args: Subspace) -> Subspace:
        key = (name,) + args
        hit = self.cache.get(key)
        if hit is None:
            hit = self.cache[key] = self._compute(name, args)
        return hit

    def _compute(self, name, args):
        g = self.g
        if name == "sum":
            return subspace_sum(*args)
        if name == "intersect":
            return subspace_intersect(*args)
        if name == "bracket":
            return bracket_subspace(g, *args)
        if name == "centralizer":
            return centralizer(g, *args)
        if name == "stabilizer":
            return commutator_stabilizer(g, *args)
        raise KeyError(name)


def megaideal_closure(
    g: LieAlgebra,
    seeds: Iterable[Subspace] | None = None,
    max_depth: int = DEFAULT_MAX_DEPTH,
    max_count: int = DEFAULT_MAX_COUNT,
) -> ClosureResult:
    """Close ``seeds`` under the megaideal-preserving constructions.

    Each round applies sums, intersections, brackets (hence derived terms),
    centralizers ``C_a(b)`` (hence centers of members) and commutator
    stabilizers to every tuple of members found so far.  Tuples made only of
    members already processed in an earlier round are skipped.  The search
    stops at a fixpoint, after ``max_depth`` rounds, or once more than
    ``max_count`` members exist; only the first case sets ``complete``.

    Members are returned sorted by dimension, then by basis entries, so the
    output does not depend on the order in which constructions fire.
    """
    if seeds is None:
        seeds = [g.zero(), g.full()]
    memo = _Memo(g)
    origin: dict[Subspace, str] = {}
    for s in seeds:
        if s.ambient != g.dim:
            raise ValueError("seed subspace has the wrong ambient dimension")
        origin.setdefault(s, "seed")
    old: set[Subspace] = set()
    full = g.full()
    rounds = 0
    complete = False

    def add(found: dict, s: Subspace, how: str) -> None:
        if s not in origin and s not in found:
            found[s] = how

    while rounds < max_depth:
        rounds += 1
        current = sorted(origin, key=Subspace.sort_key)
        fresh = [s for s in current if s not in old]
        found: dict[Subspace, str] = {}
        for a in current:
            for b in current:
                if a in old and b in old:
                    continue
                if a.sort_key() <= b.sort_key():
                    add(found, memo("sum", a, b), "sum")
                    add(found, memo("intersect", a, b), "intersection")
                    add(found, memo("bracket", a, b), "bracket")
                add(found, memo("centralizer", a, b), "centralizer")
        if full in origin:
            # s(i0, i1, i2) = i0 ∩ s(g, i1, i2): stabilize against g once per
            # pair, then intersect.
            stabs: dict[Subspace, bool] = {}
            for i1 in current:
                for i2 in current:
                    s = memo("stabilizer", full, i1, i2)
                    is_new = i1 not in old or i2 not in old
                    stabs[s] = stabs.get(s, False) or is_new
            for s, from_new in sorted(stabs.items(), key=lambda kv: kv[0].sort_key()):
                for i0 in current if from_new else fresh:
                    add(found, memo("intersect", i0, s), "stabilizer")
        else:
            for i0 in current:
                for i1 in current:
                    for i2 in current:
                        if i0 in old and i1 in old and i2 in old:
                            continue
                        add(found, memo("stabilizer", i0, i1, i2), "stabilizer")
        old.update(current)
        if not found:
            complete = True
            break
        for s in sorted(found, key=Subspace.sort_key):
            origin[s] = found[s]
        if len(origin) > max_count:
            break
    members = sorted(origin, key=Subspace.sort_key)
    return ClosureResult(members, complete, rounds, origin)


def truncation_pattern(g: LieAlgebra, s: Subspace):
    """Label pattern used to compare members across truncation orders.

    For a coordinate subspace the pattern records the non-``Z`` labels it
    contains and its set of ``Z``-degrees, where the whole tower
    ``Z0..Z_top`` is recorded as ``"all"`` rather than by its degrees.
    Other subspaces are described row by row.
    """
    degrees = sorted(int(m.group(1)) for m in map(_Z_LABEL.match, g.labels) if m)
    top = degrees[-1] if degrees else None
    if s.is_coordinate():
        plain, zdeg = [], []
        for p in s.pivots:
            m = _Z_LABEL.match(g.labels[p])
            if m:
                zdeg.append(int(m.group(1)))
            else:
                plain.append(g.labels[p])
        tower = "all" if top is not None and zdeg == list(range(top + 1)) else tuple(sorted(zdeg))
        return ("coordinate", tuple(sorted(plain)), tower)
    rows = tuple(
        tuple((lab, v) for lab, v in sorted(zip(g.labels, row)) if v != 0) for row in s.basis
    )
    return ("rows", tuple(sorted(rows)))


@dataclass(frozen=True)
class StabilityEntry:
    subspace: Subspace
    stable: bool
    pattern: tuple


def stability_report(
    g_small: LieAlgebra,
    small: Sequence[Subspace],
    g_big: LieAlgebra,
    big: Sequence[Subspace],
) -> list[StabilityEntry]:
    """Flag members of ``small`` whose pattern has no counterpart in ``big``."""
    seen = {truncation_pattern(g_big, s) for s in big}
    out = []
    for s in small:
        pat = truncation_pattern(g_small, s)
        out.append(StabilityEntry(s, pat in seen, pat))
    return out
