"""Sufficient and minimally sufficient adjustment sets on a split graph.

A candidate set may mix observed and named latent nodes but never the
treatment, the outcome under consideration, a relabeled potential outcome,
a treatment descendant, or a synthetic completion latent. Sufficiency is
separation of the treatment from the period's (potential) outcome given
the set; pre-period sufficiency uses the observed outcome directly, by no
anticipation.

Search is exhaustive over eligible subsets in increasing size with
superset pruning — correctness over asymptotics at desk scale, with a
hard eligibility cap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .dsep import d_separated
from .errors import InvalidCandidate, TooLarge
from .swig import Swig

ELIGIBLE_LIMIT = 20


@dataclass(frozen=True)
class MinSetFamily:
    """All subset-minimal sufficient sets for one outcome period."""

    period: int
    sets: tuple[tuple[str, ...], ...]  # each sorted; family sorted canonically

    def as_sets(self) -> list[frozenset]:
        return [frozenset(s) for s in self.sets]


def eligible_nodes(s: Swig, period: Optional[int] = None) -> tuple[str, ...]:
    """Nodes allowed in adjustment sets; excludes the given period's outcome."""
    g = s.base
    excluded = {s.treatment}
    excluded |= set(g.descendants(s.treatment))
    excluded |= set(s.relabeled)
    if period is not None:
        excluded.add(s.outcome_node(period))
    out = [
        n.name
        for n in g.nodes
        if n.name not in excluded and not n.synthetic
    ]
    return tuple(out)


def _check_candidate(s: Swig, members: frozenset, period: int) -> None:
    g = s.base
    for name in members:
        node = g.node(name)  # raises UnknownNode
        if name == s.treatment:
            raise InvalidCandidate("the treatment cannot be adjusted for")
        if name == s.outcome_node(period):
            raise InvalidCandidate(f"{name} is the period-{period} outcome itself")
        if name in s.relabeled or name in g.descendants(s.treatment):
            raise InvalidCandidate(f"{name} is a descendant of the treatment")
        if node.synthetic:
            raise InvalidCandidate(f"{name} is a synthetic completion latent")


def is_sufficient(s: Swig, members: Iterable[str], period: int) -> bool:
    """True iff the set separates treatment from the period's outcome."""
    members = frozenset(members)
    _check_candidate(s, members, period)
    outcome = s.outcome_node(period)
    return d_separated(s, s.treatment, outcome, members)


def minimal_sufficient_sets(s: Swig, period: int) -> MinSetFamily:
    """All subset-minimal sufficient sets, sorted canonically.

    Iterates subsets by increasing size, skipping supersets of already
    found minimal sets: any sufficient proper subset would itself contain
    a minimal set found at a smaller size, so survivors are minimal.
    """
    pool = eligible_nodes(s, period)
    if len(pool) > ELIGIBLE_LIMIT:
        raise TooLarge(len(pool), ELIGIBLE_LIMIT, what="eligible adjustment pool")
    outcome = s.outcome_node(period)
    minimal: list[frozenset] = []
    for size in range(len(pool) + 1):
        for combo in itertools.combinations(pool, size):
            members = frozenset(combo)
            if any(m <= members for m in minimal):
                continue
            if d_separated(s, s.treatment, outcome, members):
                minimal.append(members)
    sets = sorted(tuple(sorted(m)) for m in minimal)
    return MinSetFamily(period=period, sets=tuple(sets))


def _common_pool(s: Swig) -> tuple[str, ...]:
    both = set(eligible_nodes(s, 0)) & set(eligible_nodes(s, 1))
    return tuple(n for n in eligible_nodes(s) if n in both)


def _sufficient_for_both(s: Swig, members: frozenset) -> bool:
    return d_separated(s, s.treatment, s.outcome_node(0), members) and d_separated(
        s, s.treatment, s.outcome_node(1), members
    )


def common_sufficient_set(s: Swig) -> Optional[tuple[str, ...]]:
    """A set sufficient for both periods, or None when none exists.

    Tries the union of one minimal set per period first (the constructive
    route), then falls back to exhaustive search by increasing size. The
    smallest qualifying set is returned, ties broken lexicographically.
    """
    pool = _common_pool(s)
    if len(pool) > ELIGIBLE_LIMIT:
        raise TooLarge(len(pool), ELIGIBLE_LIMIT, what="eligible adjustment pool")
    f0 = minimal_sufficient_sets(s, 0)
    f1 = minimal_sufficient_sets(s, 1)
    candidates = []
    for m0 in f0.as_sets():
        for m1 in f1.as_sets():
            union = m0 | m1
            if union <= set(pool) and _sufficient_for_both(s, union):
                candidates.append(tuple(sorted(union)))
    if candidates:
        best = min(candidates, key=lambda c: (len(c), c))
        # The union may be non-minimal; shrink to the smallest common set.
        for size in range(len(best) + 1):
            for combo in itertools.combinations(pool, size):
                if _sufficient_for_both(s, frozenset(combo)):
                    return combo
        return best
    for size in range(len(pool) + 1):
        for combo in itertools.combinations(pool, size):
            if _sufficient_for_both(s, frozenset(combo)):
                return combo
    return None


def common_sufficient_sets_for_lemma(s: Swig) -> list[tuple[str, ...]]:
    """Common sufficient sets searched for asymmetric subsets.

    All unions of one minimal set per period that remain sufficient for
    both (the construction behind the existence proof), largest first so
    the widest subset lattice is inspected, plus the smallest common set.
    """
    f0 = minimal_sufficient_sets(s, 0)
    f1 = minimal_sufficient_sets(s, 1)
    pool = set(_common_pool(s))
    found = set()
    for m0 in f0.as_sets():
        for m1 in f1.as_sets():
            union = m0 | m1
            if union <= pool and _sufficient_for_both(s, union):
                found.add(tuple(sorted(union)))
    smallest = common_sufficient_set(s)
    if smallest is not None:
        found.add(smallest)
    return sorted(found, key=lambda c: (-len(c), c))


def asymmetric_subset_witness(
    s: Swig, members: Iterable[str]
) -> Optional[tuple[tuple[str, ...], int, int]]:
    """A subset of a common sufficient set that works for exactly one period.

    Returns (subset, period_ok, period_fail) for the first such subset in
    increasing-size, lexicographic order; None when every subset treats the
    two periods symmetrically.
    """
    members = tuple(sorted(frozenset(members)))
    y = {t: s.outcome_node(t) for t in (0, 1)}
    for size in range(len(members) + 1):
        for combo in itertools.combinations(members, size):
            sub = frozenset(combo)
            ok0 = d_separated(s, s.treatment, y[0], sub)
            ok1 = d_separated(s, s.treatment, y[1], sub)
            if ok0 != ok1:
                t_ok = 0 if ok0 else 1
                return combo, t_ok, 1 - t_ok
    return None
