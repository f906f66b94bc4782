"""Find adequate transversals by enumerating candidate subsemigroups."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import core
from .core import FiniteSemigroup
from .errors import ParamOutOfRange, SemigroupError
from .iso import are_isomorphic
from .transversal import TransversalAnalysis, analyze_transversal

EXHAUSTIVE_LIMIT = 12


@dataclass(frozen=True, eq=False)
class Found:
    subset: frozenset[int]
    analysis: TransversalAnalysis

    @property
    def flags(self) -> dict[str, bool]:
        an = self.analysis
        return {"quasi_ideal": an.quasi_ideal, "multiplicative": an.multiplicative,
                "weakly_multiplicative": an.weakly_multiplicative}


def candidate_subsemigroups(S: FiniteSemigroup, max_generators: int = 2,
                            exhaustive: bool = False) -> list[frozenset[int]]:
    """Closures of generator sets of size <= max_generators, plus S itself.

    With ``exhaustive`` every closed subset is returned instead (n <= 12 only).
    Sorted by (size, members).
    """
    if max_generators < 1:
        raise ParamOutOfRange("max_generators must be >= 1")
    seen: set[frozenset[int]] = {frozenset(S)}
    if exhaustive:
        if S.order > EXHAUSTIVE_LIMIT:
            raise ParamOutOfRange(f"exhaustive search is limited to order <= {EXHAUSTIVE_LIMIT}")
        for k in range(1, S.order + 1):
            for sub in combinations(range(S.order), k):
                if core.is_closed(S, sub):
                    seen.add(frozenset(sub))
    else:
        for k in range(1, min(max_generators, S.order) + 1):
            for gens in combinations(range(S.order), k):
                seen.add(core.subsemigroup_closure(S, gens))
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


def search_transversals(S: FiniteSemigroup, max_generators: int = 2, exhaustive: bool = False,
                        up_to_iso: bool = False) -> list[Found]:
    """Every candidate subsemigroup that is an adequate transversal of S.

    With ``up_to_iso`` only the first transversal of each isomorphism type
    (as a semigroup in its own right) is kept.
    """
    out: list[Found] = []
    for sub in candidate_subsemigroups(S, max_generators, exhaustive):
        try:
            an = analyze_transversal(S, sub)
        except SemigroupError as exc:
            if isinstance(exc, AssertionError):
                raise
            continue
        out.append(Found(sub, an))
    if up_to_iso:
        kept: list[Found] = []
        tables = []
        for f in out:
            t = core.restrict(S, f.subset)[0]
            if not any(are_isomorphic(t, u) for u in tables):
                kept.append(f)
                tables.append(t)
        out = kept
    return out
