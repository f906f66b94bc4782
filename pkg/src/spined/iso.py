"""Brute-force isomorphism testing for small tables.

Candidates are pruned by cheap element invariants, then a generating set of
the source is mapped by backtracking; each partial assignment is extended to
the subsemigroup it generates and rejected at the first inconsistency.
"""
from __future__ import annotations

from typing import Iterator, Sequence

from . import core
from .core import FiniteSemigroup


def is_homomorphism(S: FiniteSemigroup, T: FiniteSemigroup, mapping: Sequence[int]) -> tuple[int, int] | None:
    """First pair (a, b) with f(ab) != f(a)f(b), or None."""
    rs, rt = S.rows, T.rows
    for a in S:
        fa = mapping[a]
        for b in S:
            if mapping[rs[a][b]] != rt[fa][mapping[b]]:
                return a, b
    return None


def is_isomorphism(S: FiniteSemigroup, T: FiniteSemigroup, mapping: Sequence[int]) -> bool:
    return (S.order == T.order and sorted(mapping) == list(range(T.order))
            and is_homomorphism(S, T, mapping) is None)


def _invariants(S: FiniteSemigroup) -> list[tuple]:
    E, Reg = core.idempotents(S), core.regular_elements(S)
    gr, gl = core.green_r(S), core.green_l(S)
    out = []
    for a in S:
        powers, p = [a], S.mul(a, a)
        while p not in powers:
            powers.append(p)
            p = S.mul(p, a)
        index = powers.index(p)
        out.append((a in E, a in Reg, index, len(powers) - index,
                    len(gr.class_containing(a)), len(gl.class_containing(a)),
                    sum(S.mul(a, x) == a for x in S), sum(S.mul(x, a) == a for x in S)))
    return out


def _generating_sequence(S: FiniteSemigroup, inv) -> list[int]:
    """Greedy generating set, rarest invariant first to keep branching low."""
    counts: dict = {}
    for k in inv:
        counts[k] = counts.get(k, 0) + 1
    order = sorted(S, key=lambda a: (counts[inv[a]], a))
    gens: list[int] = []
    have: frozenset[int] = frozenset()
    for a in order:
        if a not in have:
            gens.append(a)
            have = core.subsemigroup_closure(S, gens)
            if len(have) == S.order:
                break
    return gens


def all_isomorphisms(S: FiniteSemigroup, T: FiniteSemigroup) -> Iterator[tuple[int, ...]]:
    if S.order != T.order:
        return
    inv_s, inv_t = _invariants(S), _invariants(T)
    if sorted(inv_s) != sorted(inv_t):
        return
    gens = _generating_sequence(S, inv_s)
    rs, rt = S.rows, T.rows

    def extend(mapping: dict[int, int], gens_done: list[int]):
        # close the domain under right multiplication by assigned generators
        used = set(mapping.values())
        frontier = list(mapping)
        while frontier:
            nxt = []
            for s in frontier:
                for g in gens_done:
                    p, img = rs[s][g], rt[mapping[s]][mapping[g]]
                    if p in mapping:
                        if mapping[p] != img:
                            return None
                    else:
                        if img in used or inv_s[p] != inv_t[img]:
                            return None
                        mapping[p] = img
                        used.add(img)
                        nxt.append(p)
            frontier = nxt
        return mapping

    def rec(k: int, mapping: dict[int, int]):
        if k == len(gens):
            if len(mapping) == S.order:
                yield tuple(mapping[a] for a in S)
            return
        g = gens[k]
        if g in mapping:
            yield from rec(k + 1, mapping)
            return
        used = set(mapping.values())
        for c in T:
            if c in used or inv_t[c] != inv_s[g]:
                continue
            trial = dict(mapping)
            trial[g] = c
            # products with earlier generators on both sides must also agree
            trial = extend(trial, gens[:k + 1])
            if trial is not None and _left_consistent(trial, gens[:k + 1], rs, rt):
                yield from rec(k + 1, trial)

    for m in rec(0, {}):
        if is_homomorphism(S, T, m) is None:
            yield m


def _left_consistent(mapping, gens, rs, rt) -> bool:
    for g in gens:
        fg = mapping[g]
        for s, fs in mapping.items():
            p = rs[g][s]
            if p in mapping and mapping[p] != rt[fg][fs]:
                return False
    return True


def find_isomorphism(S: FiniteSemigroup, T: FiniteSemigroup) -> tuple[int, ...] | None:
    return next(all_isomorphisms(S, T), None)


def are_isomorphic(S: FiniteSemigroup, T: FiniteSemigroup) -> bool:
    return find_isomorphism(S, T) is not None


def automorphisms(S: FiniteSemigroup) -> list[tuple[int, ...]]:
    return list(all_isomorphisms(S, S))
