"""Finite semigroups as multiplication tables.

Elements are the dense indices ``0..n-1``; ``table[a, b]`` is the product
``a*b``.  Subsets of a semigroup are plain ``frozenset``s of indices.

Everything that quantifies over ``S^1`` runs on the identity-adjoined table
and reports back on the original indices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    InternalInconsistency,
    NonAssociative,
    NotAdequate,
    NotClosed,
    NotIdempotent,
    OutOfRange,
)


@dataclass(frozen=True, eq=False)
class FiniteSemigroup:
    order: int
    table: np.ndarray
    labels: tuple[str, ...] | None = None
    has_adjoined_identity: bool = False
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.table.setflags(write=False)
        # python lists index several times faster than numpy scalars
        self._cache["rows"] = self.table.tolist()

    @property
    def rows(self) -> list[list[int]]:
        return self._cache["rows"]

    def mul(self, a: int, b: int) -> int:
        return self._cache["rows"][a][b]

    def prod(self, *elems: int) -> int:
        rows = self._cache["rows"]
        acc = elems[0]
        for x in elems[1:]:
            acc = rows[acc][x]
        return acc

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(range(self.order))

    def same_table(self, other: FiniteSemigroup) -> bool:
        return self.order == other.order and bool(np.array_equal(self.table, other.table))

    def __repr__(self):
        return f"FiniteSemigroup(order={self.order})"


def _cached(S: FiniteSemigroup, key, compute):
    try:
        return S._cache[key]
    except KeyError:
        value = S._cache[key] = compute()
        return value


def validate(table, labels: Sequence[str] | None = None,
             has_adjoined_identity: bool = False) -> FiniteSemigroup:
    """Check a multiplication table and wrap it.

    Raises OutOfRange for an entry outside ``[0, n)`` and NonAssociative with
    the first failing triple ``(a, b, c)`` in lexicographic order.
    """
    arr = np.asarray(table)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise OutOfRange(f"table must be a non-empty square array, got shape {arr.shape}")
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        raise OutOfRange("table entries must be integers")
    n = arr.shape[0]
    arr = arr.astype(np.int64, copy=True)
    bad = np.argwhere((arr < 0) | (arr >= n))
    if len(bad):
        a, b = (int(v) for v in bad[0])
        raise OutOfRange(f"entry [{a}][{b}] = {arr[a, b]} not in [0, {n})", witness=(a, b))
    left = arr[arr]          # [a,b,c] -> (ab)c
    right = arr[:, arr]      # [a,b,c] -> a(bc)
    bad = np.argwhere(left != right)
    if len(bad):
        a, b, c = (int(v) for v in bad[0])
        raise NonAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})", witness=(a, b, c))
    if labels is not None:
        labels = tuple(str(s) for s in labels)
        if len(labels) != n:
            raise OutOfRange(f"expected {n} labels, got {len(labels)}")
    S = FiniteSemigroup(n, arr, labels, has_adjoined_identity)
    if has_adjoined_identity and identity_element(S) != n - 1:
        raise OutOfRange("flagged adjoined identity does not act as identity")
    return S


def identity_element(S: FiniteSemigroup) -> int | None:
    def compute():
        idx = np.arange(S.order)
        for e in range(S.order):
            if np.array_equal(S.table[e], idx) and np.array_equal(S.table[:, e], idx):
                return e
        return None
    return _cached(S, "identity", compute)


def adjoin_identity(S: FiniteSemigroup) -> FiniteSemigroup:
    """``S^1``: S itself if it is a monoid, otherwise S with a new identity n."""
    if identity_element(S) is not None:
        return S

    def compute():
        n = S.order
        t = np.empty((n + 1, n + 1), dtype=np.int64)
        t[:n, :n] = S.table
        t[n, :] = np.arange(n + 1)
        t[:, n] = np.arange(n + 1)
        labels = S.labels + ("1",) if S.labels else None
        return FiniteSemigroup(n + 1, t, labels, True)
    return _cached(S, "monoid", compute)


def restrict(S: FiniteSemigroup, members: Iterable[int]) -> tuple[FiniteSemigroup, tuple[int, ...]]:
    """The subsemigroup on ``members`` as a standalone table.

    Returns ``(sub, new_to_old)``; new indices follow ascending old order.
    """
    new_to_old = tuple(sorted(set(members)))
    if not new_to_old:
        raise NotClosed("empty subset")
    old_to_new = {old: new for new, old in enumerate(new_to_old)}
    rows = S.rows
    t = []
    for a in new_to_old:
        row = []
        for b in new_to_old:
            p = rows[a][b]
            if p not in old_to_new:
                raise NotClosed(f"{a}*{b} = {p} leaves the subset", witness=(a, b))
            row.append(old_to_new[p])
        t.append(row)
    labels = tuple(S.labels[i] for i in new_to_old) if S.labels else None
    return FiniteSemigroup(len(new_to_old), np.array(t, dtype=np.int64), labels), new_to_old


def is_closed(S: FiniteSemigroup, U: Iterable[int]) -> bool:
    U = set(U)
    rows = S.rows
    return all(rows[a][b] in U for a in U for b in U)


def subsemigroup_closure(S: FiniteSemigroup, generators: Iterable[int]) -> frozenset[int]:
    """Smallest subsemigroup containing ``generators`` (breadth-first)."""
    gens = sorted(set(generators))
    if not gens:
        raise ValueError("need at least one generator")
    rows = S.rows
    seen = set(gens)
    frontier = list(gens)
    while frontier:
        nxt = []
        for a in sorted(frontier):
            for g in gens:
                for p in (rows[a][g], rows[g][a]):
                    if p not in seen:
                        seen.add(p)
                        nxt.append(p)
        frontier = nxt
    return frozenset(seen)


# --------------------------------------------------------------- idempotents

def idempotents(S: FiniteSemigroup) -> frozenset[int]:
    return _cached(S, "E", lambda: frozenset(
        int(e) for e in np.flatnonzero(S.table[np.arange(S.order), np.arange(S.order)] == np.arange(S.order))))


def idempotents_commute(S: FiniteSemigroup) -> bool:
    E = sorted(idempotents(S))
    return all(S.mul(e, f) == S.mul(f, e) for e in E for f in E)


def is_band(S: FiniteSemigroup) -> bool:
    return len(idempotents(S)) == S.order


def regular_elements(S: FiniteSemigroup) -> frozenset[int]:
    def compute():
        t = S.table
        xyx = t[t, np.arange(S.order)[:, None]]  # [x,y] -> (xy)x
        return frozenset(int(x) for x in range(S.order) if (xyx[x] == x).any())
    return _cached(S, "Reg", compute)


def is_regular(S: FiniteSemigroup) -> bool:
    return len(regular_elements(S)) == S.order


def is_inverse(S: FiniteSemigroup) -> bool:
    return is_regular(S) and idempotents_commute(S)


def inverses_of(S: FiniteSemigroup, x: int) -> frozenset[int]:
    """``V(x) = {y : xyx = x and yxy = y}``."""
    return frozenset(y for y in S if S.prod(x, y, x) == x and S.prod(y, x, y) == y)


# ----------------------------------------------------------------- relations

@dataclass(frozen=True)
class EquivRelation:
    parent_order: int
    class_of: tuple[int, ...]
    classes: tuple[frozenset[int], ...]

    @classmethod
    def from_keys(cls, keys: Sequence) -> EquivRelation:
        """Group indices by equal key; class ids by first occurrence."""
        ids: dict = {}
        class_of = tuple(ids.setdefault(k, len(ids)) for k in keys)
        buckets: list[set[int]] = [set() for _ in ids]
        for a, c in enumerate(class_of):
            buckets[c].add(a)
        return cls(len(keys), class_of, tuple(frozenset(b) for b in buckets))

    def related(self, a: int, b: int) -> bool:
        return self.class_of[a] == self.class_of[b]

    def class_containing(self, a: int) -> frozenset[int]:
        return self.classes[self.class_of[a]]

    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset((a, b) for c in self.classes for a in c for b in c)

    def same_partition(self, other: EquivRelation) -> bool:
        return set(self.classes) == set(other.classes)

    def restricted(self, members: Sequence[int]) -> EquivRelation:
        """Relation induced on ``members``, reindexed by position."""
        return EquivRelation.from_keys([self.class_of[m] for m in members])


def green_r(S: FiniteSemigroup) -> EquivRelation:
    """a R b iff aS^1 = bS^1."""
    def compute():
        t1 = adjoin_identity(S).table
        return EquivRelation.from_keys([frozenset(t1[a].tolist()) for a in S])
    return _cached(S, "R", compute)


def green_l(S: FiniteSemigroup) -> EquivRelation:
    """a L b iff S^1 a = S^1 b."""
    def compute():
        t1 = adjoin_identity(S).table
        return EquivRelation.from_keys([frozenset(t1[:, a].tolist()) for a in S])
    return _cached(S, "L", compute)


def _kernel_signature(values: Sequence[int]) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(v, len(seen)) for v in values)


def r_star(S: FiniteSemigroup) -> EquivRelation:
    """R*: a and b are related iff right multiplication by a and by b have the
    same kernel on ``S^1``.  Equal kernels is exactly the condition
    ``xa = ya <=> xb = yb`` for all x, y."""
    def compute():
        t1 = adjoin_identity(S).table
        return EquivRelation.from_keys([_kernel_signature(t1[:, a].tolist()) for a in S])
    return _cached(S, "R*", compute)


def l_star(S: FiniteSemigroup) -> EquivRelation:
    def compute():
        t1 = adjoin_identity(S).table
        return EquivRelation.from_keys([_kernel_signature(t1[a].tolist()) for a in S])
    return _cached(S, "L*", compute)


def r_star_oracle(S: FiniteSemigroup) -> EquivRelation:
    """R* straight from the definition, every pair against every (x, y) in S^1."""
    t1 = adjoin_identity(S).table
    n = S.order
    eq = [t1[:, a][:, None] == t1[:, a][None, :] for a in range(n)]
    return _relation_from_pair_test(n, lambda a, b: bool(np.array_equal(eq[a], eq[b])))


def l_star_oracle(S: FiniteSemigroup) -> EquivRelation:
    t1 = adjoin_identity(S).table
    n = S.order
    eq = [t1[a][:, None] == t1[a][None, :] for a in range(n)]
    return _relation_from_pair_test(n, lambda a, b: bool(np.array_equal(eq[a], eq[b])))


def _relation_from_pair_test(n, test) -> EquivRelation:
    matrix = [[test(a, b) for b in range(n)] for a in range(n)]
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if matrix[a][b] and matrix[b][c] and not matrix[a][c]:
                    raise InternalInconsistency("pair test is not transitive", witness=(a, b, c))
    return EquivRelation.from_keys([tuple(row) for row in matrix])


def check_e_rstar(S: FiniteSemigroup, e: int, a: int) -> bool:
    """e R* a for an idempotent e: ea = a, and xa = ya implies xe = ye."""
    if S.mul(e, e) != e:
        raise NotIdempotent(f"{e} is not idempotent", witness=e)
    if S.mul(e, a) != a:
        return False
    t1 = adjoin_identity(S).table
    same_a = t1[:, a][:, None] == t1[:, a][None, :]
    same_e = t1[:, e][:, None] == t1[:, e][None, :]
    return bool(np.all(~same_a | same_e))


def check_e_lstar(S: FiniteSemigroup, e: int, a: int) -> bool:
    if S.mul(e, e) != e:
        raise NotIdempotent(f"{e} is not idempotent", witness=e)
    if S.mul(a, e) != a:
        return False
    t1 = adjoin_identity(S).table
    same_a = t1[a][:, None] == t1[a][None, :]
    same_e = t1[e][:, None] == t1[e][None, :]
    return bool(np.all(~same_a | same_e))


# ------------------------------------------------------------ classification

def _idempotent_counts(S, rel: EquivRelation) -> list[int]:
    E = idempotents(S)
    return [len(c & E) for c in rel.classes]


def is_abundant(S: FiniteSemigroup) -> bool:
    return _cached(S, "abundant", lambda: (
        min(_idempotent_counts(S, r_star(S))) >= 1 and min(_idempotent_counts(S, l_star(S))) >= 1))


def is_left_adequate(S: FiniteSemigroup) -> bool:
    return is_abundant(S) and max(_idempotent_counts(S, r_star(S))) == 1


def is_right_adequate(S: FiniteSemigroup) -> bool:
    return is_abundant(S) and max(_idempotent_counts(S, l_star(S))) == 1


def is_adequate(S: FiniteSemigroup) -> bool:
    """Abundant with commuting idempotents.

    Cross-checked against the other characterisation: a unique idempotent in
    every R*- and L*-class, and the subsemigroup generated by E(S) regular.
    """
    def compute():
        by_definition = is_abundant(S) and idempotents_commute(S)
        unique = (all(c == 1 for c in _idempotent_counts(S, r_star(S)))
                  and all(c == 1 for c in _idempotent_counts(S, l_star(S))))
        by_generation = unique and is_regular(restrict(S, subsemigroup_closure(S, idempotents(S)))[0])
        if by_definition != by_generation:
            raise InternalInconsistency(
                f"adequacy by definition = {by_definition}, via <E(S)> = {by_generation}")
        return by_definition
    return _cached(S, "adequate", compute)


def _unique_idempotent(S, rel: EquivRelation, a: int) -> int:
    if not is_adequate(S):
        raise NotAdequate("semigroup is not adequate")
    (e,) = rel.class_containing(a) & idempotents(S)
    return e


def plus_of(S: FiniteSemigroup, a: int) -> int:
    """a+, the idempotent of a's R*-class."""
    return _unique_idempotent(S, r_star(S), a)


def star_of(S: FiniteSemigroup, a: int) -> int:
    """a*, the idempotent of a's L*-class."""
    return _unique_idempotent(S, l_star(S), a)


def is_star_subsemigroup(S: FiniteSemigroup, U: Iterable[int]) -> bool:
    """Every a in U has idempotents of U in both L*_a(S) and R*_a(S)."""
    U = frozenset(U)
    if not is_closed(S, U):
        raise NotClosed("subset is not closed under multiplication")
    EU = idempotents(S) & U
    rs, ls = r_star(S), l_star(S)
    return all(ls.class_containing(a) & EU and rs.class_containing(a) & EU for a in U)


def is_star_subsemigroup_by_restriction(S: FiniteSemigroup, U: Iterable[int]) -> bool:
    """U abundant and its own starred relations are those of S cut down to U."""
    U = frozenset(U)
    sub, members = restrict(S, U)
    if not is_abundant(sub):
        return False
    return (r_star(sub).same_partition(r_star(S).restricted(members))
            and l_star(sub).same_partition(l_star(S).restricted(members)))
