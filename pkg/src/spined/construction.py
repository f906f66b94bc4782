"""Spined products L |x| R and the constructions built on them.

Conventions.  The shared transversal S0 lives three times: as a standalone
table ``core`` and as subsets of L and of R.  Each :class:`Side` carries the
index maps between its copy and the core.  Star-map values are core indices;
a value is read through the L-side copy when it multiplies inside L and
through the R-side copy inside R.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from . import core
from .core import FiniteSemigroup
from .errors import (
    AxiomsFailed,
    ClosureFailed,
    ConstructionFailed,
    DataInvalid,
    InternalInconsistency,
    IsoFailed,
    NonAssociative,
    NotClosed,
    NotInverseSub,
    NotLeftNormal,
    NotQuasiIdeal,
    NotRegular,
    NotRegularOutcome,
    NotSemilatticeTransversal,
    PreconditionFailed,
    SemigroupError,
    UniquenessFailed,
)
from .iso import find_isomorphism, is_homomorphism
from .report import Check, Checker, all_passed, first_failure
from .transversal import (
    TransversalAnalysis,
    analyze_transversal,
    is_multiplicative,
    left_adequate_equivalences,
)


# ---------------------------------------------------------------------- sides

@dataclass(frozen=True, eq=False)
class Side:
    """L or R as a standalone semigroup with S0 as its transversal."""
    semigroup: FiniteSemigroup
    analysis: TransversalAnalysis
    core_to_side: tuple[int, ...]
    side_to_core: dict[int, int]
    source: tuple[int, ...] | None = None   # side index -> index in S, when extracted

    def bar(self, x: int) -> int:
        return self.side_to_core[self.analysis.bar_of[x]]

    def e(self, x: int) -> int:
        return self.analysis.e_of[x]

    def f(self, x: int) -> int:
        return self.analysis.f_of[x]

    def up(self, c: int) -> int:
        return self.core_to_side[c]

    def down(self, x: int) -> int:
        return self.side_to_core[x]


def _make_side(sg: FiniteSemigroup, core_sg: FiniteSemigroup, core_to_side: Sequence[int],
               source=None) -> Side:
    core_to_side = tuple(core_to_side)
    image = frozenset(core_to_side)
    if len(image) != core_sg.order:
        raise PreconditionFailed("transversal correspondence is not injective")
    bad = is_homomorphism(core_sg, sg, core_to_side)
    if bad is not None:
        raise PreconditionFailed("transversal correspondence does not respect products", witness=bad)
    an = analyze_transversal(sg, image)
    side = Side(sg, an, core_to_side, {x: c for c, x in enumerate(core_to_side)},
                tuple(source) if source is not None else None)
    for c in core_sg:
        x = side.up(c)
        if (side.down(an.plus[x]) != core.plus_of(core_sg, c)
                or side.down(an.star[x]) != core.star_of(core_sg, c)):
            raise PreconditionFailed("correspondence does not match +/* structure", witness=c)
    return side


# ------------------------------------------------------------------- star map

@dataclass(frozen=True, eq=False)
class StarMap:
    core: FiniteSemigroup
    left: Side
    right: Side
    values: np.ndarray            # [a in R, x in L] -> core index

    def __call__(self, a: int, x: int) -> int:
        return int(self.values[a, x])

    def with_value(self, a: int, x: int, c: int) -> StarMap:
        v = self.values.copy()
        v[a, x] = c
        v.setflags(write=False)
        return replace(self, values=v)


def _check_sides(left: Side, right: Side):
    if not core.is_left_adequate(left.semigroup):
        raise PreconditionFailed("L is not left adequate")
    if not core.is_right_adequate(right.semigroup):
        raise PreconditionFailed("R is not right adequate")
    if not (left.analysis.quasi_ideal and right.analysis.quasi_ideal):
        raise PreconditionFailed("S0 must be a quasi-ideal transversal of both L and R")


def star_map_from_parts(left: FiniteSemigroup, left_s0, right: FiniteSemigroup, right_s0,
                        values, correspondence: dict[int, int] | None = None) -> StarMap:
    """Assemble a star map from two semigroups sharing a transversal.

    ``values[a][x]`` names an element of L's copy of S0 (an L index).
    ``correspondence`` maps L's copy of S0 onto R's; without it the first
    isomorphism found between the two copies is used.
    """
    core_sg, core_members = core.restrict(left, left_s0)
    right_core, right_members = core.restrict(right, right_s0)
    if correspondence is None:
        iso = find_isomorphism(core_sg, right_core)
        if iso is None:
            raise PreconditionFailed("the two transversals are not isomorphic")
        core_to_right = [right_members[iso[c]] for c in core_sg]
    else:
        core_to_right = [correspondence[x] for x in core_members]
    lside = _make_side(left, core_sg, core_members)
    rside = _make_side(right, core_sg, core_to_right)
    _check_sides(lside, rside)
    raw = np.asarray(values)
    if raw.shape != (right.order, left.order):
        raise DataInvalid(f"star table must have shape {(right.order, left.order)}")
    v = np.empty_like(raw, dtype=np.int64)
    for (a, x), val in np.ndenumerate(raw):
        if int(val) not in lside.side_to_core:
            raise DataInvalid(f"{a}*{x} = {val} is not in S0", witness=(a, x))
        v[a, x] = lside.down(int(val))
    v.setflags(write=False)
    return StarMap(core_sg, lside, rside, v)


def _restricted_side(S: FiniteSemigroup, members: frozenset[int], core_members) -> Side:
    try:
        sub, sub_members = core.restrict(S, members)
    except NotClosed as exc:
        raise InternalInconsistency(f"quasi-ideal transversal with non-closed L or R: {exc}",
                                    witness=exc.witness) from exc
    pos = {old: new for new, old in enumerate(sub_members)}
    core_sg = core.restrict(S, core_members)[0]
    return _make_side(sub, core_sg, [pos[m] for m in core_members], sub_members)


def extract_star(S: FiniteSemigroup, analysis: TransversalAnalysis) -> StarMap:
    """L, R and a*x := ax from a quasi-ideal transversal of S."""
    if not analysis.quasi_ideal:
        raise NotQuasiIdeal("transversal is not a quasi-ideal")
    core_sg, core_members = core.restrict(S, analysis.transversal)
    lside = _restricted_side(S, analysis.set_L, core_members)
    rside = _restricted_side(S, analysis.set_R, core_members)
    _check_sides(lside, rside)
    s0_index = {m: c for c, m in enumerate(core_members)}
    v = np.empty((rside.semigroup.order, lside.semigroup.order), dtype=np.int64)
    for a, sa in enumerate(rside.source):
        for x, sx in enumerate(lside.source):
            p = S.mul(sa, sx)
            if p not in s0_index:
                raise InternalInconsistency("RL not inside S0", witness=(sa, sx))
            v[a, x] = s0_index[p]
    v.setflags(write=False)
    sm = StarMap(core_sg, lside, rside, v)
    bad = first_failure(check_star_axioms(sm))
    if bad is not None:
        raise InternalInconsistency(f"extracted star map fails {bad.check}", witness=bad.witness)
    return sm


def check_star_axioms(sm: StarMap, require_multiplicative: bool = False) -> list[Check]:
    """Exhaustive check of the star-map axioms.

    (1) ``(a*y) f_b * z = a * e_y (b*z)`` whenever ``ybar = bbar``;
    (2) ``a*x = ax`` whenever a or x lies in S0;
    (3) (optional) ``e*f`` idempotent for idempotents e of R, f of L.
    """
    L, R = sm.left, sm.right
    Lt, Rt = L.semigroup.table, R.semigroup.table
    V = sm.values
    up_l = np.array(L.core_to_side)
    ck = Checker("star-map-axioms")
    by_bar_l: dict[int, list[int]] = {}
    for y in L.semigroup:
        by_bar_l.setdefault(L.bar(y), []).append(y)
    name1 = "(a*y) f_b * z = a * e_y (b*z) when ybar = bbar"
    ck.expect(name1, True)
    for b in R.semigroup:
        fb = R.f(b)
        bz_in_l = up_l[V[b]]                       # b*z read in L, over all z
        for y in by_bar_l.get(R.bar(b), ()):
            rhs_args = Lt[L.e(y), bz_in_l]         # e_y (b*z), over all z
            for a in R.semigroup:
                lhs = V[Rt[R.up(int(V[a, y])), fb]]
                rhs = V[a, rhs_args]
                if not np.array_equal(lhs, rhs):
                    z = int(np.flatnonzero(lhs != rhs)[0])
                    ck.expect(name1, False, {"y": y, "z": z, "a": a, "b": b})
    name2 = "a*x = ax when a or x lies in S0"
    ck.expect(name2, True)
    for a in R.semigroup:
        for x in L.semigroup:
            val = int(V[a, x])
            if a in R.side_to_core:
                ax = L.semigroup.mul(L.up(R.down(a)), x)
                ck.expect(name2, ax == L.up(val), {"a": a, "x": x})
            if x in L.side_to_core:
                ax = R.semigroup.mul(a, R.up(L.down(x)))
                ck.expect(name2, ax == R.up(val), {"a": a, "x": x})
    if require_multiplicative:
        ck.expect(*condition_three(sm))
    return ck.rows()


def condition_three(sm: StarMap) -> tuple[str, bool, object]:
    E0 = core.idempotents(sm.core)
    ER, EL = core.idempotents(sm.right.semigroup), core.idempotents(sm.left.semigroup)
    bad = next(((e, f) for e in sorted(ER) for f in sorted(EL) if sm(e, f) not in E0), None)
    return "e*f in E0 for idempotents e of R, f of L", bad is None, bad


def verify_star_identities(sm: StarMap) -> list[Check]:
    """Identities every axiom-satisfying star map obeys."""
    L, R, C = sm.left, sm.right, sm.core
    Ls, Rs = L.semigroup, R.semigroup
    star = sm
    ck = Checker("star-map-identities")
    for x in Ls:
        ex = L.e(x)
        for a in Rs:
            for b in Rs:
                if star(a, x) == star(b, x):
                    ck.expect("a*x = b*x implies a*e_x = b*e_x", star(a, ex) == star(b, ex), (a, b, x))
    for a in Rs:
        fa = R.f(a)
        for x in Ls:
            for y in Ls:
                if star(a, x) == star(a, y):
                    ck.expect("a*x = a*y implies f_a*x = f_a*y", star(fa, x) == star(fa, y), (a, x, y))
    ER, EL = sorted(core.idempotents(Rs)), sorted(core.idempotents(Ls))
    for a in Rs:
        for x in Ls:
            ea, fx = R.down(R.e(a)), L.down(L.f(x))
            ck.expect("a*x = e_a (a*x) f_x", star(a, x) == C.prod(ea, star(a, x), fx), (a, x))
            a_star = core.star_of(C, R.bar(a))
            x_plus = core.plus_of(C, L.bar(x))
            for g in ER:
                if R.bar(g) != a_star:
                    continue
                ag = Rs.mul(a, g)
                for h in EL:
                    if L.bar(h) != x_plus:
                        continue
                    hx = Ls.mul(h, x)
                    ck.expect("ag*hx = e_a (ag*hx) f_x",
                              star(ag, hx) == C.prod(ea, star(ag, hx), fx), (a, x, g, h))
    rs_l, ls_l = core.r_star(Ls), core.l_star(Ls)
    for a in Rs:
        for b in Rs:
            fb = R.f(b)
            for y in Ls:
                if L.bar(y) != R.bar(b):
                    continue
                ay = R.up(star(a, y))
                ck.expect("e_(a*y) = e_((a*y) f_b)", R.e(ay) == R.e(Rs.mul(ay, fb)), (a, b, y))
        for x in Ls:
            mid = L.up(star(a, x))
            ck.expect("(a*e_x) R*_L (a*x) L*_L (f_a*x)",
                      rs_l.related(L.up(star(a, L.e(x))), mid)
                      and ls_l.related(mid, L.up(star(R.f(a), x))), (a, x))
    for b in Rs:
        for y in Ls:
            if L.bar(y) != R.bar(b):
                continue
            for z in Ls:
                bz = L.up(star(b, z))
                ck.expect("f_(e_y (b*z)) = f_(b*z)", L.f(Ls.mul(L.e(y), bz)) == L.f(bz), (b, y, z))
    return ck.rows()


# ------------------------------------------------------------- spined product

@dataclass(frozen=True, eq=False)
class SpinedProduct:
    semigroup: FiniteSemigroup
    pairs: tuple[tuple[int, int], ...]          # (x in L, a in R), lexicographic
    index: dict[tuple[int, int], int]
    embedded_T0: frozenset[int]
    core_embedding: tuple[int, ...]              # core index -> pair index of (s, s)
    analysis: TransversalAnalysis
    star_map: StarMap
    source_iso: tuple[int, ...] | None = None   # S -> pair index, when decomposed
    checks: tuple[Check, ...] = field(default=())

    @property
    def product_table(self) -> np.ndarray:
        return self.semigroup.table


def _spined_pairs(sm: StarMap) -> list[tuple[int, int]]:
    L, R = sm.left, sm.right
    return [(x, a) for x in L.semigroup for a in R.semigroup if L.bar(x) == R.bar(a)]


def _assemble(sm: StarMap, pairs, product) -> tuple[FiniteSemigroup, dict]:
    index = {p: i for i, p in enumerate(pairs)}
    table = np.empty((len(pairs), len(pairs)), dtype=np.int64)
    for i, p in enumerate(pairs):
        for j, q in enumerate(pairs):
            r = product(p, q)
            if r not in index:
                raise ClosureFailed(f"{p}{q} = {r} is not a pair of the spined product",
                                    witness=(p, q, r))
            table[i, j] = index[r]
    labels = [f"({sm.left.semigroup.label(x)},{sm.right.semigroup.label(a)})" for x, a in pairs]
    try:
        T = core.validate(table, labels)
    except NonAssociative as exc:
        i, j, k = exc.witness
        raise ConstructionFailed("spined product is not associative",
                                 witness=(pairs[i], pairs[j], pairs[k])) from exc
    return T, index


def _finish(sm: StarMap, T: FiniteSemigroup, pairs, index) -> SpinedProduct:
    L, R = sm.left, sm.right
    if not core.is_abundant(T):
        raise ConstructionFailed("spined product is not abundant")
    embedding = tuple(index[(L.up(c), R.up(c))] for c in sm.core)
    bad = is_homomorphism(sm.core, T, embedding)
    if bad is not None:
        raise ConstructionFailed("s -> (s, s) is not a homomorphism", witness=bad)
    T0 = frozenset(embedding)
    try:
        an = analyze_transversal(T, T0)
    except SemigroupError as exc:
        raise ConstructionFailed(f"T0 is not an adequate transversal: {exc}",
                                 witness=exc.witness) from exc
    if not an.quasi_ideal:
        raise ConstructionFailed("T0 is not a quasi-ideal")
    sp = SpinedProduct(T, tuple(pairs), index, T0, embedding, an, sm)
    return replace(sp, checks=tuple(verify_spined_product(sp)))


def build_spined_product(sm: StarMap) -> SpinedProduct:
    """T = {(x, a) : xbar = abar} with (x,a)(y,b) = (e_x (a*y), (a*y) f_b)."""
    bad = first_failure(check_star_axioms(sm))
    if bad is not None:
        raise AxiomsFailed(f"star map fails: {bad.check}", witness=bad.witness)
    L, R = sm.left, sm.right
    Lm, Rm = L.semigroup.rows, R.semigroup.rows
    V = sm.values.tolist()

    def product(p, q):
        (x, a), (y, b) = p, q
        c = V[a][y]
        return Lm[L.e(x)][L.up(c)], Rm[R.up(c)][R.f(b)]

    pairs = _spined_pairs(sm)
    T, index = _assemble(sm, pairs, product)
    return _finish(sm, T, pairs, index)


def verify_spined_product(sp: SpinedProduct) -> list[Check]:
    """Idempotents, starred classes and the distinguished subsets of T."""
    sm, T, idx = sp.star_map, sp.semigroup, sp.index
    L, R, C = sm.left, sm.right, sm.core
    an = sp.analysis
    ck = Checker("spined-product")
    by_form = {idx[(x, a)] for (x, a) in sp.pairs if L.bar(x) == sm(a, x)}
    ck.expect("E(T) = {(x,a) : xbar = a*x}", by_form == set(core.idempotents(T)),
              sorted(by_form ^ set(core.idempotents(T))))
    rs, ls = core.r_star(T), core.l_star(T)
    for (x, a), i in idx.items():
        xb, ab = L.bar(x), R.bar(a)
        e_pair = idx[(L.e(x), R.up(core.plus_of(C, xb)))]
        f_pair = idx[(L.up(core.star_of(C, ab)), R.f(a))]
        ck.expect("(x,a) R*_T (e_x, e_xbar) and (x,a) L*_T (f_abar, f_a)",
                  rs.related(i, e_pair) and ls.related(i, f_pair), (x, a))
    r_image = [idx[(L.up(R.bar(a)), a)] for a in R.semigroup]
    l_image = [idx[(x, R.up(L.bar(x)))] for x in L.semigroup]
    ck.expect("R(T) = {(abar, a) : a in R}", set(r_image) == an.set_R, sorted(set(r_image) ^ an.set_R))
    ck.expect("L(T) = {(x, xbar) : x in L}", set(l_image) == an.set_L, sorted(set(l_image) ^ an.set_L))
    ck.expect("a -> (abar, a) is a homomorphism R -> T",
              is_homomorphism(R.semigroup, T, r_image) is None, is_homomorphism(R.semigroup, T, r_image))
    ck.expect("x -> (x, xbar) is a homomorphism L -> T",
              is_homomorphism(L.semigroup, T, l_image) is None, is_homomorphism(L.semigroup, T, l_image))
    lam = {r_image[a] for a in R.analysis.set_Lambda}
    eye = {l_image[x] for x in L.analysis.set_I}
    ck.expect("Lambda(T) = {(abar, a) : a in Lambda(R)}", lam == an.set_Lambda, sorted(lam ^ an.set_Lambda))
    ck.expect("I(T) = {(x, xbar) : x in I(L)}", eye == an.set_I, sorted(eye ^ an.set_I))
    return ck.rows()


def multiplicative_construction_checks(sp: SpinedProduct) -> list[Check]:
    """The third star condition holds exactly when T0 is multiplicative, and
    then S0 is a multiplicative transversal of L and of R as well."""
    sm = sp.star_map
    ck = Checker("multiplicative-construction")
    name, cond3, witness = condition_three(sm)
    mult = is_multiplicative(sp.analysis)
    ck.expect("e*f in E0 for all idempotents iff T0 multiplicative", cond3 == mult,
              {"condition": cond3, "multiplicative": mult, "witness": witness})
    if cond3:
        ck.expect("S0 multiplicative in L and in R",
                  sm.left.analysis.multiplicative and sm.right.analysis.multiplicative)
    return ck.rows()


# ------------------------------------------------------------------ round trip

def decompose_and_rebuild(S: FiniteSemigroup, analysis: TransversalAnalysis) -> tuple[SpinedProduct, list[Check]]:
    """Split S into (L, R, *), rebuild L |x| R and check x -> (e_x xbar, xbar f_x)
    is an isomorphism onto it."""
    sm = extract_star(S, analysis)
    sp = build_spined_product(sm)
    L, R = sm.left, sm.right
    l_pos = {s: i for i, s in enumerate(L.source)}
    r_pos = {s: i for i, s in enumerate(R.source)}
    e, b, f = analysis.e_of, analysis.bar_of, analysis.f_of
    phi = []
    for x in S:
        p = (l_pos.get(S.mul(e[x], b[x])), r_pos.get(S.mul(b[x], f[x])))
        if p not in sp.index:
            raise IsoFailed(f"phi({x}) = {p} is not in T", witness=x)
        phi.append(sp.index[p])
    if len(set(phi)) != S.order or S.order != sp.semigroup.order:
        raise IsoFailed("phi is not a bijection", witness=phi)
    bad = is_homomorphism(S, sp.semigroup, phi)
    if bad is not None:
        raise IsoFailed("phi is not a homomorphism", witness=bad)
    sp = replace(sp, source_iso=tuple(phi))

    ck = Checker("structure-round-trip")
    ck.expect("phi: S -> T bijective homomorphism", True)
    ET = set(core.idempotents(sp.semigroup))
    image = {sp.index[(l_pos[S.mul(e[y], b[y])], r_pos[S.mul(b[y], f[y])])] for y in core.idempotents(S)}
    ck.expect("E(T) = {(e_y ybar, ybar f_y) : y in E(S)}", image == ET, sorted(image ^ ET))
    for x, a in sp.pairs:
        sx, sa = L.source[x], R.source[a]
        ck.expect("x f_a = e_x a for (x,a) in T",
                  S.mul(sx, f[sa]) == S.mul(e[sx], sa), (sx, sa))
    ck.expect("T0 = phi(S0)", {phi[s] for s in analysis.transversal} == sp.embedded_T0)
    return sp, ck.rows()


# ------------------------------------------------------------------- Chen data

@dataclass(frozen=True, eq=False)
class ChenData:
    """Left adequate construction data over an adequate S0.

    ``embed`` sends each idempotent of S0 to its element of the carrier I;
    ``act[i, s]`` is i (x) s for s in E0 (other columns -1); ``proj[i]`` is the
    E0 element i projects to; ``star[f, i]`` is f * i for f in E0.
    """
    core: FiniteSemigroup
    carrier_size: int
    embed: dict[int, int]
    act: np.ndarray
    proj: tuple[int, ...]
    star: np.ndarray
    labels: tuple[str, ...] | None = None


def check_chen_data(data: ChenData) -> list[Check]:
    C, n = data.core, data.carrier_size
    E0 = sorted(core.idempotents(C))
    act, star, proj, emb = data.act, data.star, data.proj, data.embed
    ck = Checker("chen-data")
    ck.expect("S0 adequate", core.is_adequate(C))
    ck.expect("E0 embeds injectively in I",
              sorted(emb) == E0 and len(set(emb.values())) == len(E0)
              and all(0 <= i < n for i in emb.values()), sorted(emb))
    shapes_ok = act.shape == (n, C.order) and star.shape == (C.order, n) and len(proj) == n
    ck.expect("tables have matching shapes", shapes_ok)
    if not ck.rows()[-1].passed or not all_passed(ck.rows()):
        return ck.rows()
    for i in range(n):
        ck.expect("projection lands in E0", proj[i] in E0, i)
        for s in E0:
            ck.expect("action stays in I", 0 <= act[i, s] < n, (i, s))
    if not all_passed(ck.rows()):
        return ck.rows()
    for s in E0:
        ck.expect("projection is the identity on E0", proj[emb[s]] == s, s)
    for i in range(n):
        ck.expect("x (x) x.proj = x", act[i, proj[i]] == i, i)
        for s in E0:
            ck.expect("(x (x) s).proj = x.proj s", proj[act[i, s]] == C.mul(proj[i], s), (i, s))
            for t in E0:
                ck.expect("(x (x) s) (x) t = x (x) st", act[act[i, s], t] == act[i, C.mul(s, t)], (i, s, t))
    for f in E0:
        for i in range(n):
            ck.expect("star values lie in S0", 0 <= star[f, i] < C.order, (f, i))
    if not all_passed(ck.rows()):
        return ck.rows()
    for f in E0:
        for i in range(n):
            for a in E0:
                for b in E0:
                    ck.expect("a(f*e)b = af*(e (x) b)",
                              C.prod(a, int(star[f, i]), b) == star[C.mul(a, f), act[i, b]], (a, b, f, i))
        for g in E0:
            ck.expect("f*g = fg on E0", star[f, emb[g]] == C.mul(f, g), (f, g))
    for i in range(n):
        ck.expect("e.proj * e = e.proj", star[proj[i], i] == proj[i], i)
    return ck.rows()


@dataclass(frozen=True, eq=False)
class ChenResult:
    semigroup: FiniteSemigroup
    pairs: tuple[tuple[int, int], ...]       # (e in I, x in S0)
    index: dict[tuple[int, int], int]
    transversal: frozenset[int]
    core_embedding: tuple[int, ...]          # a -> (a+, a)
    analysis: TransversalAnalysis
    checks: tuple[Check, ...]


def chen_construct(data: ChenData) -> ChenResult:
    """T = {(e, x) in I x S0 : e.proj = x+} with
    (e,x)(g,w) = (e (x) a+, a) where a = x (x* * g) w."""
    bad = first_failure(check_chen_data(data))
    if bad is not None:
        raise DataInvalid(f"Chen data fails: {bad.check}", witness=bad.witness)
    C = data.core
    plus = [core.plus_of(C, x) for x in C]
    star_ = [core.star_of(C, x) for x in C]
    pairs = [(e, x) for e in range(data.carrier_size) for x in C if data.proj[e] == plus[x]]
    index = {p: i for i, p in enumerate(pairs)}
    act, st = data.act.tolist(), data.star.tolist()
    table = np.empty((len(pairs), len(pairs)), dtype=np.int64)
    for i, (e, x) in enumerate(pairs):
        for j, (g, w) in enumerate(pairs):
            a = C.prod(x, st[star_[x]][g], w)
            r = (act[e][plus[a]], a)
            if r not in index:
                raise ClosureFailed(f"product leaves T: {r}", witness=((e, x), (g, w), r))
            table[i, j] = index[r]
    ilabel = (lambda e: data.labels[e]) if data.labels else str
    try:
        T = core.validate(table, [f"({ilabel(e)},{C.label(x)})" for e, x in pairs])
    except NonAssociative as exc:
        raise ConstructionFailed("Chen product is not associative", witness=exc.witness) from exc
    embedding = tuple(index[(data.embed[plus[a]], a)] for a in C)
    if is_homomorphism(C, T, embedding) is not None:
        raise ConstructionFailed("a -> (a+, a) is not a homomorphism")
    if not core.is_left_adequate(T):
        raise ConstructionFailed("T is not left adequate")
    try:
        an = analyze_transversal(T, embedding)
    except SemigroupError as exc:
        raise ConstructionFailed(f"T0 is not an adequate transversal: {exc}", witness=exc.witness) from exc
    if not an.quasi_ideal:
        raise ConstructionFailed("T0 is not a quasi-ideal")
    ck = Checker("chen-construction")
    ck.expect("T left adequate with quasi-ideal transversal T0 = {(a+, a)} iso to S0", True)
    ck.expect("left adequate equivalences hold", left_adequate_equivalences(T, an).value)
    return ChenResult(T, tuple(pairs), index, frozenset(embedding), embedding, an, tuple(ck.rows()))


def degenerate_chen_data(S0: FiniteSemigroup) -> ChenData:
    """I = E0, (x) and * the multiplication of S0, projection the identity."""
    E0 = sorted(core.idempotents(S0))
    pos = {e: i for i, e in enumerate(E0)}
    act = np.full((len(E0), S0.order), -1, dtype=np.int64)
    star = np.full((S0.order, len(E0)), -1, dtype=np.int64)
    for i, e in enumerate(E0):
        for s in E0:
            act[i, s] = pos[S0.mul(e, s)]
            star[s, i] = S0.mul(s, e)
    return ChenData(S0, len(E0), pos, act, tuple(E0), star, tuple(S0.label(e) for e in E0))


def extract_chen_data(S: FiniteSemigroup, analysis: TransversalAnalysis) -> tuple[ChenData, tuple[int, ...]]:
    """Chen data of a left adequate S with a quasi-ideal transversal.

    Returns the data and the carrier (I = E(S), ascending) as S indices.
    """
    if not core.is_left_adequate(S):
        raise PreconditionFailed("S is not left adequate")
    if not analysis.quasi_ideal:
        raise NotQuasiIdeal("transversal is not a quasi-ideal")
    C, members = core.restrict(S, analysis.transversal)
    to_core = {m: c for c, m in enumerate(members)}
    carrier = tuple(sorted(core.idempotents(S)))
    pos = {e: i for i, e in enumerate(carrier)}
    E0 = sorted(core.idempotents(C))
    act = np.full((len(carrier), C.order), -1, dtype=np.int64)
    star = np.full((C.order, len(carrier)), -1, dtype=np.int64)
    try:
        for i, e in enumerate(carrier):
            for s in E0:
                act[i, s] = pos[S.mul(e, members[s])]
                star[s, i] = to_core[S.mul(members[s], e)]
    except KeyError as exc:
        raise InternalInconsistency("I (x) E0 or E0 I left its expected range", witness=exc.args) from exc
    proj = tuple(to_core[analysis.bar_of[e]] for e in carrier)
    embed = {s: pos[members[s]] for s in E0}
    return ChenData(C, len(carrier), embed, act, proj, star,
                    tuple(S.label(e) for e in carrier)), carrier


def chen_round_trip(S: FiniteSemigroup, analysis: TransversalAnalysis) -> tuple[ChenResult, list[Check]]:
    data, carrier = extract_chen_data(S, analysis)
    res = chen_construct(data)
    pos = {e: i for i, e in enumerate(carrier)}
    to_core = {m: c for c, m in enumerate(sorted(analysis.transversal))}
    mapping = [res.index.get((pos[analysis.e_of[x]], to_core[analysis.bar_of[x]])) for x in S]
    ck = Checker("chen-construction")
    ok = None not in mapping and sorted(mapping) == list(range(res.semigroup.order))
    ck.expect("x -> (e_x, xbar) is a bijection onto T", ok, mapping)
    if ok:
        ck.expect("x -> (e_x, xbar) is a homomorphism",
                  is_homomorphism(S, res.semigroup, mapping) is None,
                  is_homomorphism(S, res.semigroup, mapping))
    return res, list(res.checks) + ck.rows()


# ---------------------------------------------------------------- regular case

@dataclass(frozen=True, eq=False)
class InverseTransversalReport:
    analysis: TransversalAnalysis
    x0: tuple[int, ...]
    checks: tuple[Check, ...]


def inverse_transversal_analysis(S: FiniteSemigroup, S0) -> InverseTransversalReport:
    """x0, the unique inverse of x inside S0, and its relation to the
    decomposition: e_x = x x0, f_x = x0 x, xbar = x00, x0 = x000."""
    S0 = frozenset(S0)
    if not core.is_regular(S):
        bad = min(set(S) - core.regular_elements(S))
        raise NotRegular("S is not regular", witness=bad)
    try:
        sub = core.restrict(S, S0)[0]
    except NotClosed as exc:
        raise NotInverseSub("S0 is not a subsemigroup", witness=exc.witness) from exc
    if not core.is_inverse(sub):
        raise NotInverseSub("S0 is not an inverse semigroup")
    x0 = []
    for x in S:
        meet = core.inverses_of(S, x) & S0
        if len(meet) != 1:
            raise UniquenessFailed(f"|V({x}) n S0| = {len(meet)}", witness=(x, sorted(meet)))
        x0.append(next(iter(meet)))
    an = analyze_transversal(S, S0)
    e, b, f = an.e_of, an.bar_of, an.f_of
    ck = Checker("inverse-transversal")
    for x in S:
        ck.expect("x0 in S0", x0[x] in S0, x)
        ck.expect("e_x = x x0", e[x] == S.mul(x, x0[x]), x)
        ck.expect("f_x = x0 x", f[x] == S.mul(x0[x], x), x)
        ck.expect("xbar = x00", b[x] == x0[x0[x]], x)
        ck.expect("x0 = x000", x0[x] == x0[x0[x0[x]]], x)
    eye = {x for x in S if x == S.mul(x, x0[x])}
    lam = {x for x in S if x == S.mul(x0[x], x)}
    ck.expect("I = {x : x = x x0} = {x x0}", an.set_I == eye == {S.mul(x, x0[x]) for x in S},
              sorted(an.set_I ^ eye))
    ck.expect("Lambda = {x : x = x0 x} = {x0 x}", an.set_Lambda == lam == {S.mul(x0[x], x) for x in S},
              sorted(an.set_Lambda ^ lam))
    return InverseTransversalReport(an, tuple(x0), tuple(ck.rows()))


def _side_inverses(side: Side) -> list[int]:
    """x0 for every element of a side, as core indices."""
    sg, s0 = side.semigroup, side.analysis.transversal
    out = []
    for x in sg:
        meet = core.inverses_of(sg, x) & s0
        if len(meet) != 1:
            raise UniquenessFailed(f"|V({x}) n S0| = {len(meet)}", witness=x)
        out.append(side.down(next(iter(meet))))
    return out


def build_regular_spined_product(sm: StarMap) -> SpinedProduct:
    """T = {(x, a) : x0 = a0} with (x,a)(y,b) = (x x0 (a*y), (a*y) b0 b) for
    a left inverse L, right inverse R and inverse S0."""
    L, R = sm.left, sm.right
    Ls, Rs = L.semigroup, R.semigroup
    if not core.is_inverse(sm.core):
        raise PreconditionFailed("S0 is not inverse")
    if not (core.is_regular(Ls) and core.is_left_adequate(Ls)):
        raise PreconditionFailed("L is not left inverse")
    if not (core.is_regular(Rs) and core.is_right_adequate(Rs)):
        raise PreconditionFailed("R is not right inverse")
    y0, b0 = _side_inverses(L), _side_inverses(R)
    star = sm
    ck = Checker("regular-spined-product")
    for y in Ls:
        for b in Rs:
            if y0[y] != b0[b]:
                continue
            bb = Rs.mul(R.up(b0[b]), b)
            yy = Ls.mul(y, L.up(y0[y]))
            for a in Rs:
                left_factor = Rs.mul(R.up(star(a, y)), bb)
                for z in Ls:
                    ck.expect("(a*y)(b0 b)*z = a*(y y0)(b*z) when y0 = b0",
                              star(left_factor, z) == star(a, Ls.mul(yy, L.up(star(b, z)))),
                              {"y": y, "z": z, "a": a, "b": b})
    ax = first_failure(check_star_axioms(sm))
    if ax is not None or not all_passed(ck.rows()):
        w = ax.witness if ax is not None else first_failure(ck.rows()).witness
        raise AxiomsFailed("star map fails the inverse-form axioms", witness=w)

    pairs = [(x, a) for x in Ls for a in Rs if y0[x] == b0[a]]
    if pairs != _spined_pairs(sm):
        raise InternalInconsistency("x0 = a0 and xbar = abar select different pairs")
    Lm, Rm = Ls.rows, Rs.rows

    def product(p, q):
        (x, a), (y, b) = p, q
        c = star(a, y)
        return (Lm[Lm[x][L.up(y0[x])]][L.up(c)], Rm[R.up(c)][Rm[R.up(b0[b])][b]])

    T, index = _assemble(sm, pairs, product)
    generic = build_spined_product(sm)
    if not T.same_table(generic.semigroup):
        raise InternalInconsistency("inverse-form product differs from the general one")
    for (x, a), i in index.items():
        w = index[(L.up(b0[a]), R.up(y0[x]))]
        ck.expect("(x,a)(a0,x0)(x,a) = (x,a)", T.prod(i, w, i) == i, (x, a))
    bad = first_failure(ck.rows())
    if bad is not None:
        raise NotRegularOutcome(bad.check, witness=bad.witness)
    if not core.is_regular(T):
        raise NotRegularOutcome("T is not regular")
    sp = _finish(sm, T, pairs, index)
    T0 = core.restrict(T, sp.embedded_T0)[0]
    ck.expect("T regular and T0 inverse", core.is_inverse(T0))
    return replace(sp, checks=sp.checks + tuple(ck.rows()))


def left_inverse_chen(S0: FiniteSemigroup, band: FiniteSemigroup, embed: dict[int, int]) -> tuple[ChenResult, list[Check]]:
    """Chen's construction for an inverse S0 and a left normal band I that
    contains E0 (via ``embed``) as a semilattice transversal."""
    if not core.is_inverse(S0):
        raise PreconditionFailed("S0 is not inverse")
    if not core.is_band(band):
        raise NotLeftNormal("I is not a band")
    I = band
    for e in I:
        for x in I:
            for y in I:
                if I.prod(e, x, y) != I.prod(e, y, x):
                    raise NotLeftNormal("exy != eyx", witness=(e, x, y))
    E0 = sorted(core.idempotents(S0))
    if sorted(embed) != E0 or len(set(embed.values())) != len(E0):
        raise NotSemilatticeTransversal("embedding must be a bijection from E0")
    if is_homomorphism(core.restrict(S0, E0)[0], I, [embed[s] for s in E0]) is not None:
        raise NotSemilatticeTransversal("embedding does not respect products")
    back = {i: s for s, i in embed.items()}
    g0 = []
    for g in I:
        meet = core.inverses_of(I, g) & set(back)
        if len(meet) != 1:
            raise NotSemilatticeTransversal(f"|V({g}) n E0| = {len(meet)}", witness=g)
        g0.append(back[next(iter(meet))])
    for s in E0:
        for g in I:
            sg = I.mul(embed[s], g)
            if sg not in back or sg != embed[S0.mul(s, g0[g])]:
                raise NotSemilatticeTransversal("s g != s g0", witness=(s, g))
    n = I.order
    act = np.full((n, S0.order), -1, dtype=np.int64)
    star = np.full((S0.order, n), -1, dtype=np.int64)
    for g in I:
        for s in E0:
            act[g, s] = I.mul(g, embed[s])
            star[s, g] = back[I.mul(embed[s], g)]
    data = ChenData(S0, n, dict(embed), act, tuple(g0), star, I.labels)
    res = chen_construct(data)
    T = res.semigroup
    inv = [next(iter(core.inverses_of(S0, x))) for x in S0]
    ck = Checker("left-inverse-chen")
    for (e, x), i in res.index.items():
        w = res.index[(embed[S0.mul(inv[x], x)], inv[x])]
        ck.expect("(e,x)(x^-1 x, x^-1)(e,x) = (e,x)", T.prod(i, w, i) == i, (e, x))
    if not all_passed(ck.rows()) or not core.is_regular(T):
        raise NotRegularOutcome("Chen product is not regular", witness=first_failure(ck.rows()))
    ck.expect("T left inverse", core.is_left_adequate(T) and core.is_regular(T))
    ck.expect("T0 inverse", core.is_inverse(core.restrict(T, res.transversal)[0]))
    return res, list(res.checks) + ck.rows()


def extract_left_inverse_data(S: FiniteSemigroup, analysis: TransversalAnalysis):
    """(S0, I, embed) of a left inverse S with a quasi-ideal inverse transversal."""
    if not (core.is_regular(S) and core.is_left_adequate(S)):
        raise PreconditionFailed("S is not left inverse")
    S0, members = core.restrict(S, analysis.transversal)
    I, carrier = core.restrict(S, core.idempotents(S))
    pos = {e: i for i, e in enumerate(carrier)}
    embed = {s: pos[members[s]] for s in core.idempotents(S0)}
    return S0, I, embed, carrier


def left_inverse_round_trip(S: FiniteSemigroup, analysis: TransversalAnalysis) -> tuple[ChenResult, list[Check]]:
    S0, I, embed, carrier = extract_left_inverse_data(S, analysis)
    res, rows = left_inverse_chen(S0, I, embed)
    pos = {e: i for i, e in enumerate(carrier)}
    to_core = {m: c for c, m in enumerate(sorted(analysis.transversal))}
    mapping = [res.index.get((pos[analysis.e_of[x]], to_core[analysis.bar_of[x]])) for x in S]
    ck = Checker("left-inverse-chen")
    ok = None not in mapping and sorted(mapping) == list(range(res.semigroup.order))
    ck.expect("x -> (x x0, x00) is an isomorphism onto T",
              ok and is_homomorphism(S, res.semigroup, mapping) is None, mapping)
    return res, rows + ck.rows()


# ------------------------------------------------------------------ mutation

def star_map_mutations(sm: StarMap):
    """Every (a, x, c) that changes exactly one entry of the star table."""
    for a in sm.right.semigroup:
        for x in sm.left.semigroup:
            for c in sm.core:
                if c != sm(a, x):
                    yield a, x, c


def mutation_caught(sm: StarMap, a: int, x: int, c: int) -> tuple[bool, str]:
    """Whether changing a*x to c is rejected, and by what."""
    mutant = sm.with_value(a, x, c)
    bad = first_failure(check_star_axioms(mutant))
    if bad is not None:
        return True, f"axiom: {bad.check}"
    try:
        build_spined_product(mutant)
    except SemigroupError as exc:
        return True, f"construction: {type(exc).__name__}"
    return False, "accepted"
