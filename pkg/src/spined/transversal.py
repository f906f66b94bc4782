"""Adequate transversals.

An adequate *-subsemigroup S0 of an abundant S is an adequate transversal when
every x factors uniquely as ``x = e * xbar * f`` with ``xbar`` in S0 and
idempotents ``e L xbar+`` and ``f R xbar*``.  :func:`analyze_transversal`
finds all those factorisations by brute force and derives the sets
I, Lambda, E0, L, R together with the quasi-ideal and multiplicative flags.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import core
from .core import FiniteSemigroup
from .errors import (
    InternalInconsistency,
    NoDecomposition,
    NotAbundant,
    NotAdequateSub,
    NotClosed,
    NotStarSub,
    NotUniqueDecomposition,
    PreconditionFailed,
)
from .report import Checker, all_passed, first_failure


@dataclass(frozen=True, eq=False)
class TransversalAnalysis:
    parent: FiniteSemigroup
    transversal: frozenset[int]
    e_of: tuple[int, ...]
    bar_of: tuple[int, ...]
    f_of: tuple[int, ...]
    set_I: frozenset[int]
    set_Lambda: frozenset[int]
    set_E0: frozenset[int]
    set_L: frozenset[int]
    set_R: frozenset[int]
    quasi_ideal: bool
    multiplicative: bool
    weakly_multiplicative: bool
    plus: dict[int, int]
    star: dict[int, int]

    def decomposition(self, x: int) -> tuple[int, int, int]:
        return self.e_of[x], self.bar_of[x], self.f_of[x]


# --------------------------------------------------------------- prerequisites

def transversal_plus_star(S: FiniteSemigroup, S0: Iterable[int]) -> tuple[dict[int, int], dict[int, int]]:
    """a+ and a* for a in S0, computed inside S0 and reported on S's indices."""
    sub, members = core.restrict(S, S0)
    if not core.is_adequate(sub):
        raise NotAdequateSub("transversal candidate is not adequate")
    plus = {members[i]: members[core.plus_of(sub, i)] for i in range(sub.order)}
    star = {members[i]: members[core.star_of(sub, i)] for i in range(sub.order)}
    return plus, star


def _check_prerequisites(S: FiniteSemigroup, S0: frozenset[int]):
    if not S0 or not core.is_closed(S, S0):
        raise NotClosed("transversal candidate is not a subsemigroup")
    plus, star = transversal_plus_star(S, S0)
    if not core.is_abundant(S):
        raise NotAbundant("the ambient semigroup is not abundant")
    by_criterion = core.is_star_subsemigroup(S, S0)
    if by_criterion != core.is_star_subsemigroup_by_restriction(S, S0):
        raise InternalInconsistency(
            "*-subsemigroup criterion and relation restriction disagree", witness=sorted(S0))
    if not by_criterion:
        bad = next(a for a in sorted(S0)
                   if not (core.l_star(S).class_containing(a) & core.idempotents(S) & S0
                           and core.r_star(S).class_containing(a) & core.idempotents(S) & S0))
        raise NotStarSub("transversal candidate is not a *-subsemigroup", witness=bad)
    return plus, star


def _all_decompositions(S, S0, plus, star) -> dict[int, list[tuple[int, int, int]]]:
    E = sorted(core.idempotents(S))
    gl, gr = core.green_l(S), core.green_r(S)
    found: dict[int, list] = {x: [] for x in S}
    for m in sorted(S0):
        lefts = [e for e in E if gl.related(e, plus[m])]
        rights = [f for f in E if gr.related(f, star[m])]
        for e in lefts:
            em = S.mul(e, m)
            for f in rights:
                found[S.mul(em, f)].append((e, m, f))
    return found


def find_decompositions(S: FiniteSemigroup, S0: Iterable[int], x: int) -> list[tuple[int, int, int]]:
    """Every ``(e, m, f)`` with ``x = e m f``, e, f idempotent, m in S0,
    ``e L m+`` and ``f R m*``."""
    S0 = frozenset(S0)
    try:
        plus, star = _check_prerequisites(S, S0)
    except (NotClosed, NotAdequateSub, NotStarSub) as exc:
        raise PreconditionFailed(f"S0 is not an adequate *-subsemigroup: {exc}") from exc
    return _all_decompositions(S, S0, plus, star)[x]


# -------------------------------------------------------------------- analysis

def analyze_transversal(S: FiniteSemigroup, S0: Iterable[int]) -> TransversalAnalysis:
    """Decide whether S0 is an adequate transversal of S and analyse it.

    Prerequisites are checked in order (closure, adequacy, *-property,
    decomposition) and the first failure is raised.  On success the standard
    identities of the decomposition are verified; a failure there raises
    InternalInconsistency.
    """
    S0 = frozenset(S0)
    plus, star = _check_prerequisites(S, S0)
    found = _all_decompositions(S, S0, plus, star)
    e_of, bar_of, f_of = [], [], []
    for x in S:
        triples = found[x]
        middles = {m for _, m, _ in triples}
        if not middles:
            raise NoDecomposition(f"{x} has no decomposition through S0", witness=x)
        if len(middles) > 1:
            raise NotUniqueDecomposition(
                f"{x} factors through {sorted(middles)}", witness=(x, sorted(middles)))
        if len(triples) > 1:
            raise InternalInconsistency(f"{x} has a unique middle factor but {len(triples)} outer pairs",
                                        witness=(x, triples))
        (e, m, f), = triples
        e_of.append(e)
        bar_of.append(m)
        f_of.append(f)

    E0 = core.idempotents(S) & S0
    set_I = frozenset(x for x in S if x == e_of[x])
    set_Lambda = frozenset(x for x in S if x == f_of[x])
    set_R = frozenset(x for x in S if e_of[x] == e_of[bar_of[x]])
    set_L = frozenset(x for x in S if f_of[x] == f_of[bar_of[x]])
    quasi = _quasi_ideal(S, S0, set_Lambda, set_I, set_R, set_L)
    mult, weak = _multiplicative(S, E0, set_Lambda, set_I, bar_of, quasi)
    analysis = TransversalAnalysis(
        S, S0, tuple(e_of), tuple(bar_of), tuple(f_of),
        set_I, set_Lambda, E0, set_L, set_R, quasi, mult, weak, plus, star)
    bad = first_failure(basic_properties(analysis) + r_characterizations(analysis))
    if bad is not None:
        raise InternalInconsistency(f"{bad.check} fails", witness=bad.witness)
    return analysis


def basic_properties(an: TransversalAnalysis) -> list:
    """The elementary identities every adequate transversal satisfies."""
    S = an.parent
    e, b, f = an.e_of, an.bar_of, an.f_of
    E, S0 = core.idempotents(S), an.transversal
    rs, ls = core.r_star(S), core.l_star(S)
    gr, gl = core.green_r(S), core.green_l(S)
    ck = Checker("transversal-basics")
    for x in S:
        ck.expect("decomposition x = e_x xbar f_x", S.prod(e[x], b[x], f[x]) == x
                  and e[x] in E and f[x] in E and b[x] in S0
                  and gl.related(e[x], an.plus[b[x]]) and gr.related(f[x], an.star[b[x]]), x)
        ck.expect("e_x R* x and f_x L* x", rs.related(e[x], x) and ls.related(f[x], x), x)
        if x in S0:
            ck.expect("transversal elements decompose as (x+, x, x*)",
                      (e[x], b[x], f[x]) == (an.plus[x], x, an.star[x]), x)
        eb, fb = e[b[x]], f[b[x]]
        ck.expect("e_xbar L e_x with e_xbar e_x = e_xbar and e_x e_xbar = e_x",
                  gl.related(eb, e[x]) and S.mul(eb, e[x]) == eb and S.mul(e[x], eb) == e[x], x)
        ck.expect("f_xbar R f_x with f_xbar f_x = f_x and f_x f_xbar = f_xbar",
                  gr.related(fb, f[x]) and S.mul(fb, f[x]) == f[x] and S.mul(f[x], fb) == fb, x)
        if x in an.set_I:
            ck.expect("x in I: e_x = x and xbar = f_x = e_xbar",
                      e[x] == x and b[x] == f[x] == e[b[x]], x)
        if x in an.set_Lambda:
            ck.expect("y in Lambda: e_y = ybar = f_ybar and f_y = y",
                      e[x] == b[x] == f[b[x]] and f[x] == x, x)
        ck.expect("bar(e_x) = e_xbar = xbar+ = f_(e_x)",
                  b[e[x]] == eb == an.plus[b[x]] == f[e[x]], x)
        ck.expect("bar(f_x) = f_xbar = xbar* = e_(f_x)",
                  b[f[x]] == fb == an.star[b[x]] == e[f[x]], x)
        ck.expect("xbar = e_xbar x f_xbar", b[x] == S.prod(eb, x, fb), x)
    ck.expect("I = {e_x} = {x : x = e_x}", an.set_I == frozenset(e), sorted(an.set_I ^ frozenset(e)))
    ck.expect("Lambda = {f_x} = {x : x = f_x}", an.set_Lambda == frozenset(f),
              sorted(an.set_Lambda ^ frozenset(f)))
    return ck.rows()


def r_characterizations(an: TransversalAnalysis) -> list:
    """The six descriptions of R (and dually of L) must give the same set."""
    S = an.parent
    e, b, f = an.e_of, an.bar_of, an.f_of
    rs, ls = core.r_star(S), core.l_star(S)
    E0 = an.set_E0
    r_forms = {
        "e_x = e_xbar": an.set_R,
        "e_x in E0": {x for x in S if e[x] in E0},
        "x = xbar f_x": {x for x in S if x == S.mul(b[x], f[x])},
        "x = e_xbar x": {x for x in S if x == S.mul(e[b[x]], x)},
        "x R* xbar": {x for x in S if rs.related(x, b[x])},
        "xbar = e_x xbar": {x for x in S if b[x] == S.mul(e[x], b[x])},
    }
    l_forms = {
        "f_x = f_xbar": an.set_L,
        "f_x in E0": {x for x in S if f[x] in E0},
        "x = e_x xbar": {x for x in S if x == S.mul(e[x], b[x])},
        "x = x f_xbar": {x for x in S if x == S.mul(x, f[b[x]])},
        "x L* xbar": {x for x in S if ls.related(x, b[x])},
        "xbar = xbar f_x": {x for x in S if b[x] == S.mul(b[x], f[x])},
    }
    ck = Checker("R-characterizations")
    for which, forms in (("R", r_forms), ("L", l_forms)):
        ref = frozenset(next(iter(forms.values())))
        for name, members in forms.items():
            ck.expect(f"{which} = {{x : {name}}}", frozenset(members) == ref,
                      sorted(ref ^ frozenset(members)))
    return ck.rows()


# ----------------------------------------------------------------------- flags

def _quasi_ideal_forms(S, S0, Lam, I, R, L) -> dict[str, bool]:
    S0s = sorted(S0)
    return {
        "S0 S S0 within S0": all(S.prod(s, x, t) in S0 for s in S0s for x in S for t in S0s),
        "Lambda I within S0": all(S.mul(l, i) in S0 for l in Lam for i in I),
        "R L within S0": all(S.mul(r, l) in S0 for r in R for l in L),
    }


def _quasi_ideal(S, S0, Lam, I, R, L) -> bool:
    forms = _quasi_ideal_forms(S, S0, Lam, I, R, L)
    if len(set(forms.values())) != 1:
        raise InternalInconsistency(f"quasi-ideal criteria disagree: {forms}", witness=forms)
    return next(iter(forms.values()))


def _multiplicative(S, E0, Lam, I, bar_of, quasi) -> tuple[bool, bool]:
    mult = all(S.mul(l, i) in E0 for l in Lam for i in I)
    weak = all(bar_of[S.mul(l, i)] in E0 for l in Lam for i in I)
    if mult != (weak and quasi):
        raise InternalInconsistency(
            f"multiplicative={mult} but weakly multiplicative={weak}, quasi-ideal={quasi}")
    return mult, weak


def quasi_ideal_criteria(an: TransversalAnalysis) -> dict[str, bool]:
    return _quasi_ideal_forms(an.parent, an.transversal, an.set_Lambda, an.set_I,
                              an.set_R, an.set_L)


def is_quasi_ideal(an: TransversalAnalysis) -> bool:
    """S0 S S0 within S0, checked three ways (which must agree)."""
    return _quasi_ideal(an.parent, an.transversal, an.set_Lambda, an.set_I, an.set_R, an.set_L)


def is_multiplicative(an: TransversalAnalysis) -> bool:
    return _multiplicative(an.parent, an.set_E0, an.set_Lambda, an.set_I, an.bar_of,
                           is_quasi_ideal(an))[0]


def is_weakly_multiplicative(an: TransversalAnalysis) -> bool:
    return _multiplicative(an.parent, an.set_E0, an.set_Lambda, an.set_I, an.bar_of,
                           is_quasi_ideal(an))[1]


# ------------------------------------------------------- adequacy equivalences

@dataclass(frozen=True)
class Equivalence:
    value: bool
    conditions: dict[str, bool]


def _agreeing(conditions: dict[str, bool]) -> Equivalence:
    values = set(conditions.values())
    if len(values) != 1:
        raise InternalInconsistency(f"equivalent conditions disagree: {conditions}", witness=conditions)
    return Equivalence(values.pop(), conditions)


def left_adequate_equivalences(S: FiniteSemigroup, an: TransversalAnalysis) -> Equivalence:
    E = core.idempotents(S)
    return _agreeing({
        "S left adequate": core.is_left_adequate(S),
        "Lambda = E0": an.set_Lambda == an.set_E0,
        "R = S0": an.set_R == an.transversal,
        "L = S": an.set_L == frozenset(S),
        "I = E(S)": an.set_I == E,
    })


def right_adequate_equivalences(S: FiniteSemigroup, an: TransversalAnalysis) -> Equivalence:
    E = core.idempotents(S)
    return _agreeing({
        "S right adequate": core.is_right_adequate(S),
        "I = E0": an.set_I == an.set_E0,
        "L = S0": an.set_L == an.transversal,
        "R = S": an.set_R == frozenset(S),
        "Lambda = E(S)": an.set_Lambda == E,
    })


# ------------------------------------------------------------ product formulas

def verify_product_formulas(an: TransversalAnalysis) -> list:
    """Product identities for the decomposition maps.

    For x in R, y in S, z in L the factors of ``e_y x`` and ``z f_y`` are
    given by closed forms; for any x, y whose middle products
    ``xbar f_x e_y`` and ``f_x e_y ybar`` stay in S0, so are those of xy.
    Finally every element factors as (element of L)(element of R).
    """
    S = an.parent
    e, b, f = an.e_of, an.bar_of, an.f_of
    S0, plus, star = an.transversal, an.plus, an.star
    ck = Checker("restricted-products")
    for y in S:
        ey, fy, eyb, fyb = e[y], f[y], e[b[y]], f[b[y]]
        for x in an.set_R:
            p = S.mul(ey, x)
            c = S.mul(eyb, b[x])
            w = (x, y)
            ck.expect("e_(e_y x) = e_y e_x", e[p] == S.mul(ey, e[x]), w)
            ck.expect("bar(e_y x) = e_ybar xbar", b[p] == c, w)
            ck.expect("f_(e_y x) = (e_ybar xbar)* f_x", f[p] == S.mul(star[c], f[x]), w)
        for z in an.set_L:
            p = S.mul(z, fy)
            c = S.mul(b[z], fyb)
            w = (z, y)
            ck.expect("f_(z f_y) = f_z f_y", f[p] == S.mul(f[z], fy), w)
            ck.expect("bar(z f_y) = zbar f_ybar", b[p] == c, w)
            ck.expect("e_(z f_y) = e_z (zbar f_ybar)+", e[p] == S.mul(e[z], plus[c]), w)
    rows = ck.rows()

    ck = Checker("product-formula")
    applicable = 0
    for x in S:
        for y in S:
            left = S.prod(b[x], f[x], e[y])
            right = S.prod(f[x], e[y], b[y])
            if left not in S0 or right not in S0:
                continue
            applicable += 1
            xy = S.mul(x, y)
            w = (x, y)
            ck.expect("bar(xy) = xbar f_x e_y ybar", b[xy] == S.mul(left, b[y]), w)
            ck.expect("e_xy = e_x (xbar f_x e_y)+", e[xy] == S.mul(e[x], plus[left]), w)
            ck.expect("f_xy = (f_x e_y ybar)* f_y", f[xy] == S.mul(star[right], f[y]), w)
    rows += ck.rows()

    ck = Checker("LR-factorization")
    products = {S.mul(l, r) for l in an.set_L for r in an.set_R}
    ck.expect("LR = S", products == set(S), sorted(set(S) - products))
    return rows + ck.rows()


def verify_basics(an: TransversalAnalysis) -> bool:
    return all_passed(basic_properties(an) + r_characterizations(an))
