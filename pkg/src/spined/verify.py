"""One-call verification of everything that applies to an (S, S0) instance."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import core
from .construction import (
    build_regular_spined_product,
    build_spined_product,
    check_star_axioms,
    chen_round_trip,
    decompose_and_rebuild,
    inverse_transversal_analysis,
    left_inverse_round_trip,
    multiplicative_construction_checks,
    verify_star_identities,
)
from .core import FiniteSemigroup
from .errors import SemigroupError
from .iso import are_isomorphic
from .report import Check, Checker
from .transversal import (
    analyze_transversal,
    basic_properties,
    left_adequate_equivalences,
    quasi_ideal_criteria,
    r_characterizations,
    right_adequate_equivalences,
    verify_product_formulas,
)

ALWAYS = (
    "starred-relations",
    "adequacy-classification",
    "star-subsemigroup",
    "transversal-axioms",
    "transversal-basics",
    "R-characterizations",
    "quasi-ideal-criteria",
    "restricted-products",
    "product-formula",
    "LR-factorization",
    "left-adequate-equivalences",
    "multiplicative-hierarchy",
)
QUASI_IDEAL = (
    "quasi-ideal-substructures",
    "star-map-axioms",
    "star-map-identities",
    "spined-product",
    "structure-round-trip",
    "multiplicative-construction",
)
ANCHORS = ALWAYS + QUASI_IDEAL + (
    "chen-construction",        # left adequate and quasi-ideal
    "inverse-transversal",      # regular
    "regular-spined-product",   # regular and quasi-ideal
    "left-inverse-chen",        # left inverse and quasi-ideal
)


@dataclass
class VerificationReport:
    instance: str
    rows: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(r.passed for r in self.rows)

    @property
    def failed(self) -> int:
        return len(self.rows) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def anchors(self) -> list[str]:
        return list(dict.fromkeys(r.anchor for r in self.rows))

    def to_json(self) -> dict:
        return {"instance": self.instance, "passed": self.passed, "failed": self.failed,
                "rows": [r.to_json() for r in self.rows]}


def _error_row(anchor: str, name: str, exc: Exception) -> Check:
    return Check(name, anchor, False, {"error": type(exc).__name__, "message": str(exc),
                                       "witness": getattr(exc, "witness", None)})


def starred_relation_checks(S: FiniteSemigroup) -> list[Check]:
    ck = Checker("starred-relations")
    rs, ls = core.r_star(S), core.l_star(S)
    ck.expect("R* by column signatures = R* by definition", rs.same_partition(core.r_star_oracle(S)))
    ck.expect("L* by row signatures = L* by definition", ls.same_partition(core.l_star_oracle(S)))
    reg = sorted(core.regular_elements(S))
    gr, gl = core.green_r(S), core.green_l(S)
    for a in reg:
        for b in reg:
            ck.expect("R* = R on regular elements", rs.related(a, b) == gr.related(a, b), (a, b))
            ck.expect("L* = L on regular elements", ls.related(a, b) == gl.related(a, b), (a, b))
    for a in S:
        for b in S:
            if gr.related(a, b):
                ck.expect("R within R*", rs.related(a, b), (a, b))
            if gl.related(a, b):
                ck.expect("L within L*", ls.related(a, b), (a, b))
    for e in sorted(core.idempotents(S)):
        for a in S:
            ck.expect("e R* a iff ea = a and xa = ya implies xe = ye",
                      core.check_e_rstar(S, e, a) == rs.related(e, a), (e, a))
            ck.expect("e L* a iff ae = a and ax = ay implies ex = ey",
                      core.check_e_lstar(S, e, a) == ls.related(e, a), (e, a))
    return ck.rows()


def classification_checks(S: FiniteSemigroup) -> list[Check]:
    ck = Checker("adequacy-classification")
    ab, ad = core.is_abundant(S), core.is_adequate(S)
    la, ra = core.is_left_adequate(S), core.is_right_adequate(S)
    ck.expect("adequate implies left and right adequate", not ad or (la and ra))
    ck.expect("left or right adequate implies abundant", ab or not (la or ra))
    ck.expect("regular implies abundant", ab or not core.is_regular(S))
    ck.expect("inverse iff regular and adequate",
              core.is_inverse(S) == (core.is_regular(S) and ad))
    if ad:
        rs, ls = core.r_star(S), core.l_star(S)
        for a in S:
            p, s = core.plus_of(S, a), core.star_of(S, a)
            ck.expect("a+ R* a, a* L* a, a+ a = a = a a*",
                      rs.related(p, a) and ls.related(s, a) and S.mul(p, a) == a == S.mul(a, s), a)
    return ck.rows()


def _star_sub_rows(S, S0) -> list[Check]:
    ck = Checker("star-subsemigroup")
    if not core.is_closed(S, S0):
        ck.expect("S0 is a subsemigroup", False, sorted(S0))
        return ck.rows()
    crit = core.is_star_subsemigroup(S, S0)
    ck.expect("idempotent criterion agrees with restricted relations",
              crit == core.is_star_subsemigroup_by_restriction(S, S0))
    ck.expect("S0 is a *-subsemigroup", crit, sorted(S0))
    return ck.rows()


def _guard(rows: list[Check], anchor: str, name: str, fn):
    try:
        return fn()
    except SemigroupError as exc:
        rows.append(_error_row(anchor, name, exc))
        return None


def run_verification_suite(S: FiniteSemigroup, S0, instance: str = "instance") -> VerificationReport:
    """Every applicable check for (S, S0), grouped by anchor.

    Failures become rows with witnesses; nothing here raises for bad input.
    """
    S0 = frozenset(S0)
    rep = VerificationReport(instance)
    rows = rep.rows
    rows += starred_relation_checks(S)
    rows += classification_checks(S)
    if not core.is_abundant(S):
        rows.append(Check("S is abundant", "transversal-axioms", False))
        return rep
    rows += _star_sub_rows(S, S0)

    an = _guard(rows, "transversal-axioms", "S0 is an adequate transversal",
                lambda: analyze_transversal(S, S0))
    if an is None:
        return rep
    ck = Checker("transversal-axioms")
    ck.expect("every element has exactly one decomposition through S0", True)
    rows += ck.rows()
    rows += basic_properties(an)
    rows += r_characterizations(an)

    ck = Checker("quasi-ideal-criteria")
    crit = quasi_ideal_criteria(an)
    for name, value in crit.items():
        ck.expect(f"{name} agrees with the quasi-ideal flag", value == an.quasi_ideal, crit)
    rows += ck.rows()
    rows += verify_product_formulas(an)

    ck = Checker("left-adequate-equivalences")
    eqs = {}
    for side, fn in (("left", left_adequate_equivalences), ("right", right_adequate_equivalences)):
        res = _guard(rows, "left-adequate-equivalences", f"{side} adequate conditions agree",
                     lambda fn=fn: fn(S, an))
        if res is not None:
            eqs[side] = res.value
            ck.expect(f"{side} adequate conditions agree", True, res.conditions)
    if eqs.get("left"):
        for x in S:
            ck.expect("left adequate: f_x = f_xbar and x = e_x xbar",
                      an.f_of[x] == an.f_of[an.bar_of[x]] and x == S.mul(an.e_of[x], an.bar_of[x]), x)
    if eqs.get("right"):
        for x in S:
            ck.expect("right adequate: e_x = e_xbar and x = xbar f_x",
                      an.e_of[x] == an.e_of[an.bar_of[x]] and x == S.mul(an.bar_of[x], an.f_of[x]), x)
    rows += ck.rows()

    ck = Checker("multiplicative-hierarchy")
    ck.expect("multiplicative iff weakly multiplicative and quasi-ideal",
              an.multiplicative == (an.weakly_multiplicative and an.quasi_ideal),
              {"multiplicative": an.multiplicative, "weak": an.weakly_multiplicative,
               "quasi_ideal": an.quasi_ideal})
    rows += ck.rows()

    regular = core.is_regular(S)
    if regular:
        rep_inv = _guard(rows, "inverse-transversal", "S0 meets every V(x) once",
                         lambda: inverse_transversal_analysis(S, S0))
        if rep_inv is not None:
            rows += rep_inv.checks

    if not an.quasi_ideal:
        return rep

    rows += substructure_checks(S, an)
    res = _guard(rows, "structure-round-trip", "S decomposes and rebuilds",
                 lambda: decompose_and_rebuild(S, an))
    if res is None:
        return rep
    sp, trip = res
    rows += check_star_axioms(sp.star_map)
    rows += verify_star_identities(sp.star_map)
    rows += list(sp.checks)
    rows += trip
    again = _guard(rows, "structure-round-trip", "rebuilding T again gives a copy of T",
                   lambda: decompose_and_rebuild(sp.semigroup, sp.analysis))
    if again is not None:
        ck = Checker("structure-round-trip")
        ck.expect("rebuilding T again gives a copy of T", are_isomorphic(again[0].semigroup, sp.semigroup))
        rows += ck.rows()
    rows += multiplicative_construction_checks(sp)

    if core.is_left_adequate(S):
        out = _guard(rows, "chen-construction", "Chen data of S rebuilds S",
                     lambda: chen_round_trip(S, an))
        if out is not None:
            rows += out[1]
    if regular:
        reg = _guard(rows, "regular-spined-product", "inverse-form spined product builds",
                     lambda: build_regular_spined_product(sp.star_map))
        if reg is not None:
            rows += [c for c in reg.checks if c.anchor == "regular-spined-product"]
            ck = Checker("regular-spined-product")
            ck.expect("inverse-form product is a copy of S", are_isomorphic(reg.semigroup, S))
            rows += ck.rows()
        if core.is_left_adequate(S):
            out = _guard(rows, "left-inverse-chen", "left inverse data of S rebuilds S",
                         lambda: left_inverse_round_trip(S, an))
            if out is not None:
                rows += [c for c in out[1] if c.anchor == "left-inverse-chen"]
    return rep


def substructure_checks(S: FiniteSemigroup, an) -> list[Check]:
    """L and R as standalone semigroups around the common transversal S0."""
    ck = Checker("quasi-ideal-substructures")
    ck.expect("L and R are subsemigroups", core.is_closed(S, an.set_L) and core.is_closed(S, an.set_R))
    ck.expect("L n R = S0", an.set_L & an.set_R == an.transversal, sorted(an.set_L & an.set_R))
    ck.expect("I within L and Lambda within R", an.set_I <= an.set_L and an.set_Lambda <= an.set_R)
    if not all(r.passed for r in ck.rows()):
        return ck.rows()
    for name, members, adequate in (("L", an.set_L, core.is_left_adequate),
                                    ("R", an.set_R, core.is_right_adequate)):
        sub, back = core.restrict(S, members)
        pos = {old: new for new, old in enumerate(back)}
        ck.expect(f"{name} is {'left' if name == 'L' else 'right'} adequate", adequate(sub))
        try:
            sub_an = analyze_transversal(sub, [pos[s] for s in an.transversal])
        except SemigroupError as exc:
            ck.expect(f"S0 is a quasi-ideal adequate transversal of {name}", False, type(exc).__name__)
            continue
        ck.expect(f"S0 is a quasi-ideal adequate transversal of {name}", sub_an.quasi_ideal)
        ck.expect(f"bar in {name} agrees with bar in S",
                  all(back[sub_an.bar_of[i]] == an.bar_of[back[i]] for i in sub), name)
        eq = (left_adequate_equivalences if name == "L" else right_adequate_equivalences)(sub, sub_an)
        ck.expect(f"{name} satisfies its adequacy equivalences", eq.value, eq.conditions)
    return ck.rows()


def verify_star_map(sm) -> list[Check]:
    """Axioms, derived identities and product checks for a star map given directly."""
    rows = check_star_axioms(sm, require_multiplicative=False)
    if not all(r.passed for r in rows):
        return rows
    rows += verify_star_identities(sm)
    sp = _guard(rows, "spined-product", "the spined product builds", lambda: build_spined_product(sm))
    if sp is not None:
        rows += list(sp.checks) + multiplicative_construction_checks(sp)
    return rows
