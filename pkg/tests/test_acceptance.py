"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run directly (``python3 tests/test_acceptance.py``) or through pytest, which
lists the lines in its terminal summary.
"""
import random
import sys
from pathlib import Path

import numpy as np
import pytest

from spined import core, families as F
from spined.cli import main
from spined.construction import (
    build_regular_spined_product,
    build_spined_product,
    chen_construct,
    check_star_axioms,
    condition_three,
    decompose_and_rebuild,
    degenerate_chen_data,
    extract_left_inverse_data,
    extract_star,
    inverse_transversal_analysis,
    left_inverse_chen,
    mutation_caught,
    star_map_from_parts,
    star_map_mutations,
)
from spined.corpus import entry_text
from spined.docio import parse, serialize
from spined.iso import are_isomorphic, is_homomorphism
from spined.report import all_passed, first_failure
from spined.transversal import (
    analyze_transversal,
    basic_properties,
    left_adequate_equivalences,
    quasi_ideal_criteria,
    r_characterizations,
    right_adequate_equivalences,
)
from spined.verify import ANCHORS, run_verification_suite, substructure_checks

sys.path.insert(0, str(Path(__file__).parent))
from conftest import ACCEPTANCE_LINES  # noqa: E402

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"

TITLES = {
    1: "starred relations: signature route = definitional oracle, R* = R on regular pairs",
    2: "transversal axioms on rectangular bands and adequate S0 = S",
    3: "quasi-ideal three-way agreement on every discovered transversal",
    4: "structure round trip with exhaustive isomorphism",
    5: "forward construction soundness and star-map mutation test",
    6: "left adequate five-way equivalence and L/R substructures",
    7: "multiplicative hierarchy and the third star condition",
    8: "Chen construction: degenerate and left normal band data",
    9: "regular/inverse case and regularity witness",
    10: "CLI corpus run and byte-exact document round trip",
}


def record(n: int, ok: bool, detail: str = ""):
    line = f"criterion {n:2d} [{'PASS' if ok else 'FAIL'}] {TITLES[n]}"
    if detail:
        line += f" ({detail})"
    ACCEPTANCE_LINES[n] = line
    print(line)
    assert ok, line


# ---------------------------------------------------------------- 1

def test_starred_relations_match_oracle(corpus):
    assert len(corpus) >= 15
    orders = [e.semigroup.order for e in corpus]
    assert min(orders) == 1 and max(orders) == 27
    bad = []
    for entry in corpus:
        S = entry.semigroup
        if not core.r_star(S).same_partition(core.r_star_oracle(S)):
            bad.append((entry.name, "R*"))
        if not core.l_star(S).same_partition(core.l_star_oracle(S)):
            bad.append((entry.name, "L*"))
        reg = sorted(core.regular_elements(S))
        rs, ls, gr, gl = core.r_star(S), core.l_star(S), core.green_r(S), core.green_l(S)
        if core.r_star(S).restricted(reg).classes != core.green_r(S).restricted(reg).classes:
            bad.append((entry.name, "R* vs R"))
        for a in reg:
            for b in reg:
                if rs.related(a, b) != gr.related(a, b) or ls.related(a, b) != gl.related(a, b):
                    bad.append((entry.name, a, b))
    record(1, not bad, f"{len(corpus)} semigroups, orders {min(orders)}-{max(orders)}"
           + (f"; mismatches {bad[:3]}" if bad else ""))


# ---------------------------------------------------------------- 2

def _transversal_ok(S, S0):
    an = analyze_transversal(S, S0)
    unique = all(an.bar_of[x] in S0 for x in S)
    return unique and all_passed(basic_properties(an) + r_characterizations(an))


def test_transversal_axioms(corpus):
    failures, count = [], 0
    for m in range(1, 5):
        for k in range(1, 5):
            S = F.rectangular_band(m, k)
            for z in S:
                count += 1
                if not _transversal_ok(S, {z}):
                    failures.append(("rectangular_band", m, k, z))
    adequate = [e for e in corpus if core.is_adequate(e.semigroup)]
    assert len(adequate) >= 5
    for e in adequate:
        count += 1
        if not _transversal_ok(e.semigroup, frozenset(e.semigroup)):
            failures.append(e.name)
    record(2, not failures, f"{count} instances" + (f"; failures {failures[:3]}" if failures else ""))


# ---------------------------------------------------------------- 3

def test_quasi_ideal_three_way(corpus_transversals):
    disagree = []
    for entry, f in corpus_transversals:
        crit = quasi_ideal_criteria(f.analysis)
        if len(set(crit.values())) != 1 or crit["S0 S S0 within S0"] != f.analysis.quasi_ideal:
            disagree.append((entry.name, sorted(f.subset), crit))
    kinds = {f.analysis.quasi_ideal for _, f in corpus_transversals}
    record(3, not disagree and kinds == {True, False},
           f"{len(corpus_transversals)} transversals, both outcomes seen: {kinds == {True, False}}")


# ---------------------------------------------------------------- 4

def test_structure_round_trip(corpus_transversals):
    problems, count = [], 0
    for entry, f in corpus_transversals:
        an = f.analysis
        if not an.quasi_ideal:
            continue
        count += 1
        S = entry.semigroup
        sp, rows = decompose_and_rebuild(S, an)
        T, phi = sp.semigroup, sp.source_iso
        # independent re-check of phi
        if sorted(phi) != list(range(T.order)) or is_homomorphism(S, T, phi) is not None:
            problems.append((entry.name, "phi"))
        E_T = core.idempotents(T)
        sm = sp.star_map
        by_star = {sp.index[(x, a)] for x, a in sp.pairs if sm.left.bar(x) == sm(a, x)}
        by_image = {phi[y] for y in core.idempotents(S)}
        if not (E_T == by_star == by_image):
            problems.append((entry.name, "E(T)"))
        LR = {S.mul(l, r) for l in an.set_L for r in an.set_R}
        if LR != set(S):
            problems.append((entry.name, "LR"))
        if not all_passed(rows):
            problems.append((entry.name, first_failure(rows).check))
    record(4, not problems and count > 0, f"{count} quasi-ideal instances"
           + (f"; problems {problems[:3]}" if problems else ""))


# ---------------------------------------------------------------- 5

def _forward_star_maps():
    """Star maps given directly rather than extracted from a semigroup."""
    maps = []
    for m, k in [(1, 1), (2, 3), (3, 2), (4, 4)]:
        maps.append(star_map_from_parts(F.left_zero(m), {0}, F.right_zero(k), {0},
                                        np.zeros((k, m), dtype=int)))
    for S in [F.semilattice_chain(3), F.brandt_b2(), F.cyclic_group(4), F.symmetric_inverse_monoid(2)]:
        everything = set(S)
        maps.append(star_map_from_parts(S, everything, S, everything, np.array(S.rows)))
    return maps


def _all_star_maps(corpus_transversals):
    maps = []
    for entry, f in corpus_transversals:
        if f.analysis.quasi_ideal:
            maps.append((entry.name, extract_star(entry.semigroup, f.analysis)))
    return maps + [(f"forward {i}", sm) for i, sm in enumerate(_forward_star_maps())]


def test_forward_construction_and_mutations(corpus_transversals):
    star_maps = _all_star_maps(corpus_transversals)
    unsound = []
    for name, sm in star_maps:
        assert all_passed(check_star_axioms(sm))
        sp = build_spined_product(sm)
        T0 = core.restrict(sp.semigroup, sp.embedded_T0)[0]
        if not (core.is_abundant(sp.semigroup) and sp.analysis.quasi_ideal and are_isomorphic(T0, sm.core)):
            unsound.append(name)

    pool = [(name, sm, mut) for name, sm in star_maps for mut in star_map_mutations(sm)]
    rng = random.Random(20261016)
    sample = rng.sample(pool, min(200, len(pool)))
    sample_missed = [(n, m) for n, sm, m in sample if not mutation_caught(sm, *m)[0]]
    # the sample verdict is seed dependent; the exhaustive one is not
    all_missed = [(n, m) for n, sm, m in pool if not mutation_caught(sm, *m)[0]]
    detail = (f"{len(star_maps)} star maps; random sample {len(sample)} corruptions, "
              f"{len(sample) - len(sample_missed)} caught; exhaustive {len(pool)} corruptions, "
              f"{len(pool) - len(all_missed)} caught")
    if all_missed:
        detail += f"; accepted mutants e.g. {all_missed[:2]}"
    if unsound:
        detail += f"; unsound builds {unsound[:3]}"
    record(5, not unsound and len(sample) >= 50 and not sample_missed and not all_missed, detail)


# ---------------------------------------------------------------- 6

def test_left_adequate_equivalences_and_substructures(corpus_transversals):
    problems, count = [], 0
    for entry, f in corpus_transversals:
        if not f.analysis.quasi_ideal:
            continue
        count += 1
        S = entry.semigroup
        left = left_adequate_equivalences(S, f.analysis)
        right = right_adequate_equivalences(S, f.analysis)
        if left.value != core.is_left_adequate(S) or right.value != core.is_right_adequate(S):
            problems.append((entry.name, "equivalence"))
        rows = substructure_checks(S, f.analysis)
        if not all_passed(rows):
            problems.append((entry.name, first_failure(rows).check))
    record(6, not problems and count > 0, f"{count} quasi-ideal instances"
           + (f"; problems {problems[:3]}" if problems else ""))


# ---------------------------------------------------------------- 7

def test_multiplicative_hierarchy(corpus_transversals):
    problems = []
    for entry, f in corpus_transversals:
        an = f.analysis
        if an.multiplicative != (an.weakly_multiplicative and an.quasi_ideal):
            problems.append((entry.name, sorted(f.subset)))
    star_maps = _all_star_maps(corpus_transversals)
    outcomes = set()
    for name, sm in star_maps:
        _, cond3, _ = condition_three(sm)
        mult = build_spined_product(sm).analysis.multiplicative
        outcomes.add(cond3)
        if cond3 != mult:
            problems.append((name, "condition three"))
    record(7, not problems and outcomes == {True, False},
           f"{len(corpus_transversals)} transversals, {len(star_maps)} star maps, "
           f"both outcomes seen: {outcomes == {True, False}}")


# ---------------------------------------------------------------- 8

def _left_normal_cases():
    cases = []
    trivial = F.trivial()
    cases.append((trivial, F.left_zero(2), {0: 0}))
    cases.append((trivial, F.left_zero(3), {0: 1}))
    chain = F.semilattice_chain(2)
    band = F.direct_product(F.left_zero(2), chain)      # (i, c) -> i*2 + c
    cases.append((chain, band, {0: 0, 1: 1}))
    for S in [F.semilattice_chain(3), F.brandt_b2(), F.symmetric_inverse_monoid(2), F.cyclic_group(3)]:
        E, back = core.restrict(S, core.idempotents(S))
        cases.append((S, E, {s: i for i, s in enumerate(back)}))
    for S, S0 in [(F.direct_product(F.left_zero(2), F.cyclic_group(2)), {0, 1}), (F.left_zero(3), {0})]:
        cases.append(extract_left_inverse_data(S, analyze_transversal(S, S0))[:3])
    return cases


def test_chen_construction(corpus):
    problems, outputs = [], []
    for e in corpus:
        S = e.semigroup
        if core.is_adequate(S):
            res = chen_construct(degenerate_chen_data(S))
            outputs.append((e.name, res))
            if not are_isomorphic(res.semigroup, S):
                problems.append((e.name, "degenerate not iso"))
    for S0, band, embed in _left_normal_cases():
        res, rows = left_inverse_chen(S0, band, embed)
        outputs.append((f"left normal {band.order}", res))
        T = res.semigroup
        if not (core.is_regular(T) and core.is_left_adequate(T) and all_passed(rows)):
            problems.append((band.order, "not left inverse"))
    for name, res in outputs:
        T = res.semigroup
        rep = run_verification_suite(T, res.transversal, name)
        if not (core.is_left_adequate(T) and rep.ok):
            problems.append((name, "suite"))
    record(8, not problems, f"{len(outputs)} constructions" + (f"; problems {problems[:3]}" if problems else ""))


# ---------------------------------------------------------------- 9

def test_regular_inverse_case():
    cases = [(F.brandt_b2(), set(range(5))), (F.symmetric_inverse_monoid(2), set(range(7)))]
    cases += [(F.cyclic_group(k), set(range(k))) for k in range(1, 7)]
    for m in range(1, 4):
        for k in range(1, 4):
            S = F.rectangular_band(m, k)
            cases += [(S, {z}) for z in S]
    problems, pairs = [], 0
    for S, S0 in cases:
        rep = inverse_transversal_analysis(S, S0)
        if not all_passed(rep.checks):
            problems.append((S.order, first_failure(rep.checks).check))
        for x in S:
            meet = core.inverses_of(S, x) & frozenset(S0)
            if meet != {rep.x0[x]}:
                problems.append((S.order, x, "V(x) n S0"))
        sp = build_regular_spined_product(extract_star(S, rep.analysis))
        pairs += sp.semigroup.order
        witness_rows = [c for c in sp.checks if "(a0,x0)" in c.check]
        if not witness_rows or not all_passed(sp.checks):
            problems.append((S.order, "regular spined product"))
    record(9, not problems, f"{len(cases)} instances, {pairs} constructed pairs"
           + (f"; problems {problems[:3]}" if problems else ""))


# ---------------------------------------------------------------- 10

def test_cli_contract(corpus, capsys):
    code = main(["corpus", "run", "--format", "json"])
    import json
    payload = json.loads(capsys.readouterr().out)
    anchors = {r["anchor"]: r["pass"] for r in payload["anchors"]}
    covered = set(anchors) == set(ANCHORS) and all(anchors.values())
    files = sorted(CORPUS_DIR.glob("*.txt"))
    mismatched = [p.name for p in files if serialize(parse(p.read_text())) != p.read_text()]
    names = {p.stem for p in files}
    stale = [e.name for e in corpus if e.name not in names
             or (CORPUS_DIR / f"{e.name}.txt").read_text() != entry_text(e)]
    record(10, code == 0 and covered and len(files) >= 15 and not mismatched and not stale,
           f"exit {code}, {sum(anchors.values())}/{len(ANCHORS)} anchors passing, "
           f"{len(files) - len(mismatched)}/{len(files)} files round-trip"
           + (f"; stale {stale}" if stale else ""))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
