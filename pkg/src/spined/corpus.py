"""Built-in corpus of small semigroups and the batch runner behind ``corpus run``."""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from . import core, families as F
from .core import FiniteSemigroup
from .docio import document, parse, serialize
from .errors import SemigroupError
from .report import Check
from .search import Found, search_transversals
from .transversal import analyze_transversal
from .verify import ANCHORS, VerificationReport, classification_checks, run_verification_suite, \
    starred_relation_checks


@dataclass(frozen=True, eq=False)
class CorpusEntry:
    name: str
    semigroup: FiniteSemigroup
    transversal: frozenset[int] | None     # designated S0, when there is a natural one


def _upper_b2() -> FiniteSemigroup:
    # {0, e11, e12, e22}: adequate but not regular
    return core.restrict(F.brandt_b2(), [0, 1, 2, 4])[0]


def _entries():
    upper = _upper_b2()
    yield "trivial", F.trivial(), {0}
    yield "chain_3", F.semilattice_chain(3), {0, 1, 2}
    yield "chain_4", F.semilattice_chain(4), {0, 1, 2, 3}
    yield "left_zero_3", F.left_zero(3), {0}
    yield "right_zero_3", F.right_zero(3), {0}
    yield "rectangular_band_2x2", F.rectangular_band(2, 2), {0}
    yield "rectangular_band_2x3", F.rectangular_band(2, 3), {0}
    yield "rectangular_band_3x3", F.rectangular_band(3, 3), {4}
    yield "cyclic_group_6", F.cyclic_group(6), set(range(6))
    yield "monogenic_2_2", F.monogenic(2, 2), None
    yield "full_transformation_2", F.full_transformation_monoid(2), None
    yield "full_transformation_3", F.full_transformation_monoid(3), None
    yield "symmetric_inverse_1", F.symmetric_inverse_monoid(1), {0, 1}
    yield "symmetric_inverse_2", F.symmetric_inverse_monoid(2), set(range(7))
    yield "brandt_B2", F.brandt_b2(), set(range(5))
    yield "brandt_B2_upper", upper, set(range(4))
    yield "left_zero_2_with_identity", core.adjoin_identity(F.left_zero(2)), {0, 2}
    yield "rees_matrix_Z2_2x2", F.rees_matrix(2, [[0, 0], [0, 1]]), {0, 2}
    yield "chain_2_x_cyclic_3", F.direct_product(F.semilattice_chain(2), F.cyclic_group(3)), set(range(6))
    yield "left_zero_2_x_cyclic_2", F.direct_product(F.left_zero(2), F.cyclic_group(2)), {0, 1}
    yield "rectangular_band_2x2_x_chain_2", F.direct_product(F.rectangular_band(2, 2), F.semilattice_chain(2)), {0, 1}
    yield "B2_upper_x_left_zero_2", F.direct_product(upper, F.left_zero(2)), {0, 2, 4, 6}


def builtin_corpus() -> list[CorpusEntry]:
    return [CorpusEntry(name, S, frozenset(t) if t is not None else None) for name, S, t in _entries()]


def entry_text(entry: CorpusEntry) -> str:
    subsets = {"S0": entry.transversal} if entry.transversal is not None else {}
    return serialize(document(entry.semigroup, subsets))


def write_corpus(directory) -> list[Path]:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    paths = []
    for entry in builtin_corpus():
        p = d / f"{entry.name}.txt"
        p.write_text(entry_text(entry))
        paths.append(p)
    return paths


def load_corpus(directory) -> list[CorpusEntry]:
    out = []
    for p in sorted(Path(directory).glob("*.txt")):
        doc = parse(p.read_text())
        t = doc.subsets.get("S0")
        out.append(CorpusEntry(p.stem, doc.semigroup, frozenset(t) if t is not None else None))
    return out


@dataclass
class CorpusResult:
    reports: list[VerificationReport] = field(default_factory=list)
    summary: list[dict] = field(default_factory=list)
    findings: dict = field(default_factory=dict)

    def anchor_table(self) -> dict[str, dict[str, int]]:
        table = {a: {"pass": 0, "fail": 0} for a in ANCHORS}
        for rep in self.reports:
            for r in rep.rows:
                table.setdefault(r.anchor, {"pass": 0, "fail": 0})["pass" if r.passed else "fail"] += 1
        return table

    def anchor_rows(self) -> list[Check]:
        """One row per anchor: passes iff it was exercised and never failed."""
        out = []
        for anchor, c in self.anchor_table().items():
            ok = c["pass"] > 0 and c["fail"] == 0
            w = None if ok else {"passed": c["pass"], "failed": c["fail"]}
            out.append(Check(f"{c['pass']} checks passed", anchor, ok, w))
        return out

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.anchor_rows())


def run_corpus(entries=None, max_generators: int = 2) -> CorpusResult:
    """Search every entry for transversals and verify each one found."""
    entries = builtin_corpus() if entries is None else entries
    res = CorpusResult()
    non_closed = []
    for entry in entries:
        S = entry.semigroup
        found = search_transversals(S, max_generators)
        subsets = [f.subset for f in found]
        if entry.transversal is not None and entry.transversal not in subsets:
            # designated transversals may need more generators than the search uses
            subsets.append(entry.transversal)
            try:
                found.append(Found(entry.transversal, analyze_transversal(S, entry.transversal)))
            except SemigroupError as exc:
                if isinstance(exc, AssertionError):
                    raise
        if not subsets:
            rep = VerificationReport(f"{entry.name}")
            rep.rows += starred_relation_checks(S) + classification_checks(S)
            res.reports.append(rep)
        for sub in subsets:
            res.reports.append(run_verification_suite(S, sub, f"{entry.name} S0={sorted(sub)}"))
        for f in found:
            an = f.analysis
            if not an.quasi_ideal and not (core.is_closed(S, an.set_L) and core.is_closed(S, an.set_R)):
                non_closed.append((entry.name, sorted(f.subset)))
        res.summary.append({
            "instance": entry.name,
            "order": S.order,
            "transversals": len(found),
            "quasi_ideal": sum(f.analysis.quasi_ideal for f in found),
            "multiplicative": sum(f.analysis.multiplicative for f in found),
        })
    res.findings["non_quasi_ideal_with_non_closed_L_or_R"] = non_closed
    return res
