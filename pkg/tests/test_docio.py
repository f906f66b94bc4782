from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from spined import core, families as F
from spined.construction import chen_construct, degenerate_chen_data
from spined.docio import canonical, chen_data, chen_section, document, parse, serialize
from spined.errors import DocumentSyntaxError, NonAssociative, OutOfRange

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"


def test_minimal_documents():
    assert parse("1\n0\n").semigroup.order == 1
    S = parse("2\n0 0\n1 1\n").semigroup
    assert S.rows == [[0, 0], [1, 1]]


def test_canonical_form_drops_comments_and_spacing():
    text = "# left zero\n2\n0   0\n\n1 1  \nsubset A: 1, 0\n"
    assert canonical(text) == "2\n0 0\n1 1\nsubset A: 0,1\n"


@pytest.mark.parametrize("text,line,column", [
    ("", 1, 1),
    ("x\n", 1, 1),
    ("2\n0 0\n1 y\n", 3, 3),
    ("2\n0 0\n", 3, 1),
    ("2\n0 0\n1\n", 3, 1),
    ("2\n0 0\n1 1\nlabels: a\n", 4, 9),
    ("2\n0 0\n1 1\nwhat: 1\n", 4, 1),
    ("2\n0 0\n1 1\nno colon\n", 4, 1),
])
def test_syntax_errors_carry_position(text, line, column):
    with pytest.raises(DocumentSyntaxError) as info:
        parse(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_semantic_errors():
    with pytest.raises(OutOfRange):
        parse("2\n0 2\n1 1\n")
    with pytest.raises(OutOfRange):
        parse("2\n0 0\n1 1\nsubset S0: 5\n")
    with pytest.raises(NonAssociative):
        parse("2\n1 0\n0 0\n")


def test_corpus_files_round_trip():
    files = sorted(CORPUS_DIR.glob("*.txt"))
    assert len(files) >= 15
    for p in files:
        text = p.read_text()
        assert serialize(parse(text)) == text


def test_chen_sections_round_trip():
    B = F.brandt_b2()
    doc = document(B, chen=chen_section(degenerate_chen_data(B)))
    text = serialize(doc)
    again = parse(text)
    assert serialize(again) == text
    assert chen_construct(chen_data(again)).semigroup.order == 5


def test_chen_data_requires_sections():
    with pytest.raises(DocumentSyntaxError):
        chen_data(parse("1\n0\n"))


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([F.brandt_b2(), F.rectangular_band(2, 3), F.cyclic_group(4), F.semilattice_chain(3)]),
       st.data())
def test_serialize_parse_round_trip(S, data):
    subsets = {f"s{i}": data.draw(st.frozensets(st.integers(0, S.order - 1)))
               for i in range(data.draw(st.integers(0, 3)))}
    maps = {"m": data.draw(st.lists(st.integers(0, 50), max_size=6))}
    labelled = data.draw(st.booleans())
    T = S if labelled else core.validate(S.table)
    text = serialize(document(T, subsets, maps))
    doc = parse(text)
    assert doc.semigroup.same_table(S)
    assert serialize(doc) == text
    assert doc.subsets == {k: tuple(sorted(v)) for k, v in subsets.items()}
