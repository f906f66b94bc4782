import json
import subprocess
import sys
from pathlib import Path

from spined.cli import main

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", str(CORPUS / "rectangular_band_3x3.txt"))
    assert code == 0 and "0 failed" in out
    code, out, _ = run(capsys, "verify", str(CORPUS / "chain_3.txt"), "--transversal", "0")
    assert code == 1 and "NoDecomposition" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", str(CORPUS / "brandt_B2.txt"), "--format", "json")
    payload = json.loads(out)
    assert code == 0 and payload["failed"] == 0
    assert all(set(r) == {"check", "anchor", "pass", "witness"} for r in payload["rows"])


def test_analyze(capsys):
    code, out, _ = run(capsys, "analyze", str(CORPUS / "brandt_B2.txt"))
    assert code == 0 and "inverse: True" in out and "R* classes: [[0], [1, 2], [3, 4]]" in out


def test_transversals(capsys):
    code, out, _ = run(capsys, "transversals", str(CORPUS / "rees_matrix_Z2_2x2.txt"))
    assert code == 0 and out.strip().endswith("4 transversal(s)")
    assert "multiplicative=False" in out


def test_spined_emits_document(capsys):
    from spined.docio import parse
    code, out, _ = run(capsys, "spined", str(CORPUS / "rectangular_band_2x3.txt"))
    doc = parse(out)
    assert code == 0 and doc.semigroup.order == 6 and len(doc.maps["phi"]) == 6
    assert len(doc.subsets["T0"]) == 1


def test_chen_from_document(tmp_path, capsys):
    from spined import families as F
    from spined.construction import degenerate_chen_data
    from spined.docio import chen_section, document, parse, serialize
    B = F.brandt_b2()
    p = tmp_path / "b2.txt"
    p.write_text(serialize(document(B, chen=chen_section(degenerate_chen_data(B)))))
    code, out, _ = run(capsys, "chen", str(p))
    assert code == 0 and parse(out).semigroup.order == 5


def test_bad_input_goes_to_stderr(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("2\n0 0\n1 z\n")
    code, out, err = run(capsys, "verify", str(p), "--transversal", "0")
    assert code == 2 and out == "" and "line 3, column 3" in err
    code, _, err = run(capsys, "verify", str(CORPUS / "chain_3.txt"), "--transversal", "9")
    assert code == 2 and "must lie in" in err
    code, _, err = run(capsys, "analyze", str(tmp_path / "missing.txt"))
    assert code == 2 and "cannot read" in err


def test_deterministic_text(capsys):
    first = run(capsys, "verify", str(CORPUS / "rees_matrix_Z2_2x2.txt"))[1]
    second = run(capsys, "verify", str(CORPUS / "rees_matrix_Z2_2x2.txt"))[1]
    assert first == second


def test_usage_error_via_console_script():
    proc = subprocess.run([sys.executable, "-m", "spined.cli", "verify"], capture_output=True, text=True)
    assert proc.returncode == 2 and "usage" in proc.stderr


def test_corpus_run_text(capsys):
    code, out, _ = run(capsys, "corpus", "run")
    assert code == 0 and out.strip().endswith("0 failed")
    assert "FAIL" not in out
