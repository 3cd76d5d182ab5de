import csv
import io
import json
import subprocess
import sys

import pytest
from frozen import STRASSEN_POLY

from plutocodes.cli import main
from plutocodes.matroid import parse_poly

def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_alg_verify(capsys):
    rc, out, _ = run(capsys, "alg", "verify", "--name", "strassen")
    assert rc == 0 and out.strip() == "pass"


def test_alg_verify_prime_field(capsys):
    rc, out, _ = run(capsys, "alg", "verify", "--name", "laderman", "--field", "fp:7")
    assert rc == 0 and out.strip() == "pass"


def test_alg_export_import(capsys, tmp_path):
    path = tmp_path / "s.json"
    assert main(["alg", "export", "--name", "strassen", "--out", str(path)]) == 0
    capsys.readouterr()
    doc = json.loads(path.read_text())
    doc["a_enc"][0][0] += 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    rc, out, _ = run(capsys, "alg", "verify", "--file", str(bad))
    assert rc == 1 and out.splitlines()[0] == "fail"
    rc, _, _ = run(capsys, "alg", "import", "--file", str(path))
    assert rc == 0


def test_usage_errors(capsys):
    assert main(["alg", "frobnicate"]) == 2
    assert main(["sim", "mc"]) == 2
    assert main(["scheme", "describe", "--scheme", "9x10"]) != 0
    assert main(["alg", "verify", "--name", "strassen", "--field", "fp:8"]) != 0


def test_sim_thresholds_csv(capsys):
    rc, out, _ = run(capsys, "sim", "thresholds", "--format", "csv")
    assert rc == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    first = rows[0]
    assert (first["naive"], first["epc"], first["pdc"], first["epc2"], first["pluto"]) == ("8", "9", "12", "13", "8")


def test_sim_exact_columns(capsys):
    rc, out, _ = run(capsys, "sim", "exact", "--scheme", "9", "--format", "csv")
    assert rc == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert {"k", "cdf", "mode", "scheme_label", "decoder"} <= set(rows[0])
    assert rows[7]["exact"] == "1/36"


def test_decode_test(capsys):
    rc, out, _ = run(capsys, "decode", "test", "--scheme", "9x9", "--erased", "S1.S1,S1.S2,S2.S1,S2.S2", "--format", "json")
    assert rc == 0
    doc = json.loads(out)
    assert doc["complete"] is False


def test_matroid_poly_strassen(capsys):
    rc, out, _ = run(capsys, "matroid", "poly", "--alg", "strassen", "--format", "json")
    doc = json.loads(out)
    assert rc == 0
    assert parse_poly(doc["polynomial"]) == parse_poly(STRASSEN_POLY)


def test_scheme_describe(capsys):
    rc, out, _ = run(capsys, "scheme", "describe", "--scheme", "9x9+53", "--format", "json")
    assert rc == 0 and json.loads(out)["tasks"] == 85


def test_exec_demo(capsys):
    rc, out, _ = run(capsys, "exec", "demo", "--block", "4", "--format", "json")
    doc = json.loads(out)
    assert rc == 0
    assert doc["residual"] <= 1e-9 and doc["recovery_count"] == doc["sim_recovery_count"]


GOLDEN = [
    ["sim", "mc", "--scheme", "9x9+53", "--samples", "50", "--seed", "3", "--format", "csv"],
    ["exec", "demo", "--block", "4", "--seed", "2", "--format", "json"],
    ["pluto", "build", "--name", "11", "--format", "json"],
]


@pytest.mark.parametrize("argv", GOLDEN, ids=lambda a: "-".join(a[:2]))
def test_outputs_byte_identical(argv):
    cmd = [sys.executable, "-m", "plutocodes", *argv]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first and first == second
