"""Command line behaviour, run in-process through main(argv)."""

import csv
import io
import json
from fractions import Fraction

import pytest

from wprec.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_compute_examples(capsys):
    code, out, _ = run(capsys, "compute", "-g", "1", "--kappa", "1:1", "--psi", "0")
    assert code == 0 and out.strip() == "1/24"
    code, out, _ = run(capsys, "compute", "-g", "0", "--psi", "0,0,0")
    assert code == 0 and out.strip() == "1"
    code, out, _ = run(capsys, "compute", "-g", "1", "--kappa", "1:1", "--psi", "1")
    assert code == 0 and out.strip() == "0"


def test_compute_strict_gate(capsys):
    code, out, err = run(
        capsys, "compute", "-g", "1", "--kappa", "1:1", "--psi", "1", "--strict"
    )
    assert code == 1 and out == ""
    assert "off-dimension" in err
    code, _, _ = run(
        capsys, "compute", "-g", "1", "--kappa", "1:1", "--psi", "0", "--strict"
    )
    assert code == 0


def test_compute_json_roundtrip(capsys):
    code, out, _ = run(
        capsys, "compute", "-g", "2", "--psi", "3,2", "--json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["genus"] == 2
    assert payload["psi"] == [3, 2]
    assert Fraction(payload["value"]) == Fraction(29, 5760)


def test_decimal_rendering(capsys):
    code, out, _ = run(
        capsys, "compute", "-g", "1", "--psi", "1", "--decimal", "6"
    )
    assert code == 0 and out.strip() == "0.041667"
    code, out, _ = run(
        capsys, "compute", "-g", "0", "--psi", "0,0,0", "--decimal", "0"
    )
    assert code == 0 and out.strip() == "1"
    code, out, _ = run(
        capsys,
        "compute", "-g", "1", "--psi", "1", "--decimal", "4", "--json",
    )
    payload = json.loads(out)
    assert payload["decimal"] == "0.0417"
    code, _, err = run(
        capsys, "compute", "-g", "1", "--psi", "1", "--decimal", "-2"
    )
    assert code == 2 and "decimal" in err


def test_parse_errors_exit_two(capsys):
    code, _, err = run(capsys, "compute", "-g", "1", "--psi", "x")
    assert code == 2 and "bad psi list" in err
    code, _, err = run(capsys, "compute", "-g", "1", "--kappa", "1-2")
    assert code == 2
    code, _, err = run(capsys, "compute", "-g", "-1", "--psi", "1")
    assert code == 2


def test_volume_command(capsys):
    code, out, _ = run(capsys, "volume", "-g", "0", "-n", "4", "--kappa", "1:1")
    assert code == 0 and out.strip() == "1"
    code, out, _ = run(capsys, "volume", "-g", "2", "-n", "0", "--kappa", "3:1")
    assert code == 0 and out.strip() == "1/1152"
    code, out, _ = run(
        capsys, "volume", "-g", "1", "-n", "1", "--kappa", "1:1", "--json"
    )
    payload = json.loads(out)
    assert payload["n"] == 1 and Fraction(payload["value"]) == Fraction(1, 24)


def test_hodge_command(capsys, tmp_path):
    base = ["hodge", "-g", "1", "--tag", "lambda_g", "--psi", "0"]
    code, out, _ = run(capsys, *base)
    assert code == 0 and out.strip() == "1/24"
    code, direct_out, _ = run(capsys, *base, "--route", "direct")
    assert code == 0 and direct_out == out

    table = tmp_path / "seeds.txt"
    table.write_text("1, lambda_g, 7/24\n")
    code, out, _ = run(capsys, *base, "--provider", str(table))
    assert code == 0 and out.strip() == "7/24"
    # The same provider lacks genus 2: a loud failure, exit 1.
    code, _, err = run(
        capsys,
        "hodge", "-g", "2", "--tag", "lambda_g", "--psi", "2",
        "--provider", str(table),
    )
    assert code == 1 and "base value unavailable" in err


def test_table_constants(capsys):
    code, out, _ = run(capsys, "table", "--constants", "alpha", "--max-weight", "3")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["weight", "kappa", "value"]
    assert ["1", "1:1", "1/3"] in rows
    assert ["3", "1:1,2:1", "11/315"] in rows
    # The quoted multi-entry kappa survives the csv layer intact.
    assert all(len(r) == 3 for r in rows)

    code, out, _ = run(
        capsys, "table", "--constants", "alpha", "--max-weight", "2", "--json"
    )
    data = json.loads(out)
    assert {"weight": 1, "kappa": "1:1", "value": "1/3"} in data


def test_table_volumes(capsys):
    code, out, _ = run(
        capsys, "table", "--volumes", "--max-genus", "1", "--max-n", "3"
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["genus", "n", "kappa", "value"]
    assert ["0", "3", "", "1"] in rows
    assert ["1", "1", "1:1", "1/24"] in rows
    assert not any(r[:2] == ["1", "0"] for r in rows[1:])


def test_verify_suites_small(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "transfer", "--max-dim", "3")
    assert code == 0
    assert out.startswith("PASS (") and out.strip().endswith("cases)")
    code, out, _ = run(capsys, "verify", "--suite", "string", "--max-dim", "2")
    assert code == 0
    code, out, _ = run(capsys, "verify", "--suite", "volume", "--max-dim", "4")
    assert code == 0
    code, out, _ = run(
        capsys,
        "verify", "--shift", "--cutoff", "2", "--s-vars", "1", "--t-vars", "3",
    )
    assert code == 0
    code, out, _ = run(capsys, "verify", "--oracle", "--max-dim", "4")
    assert code == 0


def test_verify_needs_exactly_one_suite(capsys):
    code, _, err = run(capsys, "verify")
    assert code == 2 and "exactly one suite" in err
    code, _, err = run(capsys, "verify", "--suite", "oracle", "--shift")
    assert code == 2 and "exactly one suite" in err


def test_cache_workflow(capsys, tmp_path, monkeypatch):
    path = tmp_path / "values.cache"
    args = ("compute", "-g", "2", "--psi", "3,2", "--cache", str(path))
    code, out, _ = run(capsys, *args)
    assert code == 0 and out.strip() == "29/5760"
    first = path.read_bytes()
    code, out, _ = run(capsys, *args)
    assert code == 0 and out.strip() == "29/5760"
    assert path.read_bytes() == first

    code, out, _ = run(capsys, "verify", "--suite", "cache", "--cache", str(path))
    assert code == 0 and out.startswith("PASS (")

    # Bare --cache rides on WPREC_CACHE; without it, a usage error.
    monkeypatch.delenv("WPREC_CACHE", raising=False)
    code, _, err = run(capsys, "compute", "-g", "1", "--psi", "1", "--cache")
    assert code == 2 and "WPREC_CACHE" in err
    monkeypatch.setenv("WPREC_CACHE", str(path))
    code, out, _ = run(capsys, "compute", "-g", "1", "--psi", "1", "--cache")
    assert code == 0 and out.strip() == "1/24"


def test_cache_detects_tampering(capsys, tmp_path):
    path = tmp_path / "values.cache"
    run(capsys, "compute", "-g", "1", "--psi", "1", "--cache", str(path))
    lines = path.read_text().split("\n")
    lines[1] = lines[1].rsplit("\t", 1)[0] + "\t1/7"
    path.write_text("\n".join(lines))
    code, out, _ = run(capsys, "verify", "--suite", "cache", "--cache", str(path))
    assert code == 1 and out.startswith("FAIL after")


def test_unknown_arguments_exit_via_argparse(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["compute", "-g", "1", "--nope"])
    assert exc.value.code == 2
