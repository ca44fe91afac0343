import json

import pytest

from apnlab.cli import run


def _capture(capsys, argv):
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_field_info_table(capsys):
    code, out, _ = _capture(capsys, ["field", "info", "--n", "8"])
    assert code == 0
    assert "modulus = 11b" in out
    assert "generator = 3" in out


def test_field_info_json(capsys):
    code, out, _ = _capture(capsys, ["field", "info", "--m", "3", "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["n"] == 6
    assert payload["modulus"] == "43"


def test_trinomial_check_apn_positive(capsys):
    code, out, _ = _capture(capsys, ["trinomial", "--m", "4", "--k", "1", "--check-apn"])
    assert code == 0
    assert "delta = 2" in out


def test_trinomial_check_apn_negative_case_still_consistent(capsys):
    # odd m: not APN, measurement agrees with the criterion, so exit 0
    code, out, _ = _capture(capsys, ["trinomial", "--m", "3", "--k", "1",
                                     "--check-apn", "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["predicted_apn"] is False
    assert payload["delta"] > 2
    assert payload["apn_matches_prediction"] is True


def test_trinomial_spectra_checks(capsys):
    code, out, _ = _capture(capsys, ["trinomial", "--m", "2", "--k", "1",
                                     "--check-spectra", "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["hyperplane_multiplicities"] == [3]
    assert payload["bent_count"] == 10
    assert payload["closed_form_matches"] is True
    assert payload["walsh_values"] == [-8, -4, 0, 4, 8]


def test_trinomial_spectra_rejected_for_non_apn(capsys):
    code, _, err = _capture(capsys, ["trinomial", "--m", "3", "--k", "1",
                                     "--check-spectra"])
    assert code == 2
    assert "error" in err


def test_trinomial_subspace(capsys):
    code, out, _ = _capture(capsys, ["trinomial", "--m", "3", "--k", "2",
                                     "--check-subspace", "--format", "json"])
    assert code == 0
    assert json.loads(out)["subspace_property"] is True


def test_hexanomial_count(capsys):
    code, out, _ = _capture(capsys, ["hexanomial", "count", "--m", "5", "--k", "3"])
    assert code == 0
    assert "count = 330" in out


def test_hexanomial_count_bad_k(capsys):
    code, _, err = _capture(capsys, ["hexanomial", "count", "--m", "3", "--k", "9"])
    assert code == 2
    assert "error" in err


def test_hexanomial_enumerate_csv(capsys):
    code, out, _ = _capture(capsys, ["hexanomial", "enumerate", "--m", "2",
                                     "--k", "1", "--format", "csv"])
    assert code == 0
    assert len(out.strip().split("\n")) == 4


def test_hexanomial_verify(capsys):
    code, out, _ = _capture(capsys, ["hexanomial", "verify", "--m", "3", "--k", "2",
                                     "--sample", "4", "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["count_formula"] == 18
    assert payload["count_enumerated"] == 18
    assert payload["count_bruteforce"] == 18
    assert payload["characterization_consistent"] is True
    assert payload["uniformity_all_match"] is True
    assert payload["pass"] is True


def test_hexanomial_verify_degenerate_k(capsys):
    # k = m admits no good coefficient; all three counts are zero and the
    # characterization sweep still agrees with the oracle everywhere
    code, out, _ = _capture(capsys, ["hexanomial", "verify", "--m", "3", "--k", "3",
                                     "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["count_formula"] == 0
    assert payload["coefficients"] == []
    assert payload["pass"] is True


def test_hexanomial_build(capsys):
    code, out, _ = _capture(capsys, ["hexanomial", "enumerate", "--m", "2",
                                     "--k", "1", "--format", "csv"])
    first = out.strip().split("\n")[0]
    code, out, _ = _capture(capsys, ["hexanomial", "build", "--m", "2", "--k", "1",
                                     "--C", first, "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["C_is_good"] is True
    assert payload["delta"] == 2
    assert payload["delta_matches"] is True


def test_hexanomial_build_bad_hex(capsys):
    code, _, err = _capture(capsys, ["hexanomial", "build", "--m", "2", "--k", "1",
                                     "--C", "zz"])
    assert code == 2
    assert "error" in err


def test_vbf_analyze_roundtrip(capsys, tmp_path):
    path = tmp_path / "f.json"
    code, _, _ = _capture(capsys, ["trinomial", "--m", "2", "--k", "1",
                                   "--export", str(path)])
    assert code == 0
    walsh_csv = tmp_path / "walsh.csv"
    code, out, _ = _capture(capsys, ["vbf", "analyze", "--in", str(path),
                                     "--walsh-csv", str(walsh_csv),
                                     "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["apn"] is True
    assert payload["delta"] == 2
    assert payload["walsh_values"] == [-8, -4, 0, 4, 8]
    rows = walsh_csv.read_text().strip().split("\n")
    assert [int(r.split(",")[0]) for r in rows] == [-8, -4, 0, 4, 8]


def test_vbf_analyze_missing_file(capsys):
    code, _, err = _capture(capsys, ["vbf", "analyze", "--in", "/nonexistent.json"])
    assert code == 2
    assert "error" in err


def test_lemmas_single_k(capsys):
    code, out, _ = _capture(capsys, ["lemmas", "--m", "3", "--k", "2"])
    assert code == 0
    assert "pass = True" in out


def test_lemmas_all_k(capsys):
    code, out, _ = _capture(capsys, ["lemmas", "--n", "8", "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["pass"] is True
    assert payload["k_values"] == list(range(1, 8))


def test_table3_csv_rows(capsys):
    code, out, _ = _capture(capsys, ["table3", "--format", "csv"])
    assert code == 0
    rows = out.strip().split("\n")
    assert rows[1] == "4,0"
    assert rows[5] == "1344,1560,1792,1612,1344,0"
    assert all(r.split(",")[-1] == "0" for r in rows)


def test_table3_out_file(tmp_path, capsys):
    path = tmp_path / "t3.csv"
    code, out, _ = _capture(capsys, ["table3", "--max-m", "4", "--format", "csv",
                                     "--out", str(path)])
    assert code == 0
    assert out == ""
    assert path.read_text().strip().split("\n")[3] == "80,96,80,0"


def test_output_is_deterministic(capsys):
    _, out1, _ = _capture(capsys, ["hexanomial", "enumerate", "--m", "3", "--k", "1",
                                   "--format", "json"])
    _, out2, _ = _capture(capsys, ["hexanomial", "enumerate", "--m", "3", "--k", "1",
                                   "--format", "json"])
    assert out1 == out2


def test_threads_flag_does_not_change_output(capsys):
    _, out1, _ = _capture(capsys, ["trinomial", "--m", "4", "--k", "1",
                                   "--check-apn", "--format", "json"])
    _, out2, _ = _capture(capsys, ["trinomial", "--m", "4", "--k", "1",
                                   "--check-apn", "--threads", "4", "--format", "json"])
    assert out1 == out2


def test_usage_errors_exit_two(capsys):
    assert run(["nonsense"]) == 2
    assert run(["trinomial", "--m", "4"]) == 2        # missing --k
    assert run(["trinomial", "--n", "8", "--m", "4", "--k", "1"]) == 2
    assert run(["field", "info", "--n", "7"]) == 2    # odd degree
    capsys.readouterr()
