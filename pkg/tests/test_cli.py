import csv
import json

import pytest

from symtail.cli import main

COIN = {"atoms": [{"x": "-1", "mass": "1/2"}, {"x": "1", "mass": "1/2"}]}
ZERO = {"atoms": [{"x": "0", "mass": "1"}]}


def run(tmp_path, command, payload, name="in.json", **flags):
    inp = tmp_path / name
    out = tmp_path / (name + ".csv")
    inp.write_text(json.dumps(payload))
    argv = [command, "--input", str(inp), "--output", str(out)]
    for key, value in flags.items():
        argv += [f"--{key.replace('_', '-')}", str(value)]
    code = main(argv)
    rows = []
    if out.exists():
        with open(out, newline="") as fh:
            rows = list(csv.DictReader(fh))
    return code, rows, out


class TestBoundCommand:
    def test_basic_table(self, tmp_path):
        code, rows, _ = run(
            tmp_path, "bound", {"p": ["1", "1"], "h": "1", "t_grid": ["0", "1"]}
        )
        assert code == 0
        assert rows[1]["t"] == "1"
        assert rows[1]["improved"] == "1/4"
        assert rows[1]["improved_decimal"] == "0.25"
        assert rows[1]["kanter_sup"] == "3/4"

    def test_all_zero_probabilities(self, tmp_path):
        code, rows, _ = run(
            tmp_path, "bound", {"p": ["0", "0"], "h": "1", "t_grid": ["0", "1"]}
        )
        assert code == 0
        assert all(r["nagaev"] == "0" and r["improved"] == "0" for r in rows)

    def test_domain_note_per_row(self, tmp_path):
        code, rows, _ = run(
            tmp_path, "bound", {"p": ["1", "1"], "h": "1", "t_grid": ["1", "2"]}
        )
        assert code == 0
        assert rows[0]["note"] == ""
        assert "domain" in rows[1]["note"]
        assert rows[1]["improved"] == ""

    def test_terms_input(self, tmp_path):
        code, rows, _ = run(
            tmp_path, "bound", {"terms": [COIN, COIN], "h": "1", "t_grid": ["1"]}
        )
        assert code == 0
        assert rows[0]["improved"] == "1/4"

    def test_schema_error(self, tmp_path):
        code, _, _ = run(tmp_path, "bound", {"p": ["1/2"], "t_grid": ["0"]})
        assert code == 2

    def test_asymmetric_terms_rejected(self, tmp_path):
        bad = {"atoms": [{"x": "0", "mass": "1/2"}, {"x": "1", "mass": "1/2"}]}
        code, _, _ = run(
            tmp_path, "bound", {"terms": [bad], "h": "1", "t_grid": ["0"]}
        )
        assert code == 2

    def test_byte_determinism(self, tmp_path):
        payload = {"p": ["1/2", "2/3", "1/7"], "h": "2/3", "t_grid": ["0", "1", "3/2"]}
        _, _, out1 = run(tmp_path, "bound", payload, name="a.json")
        _, _, out2 = run(tmp_path, "bound", payload, name="b.json")
        assert out1.read_bytes() == out2.read_bytes()

    def test_lf_line_endings(self, tmp_path):
        _, _, out = run(
            tmp_path, "bound", {"p": ["1"], "h": "1", "t_grid": ["0"]}
        )
        raw = out.read_bytes()
        assert b"\r" not in raw
        assert raw.endswith(b"\n")


class TestSweepCommand:
    def test_explicit_instances_pass(self, tmp_path):
        code, rows, _ = run(
            tmp_path,
            "sweep",
            {"h": "1", "t_grid": ["0", "1"], "instances": [[COIN, COIN]]},
        )
        assert code == 0
        assert all(r["status"] == "ok" for r in rows)

    def test_family_input(self, tmp_path):
        code, rows, _ = run(
            tmp_path,
            "sweep",
            {"h": "1", "t_grid": ["0", "1/2", "1"], "family": {"max_n": 2}},
        )
        assert code == 0
        assert rows  # 135 instances, several checks each

    def test_corrupted_bound_detected(self, tmp_path):
        code, rows, _ = run(
            tmp_path,
            "sweep",
            {
                "h": "1",
                "t_grid": ["1"],
                "instances": [[COIN, COIN]],
                "inflate_bound": "1/2",
            },
        )
        assert code == 1
        assert any(r["status"] == "VIOLATION" for r in rows)

    def test_cap_enforced(self, tmp_path):
        code, _, _ = run(
            tmp_path,
            "sweep",
            {"h": "1", "t_grid": ["0"], "instances": [[COIN] * 9]},
        )
        assert code == 2


class TestKleitmanCommand:
    def test_equality_instance(self, tmp_path):
        payload = {
            "instances": [
                {
                    "dimension": 1,
                    "vectors": [[1], [1], [1], [1]],
                    "norm": "absolute",
                    "targets": [{"center": [2], "radius": "1/4"}],
                }
            ]
        }
        code, rows, _ = run(tmp_path, "kleitman", payload)
        assert code == 0
        assert rows[0]["count"] == "6"
        assert rows[0]["ceiling"] == "6"

    def test_hypothesis_violation_is_usage_error(self, tmp_path):
        payload = {
            "dimension": 1,
            "vectors": [[1]],
            "norm": "absolute",
            "targets": [{"center": [0], "radius": "2"}],
        }
        code, _, _ = run(tmp_path, "kleitman", payload)
        assert code == 2


class TestCompareCommand:
    def test_two_coin_example(self, tmp_path):
        payload = {
            "xs": [COIN, COIN],
            "ys": [COIN, ZERO],
            "h": "1",
            "t_grid": ["1"],
            "m_max": 2,
        }
        code, rows, _ = run(tmp_path, "compare", payload)
        assert code == 0
        by_check = {}
        for row in rows:
            by_check.setdefault(row["check"], []).append(row)
        assert by_check["pruss"][0]["lhs"] == "1/2"
        assert by_check["pruss"][0]["rhs"] == "1/2"
        assert all(r["status"] == "ok" for r in by_check["half_mass"])
        assert by_check["birnbaum"][0]["status"].startswith("hypothesis-violated")

    def test_undominated_pair_is_usage_error(self, tmp_path):
        payload = {"xs": [ZERO], "ys": [COIN], "h": "1", "t_grid": ["1"]}
        code, _, _ = run(tmp_path, "compare", payload)
        assert code == 2


class TestTightenCommand:
    def test_two_sure_coins(self, tmp_path):
        payload = {"p": ["1", "1"], "h": "1", "m": 1, "split_grid": ["0", "1/2", "1"]}
        code, rows, _ = run(tmp_path, "tighten", payload)
        assert code == 0
        assert rows[0]["bound"] == "1/4"
        assert rows[0]["best_value"] == "1/2"
        assert rows[0]["gap"] == "1/4"

    def test_bad_m_is_usage_error(self, tmp_path):
        code, _, _ = run(tmp_path, "tighten", {"p": ["1"], "h": "1", "m": 1})
        assert code == 2


def test_unknown_command_is_usage_error(capsys):
    assert main(["frobnicate"]) == 2
