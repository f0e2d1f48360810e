import copy
import json

import pytest

import dirconv.cli as cli

from oracles import sieve_mobius

MOBIUS_SPEC = {
    "semigroup": {"kind": "ordinary-dirichlet", "k": 1, "max_product": 100},
    "arithmetic": {"mode": "exact"},
    "equation": {"coefficients": [{"builtin": "one"}]},
    "task": {"type": "invert"},
}

SQRT_SPEC = {
    "semigroup": {"kind": "ordinary-dirichlet", "k": 1, "max_product": 50},
    "arithmetic": {"mode": "exact"},
    "equation": {"coefficients": [
        {"const": "-1"},
        {"const": 0},
        {"builtin": "unit"},
    ]},
    "task": {"type": "solve", "root": 1},
}

UNSOLVABLE_SPEC = {
    "semigroup": {"kind": "ordinary-dirichlet", "k": 1, "max_product": 12},
    "arithmetic": {"mode": "exact"},
    "equation": {"coefficients": [
        {"table": [[[2], "-1"]]},
        {"const": 0},
        {"builtin": "unit"},
    ]},
    "task": {"type": "solve-all"},
}


def write_spec(tmp_path, spec, name="spec.json"):
    p = tmp_path / name
    p.write_text(json.dumps(spec))
    return str(p)


def run_spec(tmp_path, spec, **kw):
    return cli.run(write_spec(tmp_path, spec), **kw)


def test_invert_matches_sieve(tmp_path):
    doc, code = run_spec(tmp_path, MOBIUS_SPEC)
    assert code == 0
    oracle = sieve_mobius(100)
    values = {row["id"][0]: row["value"] for row in doc["solution"]}
    for n in range(1, 101):
        assert int(values[n]) == oracle[n]
    assert doc["solution"][0]["id"] == [1]
    assert doc["solution"][0]["value"] == "1"


def test_unsolvable_exits_2_with_obstruction(tmp_path):
    doc, code = run_spec(tmp_path, UNSOLVABLE_SPEC)
    assert code == 2
    assert "unsolvable" in doc["diagnostic"]
    assert "-1" in doc["diagnostic"]


def test_empty_coefficients_exit_1(tmp_path):
    bad = copy.deepcopy(MOBIUS_SPEC)
    bad["equation"]["coefficients"] = []
    doc, code = run_spec(tmp_path, bad)
    assert code == 1
    assert doc["field"] == "equation.coefficients"


def test_degree_zero_rejected(tmp_path):
    bad = copy.deepcopy(SQRT_SPEC)
    bad["equation"]["coefficients"] = [{"builtin": "one"}]
    doc, code = run_spec(tmp_path, bad)
    assert code == 1


def test_off_window_table_entry_rejected(tmp_path):
    bad = copy.deepcopy(UNSOLVABLE_SPEC)
    bad["equation"]["coefficients"][0]["table"] = [[[999], "1"]]
    doc, code = run_spec(tmp_path, bad)
    assert code == 1
    assert "coefficients[0]" in doc["field"]


def test_dimension_mismatch_rejected(tmp_path):
    bad = copy.deepcopy(UNSOLVABLE_SPEC)
    bad["equation"]["coefficients"][0]["table"] = [[[2, 2], "1"]]
    doc, code = run_spec(tmp_path, bad)
    assert code == 1


def test_invalid_json_exit_1(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text('{"semigroup": ')
    doc, code = cli.run(str(p))
    assert code == 1
    assert "line" in doc["error"]


def test_solve_document_structure(tmp_path):
    doc, code = run_spec(tmp_path, SQRT_SPEC)
    assert code == 0
    assert doc["residual"]["exact_zero"] is True
    values = {row["id"][0]: row["value"] for row in doc["solution"]}
    assert values[4] == "3/8"
    roots = doc["root_report"]["roots"]
    assert {r["value"] for r in roots} == {"1", "-1"}


def test_json_round_trip_and_reproducibility(tmp_path):
    doc1, _ = run_spec(tmp_path, SQRT_SPEC)
    doc2, _ = run_spec(tmp_path, SQRT_SPEC)
    text1 = cli.render(doc1, "json")
    assert json.loads(text1) == doc1
    d1, d2 = dict(doc1), dict(doc2)
    d1.pop("timing")
    d2.pop("timing")
    assert cli.render(d1, "json") == cli.render(d2, "json")


def test_output_independent_of_threads(tmp_path):
    docs = []
    for threads in (1, 4, 8):
        doc, code = run_spec(tmp_path, SQRT_SPEC, threads=threads)
        assert code == 0
        doc.pop("timing")
        docs.append(cli.render(doc, "json"))
    assert docs[0] == docs[1] == docs[2]


def test_certify_task_has_seven_field_certificate(tmp_path):
    spec = copy.deepcopy(SQRT_SPEC)
    spec["task"] = {"type": "certify", "root": 1}
    doc, code = run_spec(tmp_path, spec)
    assert code == 0
    cert = doc["certificate"]
    assert set(cert) == {"rho", "m1", "z0", "t_star", "C", "r", "scope"}
    assert doc["validation"]["ok"] is True


def test_eval_task(tmp_path):
    spec = {
        "semigroup": {"kind": "ordinary-dirichlet", "k": 1, "max_product": 1000},
        "arithmetic": {"mode": "exact"},
        "equation": {"coefficients": [{"builtin": "one"}]},
        "task": {"type": "eval", "points": [2, {"re": 2, "im": 10}]},
    }
    doc, code = run_spec(tmp_path, spec)
    assert code == 0
    import math
    v = doc["series"][0]["value"]
    assert abs(v - math.pi ** 2 / 6) < 1e-3


def test_verify_task(tmp_path):
    spec = copy.deepcopy(SQRT_SPEC)
    doc0, _ = run_spec(tmp_path, {**spec, "task": {"type": "certify", "root": 1}})
    r = doc0["certificate"]["r"]
    spec["task"] = {"type": "verify", "root": 1, "points": [r + 1.0]}
    doc, code = run_spec(tmp_path, spec)
    assert code == 0
    assert doc["scalar_equation"]["all_ok"] is True
    assert doc["series"][0]["tail_bound"] >= 0


def test_table_rendering(tmp_path):
    doc, code = run_spec(tmp_path, MOBIUS_SPEC)
    text = cli.render(doc, "table")
    first_rows = [ln for ln in text.splitlines() if ln.strip().startswith("[1]")]
    assert first_rows and first_rows[0].rstrip().endswith("1")
    spec = copy.deepcopy(SQRT_SPEC)
    spec["task"] = {"type": "certify", "root": 1}
    doc2, _ = run_spec(tmp_path, spec)
    text2 = cli.render(doc2, "table")
    assert "certificate:" in text2
    for field in ("rho=", "m1=", "z0=", "t_star=", "C=", "r=", "scope="):
        assert field in text2


def test_main_writes_out_file(tmp_path, capsys):
    spec_path = write_spec(tmp_path, MOBIUS_SPEC)
    out_path = tmp_path / "result.json"
    code = cli.main(["run", spec_path, "--format", "json", "--out", str(out_path)])
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["task"] == "invert"


def test_main_prints_table(tmp_path, capsys):
    spec_path = write_spec(tmp_path, MOBIUS_SPEC)
    code = cli.main(["run", spec_path])
    assert code == 0
    out = capsys.readouterr().out
    assert "dirconv" in out and "solution" in out


def test_rational_generator_spec(tmp_path):
    spec = {
        "semigroup": {"kind": "rational-generators",
                      "generators": [["2"], ["3"]], "size_bound": "8"},
        "arithmetic": {"mode": "exact"},
        "equation": {"coefficients": [
            {"table": [[["2"], "-1"]]},
            {"const": 0},
            {"builtin": "unit"},
        ]},
        "task": {"type": "solve-all"},
    }
    doc, code = run_spec(tmp_path, spec)
    assert code == 2
    assert "unsolvable" in doc["diagnostic"]


def test_double_mode_spec(tmp_path):
    spec = copy.deepcopy(SQRT_SPEC)
    spec["arithmetic"] = {"mode": "double"}
    doc, code = run_spec(tmp_path, spec)
    assert code == 0
    values = {row["id"][0]: row["value"] for row in doc["solution"]}
    assert values[4] == pytest.approx(0.375)


def test_tolerance_flag_controls_double_gates(tmp_path):
    spec = {
        "semigroup": {"kind": "ordinary-dirichlet", "k": 1, "max_product": 10},
        "arithmetic": {"mode": "double"},
        "equation": {"coefficients": [{"const": 1e-8}]},
        "task": {"type": "invert"},
    }
    doc, code = run_spec(tmp_path, spec)           # default tolerance 1e-10
    assert code == 0
    doc, code = run_spec(tmp_path, spec, tolerance=1e-6)
    assert code == 2
    assert "NotInvertible" in doc["diagnostic"]


def test_certify_with_rho_and_norm_bounds(tmp_path):
    spec = copy.deepcopy(SQRT_SPEC)
    spec["task"] = {"type": "certify", "root": 1, "rho": "1/2",
                    "norm_bounds": [60.0, 0.0, 1.0]}
    doc, code = run_spec(tmp_path, spec)
    assert code == 0
    assert doc["certificate"]["scope"] == "user-bound"
    assert doc["certificate"]["rho"] == "1/2"
    assert doc["certificate"]["r"] >= 0.5


def test_verify_task_refuses_points_below_certified_rate(tmp_path):
    spec = copy.deepcopy(SQRT_SPEC)
    spec["task"] = {"type": "verify", "root": 1, "points": [0.25]}
    doc, code = run_spec(tmp_path, spec)
    assert code == 2
    assert "OutOfHalfPlane" in doc["diagnostic"]
