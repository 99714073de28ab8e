import json

import pytest

from cli.main import run


@pytest.fixture
def run_json(capsys):
    """Run a command with --format json; return (exit code, parsed stdout)."""
    def _run(*argv):
        code = run([*argv, "--format", "json"])
        out = capsys.readouterr().out
        return code, (json.loads(out) if out.strip() else None)
    return _run


# ── Exit codes ─────────────────────────────────────────────────────────────────

def test_verify_main_on_segre(fixture_path, capsys):
    assert run(["verify-main", "--cone", fixture_path("segre.json"), "--p", "2", "--e", "1"]) == 0
    out = capsys.readouterr().out
    assert "pass" in out and "as-stated" in out


def test_verify_main_sign_flipped_fails(fixture_path):
    argv = ["verify-main", "--cone", fixture_path("segre.json"), "--p", "2", "--orientation", "sign-flipped"]
    assert run(argv) == 1


def test_malformed_json_is_an_input_error(capsys):
    assert run(["frobdec", "--cone", '{"rays": [[1, 0],', "--p", "2"]) == 2
    assert "malformed JSON" in capsys.readouterr().err


def test_schema_errors_name_the_field(capsys):
    assert run(["frobdec", "--cone", '{"rays": [[1, 0], [0]]}', "--p", "2"]) == 2
    assert "rays" in capsys.readouterr().err


def test_budget_exceeded(fixture_path, capsys):
    argv = ["frobdec", "--cone", fixture_path("segre.json"), "--p", "5", "--e", "2", "--budget", "1000"]
    assert run(argv) == 2
    assert "budget" in capsys.readouterr().err


def test_usage_errors(fixture_path):
    assert run(["frobdec", "--cone", fixture_path("quadrant.json"), "--p", "4"]) == 2
    assert run(["hk", "--ring", fixture_path("segre.json"), "--p", "2", "--e", "3..1"]) == 2
    assert run([]) == 2


def test_incomplete_fan_is_rejected():
    fan = '{"rays": [[1, 0], [0, 1], [-1, -1]], "maximal_cones": [[0, 1], [1, 2]], "complete": false}'
    assert run(["verify-analogue", "--fan", fan, "--p", "2"]) == 2


def test_ideal_entries_must_be_integers(fixture_path, capsys):
    base = ["hk", "--ring", fixture_path("segre.json"), "--p", "2"]
    assert run([*base, "--ideal", '[["x", 0, 0, 1]]']) == 2
    assert "generators" in capsys.readouterr().err
    assert run([*base, "--ideal", "[[0, 0, 0, 1.9], [1, 0, 0, 1]]"]) == 2
    assert "generators" in capsys.readouterr().err
    assert run([*base, "--ideal", '{"generators": []}']) == 2


def test_divisor_must_match_the_rays(fixture_path, capsys):
    argv = ["hk", "--ring", fixture_path("segre.json"), "--p", "2", "--divisor", "[1, 0]"]
    assert run(argv) == 2
    assert "5 rays" in capsys.readouterr().err
    argv[-1] = '[0, "a", 0, 0, 0]'
    assert run(argv) == 2


def test_samples_must_share_one_prime(capsys):
    mixed = '{"d": 2, "samples": [{"e": 1, "q": 2, "length": 8}, {"e": 2, "q": 9, "length": 32}]}'
    assert run(["estimate", "--samples", mixed]) == 2
    assert "q=9" in capsys.readouterr().err
    not_prime = '{"d": 2, "samples": [{"e": 1, "q": 4, "length": 8}, {"e": 2, "q": 16, "length": 32}]}'
    assert run(["estimate", "--samples", not_prime]) == 2
    wrong_p = '{"d": 2, "p": 3, "samples": [{"e": 1, "q": 2, "length": 8}, {"e": 2, "q": 4, "length": 32}]}'
    assert run(["estimate", "--samples", wrong_p]) == 2


# ── JSON payloads ──────────────────────────────────────────────────────────────

def test_frobdec_on_projective_line(fixture_path, run_json):
    code, payload = run_json("frobdec", "--fan", fixture_path("p1.json"), "--p", "5")
    assert code == 0
    dec = payload["decompositions"][0]
    assert dec["rank"] == "5"
    assert sorted(int(s["multiplicity"]) for s in dec["summands"]) == [1, 4]
    assert payload["fan"]["maximal_cones"] == [[0], [1]]


def test_hk_on_segre(fixture_path, run_json):
    code, payload = run_json("hk", "--ring", fixture_path("segre.json"), "--p", "2", "--e", "1..2")
    assert code == 0
    assert payload["d"] == 4
    assert [s["length"] for s in payload["samples"]] == ["23", "397"]
    assert payload["estimate"]["e_hk"] == "213/128"
    assert payload["estimate"]["beta"] == "-29/64"


def test_hk_on_veronese_with_explicit_ideal(fixture_path, run_json):
    code, payload = run_json(
        "hk", "--ring", fixture_path("veronese.json"), "--ideal", "[[2, -1], [1, 0], [0, 1]]", "--p", "3",
    )
    assert code == 0
    assert payload["samples"] == [{"e": 1, "q": "3", "length": "13"}]
    assert "estimate" not in payload


def test_hk_on_a_segre_module(fixture_path, run_json):
    code, payload = run_json(
        "hk", "--ring", fixture_path("segre.json"), "--divisor", "[0, -1, 0, 0, 0]", "--p", "2", "--e", "1..2",
    )
    assert code == 0
    assert payload["divisor"] == [0, -1, 0, 0, 0]
    assert [s["length"] for s in payload["samples"]] == ["28", "431"]
    assert payload["estimate"]["e_hk"] == "207/128"
    assert payload["estimate"]["beta"] == "17/64"


def test_hk_groebner_on_segre_ideal(fixture_path, run_json):
    code, payload = run_json("hk-groebner", "--ideal", fixture_path("segre_ideal.json"), "--e", "1")
    assert code == 0
    assert payload["samples"][0]["length"] == "23"


def test_hk_hypersurface(fixture_path, run_json):
    code, payload = run_json("hk-hypersurface", "--poly", fixture_path("han_monsky.json"))
    assert code == 0
    assert payload["d"] == 3 and payload["p"] == 5
    assert payload["samples"][0]["length"] == "339"


def test_chern_on_projective_plane(run_json):
    code, payload = run_json("chern", "--n", "2", "--p", "2", "--e", "1..2")
    assert code == 0
    assert payload["passed"]
    first, second = payload["results"]
    assert first["c2"]["from_decomposition"] == "3"
    assert second["c2"]["closed_form"] == "150"
    assert first["euler_characteristic"] == "1"


def test_clgroup_and_canonical(fixture_path, run_json):
    code, payload = run_json("clgroup", "--cone", fixture_path("veronese.json"))
    assert code == 0
    assert payload["class_group"]["description"] == "Z/2"
    code, payload = run_json("canonical", "--cone", fixture_path("segre.json"))
    assert code == 0
    assert payload["canonical_divisor"] == [-1, -1, -1, -1, -1]
    assert payload["q_gorenstein"] is False


def test_empty_corpus(run_json):
    code, payload = run_json("corpus", "--count", "0")
    assert code == 0
    assert payload["passed"] and payload["cases"] == []


# ── Round trips through files ──────────────────────────────────────────────────

def test_frobdec_output_loads_back_as_cone(fixture_path, run_json, tmp_path):
    _, payload = run_json("frobdec", "--cone", fixture_path("segre.json"), "--p", "2")
    path = tmp_path / "segre_dec.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    code, again = run_json("verify-main", "--cone", str(path), "--p", "2")
    assert code == 0
    assert again["cone"] == payload["cone"]


def test_frobdec_output_loads_back_as_fan(fixture_path, run_json, tmp_path):
    _, payload = run_json("frobdec", "--fan", fixture_path("p2.json"), "--p", "2")
    path = tmp_path / "p2_dec.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    code, again = run_json("verify-analogue", "--fan", str(path), "--p", "3")
    assert code == 0
    assert again["results"][0]["report"]["passed"]


def test_hk_output_feeds_estimate(fixture_path, run_json, tmp_path):
    _, payload = run_json("hk", "--ring", fixture_path("segre.json"), "--p", "2", "--e", "1..2")
    path = tmp_path / "samples.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    code, estimate = run_json("estimate", "--samples", str(path))
    assert code == 0
    assert estimate["d"] == 4
    assert estimate["estimate"]["e_hk"] == "213/128"


def test_estimate_needs_a_dimension(capsys):
    samples = '{"samples": [{"e": 1, "q": 2, "length": 8}, {"e": 2, "q": 4, "length": 32}]}'
    assert run(["estimate", "--samples", samples]) == 2
    capsys.readouterr()
    assert run(["estimate", "--samples", samples, "--d", "2", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["estimate"]["e_hk"] == "2"
