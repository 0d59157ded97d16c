import json

import pytest

from qcongruence.cli import (
    ReportSet,
    RunConfig,
    canonical_entries,
    emit_report,
    enumerate_cases,
    main,
    parse_csv_report,
    sweep,
)


def write_config(tmp_path, **overrides):
    data = {
        "checks": ["thm1-half"],
        "n_values": [3, 5],
        "r_max": 2,
        "d_values": [2],
    }
    data.update(overrides)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(data))
    return str(path)


def test_verify_exit_codes(capsys):
    assert main(["verify", "--check", "thm1-half", "--n", "3", "--r", "2"]) == 0
    out = capsys.readouterr().out
    assert "thm1-half n=3 r=2" in out
    assert main(["verify", "--check", "thm1-half", "--n", "4", "--r", "1"]) == 2
    assert main(["verify", "--check", "nope", "--n", "3"]) == 2
    assert main(["bogus-subcommand"]) == 2
    assert main([]) == 2


def test_classical_exit_codes(capsys):
    assert main(["classical", "--check", "c3", "--p", "5", "--r", "1",
                 "--exp", "3"]) == 0
    capsys.readouterr()
    assert main(["classical", "--check", "c3", "--p", "9"]) == 2
    assert main(["classical", "--check", "nope", "--p", "5"]) == 2


def test_list_and_bench(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert "thm1-half" in out and "dwork" in out
    assert main(["bench", "--sizes", "64"]) == 0


def test_asserted_failure_gives_exit_one(capsys, monkeypatch):
    import qcongruence.cli as cli

    def failing(kind, p, exponent):
        from qcongruence.padic import ResidueReport
        return ResidueReport(label="c2 p=5 exp=4", kind="c2",
                             params={"p": p}, exponent=exponent,
                             valuation=0, passed=False)

    monkeypatch.setattr(cli, "verify_van_hamme", failing)
    assert main(["classical", "--check", "c2", "--p", "5"]) == 1


def test_conjectural_failure_keeps_exit_zero(capsys, monkeypatch):
    import qcongruence.cli as cli

    def failing(kind, p, r, exponent):
        from qcongruence.padic import ResidueReport
        return ResidueReport(label="jj p=5 r=1 exp=4", kind="jj",
                             params={"p": p, "r": r}, exponent=exponent,
                             valuation=3, passed=False, conjectural=True)

    monkeypatch.setattr(cli, "verify_swisher", failing)
    assert main(["classical", "--check", "jj", "--p", "5", "--exp", "4"]) == 0


def test_sweep_grid_and_entry_count(tmp_path):
    cfg = RunConfig.from_dict({"checks": ["thm1-half"], "n_values": [3, 5],
                               "r_max": 2, "d_values": [2]})
    assert len(enumerate_cases(cfg)) == 4
    rs = sweep(cfg)
    assert rs.meta["case_count"] == 4
    assert rs.asserted_failures() == 0
    labels = [e["label"] for e in rs.entries]
    assert labels == sorted(labels)


def test_sweep_conjectural_flagging():
    rs = sweep(RunConfig.from_dict({"checks": ["conj41"], "n_values": [3],
                                    "r_max": 1}))
    assert rs.meta["case_count"] == 1
    assert rs.entries[0]["conjectural"] is True


def test_sweep_empty_checks_is_empty_and_ok(tmp_path, capsys):
    path = write_config(tmp_path, checks=[])
    assert main(["sweep", "--config", path]) == 0
    rs = sweep(RunConfig.from_dict({"checks": []}))
    assert rs.entries == []


def test_sweep_determinism_across_parallelism():
    base = {"checks": ["thm1-half", "lemma22", "param-roots-c", "m2", "c3"],
            "n_values": [3, 5], "r_max": 2, "d_values": [1, 2],
            "primes": [5, 7]}
    one = sweep(RunConfig.from_dict(dict(base, parallelism=1)))
    four = sweep(RunConfig.from_dict(dict(base, parallelism=4)))
    assert canonical_entries(one) == canonical_entries(four)
    # byte-identical emission for identical report sets
    assert emit_report(one, "json") == emit_report(one, "json")


def test_sweep_cli_end_to_end(tmp_path, capsys):
    path = write_config(tmp_path)
    out = tmp_path / "report.json"
    assert main(["sweep", "--config", path, "--output", str(out),
                 "--format", "json"]) == 0
    payload = json.loads(out.read_text())
    assert payload["meta"]["case_count"] == 4
    assert len(payload["entries"]) == 4
    assert payload["meta"]["asserted_failures"] == 0
    for entry in payload["entries"]:
        assert entry["pass"] is True


def test_sweep_bad_config_exit_two(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"checks": ["thm1-half"], "n_values": [4]}))
    assert main(["sweep", "--config", str(path)]) == 2
    path.write_text(json.dumps({"bogus_field": 1}))
    assert main(["sweep", "--config", str(path)]) == 2
    assert main(["sweep", "--config", str(tmp_path / "missing.json")]) == 2


def test_write_error_exit_three(tmp_path, capsys):
    path = write_config(tmp_path, checks=["lemma22"], n_values=[3])
    assert main(["sweep", "--config", path, "--output",
                 str(tmp_path / "no-such-dir" / "x.json")]) == 3


def test_csv_round_trip():
    rs = sweep(RunConfig.from_dict({
        "checks": ["thm1-half", "lemma22", "c3"], "n_values": [3],
        "r_max": 1, "primes": [5]}))
    rows = parse_csv_report(emit_report(rs, "csv"))
    assert len(rows) >= 3
    by_label = {}
    for row in rows:
        by_label.setdefault(row["label"], []).append(row)
    thm = by_label["thm1-half n=3 r=1"][0]
    assert thm["pass"] is True and thm["d"] == 3
    assert thm["required"] == 3 and thm["found"] == 3 and thm["margin"] == 0
    c3 = by_label["c3 p=5 r=1 exp=3"][0]
    assert c3["required"] == 3 and c3["found"] == 4
    lemma = by_label["lemma22 n=3"][0]
    assert lemma["component"] == "identity" and lemma["pass"] is True


def test_text_format_mentions_failures_line():
    rs = sweep(RunConfig.from_dict({"checks": ["lemma22"], "n_values": [3]}))
    text = emit_report(rs, "text").decode()
    assert "asserted failures: 0" in text


def test_config_validation():
    with pytest.raises(ValueError):
        RunConfig.from_dict({"checks": ["thm1-half"], "exponent_policy": "x"})
    with pytest.raises(ValueError):
        RunConfig.from_dict({"checks": ["thm1-half"], "d_values": [3]})
    with pytest.raises(ValueError):
        RunConfig.from_dict({"format": "xml"})
    cfg = RunConfig.from_dict({"checks": ["c3"], "primes": [5],
                               "exponent_policy": "both", "r_max": 1})
    assert len(enumerate_cases(cfg)) == 2  # one proven + one conjectural


def test_mixed_results_serialize_and_count_asserted_only():
    rs = sweep(RunConfig.from_dict({"checks": ["thm1-half"],
                                    "n_values": [3]}))
    failing_asserted = dict(rs.entries[0], label="fake asserted",
                            conjectural=False)
    failing_asserted["pass"] = False
    failing_conjectural = dict(rs.entries[0], label="fake conjectural",
                               conjectural=True)
    failing_conjectural["pass"] = False
    mixed = ReportSet(meta=dict(rs.meta),
                      entries=rs.entries + [failing_asserted,
                                            failing_conjectural])
    assert mixed.asserted_failures() == 1
    payload = json.loads(emit_report(mixed, "json"))
    assert len(payload["entries"]) == 3
    assert {e["pass"] for e in payload["entries"]} == {True, False}


def test_parallelism_env_override(tmp_path, monkeypatch, capsys):
    path = write_config(tmp_path, checks=["lemma22"], n_values=[3])
    monkeypatch.setenv("QCONGRUENCE_PARALLELISM", "2")
    assert main(["sweep", "--config", path]) == 0
    monkeypatch.setenv("QCONGRUENCE_PARALLELISM", "zebra")
    assert main(["sweep", "--config", path]) == 2


def test_config_digest_stable():
    a = RunConfig.from_dict({"checks": ["thm1-half"], "n_values": [3]})
    b = RunConfig.from_dict({"n_values": [3], "checks": ["thm1-half"]})
    assert a.digest() == b.digest()
    c = RunConfig.from_dict({"checks": ["thm1-half"], "n_values": [5]})
    assert a.digest() != c.digest()
