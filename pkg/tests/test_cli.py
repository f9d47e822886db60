import json
import subprocess
import sys

import jsonschema
import pytest

from toggledyn.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_census_json(capsys, schema):
    code, out = run_cli(capsys, "census", "--graph", "path:4", "--op", "tpro")
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, schema("census.schema.json"))
    assert payload["sizes"] == {"3": 8}
    assert payload["word"] == "t1 t2 t3 t4"


def test_census_order_only(capsys):
    code, out = run_cli(capsys, "census", "--graph", "path:7", "--op", "pro",
                        "--order-only")
    assert code == 0
    assert out.strip() == "3224590642072800"


def test_census_bound_exit_code(capsys):
    code, _ = run_cli(capsys, "census", "--graph", "path:12", "--op", "tpro")
    assert code == 3


def test_census_env_override(monkeypatch, capsys):
    monkeypatch.setenv("TOGGLEDYN_MAX_N", "3")
    code, _ = run_cli(capsys, "census", "--graph", "path:4", "--op", "tpro")
    assert code == 3
    monkeypatch.setenv("TOGGLEDYN_MAX_N", "4")
    code, _ = run_cli(capsys, "census", "--graph", "path:4", "--op", "tpro")
    assert code == 0


def test_census_named_ops(capsys):
    for extra in (["--op", "cyc-bro", "--b", "1,2"],
                  ["--op", "cyc-bro-r", "--d", "2"],
                  ["--op", "phi", "--d", "2"],
                  ["--op", "tpro-beta", "--d", "2"],
                  ["--op", "tpro-pi", "--pi", "2,1,4,3"],
                  ["--op", "word", "--word", "t1 cyc t2 cyc-"]):
        code, out = run_cli(capsys, "census", "--graph", "path:4", *extra)
        assert code == 0
        assert "word" in json.loads(out)


def test_census_table_format(capsys):
    code, out = run_cli(capsys, "census", "--graph", "path:4", "--op", "tpro",
                        "--format", "table")
    assert code == 0
    assert "order: 3" in out


def test_census_missing_param_usage_error(capsys):
    code, _ = run_cli(capsys, "census", "--graph", "path:4", "--op", "tpro-pi")
    assert code == 2
    code, _ = run_cli(capsys, "census", "--graph", "nope", "--op", "tpro")
    assert code == 2


def test_verify_suite_json(capsys, schema):
    code, out = run_cli(capsys, "verify", "thm-broken-R", "--n", "5")
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, schema("verify_report.schema.json"))
    assert all(r["ok"] for r in payload)


def test_verify_unknown_suite(capsys):
    code, _ = run_cli(capsys, "verify", "no-such-suite")
    assert code == 2


def test_verify_fence_laws_sampled(capsys):
    code, out = run_cli(capsys, "verify", "fence-laws", "--n", "5", "--d", "2",
                        "--seeds", "20", "--format", "table")
    assert code == 0
    assert "ok" in out


def test_timeline_trace_and_fence(capsys, schema):
    code, out = run_cli(capsys, "timeline", "--d", "3",
                        "--seed-labeling", "5,2,6,4,1,3",
                        "--until-period", "--fence")
    assert code == 0
    lines = out.strip().splitlines()
    header = json.loads(lines[0])
    assert header["period"] == 18
    trace_schema = schema("trace_record.schema.json")
    for line in lines[1:-1]:
        jsonschema.validate(json.loads(line), trace_schema)
    fence = json.loads(lines[-1])
    jsonschema.validate(fence, schema("fence.schema.json"))
    assert fence["energies"] == [2, 1, 3]
    assert fence["period"] == 3


def test_timeline_render_golden(capsys):
    """ASCII rendering is byte-stable across runs."""
    args = ("timeline", "--d", "2", "--seed-labeling", "4,2,5,1,3",
            "--steps", "3", "--render", "ascii")
    code1, out1 = run_cli(capsys, *args)
    code2, out2 = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    assert "t=3" in out1 and "labels:" in out1


def test_timeline_render_svg(capsys):
    code, out = run_cli(capsys, "timeline", "--d", "2",
                        "--seed-labeling", "4,2,5,1,3",
                        "--steps", "2", "--render", "svg")
    assert code == 0
    svg_lines = [l for l in out.splitlines() if l.startswith("<svg")]
    assert len(svg_lines) == 3  # states at t = 0, 1, 2
    import xml.etree.ElementTree as ET
    for line in svg_lines:
        ET.fromstring(line)


def test_timeline_random_seed_deterministic(capsys):
    args = ("timeline", "--n", "5", "--d", "2", "--seed", "7", "--steps", "2")
    _, out1 = run_cli(capsys, *args)
    _, out2 = run_cli(capsys, *args)
    assert out1 == out2


def test_console_entrypoint_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "toggledyn.cli", "census", "--graph", "path:4",
         "--op", "tpro", "--order-only"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "3"
