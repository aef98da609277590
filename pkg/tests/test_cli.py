import json
import os
import subprocess
import sys

import pytest

from flab.cli import (
    EXIT_CHECK_FAILED,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    EXIT_RESOURCE,
    Report,
    automorphism_from_data,
    automorphism_to_data,
    catalog,
    catalog_entry,
    entry_stack,
    main,
    run_pipeline,
)


def run_cli(*argv, env=None):
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    proc = subprocess.run(
        [sys.executable, "-m", "flab.cli", *argv],
        capture_output=True,
        text=True,
        env=full_env,
        timeout=560,
    )
    return proc


def test_catalog_contents():
    names = [e.name for e in catalog()]
    assert {"s4-d8", "a6-d8", "pgl2-9", "inner-d8"} <= set(names)
    assert len(names) >= 4
    assert catalog_entry("pgl2-9").prime == 2
    with pytest.raises(FileNotFoundError):
        catalog_entry("nope")


def test_catalog_sylow_orders():
    assert entry_stack("pgl2-9").fusion.canon(entry_stack("pgl2-9").fusion.S).order == 16
    assert entry_stack("a6-d8").fusion.canon(entry_stack("a6-d8").fusion.S).order == 8


def test_examples_list_command():
    assert main(["examples", "list"]) == EXIT_OK


def test_pipeline_inner_d8_passes():
    report = run_pipeline("inner-d8")
    assert report.passed()
    tree = report.tree
    assert tree["amalgam"]["finite"] is True
    assert tree["center"]["amalgam_center_order"] == 2


def test_pipeline_negative_family():
    report = run_pipeline("s4-d8", family_mode="{S}")
    assert not report.passed()
    assert report.tree["failed_stage"] == "fusion_verification"
    assert report.tree["fusion_verification"]["witness"] is not None


def test_report_roundtrip():
    report = run_pipeline("inner-d8")
    loaded = json.loads(report.to_json())
    assert loaded["report"] == json.loads(json.dumps(report.tree))


def test_cli_exit_codes():
    assert main(["fusion", "saturation", "s4-d8"]) == EXIT_OK
    assert main(["linking", "validate", "bad-linking-nonfree"]) == EXIT_CHECK_FAILED
    assert main(["linking", "validate", "bad-linking-missing-iota"]) == EXIT_CHECK_FAILED
    assert main(["linking", "validate", "s4-d8-linking"]) == EXIT_OK


def test_cli_unknown_entry_is_input_error():
    proc = run_cli("fusion", "analyze", "zz-unknown")
    assert proc.returncode == EXIT_INPUT_ERROR


def test_cli_resource_bound_exit():
    proc = run_cli("fusion", "analyze", "s4-d8", env={"FLAB_MAX_ORDER": "4"})
    assert proc.returncode == EXIT_RESOURCE


def test_pipeline_output_byte_identical():
    a = run_cli("--json", "pipeline", "s4-d8")
    b = run_cli("--json", "pipeline", "s4-d8")
    assert a.returncode == EXIT_OK
    assert a.stdout == b.stdout


def test_amalgam_reduce_word():
    stack = entry_stack("s4-d8")
    G = stack.amalgam
    x = G.hub_group.elements[5]
    label = f"{G.hub_vertex_tag}:m{x}"
    proc = run_cli("--json", "amalgam", "reduce", "s4-d8", "--word", f"{label}*{label}")
    assert proc.returncode == EXIT_OK
    tree = json.loads(proc.stdout)["report"]
    assert tree["input"].count("*") == 1


def test_gamma_omega_file_roundtrip(tmp_path):
    stack = entry_stack("a6-d8")
    from flab.autos import section_automorphism

    cls = stack.ctx.out_classes()[1]
    auto = section_automorphism(stack.ctx, cls, stack.amalgam)
    data = automorphism_to_data(auto)
    path = tmp_path / "auto.json"
    path.write_text(json.dumps(data))
    loaded = automorphism_from_data(stack.amalgam, json.loads(path.read_text()))
    assert loaded == auto
    proc = run_cli("--json", "aut", "omega", "a6-d8", "--file", str(path))
    assert proc.returncode == EXIT_OK
    tree = json.loads(proc.stdout)["report"]
    assert tree["outer_class"] == 1


def test_abstract_linking_entry_runs_fusion_analysis():
    assert main(["fusion", "analyze", "s4-d8-linking"]) == EXIT_OK
    stack = entry_stack("s4-d8-linking")
    from flab.fusion import analyze

    rep = analyze(stack.fusion)
    assert rep.centric_class_count() == 4
    assert rep.centric_radical_class_count() == 2


def test_aut_commands():
    assert main(["aut", "out-typ", "s4-d8"]) == EXIT_OK
    assert main(["aut", "upsilon", "a6-d8", "--class", "0"]) == EXIT_OK
    assert main(["aut", "verify-split", "s4-d8"]) == EXIT_OK
    assert main(["aut", "exact-sequences", "s4-d8"]) == EXIT_OK
    assert main(["aut", "itworks", "pgl2-9"]) == EXIT_OK
    assert main(["limits", "s4-d8", "--functor", "center", "--degree", "1"]) == EXIT_OK
    assert main(["amalgam", "build", "a6-d8"]) == EXIT_OK
    assert main(["amalgam", "center", "inner-d8"]) == EXIT_OK
    assert main(["amalgam", "transporter", "s4-d8", "--radius", "1"]) == EXIT_OK
    assert main(["amalgam", "verify-fusion", "pgl2-9", "--variant", "robinson"]) == EXIT_OK


def test_report_render_text_mentions_title():
    report = Report("demo", {"passed": True, "inner": {"value": 3}})
    text = report.render_text()
    assert text.startswith("demo")
    assert "value: 3" in text
