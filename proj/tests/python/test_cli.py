#!/usr/bin/env python3
"""End-to-end checks of the diffauct command-line tool.

Usage: test_cli.py <cli-binary> <data-dir>
"""

import json
import os
import subprocess
import sys
import tempfile

CLI = sys.argv[1]
DATA = sys.argv[2]


def run(*args, expect_code=0):
    proc = subprocess.run([CLI, *args], capture_output=True, text=True)
    if proc.returncode != expect_code:
        raise AssertionError(
            f"{args}: exit {proc.returncode} (wanted {expect_code})\n{proc.stdout}\n{proc.stderr}")
    return proc


def check(cond, what):
    if not cond:
        raise AssertionError(what)


def test_gen_is_deterministic(tmp):
    a, b = os.path.join(tmp, "a.json"), os.path.join(tmp, "b.json")
    run("gen", "er", "50", "0.1", "--seed", "1", "-o", a)
    run("gen", "er", "50", "0.1", "--seed", "1", "-o", b)
    check(open(a).read() == open(b).read(), "same seed must give identical files")
    run("gen", "er", "50", "0.1", "--seed", "2", "-o", b)
    check(open(a).read() != open(b).read(), "different seeds should differ")


def test_gen_tree_connected(tmp):
    path = os.path.join(tmp, "tree.json")
    run("gen", "tree", "10", "--seed", "2", "-o", path)
    doc = json.load(open(path))
    edges = sum(len(agent["neighbors"]) for agent in doc["agents"]) // 2
    check(len(doc["agents"]) == 10 and edges == 9, "a tree has n-1 edges")


def test_gen_line_matches_checked_in(tmp):
    path = os.path.join(tmp, "line5.json")
    run("gen", "line", "5", "-o", path)
    generated = json.load(open(path))
    checked_in = json.load(open(os.path.join(DATA, "line5.json")))
    for gen_agent, ref_agent in zip(generated["agents"], checked_in["agents"]):
        check(gen_agent["neighbors"] == ref_agent["neighbors"], "line topology drifted")
        check(gen_agent.get("valuation") == ref_agent.get("valuation"), "line valuations drifted")


def test_run_outputs(tmp):
    line5 = os.path.join(DATA, "line5.json")
    out = run("run", line5, "--mechanism", "vcg", "--format", "json").stdout
    doc = json.loads(out)
    check(doc["revenue"] == "-4" and doc["winner"] == 5, "vcg on the line")

    out = run("run", line5, "--mechanism", "idm", "--format", "json").stdout
    doc = json.loads(out)
    check(doc["revenue"] == "0" and doc["winner"] == 1, "idm on the line")

    fig2 = os.path.join(DATA, "fig2.json")
    doc = json.loads(run("run", fig2, "--mechanism", "idm", "--format", "json").stdout)
    payments = {b["name"]: b["payment"] for b in doc["buyers"]}
    check(doc["winner_name"] == "I" and payments["I"] == "11" and payments["C"] == "-1",
          "worked example via the cli")

    csv = run("run", line5, "--mechanism", "spl", "--format", "csv").stdout.splitlines()
    check(csv[0] == "scenario,mechanism,winner,revenue,welfare,n,seed", "csv header")
    check(csv[1].split(",")[1:5] == ["spl", "1", "0", "0"], "csv row")

    doc = json.loads(run("run", line5, "-m", "idm", "--tie-break", "seeded", "--seed", "5",
                         "--format", "json").stdout)
    check(doc["winner"] == 1, "no tie on the line, any tie-break picks buyer 1")


def test_run_warns_on_infeasible_declared(tmp):
    scenario = {
        "schema_version": 1,
        "seller": 0,
        "agents": [
            {"id": 0, "neighbors": [1]},
            {"id": 1, "neighbors": [0, 2], "valuation": "1"},
            {"id": 2, "neighbors": [1], "valuation": "9"},
        ],
        "declared_profile": [
            {"id": 1, "bid": "1", "diffusion_set": []},
            {"id": 2, "bid": "9", "diffusion_set": []},
        ],
    }
    path = os.path.join(tmp, "hidden.json")
    json.dump(scenario, open(path, "w"))
    proc = run("run", path, "--mechanism", "idm", "--format", "json")
    check("forced to null" in proc.stderr, "must warn about the forced-null buyer")
    check(json.loads(proc.stdout)["winner"] == 1, "buyer 1 wins once 2 is cut off")


def test_compare(tmp):
    out = run("compare", os.path.join(DATA, "line5.json"), "--format", "json").stdout
    doc = json.loads(out)
    check(doc["idm"]["revenue"] == "0" and doc["vcg"]["revenue"] == "-4"
          and doc["spl"]["revenue"] == "0", "comparison triple")
    doc = json.loads(run("compare", os.path.join(DATA, "fig2.json"), "--format", "json").stdout)
    check(doc["idm"]["revenue"] == "10" and doc["idm"]["welfare"] == "12", "fig2 comparison")
    check(doc["identity_holds"] and doc["dominates_vcg"], "dominance flags")


def test_verify(tmp):
    report_path = os.path.join(tmp, "report.json")
    out = run("verify", "ic", "--n-max", "4", "--grid", "0,1,2", "--out", report_path).stdout
    check("ok" in out, "ic summary should report ok")
    reports = json.load(open(report_path))
    check(all(r["passed"] for r in reports), "ic reports must pass")
    check(any(r["mechanism"] == "idm" for r in reports), "idm must be covered")

    out = run("verify", "wbb", "--mechanism", "vcg", "--scenario", os.path.join(DATA, "line5.json"),
              "--trials", "60", "--seed", "3").stdout
    check("info" in out, "vcg deficits are informational")

    run("verify", "wbb", "--mechanism", "idm", "--trials", "150", "--n-max", "12", "--seed", "4")
    out = run("verify", "dominance", "--trials", "500", "--seed", "7").stdout
    check("ok" in out, "dominance must pass")

    # over-budget runs return the resource exit code
    run("verify", "ic", "--n-max", "5", "--budget-s", "0.000001", expect_code=3)
    # bad bounds are an input error
    run("verify", "ic", "--n-max", "9", expect_code=2)


def test_input_errors(tmp):
    bad = os.path.join(tmp, "bad.json")
    open(bad, "w").write("{ not json")
    run("run", bad, expect_code=2)
    run("run", os.path.join(tmp, "missing.json"), expect_code=2)
    run("nonsense", expect_code=2)


def test_bench(tmp):
    out = run("bench", "--sizes", "40,80", "--profiles", "1", "--seed", "1").stdout.splitlines()
    check(out[0] == "n,participants,analysis_ms,oracle_ms", "bench header")
    check(len(out) == 3, "one row per size")


def test_dot_export(tmp):
    prefix = os.path.join(tmp, "fig2")
    run("run", os.path.join(DATA, "fig2.json"), "--mechanism", "idm", "--export-dot", prefix)
    flow = open(prefix + ".diffusion.dot").read()
    check('"D" -> "G"' in flow and '"G" -> "D"' not in flow, "one-way information flow in the export")
    tree = open(prefix + ".critical.dot").read()
    check('"I" -> "L"' in tree, "critical structure export")


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    with tempfile.TemporaryDirectory() as tmp:
        for test in tests:
            test(tmp)
            print(f"ok {test.__name__}")
    print(f"{len(tests)} cli tests passed")


if __name__ == "__main__":
    main()
