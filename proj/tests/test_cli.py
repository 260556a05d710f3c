#!/usr/bin/env python3
"""End-to-end tests for the tempora CLI.

Usage: test_cli.py <cli-path> <data-dir>

Exit codes under test: 0 accepted/success, 1 rejected with witness,
2 usage/format error.
"""

import json
import os
import subprocess
import sys
import tempfile

CLI = sys.argv[1]
DATA = sys.argv[2]

failures = []


def run(*args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [CLI, *args], capture_output=True, text=True, env=env, timeout=120
    )


def check(name, condition, detail=""):
    status = "ok" if condition else "FAIL"
    print(f"{status} {name}" + (f": {detail}" if detail and not condition else ""))
    if not condition:
        failures.append(name)


def data(name):
    return os.path.join(DATA, name)


# validate -------------------------------------------------------------------
r = run("validate", data("chain.json"))
check("validate accepts a well-formed document", r.returncode == 0, r.stderr)

r = run("--json", "validate", data("chain.json"))
check("validate --json emits a JSON report",
      r.returncode == 0 and json.loads(r.stdout)["accepted"] is True, r.stdout)

r = run("validate", data("invalid.json"))
check("validate rejects a malformed document with exit 2",
      r.returncode == 2 and "error" in r.stderr, f"rc={r.returncode} {r.stderr}")

r = run("validate", data("does_not_exist.json"))
check("validate reports a missing file as exit 2", r.returncode == 2, r.stderr)

# check-axiom ----------------------------------------------------------------
r = run("check-axiom", data("chain.json"), "--class", "async")
check("check-axiom accepts the closed chain system",
      r.returncode == 0 and "Eq.(3)" in r.stdout, r.stdout)

r = run("check-axiom", data("chain.json"), "--class", "eventually")
check("check-axiom rejects an unknown class token with exit 2",
      r.returncode == 2, f"rc={r.returncode}")

# external-behavior ----------------------------------------------------------
r = run("--json", "external-behavior", data("chain.json"))
gammas = json.loads(r.stdout)["gammas"] if r.returncode == 0 else None
check("external-behavior deduplicates identical gammas",
      r.returncode == 0 and gammas == [["A", "A", "A"]], r.stdout)

# check-relation -------------------------------------------------------------
r = run("check-relation", data("chain.json"), data("quotient.json"),
        data("chain_to_quotient.json"))
check("check-relation accepts the quotient relation", r.returncode == 0, r.stdout)

for flavor in ("async", "ext-sync", "sync"):
    r = run("check-relation", data("chain.json"), data("quotient.json"),
            data("chain_to_quotient.json"), "--flavor", flavor)
    check(f"check-relation accepts the quotient relation as {flavor}",
          r.returncode == 0, r.stdout)

r = run("--json", "check-relation", data("chain.json"), data("quotient.json"),
        data("empty_relation.json"))
report = json.loads(r.stdout)
check("check-relation rejects the empty relation with a named clause",
      r.returncode == 1 and report["failed_clauses"] == ["4a"], r.stdout)

r = run("check-relation", data("chain.json"), data("quotient.json"),
        data("chain_to_quotient.json"), "--flavor", "l-initial", "--l", "99")
check("check-relation flags an out-of-range l as exit 2", r.returncode == 2, r.stderr)

r = run("--json", "--horizon-note", "check-relation", data("chain.json"),
        data("quotient.json"), data("chain_to_quotient.json"))
check("--horizon-note adds the truncation bound to the report",
      r.returncode == 0 and "horizon_note" in json.loads(r.stdout), r.stdout)

# synthesize -----------------------------------------------------------------
with tempfile.TemporaryDirectory() as tmp:
    out = os.path.join(tmp, "relation.json")
    r = run("synthesize", data("chain.json"), data("quotient.json"),
            "--flavor", "sync", "-o", out)
    check("synthesize finds the greatest sync relation", r.returncode == 0, r.stdout)
    with open(out) as fh:
        rel = json.load(fh)
    check("synthesize writes a loadable relation file",
          rel["flavor"] == "sync" and sorted(map(tuple, rel["pairs"])) ==
          [("p0", "q"), ("p1", "q")], json.dumps(rel))
    r = run("check-relation", data("chain.json"), data("quotient.json"), out,
            "--flavor", "sync")
    check("the synthesized relation round-trips through check-relation",
          r.returncode == 0, r.stdout)

r = run("--json", "synthesize", data("chain_ab.json"), data("blabel.json"),
        "--flavor", "async")
check("synthesize reports exit 1 when no relation exists",
      r.returncode == 1 and json.loads(r.stdout)["found"] is False, r.stdout)

# inclusion ------------------------------------------------------------------
r = run("--json", "inclusion", data("chain.json"), data("quotient.json"))
report = json.loads(r.stdout)
check("inclusion reports behavioral equality for chain vs quotient",
      r.returncode == 0 and report["equal"] is True, r.stdout)

r = run("inclusion", data("chain_ab.json"), data("blabel.json"))
check("inclusion reports exit 1 when the subset fails", r.returncode == 1, r.stdout)

# discretize -----------------------------------------------------------------
r = run("discretize", data("ramp.csv"), data("quantizer.json"))
doc = json.loads(r.stdout)
gamma = doc["trajectories"][0]["phi"][0]["gamma"]
tau = doc["trajectories"][0]["phi"][0]["tau"]
check("discretize emits the quantized ramp document",
      r.returncode == 0 and gamma[:4] == ["q1", "q2", "q3", "q4"]
      and tau == [0, None, None, 1, None, 2, None, 3, None],
      r.stdout[:400])

with tempfile.TemporaryDirectory() as tmp:
    out = os.path.join(tmp, "system.json")
    r = run("discretize", data("ramp.csv"), data("quantizer.json"), "-o", out)
    check("discretize -o writes the document", r.returncode == 0 and
          os.path.exists(out), r.stderr)
    r = run("validate", out)
    check("the discretized document validates", r.returncode == 0, r.stderr)

r = run("discretize", data("overlap.csv"), data("quantizer.json"),
        env_extra={"TEMPORA_BRANCH_CAP": "1"})
check("TEMPORA_BRANCH_CAP=1 turns the overlap branch into exit 2",
      r.returncode == 2 and "branch" in r.stderr.lower(),
      f"rc={r.returncode} {r.stderr}")

r = run("discretize", data("overlap.csv"), data("quantizer.json"),
        env_extra={"TEMPORA_BRANCH_CAP": "zero"})
check("a malformed TEMPORA_BRANCH_CAP is exit 2", r.returncode == 2, r.stderr)

# harness --------------------------------------------------------------------
r = run("--json", "harness", "--suite", "thm2", "--seed", "7", "--trials", "5")
report = json.loads(r.stdout)
check("harness runs a suite and reports trials",
      r.returncode == 0 and report["trials"] == 5 and report["failures"] == 0,
      r.stdout)

r2 = run("--json", "harness", "--suite", "thm2", "--seed", "7", "--trials", "5")
check("harness reports are deterministic per seed", r.stdout == r2.stdout)

r = run("harness", "--suite", "thm9", "--trials", "5")
check("harness rejects an unknown suite with exit 2", r.returncode == 2, r.stderr)

# usage ----------------------------------------------------------------------
r = run("frobnicate")
check("unknown subcommands are usage errors (exit 2)", r.returncode == 2, r.stderr)

r = run("--help")
check("--help exits 0", r.returncode == 0, r.stderr)

print()
if failures:
    print(f"{len(failures)} CLI test(s) failed")
    sys.exit(1)
print("all CLI tests passed")
