"""Runs the pk binary, validates every JSON report against the schema, checks that
repeated runs are byte-identical and that markdown carries the same verdicts."""

import json
import subprocess
import sys

import jsonschema

PK, SCHEMA = sys.argv[1], sys.argv[2]
RUNS = [
    ["generators", "--k", "5"],
    ["generators", "--k", "6", "--radius", "2"],
    ["verify", "--scope", "quotients"],
    ["verify", "--scope", "rep:rho4"],
    ["verify", "--scope", "k-odd:5"],
    ["improve", "--rep", "rho2", "--k", "2"],
    ["improve", "--rep", "rho4", "--k", "4"],
]


def run(args):
    p = subprocess.run([PK, *args], capture_output=True, text=True, check=False)
    return p.returncode, p.stdout


def main():
    with open(SCHEMA) as f:
        schema = json.load(f)
    failures = 0
    for args in RUNS:
        code, out = run(["--seed", "7", *args])
        report = json.loads(out)
        jsonschema.validate(report, schema)
        if report["seed"] != 7 or code != (0 if report["pass"] else 1):
            print("bad seed or exit code:", args, code)
            failures += 1
        if run(["--seed", "7", *args]) != (code, out):
            print("nondeterministic:", args)
            failures += 1
        _, md = run(["--seed", "7", "--format", "markdown", *args])
        verdicts = [line.rstrip().rsplit("|", 2)[1].strip() for line in md.splitlines()
                    if line.endswith("PASS |") or line.endswith("FAIL |")]
        if verdicts != ["PASS" if r["pass"] else "FAIL" for r in report["records"]]:
            print("markdown differs from json:", args)
            failures += 1
    for bad in (["generators", "--k", "1"], ["verify", "--scope", "k-odd:4"], ["improve", "--rep", "nope", "--k", "3"],
                ["improve", "--k", "3"]):
        code, _ = run(bad)
        if code != 2:
            print("expected usage error:", bad, code)
            failures += 1
    print("cli checks:", "ok" if failures == 0 else f"{failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
