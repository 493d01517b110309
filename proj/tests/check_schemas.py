#!/usr/bin/env python3
"""Run the CLI on a set of jobs and validate every JSON document against schemas/."""
import csv
import json
import os
import shutil
import subprocess
import sys

from jsonschema import Draft202012Validator


def load_schemas(d):
    out = {}
    for name in os.listdir(d):
        if name.endswith(".schema.json"):
            with open(os.path.join(d, name)) as f:
                s = json.load(f)
            Draft202012Validator.check_schema(s)
            out[name[: -len(".schema.json")]] = Draft202012Validator(s)
    return out


def main():
    cli, schema_dir, work = sys.argv[1:4]
    shutil.rmtree(work, ignore_errors=True)
    os.makedirs(work)
    schemas = load_schemas(schema_dir)
    failures = []

    def run(args, code=0):
        p = subprocess.run([cli] + args, cwd=work, capture_output=True, text=True)
        if p.returncode != code:
            failures.append(f"{args}: exit {p.returncode}, wanted {code}\n{p.stderr}")
        return p

    def check(schema, doc, what):
        errs = sorted(schemas[schema].iter_errors(doc), key=lambda e: list(e.path))
        for e in errs[:5]:
            failures.append(f"{what}: {'/'.join(map(str, e.path))}: {e.message}")

    stdout_jobs = [
        ("invariants", ["invariants", "--builtin", "log-spiral", "--format", "json"]),
        ("invariants", ["invariants", "--builtin", "catenary", "--format", "json"]),
        ("invariants", ["invariants", "--builtin", "rose", "--format", "json"]),
        ("invariants", ["invariants", "--builtin", "viviani", "--grid", "0.05:6.2:200", "--format", "json"]),
        ("invariants", ["invariants", "--builtin", "cv1", "--format", "json"]),
        ("invariants", ["invariants", "--expr", "(t, exp(t))", "--grid", "-1:1:20", "--format", "json"]),
        ("extremal", ["extremal", "--equation", "ga-plane", "--k", "3*sqrt(2)*tanh(sqrt(2)*t)", "--eps", "1"]),
        ("extremal", ["extremal", "--equation", "ga-plane-general", "--k", "sin(t)", "--f", "k^2/2"]),
        ("extremal", ["extremal", "--equation", "ga-space", "--k", "0.5", "--M", "1", "--eps", "1"]),
        ("extremal", ["extremal", "--equation", "linear-complex", "--k", "1", "--eps", "1"]),
        ("extremal", ["extremal", "--equation", "equiaffine-space", "--builtin", "cubic-parabola"]),
        ("extremal", ["extremal", "--equation", "proj-plane", "--k", "2"]),
        ("extremal", ["extremal", "--equation", "proj-space", "--k1", "1", "--k2", "t"]),
        ("classify", ["classify", "--plane", "--k", "-4", "--eps", "1"]),
        ("classify", ["classify", "--plane", "--k", "3", "--eps", "-1"]),
        ("classify", ["classify", "--space", "--k", "0", "--M", "0", "--eps", "1"]),
        ("classify", ["classify", "--space", "--a", "3", "--b", "-3", "--c", "1"]),
        ("classify", ["classify", "--projective", "--a", "6", "--b", "-8", "--c", "3"]),
        ("classify", ["classify", "--builtin", "mk"]),
        ("classify", ["classify", "--builtin", "cv4"]),
        ("abel", ["abel", "--k", "-5", "--eps", "1"]),
        ("abel", ["abel", "--k", "-5", "--eps", "-1", "--kind", "second", "--s0", "0.7"]),
        ("abel", ["abel", "--k", "-5 + 0.4*sin(x)", "--s0", "1.3", "--samples", "11"]),
        ("catalog", ["catalog"]),
        ("catalog", ["catalog", "--verify"]),
    ]
    for schema, args in stdout_jobs:
        p = run(args)
        if p.returncode == 0:
            check(schema, json.loads(p.stdout), " ".join(args))

    report_jobs = [
        ["reconstruct", "--plane", "--k", "0", "--eps", "1", "--out", "conic.csv", "--report", "conic.json"],
        ["reconstruct", "--space", "--k", "-sqrt(2)", "--M", "sqrt(2)", "--eps", "-1", "--out", "mk.csv",
         "--report", "mk.json"],
        ["reconstruct", "--plane", "--k", "1/(t - 1)", "--eps", "1", "--grid", "0:2:201", "--out", "pole.csv",
         "--report", "pole.json"],
    ]
    for args in report_jobs:
        if run(args).returncode == 0:
            with open(os.path.join(work, args[args.index("--report") + 1])) as f:
                check("reconstruct", json.load(f), " ".join(args))

    # Curve CSV: every field is written with enough digits to read back exactly.
    for name in ("conic.csv", "mk.csv"):
        path = os.path.join(work, name)
        if not os.path.exists(path):
            continue
        with open(path) as f:
            rows = list(csv.reader(f))
        if rows[0][:3] != ["t", "x1", "x2"]:
            failures.append(f"{name}: header {rows[0]}")
        for row in rows[1:]:
            for field in row:
                if float("%.17g" % float(field)) != float(field) or "%.17g" % float(field) != field:
                    failures.append(f"{name}: field {field!r} does not round trip")
                    break

    error_jobs = [
        (["invariants", "--expr", "(t, t^2 +)", "--grid", "0:1:5"], 2),
        (["invariants", "--samples", "missing.csv"], 2),
        (["invariants", "--expr", "(t, log(t))", "--grid", "-1:1:5"], 2),
        (["abel", "--k", "-2", "--eps", "1", "--s0", "-0.7"], 3),
    ]
    for args, code in error_jobs:
        p = run(args, code)
        try:
            check("error", json.loads(p.stderr.strip().splitlines()[-1]), " ".join(args))
        except (ValueError, IndexError):
            failures.append(f"{args}: stderr is not a JSON error report: {p.stderr!r}")

    for f in failures:
        print("FAIL", f)
    print(f"{len(stdout_jobs) + len(report_jobs) + len(error_jobs)} jobs, {len(failures)} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
