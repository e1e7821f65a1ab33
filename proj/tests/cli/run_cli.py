#!/usr/bin/env python3
"""Golden-file and schema checks for the gha command-line tool.

usage: run_cli.py GHA_BINARY REPO_ROOT [--update]
"""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

OK, NEGATIVE, INPUT, NUMERIC = 0, 1, 2, 3

NILPOTENT_ZETA3 = '{"kind":"nilpotent","z_value":"2","dim":3}'
X_CYCLIC_H2 = '{"kind":"x_cyclic","weights":["zeta(3)","-1 - zeta(3)"],"z_value":"1/2","a":"3"}'
Y_CYCLIC_H2 = '{"kind":"y_cyclic","weights":["zeta(3)","-1 - zeta(3)"],"z_value":"-zeta(3)","a":"-2"}'
BAD_Y_CYCLIC = '{"kind":"y_cyclic","weights":["zeta(3)","-1 - zeta(3)"],"z_value":"5","a":"1"}'

# name, argv, expected exit code, JSON output?
CASES = [
    ("normalize_commutator", ["normalize", "-f", "h^2", "-e", "y*x - x*y"], OK, False),
    ("normalize_x0", ["normalize", "-f", "h^2", "-e", "x^0"], OK, False),
    ("normalize_z", ["normalize", "-f", "h^2", "-e", "z - (x*y - h)"], OK, False),
    ("normalize_json", ["--json", "normalize", "-f", "zeta(3)*h", "-e", "y^2*x^2"], OK, True),
    ("central_x3", ["central", "-f", "zeta(3)*h", "-e", "x^3"], OK, False),
    ("central_x_h2", ["--json", "central", "-f", "h^2", "-e", "x"], NEGATIVE, True),
    ("center_zeta3", ["center", "-f", "zeta(3)*h"], OK, True),
    ("center_h2", ["center", "-f", "h^2"], OK, True),
    ("center_reflection", ["center", "-f", "-h + 4"], OK, True),
    ("iso_case4", ["iso", "-f1", "2*h+1", "-f2", "h/2"], OK, True),
    ("iso_translations", ["iso", "-f1", "h+1", "-f2", "h+5"], OK, True),
    ("iso_slopes_differ", ["iso", "-f1", "2*h", "-f2", "3*h"], NEGATIVE, True),
    ("iso_case5", ["iso", "-f1", "h^2", "-f2", "h^2/3 + 2*h"], OK, True),
    ("iso_not_conjugate", ["iso", "-f1", "h^2", "-f2", "h^2 + 1"], NEGATIVE, True),
    ("simples_empty", ["simples", "-f", "h^2+2*h-3/4", "-n", "2"], OK, True),
    ("simples_translation", ["simples", "-f", "h+1", "-n", "3"], OK, True),
    ("simples_h2_n2", ["--conductor", "3", "simples", "-f", "h^2", "-n", "2"], OK, True),
    ("simples_zeta4", ["simples", "-f", "zeta(4)*h", "-n", "4", "--samples", "1"], OK, True),
    ("simples_identity", ["simples", "-f", "h", "-n", "2"], NEGATIVE, False),
    ("build_nilpotent", ["build", "-f", "zeta(3)*h", "--descriptor", NILPOTENT_ZETA3], OK, True),
    ("build_x_cyclic", ["build", "-f", "h^2", "--descriptor", X_CYCLIC_H2], OK, True),
    ("build_y_cyclic", ["build", "-f", "h^2", "--descriptor", Y_CYCLIC_H2], OK, True),
    ("build_invalid", ["build", "-f", "h^2", "--descriptor", BAD_Y_CYCLIC], INPUT, False),
    ("syntax_error", ["normalize", "-f", "2h", "-e", "x"], INPUT, False),
    ("unknown_symbol", ["center", "-f", "h + q"], INPUT, False),
    ("negative_exponent", ["normalize", "-f", "h", "-e", "x^-1"], INPUT, False),
    ("missing_option", ["center"], INPUT, False),
    ("degree_guard", ["simples", "-f", "h^3 + 1", "-n", "9"], NUMERIC, False),
]

# Module round trips: build, then verify and classify the written file.
ROUND_TRIPS = [
    ("zeta(3)*h", NILPOTENT_ZETA3),
    ("h^2", X_CYCLIC_H2),
    ("h^2", Y_CYCLIC_H2),
]


def run(binary, args):
    proc = subprocess.run([binary, *args], capture_output=True, text=True, timeout=120)
    return proc.returncode, proc.stdout, proc.stderr


def load_schemas(root):
    out = {}
    for path in (root / "schemas").glob("*.json"):
        schema = json.loads(path.read_text())
        jsonschema.Draft202012Validator.check_schema(schema)
        out[path.stem] = jsonschema.Draft202012Validator(schema)
    return out


def main():
    binary, root = sys.argv[1], pathlib.Path(sys.argv[2])
    update = "--update" in sys.argv[3:]
    golden_dir = root / "tests" / "golden"
    schemas = load_schemas(root)
    failures = []

    def check(cond, message):
        if not cond:
            failures.append(message)

    for name, args, code, is_json in CASES:
        got_code, out, err = run(binary, args)
        check(got_code == code, f"{name}: exit {got_code}, expected {code}; stderr: {err.strip()}")
        if code in (INPUT, NUMERIC) or (code == NEGATIVE and not is_json):
            check(err.strip() != "", f"{name}: expected a diagnostic on stderr")
        if is_json:
            try:
                doc = json.loads(out)
            except json.JSONDecodeError as e:
                failures.append(f"{name}: output is not JSON: {e}")
                continue
            check(doc.get("schema_version") == 1, f"{name}: missing schema_version")
            errors = list(schemas[doc["command"]].iter_errors(doc))
            check(not errors, f"{name}: schema violations: {[e.message for e in errors]}")
        golden = golden_dir / f"{name}.out"
        if update:
            golden.write_text(out)
        elif not golden.exists():
            failures.append(f"{name}: golden file missing")
        else:
            check(golden.read_text() == out, f"{name}: output differs from golden file")

    with tempfile.TemporaryDirectory() as tmp:
        for k, (f, descriptor) in enumerate(ROUND_TRIPS):
            code, out, err = run(binary, ["build", "-f", f, "--descriptor", descriptor])
            check(code == OK, f"round trip {k}: build failed: {err}")
            module = pathlib.Path(tmp) / f"m{k}.json"
            module.write_text(out)
            code, out, err = run(binary, ["--json", "verify", "-f", f, "--module", str(module)])
            report = json.loads(out)
            check(code == OK and report["ok"] and report["simple"], f"round trip {k}: verify: {out}{err}")
            check(not list(schemas["verify"].iter_errors(report)), f"round trip {k}: verify schema")
            code, out, err = run(binary, ["classify", "-f", f, "--module", str(module)])
            check(code == OK, f"round trip {k}: classify failed: {err}")
            got = json.loads(out)
            check(not list(schemas["classify"].iter_errors(got)), f"round trip {k}: classify schema")
            want = json.loads(descriptor)
            check(got["kind"] == want["kind"] and got["z_value"] == want["z_value"],
                  f"round trip {k}: classify gave {got}")
            if "weights" in want:
                w, g = want["weights"], got["weights"]
                check(any(g == w[s:] + w[:s] for s in range(len(w))), f"round trip {k}: weights {g} vs {w}")
                check(got["a"] == want["a"], f"round trip {k}: a {got['a']} vs {want['a']}")

        # A perturbed module fails verification with a nonzero residual.
        code, out, _ = run(binary, ["build", "-f", "h^2", "--descriptor", X_CYCLIC_H2])
        doc = json.loads(out)
        doc["X"][0][0] = "1"
        bad = pathlib.Path(tmp) / "bad.json"
        bad.write_text(json.dumps(doc))
        code, out, _ = run(binary, ["--json", "verify", "-f", "h^2", "--module", str(bad)])
        report = json.loads(out)
        check(code == NEGATIVE and not report["ok"] and report["residuals"]["hx - x*f(h)"] > 0,
              f"perturbed module: {out}")

    # Semantic spot checks on the golden corpus.
    if not update:
        iso = json.loads((golden_dir / "iso_case4.out").read_text())
        check(iso["isomorphic"] and iso["case"] == 4, "iso_case4 semantics")
        empty = json.loads((golden_dir / "simples_empty.out").read_text())
        check(empty["empty"], "simples_empty semantics")
        check((golden_dir / "central_x3.out").read_text() == "true\n", "central_x3 semantics")
        check((golden_dir / "normalize_commutator.out").read_text() == "(h^2 + (-1)*h)\n", "normalize semantics")

    for f in failures:
        print("FAIL:", f)
    print(f"{len(CASES)} cases, {len(failures)} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
