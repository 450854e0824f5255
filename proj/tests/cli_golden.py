#!/usr/bin/env python3
"""Golden tests for the command-line tool.

Usage: cli_golden.py <path-to-cli> <source-dir> [--record]

Each case runs one CLI invocation and compares stdout byte-for-byte against
tests/golden/<name>.stdout, plus the exit code. --record rewrites the golden
files from the current behavior.
"""

import subprocess
import sys
from pathlib import Path

BOOL_LANG = "builtin:stlc:desugared:Curry:bool"


def cases(src: Path):
    inputs = src / "tests" / "golden" / "inputs"
    return [
        # name, argv, stdin, expected exit code
        ("lang-validate-builtin-export", ["lang", "export", BOOL_LANG], "", 0),
        ("lang-validate-shipped",
         ["lang", "validate", str(src / "descriptions" / "stlc-desugared-Church-bool.json")],
         "", 0),
        ("lang-validate-bad-shape",
         ["lang", "validate", str(inputs / "bad-shape.json")], "", 1),
        ("lang-validate-malformed",
         ["lang", "validate", str(inputs / "malformed.json")], "", 2),
        ("term-check-identity",
         ["term", "check", "--lang", "builtin:stlc:desugared:Curry", "--ctx", "",
          "--type", "(-> base base)", "--form"],
         "(lam [x] (var x))", 0),
        ("term-check-open",
         ["term", "check", "--lang", BOOL_LANG, "--ctx", "bool, (-> bool bool)",
          "--type", "bool"],
         "(app (var 0) (var 1))", 0),
        ("term-infer-church",
         ["term", "infer", "--lang", "builtin:stlc:desugared:Church:bool", "--form"],
         "(app (lam {bool} [x] (var x)) true)", 0),
        ("term-infer-unbound",
         ["term", "infer", "--lang", BOOL_LANG, "--form"], "(var y)", 1),
        ("term-infer-branch-clash",
         ["term", "infer", "--lang", "builtin:stlc:desugared:Church:bool", "--form"],
         "(if true (lam {bool} [x] (var x)) false)", 1),
        ("term-erase-annotated",
         ["term", "erase", "--lang", "builtin:stlc:desugared:Church:bool", "--form"],
         "(app (lam {bool} [x] (var x)) true)", 0),
        ("term-check-parse-error",
         ["term", "check", "--lang", BOOL_LANG, "--type", "bool"], "(app (lam", 2),
        ("stlc-desugar-let",
         ["stlc", "desugar"], "(let [x] true (if (var x) false (var x)))", 0),
        ("stlc-eval-trace",
         ["stlc", "eval", "--style", "Church", "--trace"],
         "(app (lam {bool} [x] (var x)) true)", 0),
        ("stlc-eval-let",
         ["stlc", "eval", "--trace"],
         "(let [x] true (if (var x) false (var x)))", 0),
        ("stlc-eval-fuel",
         ["stlc", "eval", "--fuel", "0"], "(if true false true)", 3),
        ("laws-bool",
         ["laws", "--lang", BOOL_LANG, "--seed", "42", "--count", "50", "--depth", "4",
          "--max-ctx", "3"],
         "", 0),
        ("gen-closed-bool",
         ["gen", "--lang", BOOL_LANG, "--type", "bool", "--seed", "7", "--count", "5",
          "--budget", "4"],
         "", 0),
        ("gen-enum-three-nodes",
         ["gen", "--lang", BOOL_LANG, "--enum", "--max-nodes", "3"], "", 0),
    ]


def main():
    if len(sys.argv) < 3:
        sys.exit(__doc__)
    cli, src = sys.argv[1], Path(sys.argv[2])
    record = "--record" in sys.argv[3:]
    golden = src / "tests" / "golden"
    failures = []
    for name, argv, stdin, want_exit in cases(src):
        proc = subprocess.run([cli] + argv, input=stdin.encode(),
                              capture_output=True, timeout=120)
        path = golden / f"{name}.stdout"
        if record:
            path.write_bytes(proc.stdout)
            status = "recorded" if proc.returncode == want_exit else \
                f"recorded, BUT exit {proc.returncode} != expected {want_exit}"
            print(f"{name}: {status}")
            continue
        problems = []
        if proc.returncode != want_exit:
            problems.append(f"exit {proc.returncode} != {want_exit}")
        if not path.exists():
            problems.append("golden file missing")
        elif proc.stdout != path.read_bytes():
            problems.append("stdout differs from golden")
        if problems:
            failures.append(name)
            print(f"FAIL {name}: {'; '.join(problems)}")
            print(f"  stdout: {proc.stdout[:300]!r}")
            print(f"  stderr: {proc.stderr[:300]!r}")
        else:
            print(f"ok   {name}")
    if not record:
        total = len(cases(src))
        print(f"{total - len(failures)}/{total} golden invocations passed")
        sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
