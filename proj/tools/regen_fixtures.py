"""Regenerate fixtures/<name>.out from fixtures/cases.json using the built CLI."""

import argparse
import json
import pathlib
import subprocess
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--binary", default=str(ROOT / "build" / "angularft"))
    parser.add_argument("--check", action="store_true", help="compare instead of writing")
    opts = parser.parse_args()

    cases = json.loads((ROOT / "fixtures" / "cases.json").read_text())
    bad = 0
    for case in cases:
        proc = subprocess.run([opts.binary, *case["args"]], capture_output=True, text=True)
        target = ROOT / "fixtures" / f"{case['name']}.out"
        if proc.returncode != case["exit"]:
            print(f"{case['name']}: exit {proc.returncode}, expected {case['exit']}", file=sys.stderr)
            bad += 1
            continue
        if opts.check:
            if not target.exists() or target.read_text() != proc.stdout:
                print(f"{case['name']}: output differs", file=sys.stderr)
                bad += 1
        else:
            target.write_text(proc.stdout)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
