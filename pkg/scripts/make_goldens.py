#!/usr/bin/env python3
"""Regenerate the golden CLI reports under tests/golden/.

Run after an intentional schema or output change, then review the diff:

    python scripts/make_goldens.py
"""

import io
import sys
from contextlib import redirect_stdout
from pathlib import Path

from pinsep.cli import main

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"

REPORTS = {
    "invariants_nonmodular_basic.json":
        ["--json", "invariants", "nonmodular_basic"],
    "invariants_modular_diag.json":
        ["--json", "family", "modular_diag", "invariants"],
    "invariants_exe1_3.json": ["--json", "invariants", "exe1:3"],
    "invariants_exe2_3.json": ["--json", "invariants", "exe2:3"],
    "invariants_exe4_3.json": ["--json", "invariants", "exe4:3"],
    "invariants_exe6_2.json": ["--json", "invariants", "exe6:2"],
    "utable_exe1_h3.json":
        ["--json", "utable", "exe1", "--horizon", "3", "--smax", "3"],
    "utable_modular_diag_h3.json":
        ["--json", "utable", "modular_diag", "--horizon", "3", "--smax", "2"],
    "parity_5.json": ["--json", "parity", "5"],
}


def run():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, args in REPORTS.items():
        buf = io.StringIO()
        with redirect_stdout(buf):
            rc = main(args)
        if rc != 0:
            print(f"FAILED ({rc}): {name}", file=sys.stderr)
            return rc
        (GOLDEN / name).write_text(buf.getvalue())
        print(f"wrote {name}")
    return 0


if __name__ == "__main__":
    sys.exit(run())
