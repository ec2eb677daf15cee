"""
Driving the command line from problem files
===========================================

Every capability is also reachable through the ``formalpi`` command, which
reads a JSON problem file.  This script calls the same entry point in
process so the output can be read side by side.
"""

import io
from pathlib import Path

from formalpi.cli import main

problems = Path(__file__).resolve().parent.parent / "problems"

for argv in (
    ["expand", problems / "quartic.json"],
    ["diagrams", "--order", "1", "--connected"],
    ["check-invariance", problems / "shear.json"],
    ["first-variation", problems / "square_field.json"],
    ["homotopy", problems / "shear.json"],
    ["oracle", problems / "quartic.json"],
):
    out = io.StringIO()
    code = main([str(a) for a in argv], out)
    print("$ formalpi", " ".join(str(a) if not isinstance(a, Path) else f"problems/{a.name}" for a in argv))
    print(out.getvalue().rstrip())
    print(f"(exit {code})\n")
