"""The command line on the built-in examples, plus an SVG of the kite cut.

Equivalent shell session::

    quasicut example
    quasicut example square-diagonal
    quasicut cut --example kite --svg kite.svg
"""
import sys
import tempfile
from pathlib import Path

from quasicut.cli import main

main(["example"])
print()
main(["example", "square-diagonal"])
out = Path(tempfile.gettempdir()) / "kite-cut.svg"
main(["cut", "--example", "kite", "--svg", str(out)])
print("wrote", out, file=sys.stderr)
