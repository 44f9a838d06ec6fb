"""Rewrite the CLI golden files under tests/golden/ from data/*.csv.

Run after an intentional change to report or DOT formatting, then
review the diff before committing.
"""
import contextlib
import io
from pathlib import Path

from evomarkov import catalog
from evomarkov.cli import main

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "tests" / "golden"

RUNS = {
    "analyze.txt": ["analyze"],
    "analyze.json": ["analyze", "--format", "structured"],
    "dot": ["dot"],
}


def run(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        status = main(argv)
    assert status == 0, (argv, status)
    return buf.getvalue()


if __name__ == "__main__":
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name in catalog.NAMES:
        src = ROOT / "data" / f"{name}.csv"
        for suffix, argv in RUNS.items():
            out = GOLDEN / f"{name}.{suffix}"
            out.write_text(run(argv + ["--input", str(src)]), encoding="utf-8")
            print(out.relative_to(ROOT))
