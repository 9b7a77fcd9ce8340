"""End-to-end checks of the vfp command line: exit codes and written files.

usage: cli_test.py VFP_BINARY DATA_DIR
"""

import csv
import hashlib
import io
import os
import subprocess
import sys
import tempfile
import unittest
from pathlib import Path

VFP = ""
DATA = Path()


def run(*args, env=None):
    merged = dict(os.environ, VFP_LOG="quiet")
    if env:
        merged.update(env)
    return subprocess.run([VFP, *map(str, args)], capture_output=True, text=True, env=merged)


def tree_digest(root: Path) -> dict:
    return {
        str(p.relative_to(root)): hashlib.sha256(p.read_bytes()).hexdigest()
        for p in sorted(root.rglob("*"))
        if p.is_file()
    }


class ExitCodes(unittest.TestCase):
    def test_help_is_success(self):
        self.assertEqual(run("--help").returncode, 0)

    def test_unknown_strategy_is_usage_error(self):
        with tempfile.TemporaryDirectory() as tmp:
            r = run("convert", "-i", DATA / "iris.csv", "-l", "species", "-o", tmp, "-s", "swirl")
            self.assertEqual(r.returncode, 2)

    def test_unknown_subcommand_and_bad_ratio(self):
        self.assertEqual(run("frobnicate").returncode, 2)
        for ratio in ("0", "1", "1.5", "-0.2"):
            r = run("scores", "-i", DATA / "iris.csv", "-l", "species", "--ratio", ratio)
            self.assertEqual(r.returncode, 2, ratio)

    def test_missing_input_is_runtime_error(self):
        with tempfile.TemporaryDirectory() as tmp:
            r = run("convert", "-i", Path(tmp) / "absent.csv", "-l", "x", "-o", Path(tmp) / "out")
            self.assertEqual(r.returncode, 1)
            self.assertIn("FileNotFound", r.stderr)

    def test_missing_label_column(self):
        r = run("scores", "-i", DATA / "iris.csv", "-l", "kind")
        self.assertEqual(r.returncode, 1)
        self.assertIn("MissingLabelColumn", r.stderr)

    def test_parse_error_names_row_and_column(self):
        with tempfile.TemporaryDirectory() as tmp:
            bad = Path(tmp) / "bad.csv"
            bad.write_text("a,b,label\n1,2,x\n3,oops,y\n")
            r = run("scores", "-i", bad, "-l", "label")
            self.assertEqual(r.returncode, 1)
            self.assertIn("ParseError", r.stderr)
            self.assertIn("row 3", r.stderr)

    def test_degenerate_split(self):
        with tempfile.TemporaryDirectory() as tmp:
            tiny = Path(tmp) / "tiny.csv"
            tiny.write_text("a,label\n1,x\n2,y\n")
            r = run("scores", "-i", tiny, "-l", "label", "--ratio", "0.1")
            self.assertEqual(r.returncode, 1)
            self.assertIn("DegenerateSplit", r.stderr)


class Analyze(unittest.TestCase):
    def test_three_by_three(self):
        r = run("analyze", "--dims", "3x3", "--csv", "-")
        self.assertEqual(r.returncode, 0, r.stderr)
        rows = [row for row in csv.DictReader(io.StringIO(r.stdout[r.stdout.index("m,n,"):]))]
        totals = {row["strategy"]: int(row["closed_form"]) for row in rows if row["features"] == "all"}
        self.assertEqual(totals["zpos2"], 25)
        self.assertEqual(totals["distancing"], 25)
        self.assertEqual(totals["zpos1"], 9)
        self.assertEqual(totals["none"], 1)
        self.assertTrue(all(row["agree"] == "true" for row in rows))

    def test_attrs_derive_grid(self):
        r = run("analyze", "--attrs", "4", "-s", "distancing")
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertIn("5x5", r.stdout)

    def test_unsupported_dims(self):
        r = run("analyze", "--dims", "1x1", "-s", "zpos1")
        self.assertEqual(r.returncode, 1)
        self.assertIn("UnsupportedDims", r.stderr)

    def test_needs_a_grid(self):
        self.assertEqual(run("analyze").returncode, 2)
        self.assertEqual(run("analyze", "--dims", "3by3").returncode, 2)


class Convert(unittest.TestCase):
    def test_iris_tree_and_determinism(self):
        with tempfile.TemporaryDirectory() as tmp:
            a, b = Path(tmp) / "a", Path(tmp) / "b"
            for out, jobs in ((a, "1"), (b, "3")):
                r = run("convert", "-i", DATA / "iris.csv", "-l", "species", "-o", out, "--png", "-j", jobs)
                self.assertEqual(r.returncode, 0, r.stderr)
            self.assertEqual(len(list((a / "tensors").glob("*.vfpt"))), 150)
            self.assertEqual(len(list((a / "png").glob("*.png"))), 150)
            self.assertEqual(tree_digest(a), tree_digest(b))
            with open(a / "split.csv") as f:
                splits = [row["split"] for row in csv.DictReader(f)]
            self.assertEqual(splits.count("train"), 120)
            self.assertEqual(splits.count("test"), 30)

    def test_seed_changes_split(self):
        with tempfile.TemporaryDirectory() as tmp:
            outs = []
            for seed in ("1000", "1001"):
                out = Path(tmp) / seed
                r = run("convert", "-i", DATA / "iris.csv", "-l", "species", "-o", out, "--seed", seed)
                self.assertEqual(r.returncode, 0, r.stderr)
                outs.append((out / "split.csv").read_text())
            self.assertNotEqual(outs[0], outs[1])

    def test_inspect(self):
        with tempfile.TemporaryDirectory() as tmp:
            out = Path(tmp) / "o"
            self.assertEqual(run("convert", "-i", DATA / "iris.csv", "-l", "species", "-o", out).returncode, 0)
            r = run("inspect", "-m", out, "--sample", "7")
            self.assertEqual(r.returncode, 0, r.stderr)
            grid = [line.strip() for line in r.stdout.splitlines() if set(line.strip()) <= set(".#o") and line.strip()]
            self.assertEqual(grid, [".....", ".#.#.", ".....", ".#.#.", "....."])
            r = run("inspect", "-m", out, "--sample", "999")
            self.assertEqual(r.returncode, 1)
            self.assertIn("NotFound", r.stderr)


class Reports(unittest.TestCase):
    def test_scores_and_layout(self):
        r = run("scores", "-i", DATA / "iris.csv", "-l", "species")
        self.assertEqual(r.returncode, 0, r.stderr)
        rows = list(csv.DictReader(io.StringIO(r.stdout)))
        self.assertEqual(len(rows), 4)
        self.assertTrue(all(1.0 <= float(row["score"]) <= 4.0 for row in rows))
        self.assertEqual(sorted(int(row["rank"]) for row in rows), [0, 1, 2, 3])

        r = run("layout", "-i", DATA / "iris.csv", "-l", "species", "-s", "all")
        self.assertEqual(r.returncode, 0, r.stderr)
        rows = list(csv.DictReader(io.StringIO(r.stdout)))
        self.assertEqual(len(rows), 16)
        for row in rows:
            if row["strategy"] == "distancing":
                self.assertEqual(int(row["pixel_row"]), 2 * int(row["grid_row"]) + 1)


if __name__ == "__main__":
    VFP = sys.argv[1]
    DATA = Path(sys.argv[2])
    unittest.main(argv=sys.argv[:1], verbosity=2)
