"""Reads a conversion output directory the way a downstream trainer would,
using only struct and csv, and checks the tensor files against the manifest.

usage: check_tensor_format.py VFP_BINARY DATA_DIR
"""

import csv
import struct
import subprocess
import sys
import tempfile
from pathlib import Path

HEADER = struct.Struct("<4sHIII")


def read_tensor(path: Path):
    raw = path.read_bytes()
    magic, version, c, h, w = HEADER.unpack_from(raw)
    assert magic == b"VFPT", f"{path}: magic {magic!r}"
    assert version == 1, f"{path}: version {version}"
    assert len(raw) == HEADER.size + 4 * c * h * w, f"{path}: {len(raw)} bytes"
    values = struct.unpack_from(f"<{c * h * w}f", raw, HEADER.size)
    return (c, h, w), values


def read_manifest(path: Path):
    header, body = {}, []
    for line in path.read_text().splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition("=")
            header[key] = value
        else:
            body.append(line)
    return header, list(csv.DictReader(body))


def check(out: Path, expect_hw):
    header, entries = read_manifest(out / "manifest.csv")
    assert header["format"] == "vfp-manifest/1"
    h, w = map(int, header["image"].split("x"))
    assert (h, w) == expect_hw, header["image"]
    assert int(header["channels"]) == 3
    k = int(header["k"])
    for e in entries:
        (c, th, tw), values = read_tensor(out / e["tensor_path"])
        assert (c, th, tw) == (3, h, w)
        plane = h * w
        assert values[:plane] == values[plane:2 * plane] == values[2 * plane:], e["sample_id"]
        assert all(0.0 <= v <= 1.0 for v in values)
        assert sum(1 for v in values[:plane] if v != 0.0) <= k
    return len(entries)


def main():
    vfp, data = sys.argv[1], Path(sys.argv[2])
    cases = [
        ("iris.csv", "species", "distancing", (5, 5)),
        ("iris.csv", "species", "zpos1", (4, 4)),
        ("wine.csv", "class", "zpos2", (8, 8)),
        ("wine.csv", "class", "none", (4, 4)),
    ]
    with tempfile.TemporaryDirectory() as tmp:
        for i, (name, label, strategy, hw) in enumerate(cases):
            out = Path(tmp) / str(i)
            subprocess.run(
                [vfp, "convert", "-i", str(data / name), "-l", label, "-s", strategy, "-o", str(out)],
                check=True,
                capture_output=True,
            )
            n = check(out, hw)
            print(f"{name} {strategy}: {n} tensors ok")


if __name__ == "__main__":
    main()
