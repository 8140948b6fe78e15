#!/usr/bin/env python3
"""Run the full-size checks against user-supplied encyclopedia link graphs.

The data directory needs an ``editions.csv`` with the header
``code,edges,labels,philosophers`` (paths relative to the data directory):

    code,edges,labels,philosophers
    EN,en/edges.tsv,en/labels.tsv,philosophers.txt
    ...

Optional files:
    externals.csv      code,path   external ranking CSVs (entity_label,rank)
    presocratics.txt   selection for the reduced Google matrix of EN

Each check prints one line; the exit status is the number of failed checks.
"""

import argparse
import csv
import json
import subprocess
import sys
from pathlib import Path

# Article and link counts of the May 2017 dumps.
REFERENCE_COUNTS = {
    "EN": (5416537, 122232932),
    "DE": (2057898, 51126893),
    "FR": (1866546, 45261809),
    "RU": (1391225, 28597750),
    "ES": (1287835, 28459117),
    "JA": (1058950, 40143894),
    "PT": (967162, 16953184),
    "ZH": (939625, 13364440),
    "AR": (519714, 5247492),
}
ARISTOTLE_K = {"EN": 346, "FR": 300, "DE": 195}
EDITION_DISTANCE_RANGE = (0.14, 0.28)


def run(gmat, *args):
    proc = subprocess.run([gmat, *map(str, args)], capture_output=True, text=True)
    if proc.returncode != 0:
        sys.exit(f"gmat {args[0]} failed ({proc.returncode}): {proc.stderr.strip()}")


class Checks:
    def __init__(self):
        self.failed = 0

    def __call__(self, ok, name, detail):
        print(f"{'PASS' if ok else 'FAIL'}  {name:<48} {detail}")
        self.failed += not ok


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("data", type=Path)
    ap.add_argument("--gmat", default="gmat", help="path to the gmat binary")
    ap.add_argument("--out", type=Path, default=Path("dump_check_out"))
    ap.add_argument("--rank-tolerance", type=float, default=0.10,
                    help="relative tolerance on Aristotle's global rank")
    args = ap.parse_args()

    check = Checks()
    with open(args.data / "editions.csv", newline="") as f:
        editions = list(csv.DictReader(f))

    manifest = []
    for ed in editions:
        code = ed["code"]
        out = args.out / code
        edges = args.data / ed["edges"]
        labels = args.data / ed["labels"]

        run(args.gmat, "stats", "--edges", edges, "--out", out / "stats")
        stats = json.loads((out / "stats" / "stats.json").read_text())
        if code in REFERENCE_COUNTS:
            n, links = REFERENCE_COUNTS[code]
            check(stats["n"] == n and stats["edge_count"] == links, f"{code} article and link counts",
                  f"N={stats['n']} N_l={stats['edge_count']} (reference {n}, {links})")

        run(args.gmat, "pagerank", "--edges", edges, "--labels", labels,
            "--selection", args.data / ed["philosophers"], "--out", out / "pagerank")
        with open(out / "pagerank" / "pagerank_subset.csv", newline="") as f:
            rows = list(csv.DictReader(f))
        top = rows[0]
        check(top["label"] == "Aristotle", f"{code} top philosopher", f"{top['label']} at K={top['global_rank']}")
        if code in ARISTOTLE_K:
            k = next(int(r["global_rank"]) for r in rows if r["label"] == "Aristotle")
            want = ARISTOTLE_K[code]
            check(abs(k - want) <= args.rank_tolerance * want, f"{code} Aristotle global rank", f"K={k} (reference {want})")

        ranking = out / "philosophers_rank.csv"
        with open(ranking, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["entity_label", "rank"])
            for r in rows:
                w.writerow([r["label"], r["subset_rank"]])
        manifest.append((code, ranking.resolve(), "edition"))

    externals = args.data / "externals.csv"
    if externals.exists():
        with open(externals, newline="") as f:
            for row in csv.DictReader(f):
                manifest.append((row["code"], (args.data / row["path"]).resolve(), "external"))

    manifest_path = args.out / "manifest.csv"
    with open(manifest_path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["code", "path", "role"])
        w.writerows(manifest)
    run(args.gmat, "theta", "--manifest", manifest_path, "--out", args.out / "theta")
    run(args.gmat, "kendall", "--manifest", manifest_path, "--out", args.out / "kendall")
    kd = json.loads((args.out / "kendall" / "kendall.json").read_text())
    codes = [c for c, _, role in manifest if role == "edition"]
    index = {name: i for i, name in enumerate(kd["rankings"])}
    pairs = [kd["distance"][index[a]][index[b]] for i, a in enumerate(codes) for b in codes[i + 1:]]
    if pairs:
        lo, hi = EDITION_DISTANCE_RANGE
        check(lo - 0.005 <= min(pairs) and max(pairs) <= hi + 0.005, "edition Kendall distances",
              f"range {min(pairs):.3f} to {max(pairs):.3f} (reference {lo} to {hi})")

    presocratics = args.data / "presocratics.txt"
    en = next((ed for ed in editions if ed["code"] == "EN"), None)
    if presocratics.exists() and en:
        out = args.out / "EN" / "reduced"
        run(args.gmat, "reduced", "--edges", args.data / en["edges"], "--labels", args.data / en["labels"],
            "--selection", presocratics, "--out", out)
        print(f"INFO  EN reduced matrices and hidden links written to {out}")
        with open(out / "hidden_links_global.csv", newline="") as f:
            for row in list(csv.DictReader(f))[:10]:
                print(f"      {row['source_label']} -> {row['target_label']}  {float(row['weight']):.4f}")

    print(f"{check.failed} failure(s)")
    return check.failed


if __name__ == "__main__":
    sys.exit(main())
