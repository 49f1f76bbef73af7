#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Write every named cubature rule as JSON, one file per rule.

Usage:
    python scripts/export_catalog.py --out catalog/ [--dim 3] [--verify]

Files are named after the rule label, e.g. CR3(3).json, and load back with
CubatureRule.from_dict.
"""

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import json
from pathlib import Path

from simpson_nd.errors import CubatureError
from simpson_nd.exactness import exactness_degree
from simpson_nd.models.rule import CATALOG, named_rule


def export_rule(name, dim, out_dir, verify=False):
    """Write one rule; returns True when it was written (and, with verify, certified as claimed)."""
    entry = CATALOG[name]
    try:
        rule = named_rule(name, dim if entry.takes_dimension else None)
    except CubatureError as e:
        print(f"✗ {name}: {e}")
        return False

    if verify:
        report = exactness_degree(rule, rule.claimed_degree + 1)
        if report.degree < rule.claimed_degree:
            print(f"✗ {rule.label}: certified {report.degree}, claimed {rule.claimed_degree}")
            return False

    path = Path(out_dir) / f"{rule.label}.json"
    with open(path, "w", encoding="utf-8") as f:
        json.dump(rule.to_dict(), f, indent=2)
    print(f"✓ {rule.label}: {len(rule)} nodes -> {path}")
    return True


def main():
    import argparse

    parser = argparse.ArgumentParser(description="Export the named rule catalog as JSON")
    parser.add_argument("--out", default="catalog", help="Output directory (default: catalog)")
    parser.add_argument("--dim", type=int, default=2, help="Dimension for CR1, CR2 and CR3 (default: 2)")
    parser.add_argument("--verify", action="store_true", help="Certify each rule's claimed degree before reporting it")

    args = parser.parse_args()

    os.makedirs(args.out, exist_ok=True)
    print(f"Exporting to: {args.out}")

    written = [export_rule(name, args.dim, args.out, args.verify) for name in CATALOG]
    print(f"\n{sum(written)}/{len(written)} rules exported")
    if not all(written):
        sys.exit(1)


if __name__ == "__main__":
    main()
