"""Collect Foster census graphs into the layout the tests read via ADRG_FIXTURES.

The census is distributed in several formats by different mirrors, so no
source is hard-coded. Point --source at a local file or an http(s) URL whose
content has one graph per line as ``<graph6> <name>`` (or ``<name> <graph6>``),
and the requested graphs are written to DIR/NAME.g6.

    python3 scripts/fetch_census.py --source census.txt --out fixtures/
    export ADRG_FIXTURES=$PWD/fixtures
"""

import argparse
import sys
import urllib.request
from pathlib import Path

from adrg.errors import Graph6Error
from adrg.fixtures import CENSUS
from adrg.graph import parse_graph6


def read_source(source: str) -> str:
    if source.startswith(("http://", "https://")):
        with urllib.request.urlopen(source, timeout=60) as resp:
            return resp.read().decode("ascii", errors="replace")
    return Path(source).read_text(encoding="ascii", errors="replace")


def index(text: str) -> dict[str, str]:
    out = {}
    for line in text.splitlines():
        parts = line.split()
        if len(parts) < 2:
            continue
        for g6, name in ((parts[0], parts[1]), (parts[1], parts[0])):
            try:
                parse_graph6(g6)
            except Graph6Error:
                continue
            out[name] = g6
            break
    return out


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--source", required=True, help="local path or http(s) URL")
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--names", nargs="+", default=list(CENSUS))
    args = p.parse_args(argv)

    found = index(read_source(args.source))
    args.out.mkdir(parents=True, exist_ok=True)
    missing = []
    for name in args.names:
        if name not in found:
            missing.append(name)
            continue
        (args.out / f"{name}.g6").write_text(found[name] + "\n")
        print(f"wrote {name} (n={parse_graph6(found[name]).n})")
    if missing:
        print("not found in source: " + ", ".join(missing), file=sys.stderr)
    return 1 if missing else 0


if __name__ == "__main__":
    sys.exit(main())
