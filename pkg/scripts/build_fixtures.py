"""Write the constructed census graphs and the small corpus as graph6.

    python3 scripts/build_fixtures.py --out fixtures/
    adrg --in fixtures/all.g6 --jobs 4 > reports.jsonl
"""

import argparse
from pathlib import Path

from adrg.fixtures import BUILDERS, drg_corpus
from adrg.graph import encode_graph6


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--out", type=Path, default=Path("fixtures"))
    args = p.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)
    lines = []
    for name, build in BUILDERS.items():
        g6 = encode_graph6(build())
        (args.out / f"{name}.g6").write_text(g6 + "\n")
        lines.append(f"{g6} {name}")
    lines += [f"{encode_graph6(g)} {g.name}" for g in drg_corpus()]
    (args.out / "all.g6").write_text("\n".join(lines) + "\n")
    print(f"wrote {len(BUILDERS)} census constructions and {len(lines) - len(BUILDERS)} corpus graphs to {args.out}")


if __name__ == "__main__":
    main()
