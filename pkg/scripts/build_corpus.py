"""Regenerate src/dehn_graph/corpus from the enumerator.

Run from the repository root: ``python3 scripts/build_corpus.py``.
"""

import json
import pathlib

from dehn_graph.campaign import check_instance
from dehn_graph.enumerate import EnumSpec, enumerate_pairs

OUT = pathlib.Path(__file__).resolve().parent.parent / "src" / "dehn_graph" / "corpus"


def main():
    OUT.mkdir(exist_ok=True)
    index = {}

    def ship(pair, name, note):
        (OUT / f"{name}.json").write_text(pair.dumps() + "\n")
        index[name] = note

    for k, pr in enumerate(enumerate_pairs(EnumSpec(p=2, q=2, delta=1))):
        ship(pr, f"sphere-p2q2d1-{k}", "smallest sphere pair, delta 1")
    for k, pr in enumerate(enumerate_pairs(EnumSpec(p=2, q=2, delta=2, matching="free"))):
        ship(pr, f"sphere-p2q2d2-free-{k}", "delta 2 pair from the free matching")
    exc = web = 0
    for pr in enumerate_pairs(EnumSpec(p=4, q=4, delta=1)):
        rec = check_instance(pr)
        if rec.get("delta_one_exception"):
            ship(pr, f"delta-one-exception-{exc}",
                 "delta 1: no Scharlemann cycle in either graph, yet G_P represents all types")
            exc += 1
        elif rec["branch"] == "SCHARLEMANN" and not web:
            ship(pr, "great-web-p4q4d1",
                 "G_P misses a type; G_Q has a great 2-web bounding a Scharlemann cycle")
            web += 1
    (OUT / "index.json").write_text(json.dumps(index, indent=1, sort_keys=True) + "\n")
    print(f"{len(index)} instances written to {OUT}")


if __name__ == "__main__":
    main()
