"""Statistics of lambda-length sequences along random geodesic walks.

For each walk the script records whether the sequence starts 0, 1, 1, 1, 3,
whether the four-term recurrence holds, whether it grows at lag 4, and whether
the vertices leave the walk in first-in first-out order.
"""

from __future__ import annotations

import argparse
import random
from collections import Counter
from dataclasses import dataclass

from tetrafarey.eisenstein import point_eq
from tetrafarey.lambdas import DegenerateGeodesic, WalkAmbiguity, b_sequence, geodesic_walk
from tetrafarey.sampling import rand_point


@dataclass(frozen=True)
class Config:
    walks: int = 500
    seed: int = 0
    x_bound: int = 4
    y_bound: int = 30


def fifo(dropped) -> bool:
    live = [0, 1, 2, 3]
    for s, d in enumerate(dropped):
        if d != live[0]:
            return False
        live = live[1:] + [4 + s]
    return True


def main(cfg: Config) -> None:
    rng = random.Random(cfg.seed)
    c = Counter()
    lengths = []
    while c["walks"] < cfg.walks:
        X, Y = rand_point(rng, cfg.x_bound), rand_point(rng, cfg.y_bound)
        if point_eq(X, Y):
            continue
        try:
            seq = b_sequence(X, geodesic_walk(X, Y))
        except (DegenerateGeodesic, WalkAmbiguity):
            c["skipped"] += 1
            continue
        c["walks"] += 1
        b = list(seq.values)
        lengths.append(len(b))
        c["start 0,1,1,1,3"] += b[:5] == [0, 1, 1, 1, 3][: len(b)]
        c["step relations"] += seq.step_relations_hold()
        c["lag-4 increase"] += seq.increasing_at_lag4()
        c["four-term recurrence"] += seq.recurrence_holds()
        f = fifo(seq.dropped)
        c["fifo drop order"] += f
        c["fifo and recurrence"] += f and seq.recurrence_holds()
    print(f"walks {c['walks']}, skipped {c['skipped']}, mean length {sum(lengths) / len(lengths):.1f}")
    for key in ("start 0,1,1,1,3", "step relations", "lag-4 increase", "four-term recurrence", "fifo drop order", "fifo and recurrence"):
        print(f"  {key:22s} {c[key]:5d} / {c['walks']}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--walks", type=int, default=Config.walks)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    main(Config(walks=a.walks, seed=a.seed))
