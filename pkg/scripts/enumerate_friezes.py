"""Count closed simple paths by period and write one JSON file per period."""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import dataclass
from pathlib import Path

from tetrafarey import jsonio
from tetrafarey.friezes import SearchConfig, enumerate_closed_paths, frieze_from_closed_path, real_quiddity


@dataclass(frozen=True)
class Config:
    periods: tuple[int, ...] = (4, 5, 6, 7)
    out: Path | None = None
    group: str = "pgl2"
    conjugation: bool = True


def main(cfg: Config) -> None:
    search = SearchConfig(group=cfg.group, conjugation=cfg.conjugation)
    if cfg.out:
        cfg.out.mkdir(parents=True, exist_ok=True)
    print("period  classes  raw  real  nodes  seconds")
    for m in cfg.periods:
        t0 = time.perf_counter()
        res = enumerate_closed_paths(m, config=search)
        dt = time.perf_counter() - t0
        real = [real_quiddity(c) for c in res.paths]
        print(f"{m:6d}  {len(res.paths):7d}  {res.raw_count:4d}  {sum(r is not None for r in real):4d}  {res.nodes:5d}  {dt:7.2f}")
        if cfg.out:
            rows = [
                {"points": list(c.points), "quiddity": list(q), "real_quiddity": r, "band": [list(x) for x in frieze_from_closed_path(c).band]}
                for c, q, r in zip(res.paths, res.quiddities, real)
            ]
            text = json.dumps({"schema": jsonio.SCHEMA, "period": m, "classes": jsonio.to_jsonable(rows)})
            (cfg.out / f"period_{m}.json").write_text(text + "\n")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("periods", type=int, nargs="*", default=list(Config.periods))
    ap.add_argument("--out", type=Path)
    ap.add_argument("--group", choices=["pgl2", "sl2"], default="pgl2")
    ap.add_argument("--no-conjugation", action="store_true")
    a = ap.parse_args()
    main(Config(tuple(a.periods), a.out, a.group, not a.no_conjugation))
