"""Print the periodic example tiling and tabulate its block law on a larger window."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from tetrafarey.catalogue import block_law_exponent, periodic_paths, stated_block_exponent
from tetrafarey.eisenstein import sigma_pow
from tetrafarey.tilings import ProductMode, check_window, tiling_from_paths


@dataclass(frozen=True)
class Config:
    size: int = 12
    mode: str = "scalar"


def fmt(z) -> str:
    a, b = z
    if not b:
        return str(a)
    if not a:
        return f"{b}s"
    return f"{a}{b:+d}s"


def main(cfg: Config) -> None:
    u, v = periodic_paths(range(cfg.size), range(cfg.size))
    w = tiling_from_paths(u, v, ProductMode(cfg.mode))
    print(f"window {cfg.size}x{cfg.size}, mode {cfg.mode}, tame SL2: {check_window(w).ok}")
    width = max(len(fmt(x)) for row in w.entries for x in row)
    for row in w.entries:
        print(" ".join(fmt(x).rjust(width) for x in row))
    if ProductMode(cfg.mode) is not ProductMode.SCALAR:
        return
    by_class = {}
    for i in range(cfg.size):
        for j in range(cfg.size):
            i0, k, j0, l = i % 4, i // 4, j % 4, j // 4
            law = w[i, j] == sigma_pow(block_law_exponent(i0, j0, k, l)) * w[i0, j0]
            uniform = w[i, j] == sigma_pow(stated_block_exponent(k, l)) * w[i0, j0]
            hit = by_class.setdefault((i0 % 2, j0 % 2), [0, 0, 0])
            hit[0] += law
            hit[1] += uniform
            hit[2] += 1
    print("\nparity class (row, col): parity-dependent law / uniform sigma^(l-k) law / cells")
    for key in sorted(by_class):
        print(f"  {key}: {by_class[key][0]} / {by_class[key][1]} / {by_class[key][2]}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=Config.size)
    ap.add_argument("--mode", choices=["scalar", "det"], default=Config.mode)
    a = ap.parse_args()
    main(Config(a.size, a.mode))
