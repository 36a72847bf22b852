"""Baer 和のデモ（[ω₄] + [ω₆] = [ω₅]）"""

import argparse

from descent3.extensions import are_equivalent, baer_sum, classify_middle, omega_catalog


def main():
    parser = argparse.ArgumentParser(description="Baer和デモ")
    parser.add_argument("--p", type=int, default=3, help="奇素数（デフォルト: 3）")
    args = parser.parse_args()

    p = args.p
    left, right = omega_catalog(4, p), omega_catalog(6, p)
    print(f"=== p = {p} ===")
    for w in (left, right):
        print(f"  {w.name}: 中間群 {classify_middle(w.middle)}")

    total = baer_sum(left, right)
    print(f"\n=== {left.name} + {right.name} ===")
    print(f"  中間群: {classify_middle(total.middle)}（位数 {total.middle.order}）")
    for i in (4, 5, 6):
        other = omega_catalog(i, p)
        mark = "同値" if are_equivalent(total, other) is not None else "-"
        print(f"  omega{i}: {mark}")


if __name__ == "__main__":
    main()
