"""主定理のデモ（G⁽³⁾ と Δ_G を並べて表示）"""

import argparse

from descent3.catalog import catalog_specs
from descent3.descent import verify_main_theorem
from descent3.groups import make_group


def main():
    parser = argparse.ArgumentParser(description="主定理デモ")
    parser.add_argument("--p", type=int, default=2, help="素数（デフォルト: 2）")
    parser.add_argument("--order-cap", type=int, default=32, help="群の位数上限（デフォルト: 32）")
    args = parser.parse_args()

    print(f"=== p = {args.p}, |G| ≤ {args.order_cap} ===")
    for spec in catalog_specs(args.p, args.order_cap):
        report = verify_main_theorem(make_group(spec), args.p)
        w = report.to_dict()["witnesses"]
        print(f"  {spec:32s} GRT={'o' if report.grt.passed else 'x'} "
              f"|G⁽²⁾|={w['g2_order']:<4d} |G⁽³⁾|={w['g3_order']:<4d} |Δ|={w['delta_order']:<4d} "
              f"→ {report.verdict}")


if __name__ == "__main__":
    main()
