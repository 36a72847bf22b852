"""単純型の Λ 類から作った拡大の一覧"""

import argparse

from descent3.extensions import extension_table


def main():
    parser = argparse.ArgumentParser(description="拡大の分類デモ")
    parser.add_argument("--p", type=int, default=3, help="素数（デフォルト: 3）")
    args = parser.parse_args()

    rows = extension_table(args.p)
    print(f"=== p = {args.p}: {len(rows)} 件 ===")
    for r in rows:
        mark = "o" if r.equivalent else "x"
        print(f"  [{mark}] {r.base:16s} {r.kind:9s} ({r.case}) → omega{r.omega}  中間群 {r.middle}")


if __name__ == "__main__":
    main()
