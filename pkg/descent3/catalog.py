"""verify-all が回す群の一覧（素数ごと）"""

from .groups import parse_group_spec

CATALOG: dict[int, tuple[str, ...]] = {
    2: (
        "cyclic:1",
        "cyclic:2",
        "cyclic:4",
        "cyclic:8",
        "cyclic:16",
        "elementary:2:2",
        "elementary:2:3",
        "elementary:2:4",
        "direct:cyclic:4,cyclic:2",
        "direct:cyclic:4,cyclic:4",
        "direct:cyclic:8,cyclic:2",
        "dihedral:8",
        "quaternion:8",
        "dihedral:16",
        "direct:dihedral:8,cyclic:2",
        "semidirect:8,2,5",
        "direct:quaternion:8,cyclic:2",
        "direct:cyclic:4,cyclic:8",
        "direct:dihedral:8,cyclic:4",
    ),
    3: (
        "cyclic:1",
        "cyclic:3",
        "cyclic:9",
        "cyclic:27",
        "cyclic:81",
        "elementary:3:2",
        "elementary:3:3",
        "direct:cyclic:9,cyclic:3",
        "direct:cyclic:9,cyclic:9",
        "heisenberg:3",
        "modular:3",
        "semidirect:9,9,4",
        "direct:cyclic:27,cyclic:9",
        "direct:modular:3,cyclic:3",
        "direct:heisenberg:3,cyclic:3",
    ),
}

# 区別部分群の三通りの求め方を突き合わせる群
EQUIVALENCE_GROUPS: dict[int, tuple[str, ...]] = {
    2: ("dihedral:8", "quaternion:8", "cyclic:8", "direct:cyclic:4,cyclic:2"),
    3: ("modular:3", "heisenberg:3", "cyclic:9", "elementary:3:2", "cyclic:27"),
}


def catalog_specs(p: int, cap: int | None = None) -> list[str]:
    """位数が cap 以下の群指定（位数、指定文字列の順）。一覧のない p は空"""
    specs = [(parse_group_spec(s).order(), s) for s in CATALOG.get(p, ())]
    return [s for n, s in sorted(specs) if cap is None or n <= cap]


def equivalence_specs(p: int, cap: int | None = None) -> list[str]:
    return [s for s in EQUIVALENCE_GROUPS.get(p, ())
            if cap is None or parse_group_spec(s).order() <= cap]
