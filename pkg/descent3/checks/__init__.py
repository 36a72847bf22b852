from ..catalog import catalog_specs, equivalence_specs
from ..errors import PreconditionError
from ..report import CheckResult
from ..settings import SMALL_ORDER_CAPS
from .cohomology import (
    COHOMOLOGY_CHECKS,
    check_cohomology_engine,
    check_cohomology_identities,
    check_five_term,
    check_pontryagin_duality,
    check_series_duality,
)
from .descent import (
    DESCENT_CHECKS,
    check_corollary_lists,
    check_counterexamples,
    check_distinguished_routes,
    check_epi_lifting,
    check_list_necessity,
    check_local_field_model,
    check_main_theorem,
    check_wgroup,
)
from .extensions import (
    EXTENSION_CHECKS,
    check_baer_sum_modular,
    check_embedding_bijection,
    check_extension_classification,
)

ALL_CHECKS = EXTENSION_CHECKS + COHOMOLOGY_CHECKS + DESCENT_CHECKS

# チェック名 → required パラメータのマッピングを構築
_CHECK_SCHEMA: dict[str, list[str]] = {}
_CHECK_FLAGS: dict[str, dict] = {}
for _check in ALL_CHECKS:
    _desc = _check["check"]
    _CHECK_SCHEMA[_desc["name"]] = _desc["parameters"].get("required", [])
    _CHECK_FLAGS[_desc["name"]] = _desc


def check_names() -> list[str]:
    return sorted(_CHECK_SCHEMA)


def _validate_args(name: str, args: dict) -> str | None:
    """必須パラメータの検証。エラーがあればメッセージを返す"""
    required = _CHECK_SCHEMA.get(name, [])
    missing = [r for r in required if r not in args]
    if missing:
        return f"エラー: {name}() に必須パラメータが不足: {', '.join(missing)}。必要: {', '.join(required)}"
    return None


def run_check(name: str, args: dict) -> CheckResult:
    """チェック呼び出しのディスパッチ"""
    error = _validate_args(name, args)
    if error:
        raise PreconditionError(error.removeprefix("エラー: "))

    dispatch = {
        "baer_sum_modular": lambda: check_baer_sum_modular(args["p"]),
        "extension_classification": lambda: check_extension_classification(args["p"]),
        "embedding_bijection": lambda: check_embedding_bijection(args["group"], args["p"]),
        "cohomology_engine": lambda: check_cohomology_engine(args["p"]),
        "cohomology_identities": lambda: check_cohomology_identities(args["group"], args["p"]),
        "pontryagin_duality": lambda: check_pontryagin_duality(args["group"], args["p"]),
        "five_term": lambda: check_five_term(args["group"], args["p"]),
        "series_duality": lambda: check_series_duality(args["group"], args["p"]),
        "main_theorem": lambda: check_main_theorem(args["group"], args["p"]),
        "counterexamples": lambda: check_counterexamples(args["p"]),
        "distinguished_routes": lambda: check_distinguished_routes(args["group"], args["p"]),
        "corollary_lists": lambda: check_corollary_lists(args["group"], args["p"]),
        "local_field_model": lambda: check_local_field_model(args["p"]),
        "list_necessity": lambda: check_list_necessity(args["p"]),
        "epi_lifting": lambda: check_epi_lifting(args["group"], args["p"]),
        "wgroup": lambda: check_wgroup(args["group"], args["p"]),
    }
    handler = dispatch.get(name)
    if handler:
        return handler()
    raise PreconditionError(f"不明なチェック: {name}")


def plan_checks(primes, cap: int, names=None) -> list[tuple[str, dict]]:
    """verify-all で実行する (チェック名, 引数) の一覧（名前、群、p の順）"""
    jobs = []
    for name in sorted(names or _CHECK_SCHEMA):
        if name not in _CHECK_SCHEMA:
            raise PreconditionError(f"不明なチェック: {name}")
        flags = _CHECK_FLAGS[name]
        per_group = "group" in _CHECK_SCHEMA[name]
        for p in primes:
            if flags.get("odd_only") and p == 2:
                continue
            if not per_group:
                if name == "local_field_model" and p ** 4 > cap:
                    continue
                jobs.append((name, {"p": p}))
                continue
            limit = min(cap, SMALL_ORDER_CAPS.get(p, cap)) if flags.get("small") else cap
            specs = equivalence_specs(p, limit) if flags.get("equivalence") else catalog_specs(p, limit)
            jobs.extend((name, {"group": spec, "p": p}) for spec in specs)
    return jobs
