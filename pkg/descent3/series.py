"""降下 q-中心列 G⁽ⁱ⁺¹⁾ = (G⁽ⁱ⁾)^q [G⁽ⁱ⁾, G]"""

import logging
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    commutator_subgroup,
    normal_join,
    power_subgroup,
    quotient,
)
from .linalg import prime_power_parts

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CentralSeries:
    group: FiniteGroup
    q: int
    terms: tuple[Subgroup, ...]

    def term(self, i: int) -> Subgroup:
        """G⁽ⁱ⁾（1 始まり）。安定した後は最後の項を返す"""
        if i < 1:
            raise PreconditionError(f"項の番号は 1 以上: {i}")
        return self.terms[min(i, len(self.terms)) - 1]

    @property
    def length(self) -> int:
        return len(self.terms)

    def factor_orders(self) -> list[int]:
        return [a.order // b.order for a, b in zip(self.terms, self.terms[1:])]

    def to_dict(self) -> list[list[int]]:
        return [list(t.members) for t in self.terms]


def _check_q(q: int) -> None:
    if q < 2 or len(prime_power_parts(q)) != 1:
        raise PreconditionError(f"q は素冪: {q}")


def next_term(h: Subgroup, g: FiniteGroup, q: int) -> Subgroup:
    """H^q [H, G]（H が正規なら両方とも正規で、積がそのまま部分群）"""
    return normal_join(power_subgroup(h, q), commutator_subgroup(h, g))


def q_central_series(g: FiniteGroup, q: int) -> CentralSeries:
    """隣り合う 2 項が一致するまで G⁽ⁱ⁾ を並べる"""
    _check_q(q)
    terms = [Subgroup.whole(g)]
    while True:
        nxt = next_term(terms[-1], g, q)
        if nxt.members == terms[-1].members:
            break
        terms.append(nxt)
    logger.debug("q_central_series(%s, %d): %s", g.name, q, [t.order for t in terms])
    return CentralSeries(g, q, tuple(terms))


def w_quotient(g: FiniteGroup, q: int) -> tuple[FiniteGroup, GroupHom]:
    """G/G⁽³⁾ と射影"""
    return quotient(g, q_central_series(g, q).term(3))


def maximal_p_quotient(g: FiniteGroup, p: int) -> tuple[FiniteGroup, GroupHom]:
    """p-中心列の極限で割った最大 p-商群"""
    if len(prime_power_parts(p)) != 1 or prime_power_parts(p)[0][1] != 1:
        raise PreconditionError(f"p は素数: {p}")
    series = q_central_series(g, p)
    return quotient(g, series.terms[-1])


def is_central_exponent_step(series: CentralSeries, i: int) -> bool:
    """G⁽ⁱ⁾/G⁽ⁱ⁺¹⁾ が G/G⁽ⁱ⁺¹⁾ の中心に入り、冪数が q を割る"""
    g, q = series.group, series.q
    upper, lower = series.term(i), series.term(i + 1)
    t, inv = g.table, g.inverse
    h = upper.array[:, None]
    x = np.arange(g.order, dtype=np.int64)[None, :]
    comms = t[t[t[inv[h], inv[x]], h], x]
    return bool(lower.mask[g.power_map(q)[upper.array]].all() and lower.mask[comms].all())
