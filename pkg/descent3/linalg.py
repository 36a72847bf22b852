"""法 m の線形代数

Z/p^k 上の Smith 標準形（変換行列つき）、合成数の法に対する CRT 分解、
F_p 上の零空間・階数・連立方程式（galois）をまとめる。
行列はすべて numpy の int64 で、成分は [0, m) に正規化して扱う。
"""

from dataclasses import dataclass
from functools import cache

import galois
import numpy as np


@cache
def prime_power_parts(m: int) -> tuple[tuple[int, int, int], ...]:
    """m の素冪分解を (p, k, p^k) の組で返す（m = 1 なら空）"""
    if m < 1:
        raise ValueError(f"法は正の整数: {m}")
    if m == 1:
        return ()
    primes, multiplicities = galois.factors(m)
    return tuple((int(p), int(k), int(p) ** int(k)) for p, k in zip(primes, multiplicities))


@cache
def crt_idempotents(m: int) -> tuple[int, ...]:
    """各素冪成分で 1、他の成分で 0 となる冪等元"""
    parts = prime_power_parts(m)
    if len(parts) == 1:
        return (1,)
    moduli = [q for _, _, q in parts]
    idempotents = []
    for i in range(len(parts)):
        residues = [1 if j == i else 0 for j in range(len(parts))]
        idempotents.append(int(galois.crt(residues, moduli)) % m)
    return tuple(idempotents)


def crt_combine(parts: list[np.ndarray], m: int) -> np.ndarray:
    """素冪成分ごとの剰余を法 m の値にまとめる"""
    result = np.zeros_like(np.asarray(parts[0], dtype=np.int64))
    for e, part in zip(crt_idempotents(m), parts):
        result = (result + e * np.asarray(part, dtype=np.int64)) % m
    return result


def valuations(a: np.ndarray, p: int, k: int) -> np.ndarray:
    """成分ごとの p 進付値（0 は k とみなす）"""
    v = np.zeros(a.shape, dtype=np.int64)
    pj = 1
    for _ in range(k):
        pj *= p
        v += (a % pj == 0)
    return v


@dataclass(frozen=True)
class LocalSNF:
    """Z/p^k 上の Smith 標準形 left·A·right = diag(p^v_0, ..., p^v_{r-1}, 0, ...)"""

    prime: int
    exponent: int
    shape: tuple[int, int]
    pivots: tuple[int, ...]
    left: np.ndarray | None
    left_inv: np.ndarray | None
    right: np.ndarray | None
    right_inv: np.ndarray | None

    @property
    def modulus(self) -> int:
        return self.prime ** self.exponent

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def column_valuation(self, i: int) -> int:
        """i 列目の対角成分の付値（零列は exponent）"""
        return self.pivots[i] if i < self.rank else self.exponent

    def row_valuation(self, i: int) -> int:
        return self.pivots[i] if i < self.rank else self.exponent


def snf_local(matrix: np.ndarray, p: int, k: int, *,
              track_left: bool = False, track_right: bool = False) -> LocalSNF:
    """Z/p^k 上で最小付値ピボットにより Smith 標準形を求める"""
    m = p ** k
    a = np.array(matrix, dtype=np.int64) % m
    if a.ndim != 2:
        raise ValueError("2次元配列が必要です")
    rows, cols = a.shape
    u = np.eye(rows, dtype=np.int64) if track_left else None
    u_inv = np.eye(rows, dtype=np.int64) if track_left else None
    v = np.eye(cols, dtype=np.int64) if track_right else None
    v_inv = np.eye(cols, dtype=np.int64) if track_right else None
    pivots: list[int] = []

    for t in range(min(rows, cols)):
        sub = a[t:, t:]
        if not sub.any():
            break
        vals = valuations(sub, p, k)
        i, j = np.unravel_index(int(np.argmin(vals)), vals.shape)
        i, j = int(i) + t, int(j) + t
        val = int(vals[i - t, j - t])

        if i != t:
            a[[t, i]] = a[[i, t]]
            if u is not None:
                u[[t, i]] = u[[i, t]]
                u_inv[:, [t, i]] = u_inv[:, [i, t]]
        if j != t:
            a[:, [t, j]] = a[:, [j, t]]
            if v is not None:
                v[:, [t, j]] = v[:, [j, t]]
                v_inv[[t, j]] = v_inv[[j, t]]

        pivot = p ** val
        unit = int(a[t, t]) // pivot
        if unit != 1:
            unit_inv = pow(unit, -1, m)
            a[t] = a[t] * unit_inv % m
            if u is not None:
                u[t] = u[t] * unit_inv % m
                u_inv[:, t] = u_inv[:, t] * unit % m

        f = a[t + 1:, t] // pivot
        if f.any():
            a[t + 1:] = (a[t + 1:] - np.outer(f, a[t])) % m
            if u is not None:
                u[t + 1:] = (u[t + 1:] - np.outer(f, u[t])) % m
                u_inv[:, t] = (u_inv[:, t] + u_inv[:, t + 1:] @ f) % m

        g = a[t, t + 1:] // pivot
        if g.any():
            a[:, t + 1:] = (a[:, t + 1:] - np.outer(a[:, t], g)) % m
            if v is not None:
                v[:, t + 1:] = (v[:, t + 1:] - np.outer(v[:, t], g)) % m
                v_inv[t] = (v_inv[t] + g @ v_inv[t + 1:]) % m

        pivots.append(val)

    return LocalSNF(p, k, (rows, cols), tuple(pivots), u, u_inv, v, v_inv)


def kernel_local(matrix: np.ndarray, p: int, k: int) -> list[tuple[np.ndarray, int]]:
    """A·x ≡ 0 (mod p^k) の解群の巡回分解 [(生成元, 位数), ...]"""
    m = p ** k
    snf = snf_local(matrix, p, k, track_right=True)
    cols = snf.shape[1]
    gens = []
    for i in range(cols):
        val = snf.column_valuation(i)
        if val == 0:
            continue
        gens.append((snf.right[:, i] * p ** (k - val) % m, p ** val))
    return gens


def solve_local(matrix: np.ndarray, b: np.ndarray, p: int, k: int) -> np.ndarray | None:
    """A·x ≡ b (mod p^k) の解を一つ返す（解なしなら None）"""
    m = p ** k
    a = np.asarray(matrix, dtype=np.int64)
    rows, cols = a.shape
    b = np.asarray(b, dtype=np.int64) % m
    if rows == 0:
        return np.zeros(cols, dtype=np.int64)
    snf = snf_local(a, p, k, track_left=True, track_right=True)
    w = snf.left @ b % m
    y = np.zeros(cols, dtype=np.int64)
    for i in range(rows):
        val = snf.row_valuation(i)
        if i < snf.rank:
            if w[i] % p ** val:
                return None
            y[i] = w[i] // p ** val
        elif w[i]:
            return None
    return snf.right @ y % m


def solve_mod(matrix: np.ndarray, b: np.ndarray, m: int) -> np.ndarray | None:
    """A·x ≡ b (mod m)。素冪成分ごとに解いて CRT で貼り合わせる"""
    a = np.asarray(matrix, dtype=np.int64)
    parts = prime_power_parts(m)
    if not parts:
        return np.zeros(a.shape[1], dtype=np.int64)
    solutions = []
    for p, k, q in parts:
        x = solve_local(a % q, np.asarray(b) % q, p, k)
        if x is None:
            return None
        solutions.append(x)
    return crt_combine(solutions, m)


def kernel_mod(matrix: np.ndarray, m: int) -> list[tuple[np.ndarray, int]]:
    """A·x ≡ 0 (mod m) の解群の生成元と位数（素冪成分ごとの巡回分解）"""
    a = np.asarray(matrix, dtype=np.int64)
    gens = []
    parts = prime_power_parts(m)
    for e, (p, k, q) in zip(crt_idempotents(m) if parts else (), parts):
        for vec, order in kernel_local(a % q, p, k):
            gens.append((vec * e % m, order))
    return gens


# --- F_p -------------------------------------------------------------------

def _field(p: int):
    return galois.GF(p)


def rank_fp(matrix: np.ndarray, p: int) -> int:
    a = np.asarray(matrix, dtype=np.int64) % p
    if a.size == 0:
        return 0
    return int(np.linalg.matrix_rank(_field(p)(a)))


def nullspace_fp(matrix: np.ndarray, p: int) -> np.ndarray:
    """{x : A·x = 0} の基底を行として返す"""
    a = np.asarray(matrix, dtype=np.int64) % p
    cols = a.shape[1]
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if a.shape[0] == 0 or not a.any():
        return np.eye(cols, dtype=np.int64)
    basis = np.asarray(_field(p)(a).null_space(), dtype=np.int64)
    return basis.reshape(-1, cols)


def solve_fp(matrix: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """A·x = b over F_p（自由変数は 0）。解なしなら None"""
    a = np.asarray(matrix, dtype=np.int64) % p
    rows, cols = a.shape
    b = np.asarray(b, dtype=np.int64).reshape(rows) % p
    if rows == 0 or cols == 0:
        return np.zeros(cols, dtype=np.int64) if not b.any() else None
    aug = np.concatenate([a, b[:, None]], axis=1)
    reduced = np.asarray(_field(p)(aug).row_reduce(), dtype=np.int64)
    x = np.zeros(cols, dtype=np.int64)
    for row in reduced:
        nz = np.flatnonzero(row)
        if nz.size == 0:
            continue
        lead = int(nz[0])
        if lead == cols:
            return None
        x[lead] = row[cols]
    return x


def in_span_fp(basis: np.ndarray, vector: np.ndarray, p: int) -> bool:
    basis = np.asarray(basis, dtype=np.int64)
    vector = np.asarray(vector, dtype=np.int64).reshape(1, -1)
    if basis.size == 0:
        return not (vector % p).any()
    return rank_fp(np.vstack([basis, vector]), p) == rank_fp(basis, p)


def independent_rows_fp(vectors: np.ndarray, p: int) -> list[int]:
    """先頭から貪欲に一次独立な行の添字を選ぶ（全体の階数に達したら打ち切る）"""
    vectors = np.asarray(vectors, dtype=np.int64) % p
    target = rank_fp(vectors, p) if vectors.size else 0
    chosen: list[int] = []
    current = np.zeros((0, vectors.shape[1]), dtype=np.int64)
    rank = 0
    for i, vec in enumerate(vectors):
        if rank == target:
            break
        if not vec.any():
            continue
        trial = np.vstack([current, vec[None, :]])
        r = rank_fp(trial, p)
        if r > rank:
            chosen.append(i)
            current, rank = trial, r
    return chosen
