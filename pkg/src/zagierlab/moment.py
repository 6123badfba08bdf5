"""Spectral moment plumbing at desk scale.

Covers ingestion of Hecke eigenvalue records, the central value of the
symmetric-square L-function from its smoothed sum, the spectral weight, and
the bilinear sums over (q, r) weighted by Zagier L-values.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

from . import arith
from .asymptotics import V_weight_array, h_weight
from .lseries import zagier_L_half

VARIANTS = ("**", "*4", "4*", "44")
CSV_HEADER = ("T", "G", "variant", "value", "terms", "range_constant")


class SpectralFormatError(ValueError):
    """Raised for unreadable or invalid spectral records; messages carry line numbers."""

    def __init__(self, problems: list[str]):
        self.problems = problems
        super().__init__("; ".join(problems))


class MissingEigenvalueError(KeyError):
    pass


@dataclass(frozen=True)
class SpectralDatum:
    t: float
    lam: dict[int, float]
    alpha: float = 1.0
    source: str = ""

    @property
    def n_max(self) -> int:
        return max(self.lam)


@dataclass(frozen=True)
class MomentConfig:
    T: float
    G: float
    N_weight: int = 1
    afe_truncation: int = 8192
    tolerance: float = 1e-4
    theta: float = 1 / 6
    range_constant: float = 10.0

    def __post_init__(self):
        if not (self.T > 0 and self.G > 0):
            raise ValueError("T and G must be positive")
        if self.G > self.T:
            raise ValueError(f"need G <= T, got G={self.G}, T={self.T}")
        if self.N_weight < 1:
            raise ValueError("N_weight must be a positive integer")
        if self.afe_truncation < self.T:
            raise ValueError("afe_truncation must be at least T")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")

    @property
    def alpha(self) -> float:
        return (1 - 4 * self.theta) / (3 + 4 * self.theta)

    @property
    def M0(self) -> float:
        e = 2 + 4 * self.theta
        return self.T ** (1 / e) * self.G ** ((3 + 4 * self.theta) / e)


# ---------------------------------------------------------------------------
# ingestion

_FIELD = re.compile(r"(\w+)=(\S*)")


def _parse_lambda(text: str) -> dict[int, float]:
    lam = {}
    for item in text.split(","):
        n, sep, v = item.partition(":")
        if not sep:
            raise ValueError(f"lambda entry {item!r} is not n:value")
        n = int(n)
        if n <= 0:
            raise ValueError(f"lambda index {n} is not positive")
        if n in lam:
            raise ValueError(f"lambda index {n} repeated")
        lam[n] = float(v)
    return lam


def parse_record(line: str, where: str = "") -> SpectralDatum:
    fields = dict(_FIELD.findall(line))
    leftover = _FIELD.sub("", line).strip()
    if leftover:
        raise ValueError(f"unrecognised text {leftover!r}")
    unknown = set(fields) - {"t", "alpha", "lambda", "source"}
    if unknown:
        raise ValueError(f"unknown fields {sorted(unknown)}")
    if "t" not in fields or "lambda" not in fields:
        raise ValueError("record needs t= and lambda=")
    t = float(fields["t"])
    alpha = float(fields.get("alpha", 1.0))
    if not (t > 0 and math.isfinite(t)):
        raise ValueError(f"t={t} is not a positive real")
    if not (alpha >= 0 and math.isfinite(alpha)):
        raise ValueError(f"alpha={alpha} is negative or not finite")
    return SpectralDatum(t, _parse_lambda(fields["lambda"]), alpha, fields.get("source", where))


def hecke_violations(d: SpectralDatum, tol: float = 1e-6, sample: int = 64) -> list[str]:
    """Problems with λ(1) and the Hecke relation on stored pairs m <= n, mn <= n_max."""
    problems = []
    if abs(d.lam.get(1, math.nan) - 1.0) > 1e-12:
        problems.append(f"lambda(1) = {d.lam.get(1)} is not 1")
        return problems
    stored = sorted(n for n in d.lam if n > 1)
    checked = 0
    for i, m in enumerate(stored):
        for n in stored[i:]:
            if m * n > d.n_max or checked >= sample:
                break
            g = math.gcd(m, n)
            needed = [m * n // (e * e) for e in arith.divisors(g)]
            if any(k not in d.lam for k in needed):
                continue
            rhs = math.fsum(d.lam[k] for k in needed)
            if abs(d.lam[m] * d.lam[n] - rhs) > tol:
                problems.append(f"Hecke relation fails for (m, n) = ({m}, {n}): {d.lam[m] * d.lam[n]!r} vs {rhs!r}")
            checked += 1
    return problems


def ingest_spectral(path, hecke_tol: float = 1e-6) -> list[SpectralDatum]:
    """Read one record per line; '#' starts a comment, blank lines are skipped."""
    path = Path(path)
    data, problems = [], []
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{path.name}:{lineno}"
        try:
            d = parse_record(line, where)
        except ValueError as exc:
            problems.append(f"line {lineno}: {exc}")
            continue
        bad = hecke_violations(d, hecke_tol)
        if bad:
            problems.extend(f"line {lineno}: {msg}" for msg in bad)
            continue
        data.append(d)
    if problems:
        raise SpectralFormatError(problems)
    return data


def format_record(d: SpectralDatum) -> str:
    lam = ",".join(f"{n}:{d.lam[n]!r}" for n in sorted(d.lam))
    src = f" source={d.source}" if d.source and " " not in d.source else ""
    return f"t={d.t!r} alpha={d.alpha!r} lambda={lam}{src}"


# ---------------------------------------------------------------------------
# Hecke extension


def _prime_power(d: SpectralDatum, p: int, k: int) -> float:
    if k == 0:
        return 1.0
    if p not in d.lam:
        raise MissingEigenvalueError(f"lambda({p}) is not stored (t={d.t}, {d.source})")
    lp = d.lam[p]
    prev, cur = 1.0, lp
    for _ in range(k - 1):
        prev, cur = cur, lp * cur - prev
    return cur


def hecke_extend(d: SpectralDatum, n: int) -> float:
    """λ(n) from the stored λ(p) by the prime-power recursion and multiplicativity."""
    if n < 1:
        raise ValueError("n must be positive")
    out = 1.0
    for p, k in arith.factorize(n):
        out *= _prime_power(d, p, k)
    return out


def square_table(d: SpectralDatum, M: int) -> np.ndarray:
    """λ(m²) for m = 0..M (index 0 unused)."""
    spf = arith.smallest_prime_factor(M)
    out = np.zeros(M + 1)
    out[1] = 1.0
    cache: dict[tuple[int, int], float] = {}
    for m in range(2, M + 1):
        p = int(spf[m])
        rest, k = m, 0
        while rest % p == 0:
            rest //= p
            k += 1
        key = (p, 2 * k)
        if key not in cache:
            cache[key] = _prime_power(d, p, 2 * k)
        out[m] = cache[key] * out[rest]
    return out


# ---------------------------------------------------------------------------
# spectral side


def weight_h(cfg: MomentConfig, r):
    return h_weight(r, cfg.T, cfg.G, cfg.N_weight)


@dataclass(frozen=True)
class Sym2Value:
    value: float
    imag: float
    cutoff: int
    tail: float
    converged: bool


def _sym2_block(lam_sq: np.ndarray, t: float, lo: int, hi: int, tol: float) -> tuple[complex, float]:
    m = np.arange(lo + 1, hi + 1)
    terms = lam_sq[lo + 1 : hi + 1] / np.sqrt(m) * V_weight_array(m.astype(float), t, tol=tol * 1e-3)
    return complex(terms.sum()), float(np.abs(terms).sum())


def sym2_central(d: SpectralDatum, cfg: MomentConfig, cutoff: int | None = None) -> Sym2Value:
    """2 Σ_m λ(m²) m^{-1/2} V(m, t) at s = 1/2.

    With no explicit cutoff the sum starts at m <= 10 t and doubles until the
    absolute size of the newest dyadic block is below the tolerance, capped at
    afe_truncation.  ``tail`` is the absolute size of the block after the one
    kept, measured on the actual terms.
    """
    tol = cfg.tolerance
    if cutoff is not None:
        if cutoff < 1:
            raise ValueError("cutoff must be positive")
        try:
            lam_sq = square_table(d, 2 * cutoff)
        except MissingEigenvalueError:
            lam_sq = None
        if lam_sq is None:
            head, _ = _sym2_block(square_table(d, cutoff), d.t, 0, cutoff, tol)
            return Sym2Value(2 * head.real, 2 * head.imag, cutoff, math.inf, False)
        head, _ = _sym2_block(lam_sq, d.t, 0, cutoff, tol)
        _, tail = _sym2_block(lam_sq, d.t, cutoff, 2 * cutoff, tol)
        return Sym2Value(2 * head.real, 2 * head.imag, cutoff, 2 * tail, 2 * tail < tol)
    cap = cfg.afe_truncation
    M = min(cap, max(1, math.ceil(10 * d.t)))
    lam_sq = square_table(d, min(cap, 2 * M))
    total, _ = _sym2_block(lam_sq, d.t, 0, M, tol)
    tail = math.inf
    while True:
        hi = min(cap, 2 * M)
        if hi == M:
            break
        if len(lam_sq) <= hi:
            lam_sq = square_table(d, min(cap, 2 * hi))
        block, size = _sym2_block(lam_sq, d.t, M, hi, tol)
        total += block
        M = hi
        tail = 2 * size
        if tail < tol:
            break
    return Sym2Value(2 * total.real, 2 * total.imag, M, tail, tail < tol)


def moment_sum(data: Iterable[SpectralDatum], cfg: MomentConfig, values: dict | None = None) -> float:
    """Σ_j h(t_j) α_j L(sym² u_j, 1/2)²; ``values`` may supply precomputed central values by t."""
    data = list(data)
    if not data:
        raise ValueError("moment_sum needs at least one spectral datum")
    terms = []
    for d in data:
        L = values[d.t] if values is not None and d.t in values else sym2_central(d, cfg).value
        terms.append(float(weight_h(cfg, d.t)) * d.alpha * L * L)
    return math.fsum(terms)


# ---------------------------------------------------------------------------
# divisibility through additive characters


def ramanujan_sum(c: int, l: int) -> int:
    """Σ_{(a,c)=1} e(al/c) = Σ_{d | (c, l)} μ(c/d) d."""
    return sum(arith.mobius(c // d) * d for d in arith.divisors(math.gcd(c, l)))


def _ramanujan_row(c: int) -> np.ndarray:
    units = np.array([math.gcd(a, c) == 1 for a in range(c)], dtype=complex)
    return c * np.fft.ifft(units)


def delta_identity_check(q: int, l_max: int) -> bool:
    """(1/q) Σ_{c|q} Σ_{(a,c)=1} e(al/c) == [q | l] for l = 1..l_max.

    Checked twice: exact integers from the Möbius form of the Ramanujan sum,
    and floating sums of the characters (FFT per divisor) that must round to
    the same integers.
    """
    if q < 1 or q > 10**4:
        raise ValueError("delta_identity_check needs 1 <= q <= 10^4")
    ls = np.arange(1, l_max + 1)
    target = np.where(ls % q == 0, q, 0)
    exact = np.zeros(l_max, dtype=np.int64)
    floating = np.zeros(l_max, dtype=complex)
    for c in arith.divisors(q):
        exact += np.array([ramanujan_sum(c, int(l)) for l in range(c)], dtype=np.int64)[ls % c]
        floating += _ramanujan_row(c)[ls % c]
    rounded = np.rint(floating.real).astype(np.int64)
    close = np.abs(floating - rounded) < 1e-8 * max(q, 1)
    return bool(np.all(exact == target) and np.all(rounded == target) and np.all(close))


# ---------------------------------------------------------------------------
# bilinear sums over (q, r)


def _dyadic(x: float) -> int:
    return 1 << (int(x).bit_length() - 1)


@dataclass
class ZagierSideResult:
    T: float
    G: float
    variant: str
    value: complex | float
    terms: int
    range_constant: float
    blocks: Counter = field(default_factory=Counter)

    def csv_row(self) -> tuple:
        return (self.T, self.G, self.variant, float(np.real(self.value)), self.terms, self.range_constant)


def _residue_ok(n: int, cls: str) -> bool:
    return cls == "*" or n % 4 == 0


def side_ranges(cfg: MomentConfig, use_m0: bool = True):
    """Yield (q, r_lo, r_hi) for T^α < q <= T/G² and qG²/K <= r <= K T (K the range constant).

    The q cap uses constant 1: the sum is empty exactly when T/G² < ⌊T^α⌋ + 1,
    in particular whenever G >= √T.
    """
    K = cfg.range_constant
    q_lo = math.floor(cfg.T**cfg.alpha) + 1
    q_hi = math.floor(cfg.T / cfg.G**2)
    r_hi = math.floor(K * cfg.T)
    for q in range(q_lo, q_hi + 1):
        r_lo = max(math.ceil(q * cfg.G**2 / K), q + 1)
        if use_m0:
            r_lo = max(r_lo, math.floor(q + 4 * cfg.M0) + 1)
        if r_lo <= r_hi:
            yield q, r_lo, r_hi


def _envelope(cfg: MomentConfig, q: int, r: np.ndarray, signed: bool) -> np.ndarray:
    """I((r-q)/4, 2(r+q)/(r-q)) with the oscillation kept when ``signed``."""
    A = np.arccosh((r + q) / (r - q))
    V = V_weight_array((r - q) / 4.0, cfg.T, tol=1e-12)
    gauss = np.exp(-((cfg.G * A) ** 2))
    if signed:
        return np.exp(-2j * cfg.T * A) * gauss * V
    return gauss * np.abs(V)


def zagier_side_sum(cfg: MomentConfig, variant: str = "**", signed: bool = False, use_m0: bool = True,
                    residue: str | None = None) -> ZagierSideResult:
    """G T^{1/2} Σ_q Σ_r w(q, r) over the (q, r) box of ``side_ranges``.

    w is |L_{qr}(1/2)| |I| / ((qr)^{1/4} (r-q)^{1/2}) by default and the
    signed complex term when ``signed``.  ``variant`` restricts q (first
    symbol) and r (second symbol) to multiples of 4.  ``residue="q=r"``
    instead keeps only r = q mod 4, the sum the four variants rebuild.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    qa, rb = variant
    parts, count = [], 0
    blocks: Counter = Counter()
    for q, r_lo, r_hi in side_ranges(cfg, use_m0):
        if not _residue_ok(q, qa):
            continue
        r = np.arange(r_lo, r_hi + 1)
        if rb == "4":
            r = r[r % 4 == 0]
        if residue == "q=r":
            r = r[(r - q) % 4 == 0]
        L = np.array([zagier_L_half(q * int(x)) for x in r])
        keep = L != 0
        r, L = r[keep], L[keep]
        if not len(r):
            continue
        rf = r.astype(float)
        base = 1.0 / ((q * rf) ** 0.25 * np.sqrt(rf - q))
        I = _envelope(cfg, q, rf, signed)
        w = L * base * I if signed else np.abs(L) * base * I
        parts.append(w)
        count += len(r)
        for c in arith.divisors(q):
            for x in r:
                blocks[(_dyadic(c), _dyadic(q // c), _dyadic(q * int(x)))] += 1
    scale = cfg.G * math.sqrt(cfg.T)
    if parts:
        allw = np.concatenate(parts)
        value = complex(math.fsum(allw.real), math.fsum(allw.imag)) if signed else math.fsum(allw)
    else:
        value = 0j if signed else 0.0
    return ZagierSideResult(cfg.T, cfg.G, variant, scale * value, count, cfg.range_constant, blocks)


def parity_decomposition(cfg: MomentConfig, signed: bool = True, use_m0: bool = True) -> tuple[complex, complex]:
    """(direct sum over r = q mod 4, D** - D*4 - D4* + 2 D44)."""
    direct = zagier_side_sum(cfg, "**", signed, use_m0, residue="q=r").value
    d = {v: zagier_side_sum(cfg, v, signed, use_m0).value for v in VARIANTS}
    return direct, d["**"] - d["*4"] - d["4*"] + 2 * d["44"]


__all__ = [
    "SpectralDatum",
    "MomentConfig",
    "SpectralFormatError",
    "MissingEigenvalueError",
    "ingest_spectral",
    "hecke_extend",
    "square_table",
    "weight_h",
    "sym2_central",
    "moment_sum",
    "ramanujan_sum",
    "delta_identity_check",
    "zagier_side_sum",
    "parity_decomposition",
    "side_ranges",
]
