"""The covering generating function, its genus slices, and the genus-0 closed form.

``build_S(N, G)`` assembles

    S = hbar^2 log( sum_n sum_{nu |- n} prod_{cells} (1 + c hbar)^m * dim_nu / n! * hbar^{-2n} s~_nu )

where ``s~_nu`` is the Schur function with ``p_i -> p_i hbar^{i-1}``.  The
coefficient of ``p_nu hbar^{2g}`` is ``b_{g,nu,m}``, a polynomial in ``m``.

Truncation: every term ``p_mu hbar^e`` of the inner sum and of its logarithm
has ``e + 2|mu| >= 0`` and that quantity is additive, so capping it at
``2G - 2 + 2N`` discards only terms that cannot reach genus <= G at weight
<= N.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import InvariantViolation, OutOfBounds, UsageError
from .exactalg import HPoly, M, RatPolyM, binomial_m, cycle_factor_poly, exact_divide, falling_factorial
from .partitions import Partition, diagram_stats, partitions_of, series_key
from .symfunc import PSeries, _schur, log_series


# -- content weights -------------------------------------------------------------


class ContentWeights:
    """A rule ``c -> y_c`` assigning an HPoly to every integer content."""

    name = "custom"

    def value(self, c: int, hi: int | None) -> HPoly:
        raise NotImplementedError

    def __call__(self, c: int, hi: int | None = None) -> HPoly:
        return self.value(c, hi)


class UnitWeights(ContentWeights):
    name = "unit"

    def value(self, c, hi):
        return HPoly.constant(1)


class BMSWeights(ContentWeights):
    """``y_c = (1 + c hbar)^m`` expanded in hbar; ``m`` symbolic unless fixed."""

    name = "bms"

    def __init__(self, m: int | None = None):
        self.m = m

    def value(self, c, hi):
        return _bms_weight(c, hi, self.m)


class TableWeights(ContentWeights):
    """Weights read from a finite table, 1 for contents not listed."""

    name = "table"

    def __init__(self, table: Mapping[int, HPoly | RatPolyM | int | Fraction]):
        self.table = {int(c): v if isinstance(v, HPoly) else HPoly.constant(v) for c, v in table.items()}

    def value(self, c, hi):
        v = self.table.get(c)
        if v is None:
            return HPoly.constant(1)
        return v if hi is None else v.truncate_above(hi)


@lru_cache(maxsize=None)
def _bms_weight(c: int, hi: int | None, m: int | None) -> HPoly:
    if m is not None:
        top = m if hi is None else min(m, hi)
        return HPoly({e: math.comb(m, e) * c**e for e in range(top + 1)})
    if c == 0:
        return HPoly.constant(1)
    if hi is None:
        raise UsageError("symbolic (1 + c hbar)^m needs an upper hbar bound")
    return HPoly({e: binomial_m(M, e) * c**e for e in range(hi + 1)})


def content_product(
    nu: Iterable[int],
    weights: ContentWeights,
    window: tuple[int | None, int | None] = (None, None),
) -> HPoly:
    """``prod_{cells k} y_{c(k)}`` truncated to the hbar window."""
    nu = Partition(nu)
    lo, hi = window
    out = HPoly.constant(1, lo, hi)
    for c in diagram_stats(nu).contents:
        out = out.mul(weights(c, hi))
    return out


def eigenvalue_B(nu: Iterable[int]) -> HPoly:
    """``dim_nu / n! * prod_{cells} (1 + c hbar)``."""
    nu = Partition(nu)
    st = diagram_stats(nu)
    out = HPoly.constant(Fraction(st.dim, math.factorial(nu.size)))
    for c in st.contents:
        out = out * HPoly({0: 1, 1: c})
    return out


# -- assembly -------------------------------------------------------------------


def _content_term(args) -> dict[Partition, HPoly]:
    nu, weights, rescale, lo, hi, cap = args
    n = nu.size
    st = diagram_stats(nu)
    top = hi if cap is None else (cap - 2 * n if hi is None else min(hi, cap - 2 * n))
    y = content_product(nu, weights, (lo, hi)).scale(Fraction(st.dim, math.factorial(n)))
    out = {}
    for mu, c in _schur(nu).items():
        shift = mu.size - len(mu) - 2 * n if rescale else 0
        coeff = y if top is None else y.truncate_above(top - shift)
        coeff = coeff.shift(shift).scale(c)
        if coeff:
            out[mu] = coeff
    return out


def _pool_map(fn, jobs: list, threads: int) -> list:
    if threads <= 1 or len(jobs) < 2:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, jobs, chunksize=max(1, len(jobs) // (4 * threads))))


def default_threads() -> int:
    env = os.environ.get("COVERCOUNT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise UsageError(f"COVERCOUNT_THREADS must be an integer, got {env!r}") from exc
    return os.cpu_count() or 1


def build_content_series(
    weights: ContentWeights,
    weight_bound: int,
    rescale: bool,
    window: tuple[int | None, int | None] = (None, None),
    reduced_cap: int | None = None,
    threads: int = 1,
) -> PSeries:
    """``sum_{n <= bound} sum_{nu |- n} Y(nu) dim_nu / n! * s_nu``.

    With ``rescale`` every ``s_nu`` becomes ``hbar^{-2n} s~_nu``, i.e.
    ``p_i -> p_i / hbar^{i+1}``.  Per-partition terms may be computed in
    parallel; they are summed in reverse-lexicographic order regardless.
    """
    if weight_bound < 0:
        raise UsageError("weight bound must be nonnegative")
    lo, hi = window
    jobs = [
        (nu, weights, rescale, lo, hi, reduced_cap)
        for n in range(weight_bound + 1)
        for nu in partitions_of(n)
    ]
    total: dict[Partition, HPoly] = {}
    for part in _pool_map(_content_term, jobs, threads):
        for mu, c in part.items():
            s = total.get(mu)
            total[mu] = c if s is None else s + c
    return PSeries({mu: c for mu, c in total.items() if c}, weight_bound, reduced_cap)


def build_F(weights: ContentWeights, weight_bound: int, hbar_hi: int | None = None) -> PSeries:
    """``log sum Y(nu) dim_nu / n! s_nu``, the unrescaled content-weighted series."""
    return log_series(build_content_series(weights, weight_bound, rescale=False, window=(None, hbar_hi)))


@dataclass(frozen=True)
class GenFunction:
    """``S`` truncated at weight ``weight_bound`` and genus ``genus_bound``.

    ``m_value`` is ``None`` while ``m`` is symbolic; a specialized function
    stores constant polynomials.
    """

    series: PSeries
    weight_bound: int
    genus_bound: int
    m_value: int | None = None

    def b_number(self, g: int, nu: Iterable[int], m_value: int | Fraction | None = None):
        return b_number(self, g, nu, m_value)

    def genus_slice(self, g: int) -> PSeries:
        return genus_slice(self, g)

    def specialize(self, m_value: int) -> GenFunction:
        return GenFunction(self.series.subs_m(m_value), self.weight_bound, self.genus_bound, m_value)

    def terms(self) -> list[tuple[int, Partition, RatPolyM]]:
        """``(genus, mu, b)`` sorted by genus, weight, reverse-lex ``mu``."""
        out = []
        for mu in self.series.keys_sorted():
            for e, c in self.series.terms[mu].terms.items():
                out.append((e // 2, mu, c))
        out.sort(key=lambda t: (t[0], series_key(t[1])))
        return out

    def to_json(self, genus: int | None = None) -> dict:
        return {
            "weight_bound": self.weight_bound,
            "genus_bound": self.genus_bound,
            "m": self.m_value,
            "terms": [
                {"genus": g, "mu": list(mu), "m_poly": c.to_strings()}
                for g, mu, c in self.terms()
                if genus is None or g == genus
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> GenFunction:
        N, G = int(data["weight_bound"]), int(data["genus_bound"])
        coeffs: dict[tuple, dict[int, RatPolyM]] = {}
        for t in data["terms"]:
            coeffs.setdefault(tuple(t["mu"]), {})[2 * int(t["genus"])] = RatPolyM.from_strings(t["m_poly"])
        series = PSeries({mu: HPoly(c, 0, 2 * G) for mu, c in coeffs.items()}, N)
        return cls(series, N, G, data.get("m"))


def build_S(weight_bound: int, genus_bound: int, threads: int = 1) -> GenFunction:
    """Assemble ``S`` through genus ``genus_bound`` and weight ``weight_bound``."""
    if weight_bound < 0 or genus_bound < 0:
        raise UsageError("bounds must be nonnegative")
    N, G = weight_bound, genus_bound
    cap = 2 * G - 2 + 2 * N
    inner = build_content_series(
        BMSWeights(), N, rescale=True, window=(-2 * N, max(cap, 0)), reduced_cap=cap, threads=threads
    )
    logged = log_series(inner)
    terms: dict[Partition, HPoly] = {}
    for mu, c in logged.terms.items():
        for e in c.terms:
            # every surviving term is exact, so check them all, not just g <= G
            if e + 2 < 0 or (e + 2) % 2:
                raise InvariantViolation(f"hbar^{e + 2} survives at p_{tuple(mu)}")
        kept = {e + 2: v for e, v in c.terms.items() if e + 2 <= 2 * G}
        if kept:
            terms[mu] = HPoly(kept, 0, 2 * G)
    return GenFunction(PSeries(terms, N), N, G)


def _check_bounds(gf: GenFunction, g: int, nu: Partition | None = None) -> None:
    if g < 0 or g > gf.genus_bound:
        raise OutOfBounds(f"genus {g} outside 0..{gf.genus_bound}")
    if nu is not None and nu.size > gf.weight_bound:
        raise OutOfBounds(f"|nu| = {nu.size} exceeds weight bound {gf.weight_bound}")


def b_number(gf: GenFunction, g: int, nu: Iterable[int], m_value: int | Fraction | None = None):
    """Coefficient of ``p_nu hbar^{2g}``: a :class:`RatPolyM`, or a Fraction when ``m_value`` is given."""
    nu = Partition(nu)
    if not nu:
        raise UsageError("b_{g,nu,m} needs a nonempty partition")
    _check_bounds(gf, g, nu)
    poly = gf.series.coeff(nu).coeff(2 * g)
    return poly if m_value is None else poly(m_value)


def genus_slice(gf: GenFunction, g: int) -> PSeries:
    """The ``hbar^{2g}`` layer as an hbar-free series over polynomials in ``m``."""
    _check_bounds(gf, g)
    return gf.series.hbar_layer(2 * g)


def bms_number(nu: Iterable[int]) -> RatPolyM:
    """Genus-0 count for a fixed permutation of cycle type ``nu``, as a polynomial in ``m``.

    ``m (mn-n-1)! / (mn-n-l+2)! * prod_i (i C(mi-1, i))^{d_i}``; the factorial
    quotient is a falling factorial when ``l >= 3`` and otherwise an exact
    polynomial division by ``(mn-n-l+2) ... (mn-n)``.
    """
    nu = Partition(nu)
    if not nu:
        raise UsageError("the closed form needs a nonempty partition")
    n, l = nu.size, len(nu)
    x = M * n - n
    out = M
    for i, d in nu.multiplicities().items():
        out = out * cycle_factor_poly(i) ** d
    if l >= 3:
        return out * falling_factorial(x - 1, l - 3)
    return exact_divide(out, falling_factorial(x + (2 - l), 3 - l))
