"""Graded series in the power sums p_1, p_2, ... and Schur functions.

A :class:`PSeries` maps partitions ``mu`` (standing for the monomial
``p_mu = p_{mu_1} p_{mu_2} ...``) to :class:`~covercount.exactalg.HPoly`
coefficients.  The weight of ``p_mu`` is ``|mu|``; products are truncated at
the series' weight bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import BadConstantTerm, BoundExceeded, NonIntegerEntry, UsageError
from .exactalg import HPoly, RatPolyM, ZERO
from .partitions import Partition, diagram_stats, partitions_of, series_key, z_nu

CHARACTER_TABLE_BOUND = 10

_EMPTY = Partition()


def _as_hpoly(c) -> HPoly:
    return c if isinstance(c, HPoly) else HPoly.constant(c)


def _min_opt(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class PSeries:
    """Finitely supported series in the power sums, truncated by weight.

    ``reduced_cap``, when set, also drops every term ``p_mu hbar^e`` with
    ``e + 2|mu| > reduced_cap``.  That quantity is additive under products
    and nonnegative on every series assembled in this package, so the cap is
    an exact truncation rather than an approximation.
    """

    __slots__ = ("weight_bound", "reduced_cap", "terms")

    def __init__(
        self,
        terms: Mapping[Iterable[int], HPoly | RatPolyM | int | Fraction] | None = None,
        weight_bound: int = 0,
        reduced_cap: int | None = None,
    ):
        if weight_bound < 0:
            raise UsageError("weight bound must be nonnegative")
        self.weight_bound = weight_bound
        self.reduced_cap = reduced_cap
        clean: dict[Partition, HPoly] = {}
        for mu, c in (terms or {}).items():
            mu = mu if isinstance(mu, Partition) else Partition(mu)
            w = mu.size
            if w > weight_bound:
                continue
            c = _as_hpoly(c)
            if reduced_cap is not None:
                c = c.truncate_above(reduced_cap - 2 * w)
            if c:
                clean[mu] = c
        self.terms = clean

    @classmethod
    def _trusted(cls, terms: dict[Partition, HPoly], weight_bound: int, reduced_cap=None) -> PSeries:
        obj = cls.__new__(cls)
        obj.weight_bound, obj.reduced_cap, obj.terms = weight_bound, reduced_cap, terms
        return obj

    @classmethod
    def one(cls, weight_bound: int, lo=None, hi=None) -> PSeries:
        return cls({_EMPTY: HPoly.constant(1, lo, hi)}, weight_bound)

    @classmethod
    def power_sum(cls, i: int, weight_bound: int) -> PSeries:
        return cls({(i,): 1}, weight_bound)

    # -- inspection ---------------------------------------------------------

    def coeff(self, mu: Iterable[int]) -> HPoly:
        return self.terms.get(tuple(mu), HPoly())

    def constant_term(self) -> HPoly:
        return self.coeff(_EMPTY)

    def keys_sorted(self) -> list[Partition]:
        return sorted(self.terms, key=series_key)

    def weights(self) -> set[int]:
        return {mu.size for mu in self.terms}

    def component(self, w: int) -> PSeries:
        return PSeries._trusted(
            {mu: c for mu, c in self.terms.items() if mu.size == w},
            self.weight_bound,
            self.reduced_cap,
        )

    def hbar_exponents(self) -> set[int]:
        return {e for c in self.terms.values() for e in c.terms}

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PSeries):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self) -> str:
        return f"PSeries({len(self.terms)} terms, weight_bound={self.weight_bound})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mu in self.keys_sorted():
            mono = "*".join(f"p{p}" for p in mu) or "1"
            parts.append(f"[{self.terms[mu]}]*{mono}")
        return " + ".join(parts)

    # -- arithmetic ---------------------------------------------------------

    def _bounds(self, other: PSeries) -> tuple[int, int | None]:
        return min(self.weight_bound, other.weight_bound), _min_opt(self.reduced_cap, other.reduced_cap)

    def __add__(self, other: PSeries) -> PSeries:
        bound, cap = self._bounds(other)
        terms = dict(self.terms)
        for mu, c in other.terms.items():
            s = terms.get(mu)
            terms[mu] = c if s is None else s + c
        return PSeries(terms, bound, cap)

    def __neg__(self) -> PSeries:
        return PSeries._trusted({mu: -c for mu, c in self.terms.items()}, self.weight_bound, self.reduced_cap)

    def __sub__(self, other: PSeries) -> PSeries:
        return self + (-other)

    def scale(self, c) -> PSeries:
        """Multiply every coefficient by a scalar, polynomial in m, or HPoly."""
        terms = {}
        for mu, v in self.terms.items():
            w = v * c
            if w:
                terms[mu] = w
        return PSeries(terms, self.weight_bound, self.reduced_cap)

    def shift_hbar(self, k: int) -> PSeries:
        return PSeries({mu: c.shift(k) for mu, c in self.terms.items()}, self.weight_bound, self.reduced_cap)

    def __mul__(self, other) -> PSeries:
        if not isinstance(other, PSeries):
            return self.scale(other)
        bound, cap = self._bounds(other)
        acc: dict[Partition, HPoly] = {}
        for mu, a in self.terms.items():
            wa = mu.size
            for nu, b in other.terms.items():
                w = wa + nu.size
                if w > bound:
                    continue
                key = mu.merge(nu) if nu else mu
                prod = a.mul(b, None if cap is None else cap - 2 * w)
                s = acc.get(key)
                acc[key] = prod if s is None else s + prod
        return PSeries._trusted({k: v for k, v in acc.items() if v}, bound, cap)

    __rmul__ = scale

    def truncate(self, weight_bound: int) -> PSeries:
        return PSeries(self.terms, weight_bound, self.reduced_cap)

    def map_coeffs(self, f) -> PSeries:
        return PSeries({mu: f(c) for mu, c in self.terms.items()}, self.weight_bound, self.reduced_cap)

    def subs_m(self, value: int | Fraction) -> PSeries:
        return self.map_coeffs(lambda c: c.subs_m(value))

    def hbar_layer(self, e: int) -> PSeries:
        """The coefficient of ``hbar^e`` as an hbar-free series."""
        return PSeries(
            {mu: HPoly.constant(c.coeff(e)) for mu, c in self.terms.items() if c.coeff(e)},
            self.weight_bound,
        )

    # -- serialization ------------------------------------------------------

    def to_json(self) -> list[dict]:
        return [{"mu": list(mu), "coeff": self.terms[mu].to_json()} for mu in self.keys_sorted()]

    @classmethod
    def from_json(cls, data: list[dict], weight_bound: int) -> PSeries:
        return cls({tuple(t["mu"]): HPoly.from_json(t["coeff"]) for t in data}, weight_bound)


# -- Schur functions -----------------------------------------------------------
#
# Schur functions have rational coefficients and no hbar, so they are built on
# plain ``{partition: Fraction}`` dicts and wrapped as PSeries at the boundary.

RatSeries = dict  # Partition -> Fraction


def _rmul(a: RatSeries, b: RatSeries) -> RatSeries:
    out: RatSeries = {}
    for mu, x in a.items():
        for nu, y in b.items():
            key = mu.merge(nu)
            out[key] = out.get(key, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _radd(a: RatSeries, b: RatSeries, sign: int = 1) -> RatSeries:
    out = dict(a)
    for mu, y in b.items():
        out[mu] = out.get(mu, 0) + sign * y
    return {k: v for k, v in out.items() if v}


def _wrap(coeffs: RatSeries, weight_bound: int) -> PSeries:
    return PSeries({mu: HPoly.constant(c) for mu, c in coeffs.items()}, weight_bound)


@lru_cache(maxsize=None)
def _one_part(k: int) -> RatSeries:
    # k s_k = sum_{i=1..k} p_i s_{k-i}, the t-derivative of exp(sum p_i t^i / i)
    if k < 0:
        return {}
    if k == 0:
        return {_EMPTY: Fraction(1)}
    acc: RatSeries = {}
    for i in range(1, k + 1):
        for mu, c in _one_part(k - i).items():
            key = mu.merge((i,))
            acc[key] = acc.get(key, 0) + c
    return {mu: Fraction(c, k) for mu, c in acc.items() if c}


def one_part_schur(k: int, weight_bound: int | None = None) -> PSeries:
    """Coefficient of ``t^k`` in ``exp(sum_i p_i t^i / i)``."""
    bound = k if weight_bound is None else weight_bound
    if k > bound:
        raise UsageError(f"one-part Schur s_{k} does not fit weight bound {bound}")
    return _wrap(dict(_one_part(k)), bound)


def _det(matrix: list[list[RatSeries]]) -> RatSeries:
    size = len(matrix)
    memo: dict[tuple[int, tuple[int, ...]], RatSeries] = {}

    def minor(row: int, cols: tuple[int, ...]) -> RatSeries:
        if row == size:
            return {_EMPTY: Fraction(1)}
        key = (row, cols)
        if key in memo:
            return memo[key]
        total: RatSeries = {}
        for pos, c in enumerate(cols):
            entry = matrix[row][c]
            if not entry:
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
            if sub:
                total = _radd(total, _rmul(entry, sub), -1 if pos % 2 else 1)
        memo[key] = total
        return total

    return minor(0, tuple(range(size)))


@lru_cache(maxsize=None)
def _schur(nu: Partition) -> RatSeries:
    t = len(nu)
    matrix = [[_one_part(nu[i] - i + j) for j in range(t)] for i in range(t)]
    return _det(matrix)


def schur(nu: Iterable[int], weight_bound: int | None = None) -> PSeries:
    """Schur function in power sums via the Jacobi-Trudi determinant ``det(s_{nu_i - i + j})``."""
    nu = Partition(nu)
    return _wrap(dict(_schur(nu)), nu.size if weight_bound is None else weight_bound)


def scale_schur(nu: Iterable[int], weight_bound: int | None = None) -> PSeries:
    """``s_nu(p_1, p_2 hbar, p_3 hbar^2, ...)``: ``p_mu`` picks up ``hbar^{|mu| - l(mu)}``."""
    nu = Partition(nu)
    bound = nu.size if weight_bound is None else weight_bound
    return PSeries(
        {mu: HPoly({mu.size - len(mu): c}) for mu, c in _schur(nu).items()},
        bound,
    )


def principal_specialization(nu: Iterable[int], n_vars: int) -> Fraction:
    """``s_nu(1, ..., 1)`` with ``n_vars`` ones, i.e. every ``p_i = n_vars``."""
    if n_vars < 1:
        raise UsageError("principal specialization needs at least one variable")
    nu = Partition(nu)
    return sum((c * n_vars ** len(mu) for mu, c in _schur(nu).items()), Fraction(0))


@dataclass(frozen=True)
class CharacterTable:
    n: int
    entries: dict  # (lambda, mu) -> int

    def __getitem__(self, key: tuple[Iterable[int], Iterable[int]]) -> int:
        lam, mu = key
        return self.entries[(tuple(lam), tuple(mu))]

    def row(self, lam: Iterable[int]) -> dict[Partition, int]:
        lam = tuple(lam)
        return {mu: v for (l, mu), v in self.entries.items() if l == lam}


def character_table(n: int, bound: int = CHARACTER_TABLE_BOUND) -> CharacterTable:
    """Irreducible characters read off the power-sum expansion of Schur functions.

    ``chi^lambda(C_mu) = z_mu * [p_mu] s_lambda``.
    """
    if n > bound:
        raise BoundExceeded(f"character table for n = {n} exceeds the bound {bound}")
    parts = partitions_of(n)
    entries = {}
    for lam in parts:
        s = _schur(lam)
        for mu in parts:
            value = s.get(mu, Fraction(0)) * z_nu(mu)
            if value.denominator != 1:
                raise NonIntegerEntry(f"chi^{lam}({mu}) = {value} is not an integer")
            entries[(lam, mu)] = int(value)
    return CharacterTable(n, entries)


# -- log / exp -----------------------------------------------------------------


def _by_weight(s: PSeries) -> dict[int, PSeries]:
    comps: dict[int, dict] = {}
    for mu, c in s.terms.items():
        comps.setdefault(mu.size, {})[mu] = c
    return {w: PSeries._trusted(t, s.weight_bound, s.reduced_cap) for w, t in comps.items()}


def log_series(a: PSeries) -> PSeries:
    """Logarithm of a series whose weight-0 coefficient is exactly 1.

    Uses the Euler-operator identity ``D log a = (D a) / a`` with
    ``D = sum_i i p_i d/dp_i``, which on weight-``w`` parts reads
    ``w L_w = w A_w - sum_{0<j<w} j L_j A_{w-j}``.  This equals the truncated
    expansion ``sum_k (-1)^{k+1} (a-1)^k / k`` term by term.
    """
    const = a.constant_term()
    if const != HPoly.constant(1):
        raise BadConstantTerm(f"log needs constant term exactly 1, got {const}")
    bound, cap = a.weight_bound, a.reduced_cap
    parts = _by_weight(a)
    logs: dict[int, PSeries] = {}
    for w in range(1, bound + 1):
        acc = parts.get(w, PSeries._trusted({}, bound, cap))
        for j in range(1, w):
            if j in logs and (w - j) in parts:
                acc = acc - (logs[j] * parts[w - j]).scale(Fraction(j, w))
        if acc:
            logs[w] = acc
    out: dict[Partition, HPoly] = {}
    for comp in logs.values():
        out.update(comp.terms)
    return PSeries._trusted(out, bound, cap)


def exp_series(x: PSeries) -> PSeries:
    """Exponential of a series with zero weight-0 part: ``w E_w = sum_j j X_j E_{w-j}``."""
    if x.constant_term():
        raise BadConstantTerm("exp needs a series without constant term")
    bound, cap = x.weight_bound, x.reduced_cap
    lo = min((c.lo for c in x.terms.values() if c.lo is not None), default=None)
    hi = max((c.hi for c in x.terms.values() if c.hi is not None), default=None)
    parts = _by_weight(x)
    exps: dict[int, PSeries] = {0: PSeries.one(bound, lo, hi)}
    for w in range(1, bound + 1):
        acc = PSeries._trusted({}, bound, cap)
        for j in range(1, w + 1):
            if j in parts and (w - j) in exps:
                acc = acc + (parts[j] * exps[w - j]).scale(Fraction(j, w))
        if acc:
            exps[w] = acc
    out: dict[Partition, HPoly] = {}
    for comp in exps.values():
        out.update(comp.terms)
    return PSeries._trusted(out, bound, cap)

