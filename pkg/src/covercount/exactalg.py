"""Exact scalar arithmetic: rationals, polynomials in ``m``, windowed polynomials in hbar.

Rationals are :class:`fractions.Fraction` throughout (always in lowest terms
with a positive denominator).  :class:`RatPolyM` is a dense univariate
polynomial in the formal parameter ``m`` and :class:`HPoly` is a sparse
Laurent polynomial in hbar whose coefficients are :class:`RatPolyM` values,
with exponents confined to an optional window ``[lo, hi]``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import NotDivisible, UsageError, WindowUnderflow

Rat = Fraction


def rat_to_str(x: Fraction) -> str:
    return str(Fraction(x))


def rat_from_str(s: str) -> Fraction:
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {s!r}") from exc


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    while num and num[-1] == 0:
        num.pop()
    if not num:
        return (), 1
    if den < 0:
        num = [-a for a in num]
        den = -den
    g = math.gcd(den, *num)
    if g != 1:
        num = [a // g for a in num]
        den //= g
    return tuple(num), den


class RatPolyM:
    """Dense polynomial in ``m`` with rational coefficients.

    Stored as integer numerators over one common positive denominator, which
    keeps the inner convolution loops on Python ints.  Instances are immutable.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, coeffs: Iterable[int | Fraction] = ()):
        coeffs = [Fraction(c) for c in coeffs]
        den = 1
        for c in coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = [c.numerator * (den // c.denominator) for c in coeffs]
        self._num, self._den = _normalize(num, den)

    @classmethod
    def _make(cls, num: list[int], den: int) -> RatPolyM:
        obj = cls.__new__(cls)
        obj._num, obj._den = _normalize(num, den)
        return obj

    @classmethod
    def constant(cls, c: int | Fraction) -> RatPolyM:
        c = Fraction(c)
        return cls._make([c.numerator], c.denominator)

    # -- inspection ---------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, self._den) for a in self._num)

    @property
    def degree(self) -> int:
        """Degree in ``m``; the zero polynomial has degree -1."""
        return len(self._num) - 1

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self._num):
            return Fraction(self._num[k], self._den)
        return Fraction(0)

    def leading(self) -> Fraction:
        return self.coeff(self.degree)

    def is_zero(self) -> bool:
        return not self._num

    def is_constant(self) -> bool:
        return len(self._num) <= 1

    def __bool__(self) -> bool:
        return bool(self._num)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RatPolyM.constant(other)
        if not isinstance(other, RatPolyM):
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self) -> int:
        return hash((self._num, self._den))

    def __call__(self, x: int | Fraction) -> Fraction:
        acc = Fraction(0)
        for a in reversed(self._num):
            acc = acc * x + a
        return acc / self._den

    # -- ring operations ----------------------------------------------------

    @staticmethod
    def _coerce(x) -> RatPolyM:
        if isinstance(x, RatPolyM):
            return x
        if isinstance(x, (int, Fraction)):
            return RatPolyM.constant(x)
        raise TypeError(f"cannot use {type(x).__name__} as a polynomial in m")

    def __add__(self, other) -> RatPolyM:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, da = self._num, self._den
        b, db = other._num, other._den
        if not b:
            return self
        if not a:
            return other
        if da == db:
            num = [0] * max(len(a), len(b))
            for i, x in enumerate(a):
                num[i] = x
            for i, x in enumerate(b):
                num[i] += x
            return RatPolyM._make(num, da)
        num = [0] * max(len(a), len(b))
        for i, x in enumerate(a):
            num[i] = x * db
        for i, x in enumerate(b):
            num[i] += x * da
        return RatPolyM._make(num, da * db)

    __radd__ = __add__

    def __neg__(self) -> RatPolyM:
        obj = RatPolyM.__new__(RatPolyM)
        obj._num = tuple(-a for a in self._num)
        obj._den = self._den
        return obj

    def __sub__(self, other) -> RatPolyM:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> RatPolyM:
        return (-self) + other

    def __mul__(self, other) -> RatPolyM:
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return RatPolyM._make(
                [a * other.numerator for a in self._num], self._den * other.denominator
            )
        if not isinstance(other, RatPolyM):
            return NotImplemented
        a, b = self._num, other._num
        if not a or not b:
            return ZERO
        num = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    num[i + j] += x * y
        return RatPolyM._make(num, self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> RatPolyM:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of a polynomial by zero")
            return self * (1 / Fraction(other))
        if isinstance(other, RatPolyM):
            return exact_divide(self, other)
        return NotImplemented

    def __pow__(self, k: int) -> RatPolyM:
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: RatPolyM) -> tuple[RatPolyM, RatPolyM]:
        """Euclidean division over the rationals."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        div = other.coeffs
        lead = div[-1]
        q = [Fraction(0)] * max(len(rem) - len(div) + 1, 0)
        for k in range(len(rem) - len(div), -1, -1):
            c = rem[k + len(div) - 1] / lead
            q[k] = c
            if c:
                for j, d in enumerate(div):
                    rem[k + j] -= c * d
        return RatPolyM(q), RatPolyM(rem[: len(div) - 1])

    # -- serialization ------------------------------------------------------

    def to_strings(self) -> list[str]:
        return [rat_to_str(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, items: Iterable[str]) -> RatPolyM:
        return cls(rat_from_str(s) for s in items)

    def expanded(self) -> str:
        """Expanded rendering, highest power first, e.g. ``m^3/12 - m^2/4 + m/6``."""
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeff(k)
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            c = abs(c)
            if k == 0:
                body = str(c)
            else:
                mono = "m" if k == 1 else f"m^{k}"
                num = "" if c.numerator == 1 else str(c.numerator)
                body = num + mono + ("" if c.denominator == 1 else f"/{c.denominator}")
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return render_factored(self)

    def __repr__(self) -> str:
        return f"RatPolyM({self.to_strings()!r})"


ZERO = RatPolyM()
ONE = RatPolyM.constant(1)
M = RatPolyM([0, 1])


def exact_divide(num: RatPolyM, den: RatPolyM) -> RatPolyM:
    """Return ``q`` with ``num == q * den``; raise :class:`NotDivisible` otherwise."""
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    q, r = num.divmod(den)
    if not r.is_zero():
        raise NotDivisible(f"{num.expanded()} is not divisible by {den.expanded()}")
    return q


def falling_factorial(base: RatPolyM | int | Fraction, k: int) -> RatPolyM:
    """``base (base-1) ... (base-k+1)``; the empty product for ``k == 0``."""
    if k < 0:
        raise ValueError("falling factorial length must be nonnegative")
    base = RatPolyM._coerce(base)
    out = ONE
    for j in range(k):
        out = out * (base - j)
    return out


def binomial_m(base: RatPolyM | int, k: int) -> RatPolyM:
    """``C(base, k)`` as a polynomial identity in ``m``."""
    return falling_factorial(base, k) * Fraction(1, math.factorial(k))


def cycle_factor_poly(i: int) -> RatPolyM:
    """``i * C(m i - 1, i)`` as a polynomial of degree ``i`` in ``m``."""
    if i < 1:
        raise ValueError("cycle length must be positive")
    return binomial_m(M * i - 1, i) * i


# -- factored rendering ------------------------------------------------------


def _integer_primitive(p: RatPolyM) -> tuple[Fraction, list[int]]:
    """Split ``p = c * q`` with ``q`` a primitive integer polynomial, positive leading term."""
    num = list(p._num)
    g = math.gcd(*num)
    if num[-1] < 0:
        g = -g
    return Fraction(g, p._den), [a // g for a in num]


def _eval_int(q: list[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for a in reversed(q):
        acc = acc * x + a
    return acc


def _divide_linear(q: list[int], a: int, b: int) -> list[int]:
    """Divide integer ``q`` by ``b m - a`` (known exact root ``a/b``)."""
    # synthetic division; Gauss's lemma keeps the quotient integral
    n = len(q) - 1
    out = [0] * n
    carry = 0
    for k in range(n, 0, -1):
        top = q[k] + carry
        out[k - 1] = top // b
        carry = out[k - 1] * a
    return out


def _rational_roots(q: list[int]) -> list[Fraction]:
    import numpy as np

    if len(q) <= 1:
        return []
    if q[0] == 0:
        return [Fraction(0)]
    lead = abs(q[-1])
    try:
        approx = np.roots([float(a) for a in reversed(q)])
    except (OverflowError, np.linalg.LinAlgError):
        return []
    found = []
    for r in approx:
        if abs(r.imag) > 1e-6 * (1 + abs(r.real)):
            continue
        cand = Fraction(float(r.real)).limit_denominator(max(lead, 1))
        if lead % cand.denominator == 0 and _eval_int(q, cand) == 0:
            found.append(cand)
    return sorted(set(found))


def render_factored(p: RatPolyM) -> str:
    """Human-readable rendering with rational linear factors pulled out.

    E.g. ``m(3m-1)/2`` or ``m(m-1)^2(4m-5)(4m^2-10m+5)/24``.  Only rendering:
    every extracted factor is verified exactly, and whatever does not split
    into rational linear factors is printed expanded.
    """
    if p.is_zero():
        return "0"
    if p.is_constant():
        return rat_to_str(p.coeff(0))
    const, q = _integer_primitive(p)
    roots: dict[Fraction, int] = {}
    while len(q) > 1:
        cands = _rational_roots(q)
        if not cands:
            break
        r = cands[0]
        roots[r] = roots.get(r, 0) + 1
        q = _divide_linear(q, r.numerator, r.denominator)
    factors = []
    for r in sorted(roots, key=lambda r: (r != 0, r)):
        if r == 0:
            body = "m"
        else:
            lin = RatPolyM([-r.numerator, r.denominator])
            body = "(" + lin.expanded().replace(" ", "") + ")"
        k = roots[r]
        factors.append(body + (f"^{k}" if k > 1 else ""))
    if len(q) > 1:
        rest = RatPolyM(q).expanded().replace(" ", "")
        factors.append(rest if not factors and const == 1 else f"({rest})")
    sign = "-" if const < 0 else ""
    const = abs(const)
    head = "" if const.numerator == 1 else str(const.numerator)
    tail = "" if const.denominator == 1 else f"/{const.denominator}"
    if len(factors) == 1 and not (sign or head or tail) and factors[0].endswith(")") and factors[0][0] == "(":
        factors[0] = factors[0][1:-1]
    return sign + head + "".join(factors) + tail


# -- polynomials in hbar -----------------------------------------------------


def _tighter(a: int | None, b: int | None, pick) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return pick(a, b)


class HPoly:
    """Laurent polynomial in hbar over :class:`RatPolyM`, confined to a window.

    Exponents above ``hi`` are discarded silently (they cannot reach the
    retained genus slices); an exponent below ``lo`` raises
    :class:`WindowUnderflow` because it can only come from a bookkeeping bug.
    ``None`` leaves that side of the window open.
    """

    __slots__ = ("lo", "hi", "terms")

    def __init__(
        self,
        terms: Mapping[int, RatPolyM | int | Fraction] | None = None,
        lo: int | None = None,
        hi: int | None = None,
    ):
        self.lo = lo
        self.hi = hi
        clean: dict[int, RatPolyM] = {}
        for e, c in (terms or {}).items():
            c = RatPolyM._coerce(c)
            if c.is_zero() or (hi is not None and e > hi):
                continue
            if lo is not None and e < lo:
                raise WindowUnderflow(f"hbar^{e} lies below the window floor {lo}")
            clean[e] = c
        self.terms = clean

    @classmethod
    def _trusted(cls, terms: dict[int, RatPolyM], lo, hi) -> HPoly:
        obj = cls.__new__(cls)
        obj.lo, obj.hi, obj.terms = lo, hi, terms
        return obj

    @classmethod
    def constant(cls, c, lo: int | None = None, hi: int | None = None) -> HPoly:
        return cls({0: c}, lo, hi)

    def with_window(self, lo: int | None, hi: int | None) -> HPoly:
        return HPoly(self.terms, lo, hi)

    # -- inspection ---------------------------------------------------------

    def coeff(self, e: int) -> RatPolyM:
        return self.terms.get(e, ZERO)

    def exponents(self) -> list[int]:
        return sorted(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, RatPolyM)):
            other = HPoly.constant(other)
        if not isinstance(other, HPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{e}: {self.terms[e]!r}" for e in self.exponents())
        return f"HPoly({{{inner}}}, lo={self.lo}, hi={self.hi})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in self.exponents():
            c = render_factored(self.terms[e])
            parts.append(c if e == 0 else f"({c})*h^{e}")
        return " + ".join(parts)

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(x) -> HPoly:
        if isinstance(x, HPoly):
            return x
        return HPoly.constant(x)

    def _combined_window(self, other: HPoly):
        return _tighter(self.lo, other.lo, max), _tighter(self.hi, other.hi, min)

    def __add__(self, other) -> HPoly:
        other = self._coerce(other)
        lo, hi = self._combined_window(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            terms[e] = c if s is None else s + c
        return HPoly(terms, lo, hi)

    __radd__ = __add__

    def __neg__(self) -> HPoly:
        return HPoly._trusted({e: -c for e, c in self.terms.items()}, self.lo, self.hi)

    def __sub__(self, other) -> HPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> HPoly:
        return (-self) + other

    def scale(self, c: int | Fraction | RatPolyM) -> HPoly:
        if isinstance(c, (int, Fraction)) and c == 0:
            return HPoly._trusted({}, self.lo, self.hi)
        terms = {}
        for e, v in self.terms.items():
            w = v * c
            if w:
                terms[e] = w
        return HPoly._trusted(terms, self.lo, self.hi)

    def mul(self, other: HPoly, hi: int | None = None) -> HPoly:
        """Product, truncated above ``min(window hi, hi)``."""
        lo, window_hi = self._combined_window(other)
        top = _tighter(window_hi, hi, min)
        acc: dict[int, RatPolyM] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if top is not None and e > top:
                    continue
                if lo is not None and e < lo:
                    raise WindowUnderflow(f"hbar^{e} lies below the window floor {lo}")
                p = c1 * c2
                s = acc.get(e)
                acc[e] = p if s is None else s + p
        return HPoly._trusted({e: c for e, c in acc.items() if c}, lo, window_hi)

    def __mul__(self, other) -> HPoly:
        if isinstance(other, (int, Fraction, RatPolyM)):
            return self.scale(other)
        if not isinstance(other, HPoly):
            return NotImplemented
        return self.mul(other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> HPoly:
        out = HPoly.constant(1, self.lo, self.hi)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> HPoly:
        """Multiply by ``hbar^k``."""
        return HPoly({e + k: c for e, c in self.terms.items()}, self.lo, self.hi)

    def truncate_above(self, top: int) -> HPoly:
        return HPoly._trusted({e: c for e, c in self.terms.items() if e <= top}, self.lo, self.hi)

    def subs_m(self, value: int | Fraction) -> HPoly:
        """Evaluate every coefficient at ``m = value``."""
        return HPoly({e: c(value) for e, c in self.terms.items()}, self.lo, self.hi)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict[str, list[str]]:
        return {str(e): self.terms[e].to_strings() for e in self.exponents()}

    @classmethod
    def from_json(cls, data: Mapping[str, list[str]], lo=None, hi=None) -> HPoly:
        return cls({int(e): RatPolyM.from_strings(v) for e, v in data.items()}, lo, hi)
