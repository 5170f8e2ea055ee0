"""Residual checks for KP-type equations and the genus-1 divisibility conjecture."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import InvariantViolation, NotDivisible, UsageError
from .exactalg import HPoly, M, RatPolyM, exact_divide, falling_factorial
from .genseries import GenFunction, b_number
from .partitions import Partition, series_key
from .symfunc import PSeries

KP_WEIGHT_LOSS = 4


def derive(series: PSeries, index: int) -> PSeries:
    """``d/dp_index``: ``p_mu -> (multiplicity of index in mu) p_{mu - index}``."""
    if index < 1:
        raise UsageError("derivative index must be positive")
    out: dict[Partition, HPoly] = {}
    for mu, c in series.terms.items():
        k = mu.count(index)
        if k:
            key = mu.remove_part(index)
            d = c.scale(k)
            s = out.get(key)
            out[key] = d if s is None else s + d
    return PSeries(out, max(series.weight_bound - index, 0), series.reduced_cap)


def derive_many(series: PSeries, indices: Iterable[int]) -> PSeries:
    for i in indices:
        series = derive(series, i)
    return series


@dataclass(frozen=True)
class KPTerm:
    """``coeff * hbar^hbar_power * (d^k S / dp_{i1} ... dp_{ik})^power``."""

    coeff: Fraction
    derivs: tuple[int, ...]
    power: int = 1
    hbar_power: int = 0


@dataclass(frozen=True)
class KPForm:
    identifier: str
    terms: tuple[KPTerm, ...]
    description: str = ""

    def evaluate(self, series: PSeries) -> PSeries:
        total = PSeries({}, series.weight_bound)
        for t in self.terms:
            d = derive_many(series, t.derivs)
            value = d
            for _ in range(t.power - 1):
                value = value * d
            total = total + value.shift_hbar(t.hbar_power).scale(t.coeff)
        return total


def _form(identifier, description, half_term_power, disp_coeff, disp_hbar) -> KPForm:
    return KPForm(
        identifier,
        (
            KPTerm(Fraction(1), (1, 3)),
            KPTerm(Fraction(-1), (2, 2)),
            KPTerm(Fraction(-1, 2), (1, 1), power=half_term_power),
            KPTerm(Fraction(disp_coeff), (1, 1, 1, 1), hbar_power=disp_hbar),
        ),
        description,
    )


KP_FORMS: tuple[KPForm, ...] = (
    _form("linear-plus-hbar", "S13 - S22 - 1/2 S11 + hbar^2/12 S1111", 1, Fraction(1, 12), 2),
    _form("standard-nonlinear", "S13 - S22 - 1/2 (S11)^2 - hbar^2/12 S1111", 2, Fraction(-1, 12), 2),
    _form("linear-plus", "S13 - S22 - 1/2 S11 + 1/12 S1111", 1, Fraction(1, 12), 0),
    _form("nonlinear-plus-hbar", "S13 - S22 - 1/2 (S11)^2 + hbar^2/12 S1111", 2, Fraction(1, 12), 2),
    _form("nonlinear-minus", "S13 - S22 - 1/2 (S11)^2 - 1/12 S1111", 2, Fraction(-1, 12), 0),
    _form("linear-minus-hbar", "S13 - S22 - 1/2 S11 - hbar^2/12 S1111", 1, Fraction(-1, 12), 2),
)


def kp_form(identifier: str) -> KPForm:
    for f in KP_FORMS:
        if f.identifier == identifier:
            return f
    raise UsageError(f"unknown KP form {identifier!r}")


def kp_residual(gf: GenFunction, form: KPForm) -> PSeries:
    """Evaluate ``form`` on ``S`` and keep only the trustworthy part.

    Fourth derivatives in ``p_1`` consume weight 4, so only weights up to
    ``weight_bound - 4`` are reported; genus truncation likewise limits the
    hbar exponent to ``2 * genus_bound``.
    """
    if gf.weight_bound < KP_WEIGHT_LOSS:
        raise UsageError(f"KP residuals need weight_bound >= {KP_WEIGHT_LOSS}")
    top_weight = gf.weight_bound - KP_WEIGHT_LOSS
    top_hbar = 2 * gf.genus_bound
    raw = form.evaluate(gf.series)
    kept: dict[Partition, HPoly] = {}
    for mu, c in raw.terms.items():
        if mu.size > top_weight:
            continue
        c = c.truncate_above(top_hbar)
        if c:
            kept[mu] = c
    residual = PSeries(kept, top_weight)
    if any(mu.size > top_weight for mu in residual.terms) or any(e > top_hbar for e in residual.hbar_exponents()):
        raise InvariantViolation("KP residual leaked truncation-contaminated terms")
    return residual


def kp_report(gf: GenFunction, forms: Iterable[KPForm] = KP_FORMS) -> list[dict]:
    report = []
    top_weight = gf.weight_bound - KP_WEIGHT_LOSS
    for form in forms:
        res = kp_residual(gf, form)
        first = None
        vanishes = top_weight
        if res:
            mu = min(res.terms, key=series_key)
            e = min(res.terms[mu].terms)
            first = {"mu": list(mu), "hbar": e, "m_poly": res.terms[mu].terms[e].to_strings()}
            vanishes = mu.size - 1
        report.append({"form": form.identifier, "vanishes_through_weight": vanishes, "first_nonzero_term": first})
    return report


# -- genus-1 conjecture ------------------------------------------------------------


def conjecture_divisor(nu: Iterable[int]) -> RatPolyM:
    """``m * prod_i (m nu_i - 2)_(nu_i - 1)``; parts equal to 1 contribute 1."""
    out = M
    for part in Partition(nu):
        out = out * falling_factorial(M * part - 2, part - 1)
    return out


@dataclass(frozen=True)
class ConjectureReport:
    nu: Partition
    b1: RatPolyM
    divisor: RatPolyM
    quotient: RatPolyM | None

    @property
    def divisible(self) -> bool:
        return self.quotient is not None

    @property
    def degree_bound_ok(self) -> bool:
        return self.quotient is not None and self.quotient.degree <= 2 * len(self.nu) - 1

    def to_json(self) -> dict:
        return {
            "nu": list(self.nu),
            "b1": self.b1.to_strings(),
            "divisor": self.divisor.to_strings(),
            "quotient": None if self.quotient is None else self.quotient.to_strings(),
            "divisible": self.divisible,
            "quotient_degree": None if self.quotient is None else self.quotient.degree,
            "degree_bound": 2 * len(self.nu) - 1,
            "degree_bound_ok": self.degree_bound_ok,
        }

    @classmethod
    def from_json(cls, data: dict) -> ConjectureReport:
        q = data["quotient"]
        return cls(
            Partition(data["nu"]),
            RatPolyM.from_strings(data["b1"]),
            RatPolyM.from_strings(data["divisor"]),
            None if q is None else RatPolyM.from_strings(q),
        )


def conjecture_check(gf: GenFunction, nu: Iterable[int]) -> ConjectureReport:
    nu = Partition(nu)
    b1 = b_number(gf, 1, nu)
    divisor = conjecture_divisor(nu)
    try:
        quotient = exact_divide(b1, divisor)
    except NotDivisible:
        quotient = None
    return ConjectureReport(nu, b1, divisor, quotient)
