"""Exact power-series expansion of the rational generating functions.

Numerators and denominators are expanded into integer coefficient maps with sympy;
the quotient is then produced term by term with the recurrence
f[m] = N[m] - sum_{k != 0} D[k] * f[m - k], which needs D[0] == 1.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Sequence, Tuple

from sympy import Expr, Poly, Symbol, symbols

s, t = symbols('s t')

# Classes per cell (w1, w2): t marks the first width, s the second
RECTANGLE_NUMERATOR = (-s**7 * t**4 + s**6 * t**3 - s**5 * t**2 + s**4 * t**3
                       - s**3 * t + s**2 * t**2 - s * t + 1)
RECTANGLE_DENOMINATOR = (1 - s)**2 * (1 + s) * (1 - s * t)**3 * (1 + s * t)

# Classes fitting in [0, n]^2 (the Ehrhart series of Q)
HILBERT_NUMERATOR = 1 - t**8
HILBERT_DENOMINATOR = (1 - t**2)**3 * (1 - t)**3

# Classes fitting in [0, n]^2 and in no smaller square
SQUARE_EXACT_NUMERATOR = 1 - t**8
SQUARE_EXACT_DENOMINATOR = (1 - t**2)**3 * (1 - t)**2

Monomial = Tuple[int, ...]


@dataclass(frozen=True)
class SeriesCoeffs:
    variables: Tuple[str, ...]
    max_deg: int
    coeffs: Dict[Monomial, int] = field(default_factory=dict)

    def coeff(self, *exponents: int) -> int:
        if len(exponents) != len(self.variables):
            raise ValueError(f"expected {len(self.variables)} exponents, got {len(exponents)}")
        if min(exponents) < 0:
            return 0
        if sum(exponents) > self.max_deg:
            raise ValueError(f"total degree {sum(exponents)} exceeds truncation {self.max_deg}")
        return self.coeffs.get(tuple(exponents), 0)

    def as_list(self) -> List[int]:
        """Coefficients of a univariate series in degree order."""
        if len(self.variables) != 1:
            raise ValueError("as_list needs a univariate series")
        return [self.coeffs.get((n,), 0) for n in range(self.max_deg + 1)]


def coefficient_map(expr: Expr, gens: Sequence[Symbol]) -> Dict[Monomial, int]:
    return {monom: int(c) for monom, c in Poly(expr, *gens).terms()}


def _graded_monomials(nvars: int, max_deg: int) -> Iterator[Monomial]:
    for total in range(max_deg + 1):
        for monom in itertools.product(range(total + 1), repeat=nvars):
            if sum(monom) == total:
                yield monom


def expand_ratio(numerator: Expr, denominator: Expr, gens: Sequence[Symbol], max_deg: int) -> SeriesCoeffs:
    """Power series of numerator/denominator in gens, truncated at total degree max_deg."""
    num = coefficient_map(numerator, gens)
    den = coefficient_map(denominator, gens)
    zero = (0,) * len(gens)
    if den.get(zero) != 1:
        raise ValueError(f"denominator constant term is {den.get(zero, 0)}, expected 1")
    tail = [(m, c) for m, c in den.items() if m != zero]
    out: Dict[Monomial, int] = {}
    for monom in _graded_monomials(len(gens), max_deg):
        value = num.get(monom, 0)
        for m, c in tail:
            prev = tuple(a - b for a, b in zip(monom, m))
            if min(prev) >= 0:
                value -= c * out.get(prev, 0)
        if value:
            out[monom] = value
    return SeriesCoeffs(tuple(str(g) for g in gens), max_deg, out)
