"""Formal polynomials in the derivative indeterminates x1, x2, ... and the G recursion."""

from functools import lru_cache
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple

import numpy as np
import sympy as sp

PRINTED = "printed"
CORRECTED = "corrected"
VARIANTS = (PRINTED, CORRECTED)


@lru_cache(maxsize=None)
def indeterminates(count: int) -> Tuple[sp.Symbol, ...]:
    """The symbols x1..x_count; x_i stands for the i-th derivative T^(i)."""
    return tuple(sp.Symbol(f"x{i}") for i in range(1, count + 1))


def _index(symbol: sp.Symbol) -> int:
    name = symbol.name
    if not name.startswith("x") or not name[1:].isdigit() or int(name[1:]) < 1:
        raise ValueError(f"unexpected indeterminate {name}")
    return int(name[1:])


@lru_cache(maxsize=None)
def _compile(expr: sp.Expr, count: int) -> Callable[..., np.ndarray]:
    return sp.lambdify(indeterminates(count), expr, modules="numpy")


class FormalPolynomial:
    """
    Integer polynomial in x1..xn, held in expanded canonical form.

    Two instances are equal exactly when their expanded expressions are.
    """

    __slots__ = ("_expr",)

    def __init__(self, expr=0):
        expanded = sp.expand(sp.sympify(expr))
        for symbol in expanded.free_symbols:
            _index(symbol)
        if expanded != 0:
            coefficients = sp.Poly(expanded, *sorted(expanded.free_symbols, key=_index) or [sp.Symbol("x1")]).coeffs()
            if any(not c.is_integer for c in coefficients):
                raise ValueError(f"non-integer coefficient in {expanded}")
        object.__setattr__(self, "_expr", expanded)

    def __setattr__(self, name, value):
        raise AttributeError("FormalPolynomial is immutable")

    @classmethod
    def variable(cls, index: int) -> "FormalPolynomial":
        return cls(indeterminates(index)[-1])

    @classmethod
    def from_terms(cls, terms: Mapping[Tuple[int, ...], int]) -> "FormalPolynomial":
        """Build from {exponent multi-index: coefficient}."""
        expr = sp.Integer(0)
        for exponents, coefficient in terms.items():
            monomial = sp.Integer(int(coefficient))
            for symbol, power in zip(indeterminates(len(exponents)), exponents):
                monomial *= symbol**power
            expr += monomial
        return cls(expr)

    @property
    def expr(self) -> sp.Expr:
        return self._expr

    @property
    def variables(self) -> int:
        """Highest index n of an indeterminate that occurs (0 for constants)."""
        return max((_index(s) for s in self._expr.free_symbols), default=0)

    @property
    def terms(self) -> Dict[Tuple[int, ...], int]:
        """Nonzero coefficients keyed by exponent tuples of length ``variables``."""
        if self._expr == 0:
            return {}
        count = self.variables
        if count == 0:
            return {(): int(self._expr)}
        poly = sp.Poly(self._expr, *indeterminates(count))
        return {tuple(int(e) for e in monom): int(c) for monom, c in poly.as_dict().items()}

    def is_zero(self) -> bool:
        return self._expr == 0

    def __add__(self, other: "FormalPolynomial") -> "FormalPolynomial":
        return FormalPolynomial(self._expr + _as_expr(other))

    __radd__ = __add__

    def __sub__(self, other: "FormalPolynomial") -> "FormalPolynomial":
        return FormalPolynomial(self._expr - _as_expr(other))

    def __mul__(self, other: "FormalPolynomial") -> "FormalPolynomial":
        return FormalPolynomial(self._expr * _as_expr(other))

    __rmul__ = __mul__

    def __neg__(self) -> "FormalPolynomial":
        return FormalPolynomial(-self._expr)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (FormalPolynomial, int)):
            return sp.expand(self._expr - _as_expr(other)) == 0
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._expr)

    def __repr__(self) -> str:
        return f"FormalPolynomial({pretty(self)})"


def _as_expr(value) -> sp.Expr:
    return value.expr if isinstance(value, FormalPolynomial) else sp.Integer(int(value))


def formal_derivative(p: FormalPolynomial) -> FormalPolynomial:
    """P' = sum_j dP/dx_j * x_{j+1}, the chain rule with (x_j)' = x_{j+1}."""
    count = p.variables
    if count == 0:
        return FormalPolynomial(0)
    symbols = indeterminates(count + 1)
    return FormalPolynomial(sum(sp.diff(p.expr, symbols[j]) * symbols[j + 1] for j in range(count)))


def majorant(p: FormalPolynomial) -> FormalPolynomial:
    """Same monomials with absolute coefficients, so |P(x)| <= majorant(P)(|x|)."""
    return FormalPolynomial.from_terms({m: abs(c) for m, c in p.terms.items()})


def evaluate(p: FormalPolynomial, values: Sequence) -> np.ndarray:
    """
    Evaluate with x_i = values[i-1]; values may be scalars or equal-shape arrays.

    Raises:
        ValueError: If fewer values than indeterminates are given
    """
    if len(values) < p.variables:
        raise ValueError(f"polynomial uses x1..x{p.variables}; got {len(values)} values")
    count = max(p.variables, 1)
    args = [np.asarray(v, dtype=float) for v in list(values)[:count]] if values else [np.asarray(0.0)]
    result = _compile(p.expr, count)(*args)
    shape = np.broadcast(*args).shape
    return np.broadcast_to(np.asarray(result, dtype=float), shape).copy()


def _monomial(exponents: Tuple[int, ...]) -> str:
    factors = []
    for i, power in enumerate(exponents, start=1):
        if power == 1:
            factors.append(f"x{i}")
        elif power > 1:
            factors.append(f"x{i}^{power}")
    return "*".join(factors)


def pretty(p: FormalPolynomial) -> str:
    """
    Deterministic text form, terms in descending lexicographic exponent order.

    Example: ``x1*x4 - x2*x3``.
    """
    terms = p.terms
    if not terms:
        return "0"
    parts = []
    for exponents in sorted(terms, reverse=True):
        coefficient = terms[exponents]
        body = _monomial(exponents)
        magnitude = abs(coefficient)
        if not body:
            text = str(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = f"{magnitude}*{body}"
        sign = "-" if coefficient < 0 else "+"
        if not parts:
            parts.append(text if sign == "+" else f"-{text}")
        else:
            parts.append(f"{sign} {text}")
    return " ".join(parts)


def _step_coefficient(ell: int, variant: str) -> int:
    if variant == PRINTED:
        return 1 - 2 * ell
    if variant == CORRECTED:
        return -(2 * ell + 1)
    raise ValueError(f"unknown recursion variant '{variant}' (expected one of {VARIANTS})")


@lru_cache(maxsize=None)
def _g_table(ell: int, variant: str) -> Tuple[FormalPolynomial, ...]:
    if ell == 0:
        return (FormalPolynomial(1),)
    previous = _g_table(ell - 1, variant)
    step = _step_coefficient(ell - 1, variant)
    x1 = FormalPolynomial.variable(1)
    x2 = FormalPolynomial.variable(2)

    row = []
    for j in range(ell):
        value = step * x2 * previous[j] + x1 * formal_derivative(previous[j])
        if j >= 1:
            value = value + x1 * previous[j - 1]
        row.append(value)
    row.append(FormalPolynomial(sp.Symbol("x1") ** ell))
    return tuple(row)


def g_polynomials(ell: int, variant: str = CORRECTED, max_order: Optional[int] = None) -> Tuple[FormalPolynomial, ...]:
    """
    G_{ell,0}, ..., G_{ell,ell} of the identity
    (L f)^(ell) = L((T')^{-2 ell} sum_j G_{ell,j}(T', ..., T^(ell+1)) f^(j)).

    Recursion: G_{0,0} = 1, G_{l+1,l+1} = x1^{l+1} and
    G_{l+1,j} = c_l x2 G_{l,j} + x1 (G'_{l,j} + G_{l,j-1}), with c_l = 1 - 2l
    for ``printed`` and c_l = -(2l+1) for ``corrected``.

    Args:
        ell: Derivative order (>= 0)
        variant: ``printed`` or ``corrected``
        max_order: Smoothness order r of the map; requires ell + 1 <= r

    Returns:
        Tuple indexed by j
    """
    if ell < 0:
        raise ValueError("ell must be non-negative")
    if max_order is not None and ell + 1 > max_order:
        raise ValueError(f"ell={ell} needs derivatives up to order {ell + 1} > smoothness {max_order}")
    _step_coefficient(0, variant)
    return _g_table(ell, variant)
