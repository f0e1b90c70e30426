"""Exact Laurent polynomials in one variable with integer coefficients."""
from __future__ import annotations

from typing import Iterable, Mapping


class LaurentPolynomial:
    """Immutable integer Laurent polynomial tagged with its variable name.

    >>> A = LaurentPolynomial.monomial("A")
    >>> str(-A**2 - A**-2)
    '-A^-2 - A^2'
    """

    __slots__ = ("var", "_terms")

    def __init__(self, var: str, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            acc[int(e)] = acc.get(int(e), 0) + int(c)
        self.var = var
        self._terms = {e: c for e, c in sorted(acc.items()) if c}

    @classmethod
    def monomial(cls, var: str, exponent: int = 1, coefficient: int = 1) -> "LaurentPolynomial":
        return cls(var, {exponent: coefficient})

    @classmethod
    def constant(cls, var: str, c: int) -> "LaurentPolynomial":
        return cls(var, {0: c})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def coefficient(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            if other.var != self.var and other._terms and self._terms:
                raise ValueError("variable mismatch: %s vs %s" % (self.var, other.var))
            return other
        if isinstance(other, int):
            return LaurentPolynomial(self.var, {0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(self.var, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(self.var, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(self.var, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("monomial with non-unit coefficient is not invertible")
            return LaurentPolynomial(self.var, {e * k: c ** (-k)})
        result = LaurentPolynomial(self.var, {0: 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial(self.var, {0: other})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        if not self._terms and not other._terms:
            return True
        return self.var == other.var and self._terms == other._terms

    def __hash__(self):
        return hash((self.var, tuple(self._terms.items())))

    def __repr__(self):
        return "LaurentPolynomial(%r, %r)" % (self.var, self._terms)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms.items():
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                power = self.var if e == 1 else "%s^%d" % (self.var, e)
                body = power if mag == 1 else "%d*%s" % (mag, power)
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in self._terms.items()]

    @classmethod
    def from_json(cls, var: str, data) -> "LaurentPolynomial":
        return cls(var, [(e, c) for e, c in data])

    def a_to_q(self) -> "LaurentPolynomial":
        """Rewrite a polynomial in ``A`` in the variable ``q = -A^-2``.

        Every exponent must be even: ``A^(2m) = (-q)^(-m)``.
        """
        out = {}
        for e, c in self._terms.items():
            if e % 2:
                raise ValueError("odd power A^%d has no expression in q = -A^-2" % e)
            m = e // 2
            out[-m] = c * (-1) ** (m % 2)
        return LaurentPolynomial("q", out)
