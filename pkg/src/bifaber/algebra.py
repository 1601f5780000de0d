"""
Exact sparse multivariate polynomials over the rationals.

The variables are the Taylor coefficients a_2, a_3, ... of a normalized
series, indexed by their subscript k. A polynomial is a mapping from
monomials to nonzero ``Fraction`` coefficients; all values are immutable.

Canonical term order (used by ``str`` and the JSON format) is graded
lexicographic: higher total degree first, ties broken by comparing the
exponent vectors (e_2, e_3, ...) lexicographically, larger first. The
constant term, if any, comes last.
"""

from __future__ import annotations

import json
from fractions import Fraction
from numbers import Number, Rational


class MissingVariableError(KeyError):
    """Raised when an evaluation assignment lacks a variable of the polynomial."""

    def __init__(self, index):
        super().__init__(index)
        self.index = index

    def __str__(self):
        return f"no value assigned to a{self.index}"


def parse_rational(text) -> Fraction:
    """Parse ``"num/den"``, an integer, or an exact decimal string into a Fraction.

    Floats are rejected: command-line and file inputs must stay exact.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool) or isinstance(text, float):
        raise ValueError(f"expected an exact rational, got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


class Monomial(tuple):
    """Product of variables a_k^e, stored as sorted ``(k, e)`` pairs with e > 0."""

    __slots__ = ()

    def __new__(cls, exponents=()):
        if isinstance(exponents, dict):
            exponents = exponents.items()
        merged = {}
        for k, e in exponents:
            if k < 2:
                raise ValueError(f"variable index must be >= 2, got a{k}")
            if e < 0:
                raise ValueError("negative exponent")
            merged[k] = merged.get(k, 0) + e
        return super().__new__(cls, tuple(sorted((k, e) for k, e in merged.items() if e)))

    @classmethod
    def _raw(cls, pairs):
        return tuple.__new__(cls, pairs)

    def __mul__(self, other):
        if not self:
            return other
        if not other:
            return self
        out = dict(self)
        for k, e in other:
            out[k] = out.get(k, 0) + e
        return Monomial._raw(tuple(sorted(out.items())))

    @property
    def degree(self) -> int:
        return sum(e for _, e in self)

    @property
    def weight(self) -> int:
        """Weighted degree with a_k counted as k - 1."""
        return sum((k - 1) * e for k, e in self)

    @property
    def max_index(self) -> int:
        return self[-1][0] if self else 1

    def dense(self, top: int) -> tuple:
        d = dict(self)
        return tuple(d.get(k, 0) for k in range(2, top + 1))

    def __repr__(self):
        return f"Monomial({dict(self)})"

    def __str__(self):
        if not self:
            return "1"
        return "*".join(f"a{k}" if e == 1 else f"a{k}^{e}" for k, e in self)


_ONE = Monomial()


class MPoly:
    """Sparse polynomial in a_2, a_3, ... with exact rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for mono, coeff in items:
                if not isinstance(mono, Monomial):
                    mono = Monomial(mono)
                c = clean.get(mono, 0) + Fraction(coeff)
                if c:
                    clean[mono] = c
                else:
                    clean.pop(mono, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _from_clean(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, value):
        value = Fraction(value)
        return cls._from_clean({_ONE: value} if value else {})

    @classmethod
    def var(cls, k: int, power: int = 1):
        return cls._from_clean({Monomial({k: power}): Fraction(1)})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and _ONE in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get(_ONE, Fraction(0))

    def coefficient(self, mono) -> Fraction:
        if not isinstance(mono, Monomial):
            mono = Monomial(mono)
        return self._terms.get(mono, Fraction(0))

    def variables(self) -> list[int]:
        return sorted({k for mono in self._terms for k, _ in mono})

    def max_index(self) -> int:
        return max((m.max_index for m in self._terms), default=1)

    def sorted_terms(self):
        top = self.max_index()
        return sorted(
            self._terms.items(),
            key=lambda it: (it[0].degree, it[0].dense(top)),
            reverse=True,
        )

    # -- ring operations --------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, MPoly):
            return other
        if isinstance(other, Rational):
            return MPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for mono, c in other._terms.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return MPoly._from_clean(out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._from_clean({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, Rational):
            other = Fraction(other)
            if not other:
                return MPoly._from_clean({})
            return MPoly._from_clean({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, MPoly):
            return NotImplemented
        out = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return MPoly._from_clean(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Rational):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        result, base = MPoly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- evaluation and substitution -------------------------------------

    def evaluate(self, assignment):
        """Substitute values for every variable; exact for rational values.

        ``assignment`` maps the index k (or the name ``"ak"``) to a scalar.
        """
        values = {}
        for key, v in assignment.items():
            k = int(key[1:]) if isinstance(key, str) else int(key)
            values[k] = v
        total = 0
        for mono, c in self._terms.items():
            term = c
            for k, e in mono:
                if k not in values:
                    raise MissingVariableError(k)
                term = term * values[k] ** e
            total = total + term
        return total

    def substitute_zero(self, indices):
        """Drop every term that involves one of the given variables."""
        indices = set(indices)
        return MPoly._from_clean(
            {m: c for m, c in self._terms.items() if not any(k in indices for k, _ in m)}
        )

    # -- formatting -------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = str(mono)
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"MPoly({str(self)!r})"

    def to_dict(self) -> dict:
        top = self.max_index()
        return {
            "vars": [f"a{k}" for k in range(2, top + 1)],
            "terms": [
                {"coeff": format_rational(c), "exps": list(m.dense(top))}
                for m, c in self.sorted_terms()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data) -> MPoly:
        try:
            names = data["vars"]
            indices = []
            for name in names:
                if not (isinstance(name, str) and name.startswith("a") and name[1:].isdigit()):
                    raise ValueError(f"bad variable name {name!r}")
                indices.append(int(name[1:]))
            terms = {}
            for term in data["terms"]:
                exps = term["exps"]
                if len(exps) != len(indices):
                    raise ValueError("exponent vector length does not match vars")
                if any(not isinstance(e, int) or e < 0 for e in exps):
                    raise ValueError("exponents must be nonnegative integers")
                mono = Monomial(zip(indices, exps))
                terms[mono] = terms.get(mono, 0) + parse_rational(term["coeff"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed polynomial JSON: {exc}") from exc
        return cls(terms)

    @classmethod
    def from_json(cls, text: str) -> MPoly:
        return cls.from_dict(json.loads(text))


def poly_add(p: MPoly, q: MPoly) -> MPoly:
    return p + q


def poly_mul(p: MPoly, q: MPoly) -> MPoly:
    return p * q


def poly_eval(p: MPoly, assignment):
    return p.evaluate(assignment)


def weighted_degree(p: MPoly) -> tuple[int, int]:
    """Return (min, max) of the weighted degree over the terms of ``p``."""
    if not p:
        raise ValueError("weighted degree of the zero polynomial is undefined")
    weights = [m.weight for m, _ in p.items()]
    return min(weights), max(weights)


def is_weighted_homogeneous(p: MPoly, weight: int) -> bool:
    return all(m.weight == weight for m, _ in p.items())


def as_mpoly(x) -> MPoly:
    if isinstance(x, MPoly):
        return x
    if isinstance(x, Number):
        return MPoly.const(x)
    raise TypeError(f"cannot convert {type(x).__name__} to MPoly")
