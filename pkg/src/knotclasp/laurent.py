"""Exact one-variable Laurent polynomials with half-integer exponents.

A :class:`LaurentPoly` stores its terms keyed by the *doubled* exponent, so
``t^(3/2)`` lives under key ``3`` and ``z^2`` under key ``4``.  Coefficients
are Python ints.  The class does not know the name of its variable; the same
type holds Alexander and Jones polynomials in ``t``, Conway polynomials in
``z`` and Kauffman brackets in ``A``.  The variable name only matters when a
polynomial is rendered or parsed.

Text format
-----------
Terms are written in descending exponent order and joined by `` + `` or
`` - ``::

    -5*z^4 + 2*z^2 + 1
    -t^(-3/2) + 2*t^(-1/2) - 4*t^(1/2)
    t^-1 - 1 + 2*t

A coefficient of 1 is omitted on non-constant terms, an exponent of 1 is
omitted, negative integer exponents are written ``^-k`` and half-integer
exponents ``^(p/2)``.  The zero polynomial is ``0``.  :func:`parse` accepts
this format plus optional ``*``, parenthesised integer exponents and
arbitrary whitespace.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

__all__ = [
    "LaurentError",
    "LaurentPoly",
    "ZERO",
    "ONE",
    "add",
    "mul",
    "shift",
    "span",
    "eval_at_one",
    "normalize_alexander",
    "conway_from_alexander",
    "substitute_z",
    "parse",
]

Exponent = Union[int, Fraction]


class LaurentError(ValueError):
    """Raised on inputs outside an operation's domain."""


def _double(exp: Exponent) -> int:
    doubled = Fraction(exp) * 2
    if doubled.denominator != 1:
        raise LaurentError(f"exponent {exp} is not a multiple of 1/2")
    return int(doubled)


class LaurentPoly:
    """Immutable integer Laurent polynomial in one variable.

    Construct from a mapping of doubled exponents to coefficients, or use
    :meth:`from_terms` with ordinary (int or Fraction) exponents.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, doubled_terms: Mapping[int, int] | None = None):
        terms: dict[int, int] = {}
        if doubled_terms:
            for key, coeff in doubled_terms.items():
                if coeff:
                    terms[int(key)] = int(coeff)
        self._terms = terms
        self._hash: int | None = None

    # construction ---------------------------------------------------------

    @classmethod
    def from_terms(cls, terms: Mapping[Exponent, int]) -> "LaurentPoly":
        out: dict[int, int] = {}
        for exp, coeff in terms.items():
            key = _double(exp)
            out[key] = out.get(key, 0) + coeff
        return cls(out)

    @classmethod
    def monomial(cls, exp: Exponent = 0, coeff: int = 1) -> "LaurentPoly":
        return cls({_double(exp): coeff})

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[int], low: Exponent = 0) -> "LaurentPoly":
        """Integer-step coefficient list starting at exponent ``low``."""
        start = _double(low)
        return cls({start + 2 * i: c for i, c in enumerate(coeffs)})

    # access ---------------------------------------------------------------

    @property
    def doubled_terms(self) -> dict[int, int]:
        return dict(self._terms)

    def terms(self) -> dict[Exponent, int]:
        """Terms keyed by true exponent (int when integral, else Fraction)."""
        return {_undouble(k): c for k, c in self._terms.items()}

    def coefficient(self, exp: Exponent) -> int:
        return self._terms.get(_double(exp), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def min_exponent(self) -> Fraction:
        self._require_nonzero("min_exponent")
        return Fraction(min(self._terms), 2)

    def max_exponent(self) -> Fraction:
        self._require_nonzero("max_exponent")
        return Fraction(max(self._terms), 2)

    def has_integer_exponents(self) -> bool:
        return all(k % 2 == 0 for k in self._terms)

    def __iter__(self):
        return iter(sorted(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def _require_nonzero(self, what: str) -> None:
        if not self._terms:
            raise LaurentError(f"{what} of the zero polynomial is undefined")

    # ring operations ------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = k1 + k2
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self._terms) != 1:
                raise LaurentError("only monomials have Laurent inverses")
            (k, c), = self._terms.items()
            if c not in (1, -1):
                raise LaurentError("only unit monomials have Laurent inverses")
            return LaurentPoly({-k * -n: c ** -n})
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, halfexp: int) -> "LaurentPoly":
        """Multiply by ``var^(halfexp/2)``."""
        return LaurentPoly({k + halfexp: c for k, c in self._terms.items()})

    def inverted(self) -> "LaurentPoly":
        """Substitute the variable by its inverse."""
        return LaurentPoly({-k: c for k, c in self._terms.items()})

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient; raises if ``other`` does not divide ``self``."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return ZERO
        lead_k = max(other._terms)
        lead_c = other._terms[lead_k]
        floor_k = min(self._terms) - min(other._terms)
        rem = dict(self._terms)
        quot: dict[int, int] = {}
        while rem:
            top = max(rem)
            qk = top - lead_k
            q, r = divmod(rem[top], lead_c)
            if r or qk < floor_k:
                raise LaurentError("inexact division")
            quot[qk] = q
            for k, c in other._terms.items():
                kk = k + qk
                v = rem.get(kk, 0) - q * c
                if v:
                    rem[kk] = v
                else:
                    rem.pop(kk, None)
        return LaurentPoly(quot)

    # evaluation & comparisons --------------------------------------------

    def eval_at_one(self) -> int:
        return sum(self._terms.values())

    def span(self) -> Fraction:
        self._require_nonzero("span")
        return Fraction(max(self._terms) - min(self._terms), 2)

    def is_palindromic(self) -> bool:
        return all(self._terms.get(-k) == c for k, c in self._terms.items())

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # rendering -----------------------------------------------------------

    def format(self, var: str = "t") -> str:
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for k in sorted(self._terms, reverse=True):
            c = self._terms[k]
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                body = var + _exp_suffix(k)
                if mag != 1:
                    body = f"{mag}*{body}"
            if not pieces:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append(("- " if c < 0 else "+ ") + body)
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.format("t")

    def __repr__(self) -> str:
        return f"LaurentPoly({self.format('t')!r})"


def _undouble(k: int) -> Exponent:
    return k // 2 if k % 2 == 0 else Fraction(k, 2)


def _exp_suffix(k: int) -> str:
    if k == 2:
        return ""
    if k % 2 == 0:
        return f"^{k // 2}"
    return f"^({k}/2)"


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly({0: x})
    return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})


# module-level operations ----------------------------------------------------


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def shift(p: LaurentPoly, halfexp: int) -> LaurentPoly:
    return p.shift(halfexp)


def span(p: LaurentPoly) -> Fraction:
    return p.span()


def eval_at_one(p: LaurentPoly) -> int:
    return p.eval_at_one()


def normalize_alexander(p: LaurentPoly) -> LaurentPoly:
    """The representative of ``±t^k * p`` that is palindromic with value 1 at t=1.

    Raises :class:`LaurentError` for inputs that are not knot Alexander
    polynomials up to units (half-integer exponents, no symmetric unit
    multiple, or ``|p(1)| != 1``).
    """
    if p.is_zero():
        raise LaurentError("cannot normalize the zero polynomial")
    if not p.has_integer_exponents():
        raise LaurentError("Alexander polynomial must have integer exponents")
    value = p.eval_at_one()
    if abs(value) != 1:
        raise LaurentError(f"|p(1)| = {abs(value)}, expected 1 for a knot")
    lo, hi = min(p.doubled_terms), max(p.doubled_terms)
    if (lo + hi) % 4:
        raise LaurentError("odd span: no symmetric unit multiple exists")
    q = p.shift(-(lo + hi) // 2)
    if not q.is_palindromic():
        raise LaurentError("polynomial is not symmetric up to units")
    return q if value == 1 else -q


def _chebyshev_basis(kmax: int) -> list[LaurentPoly]:
    # q_k(z) with q_k(t^{1/2}-t^{-1/2}) = t^k + t^-k, z^j stored under key 2j
    z2_plus_2 = LaurentPoly({4: 1, 0: 2})
    basis = [LaurentPoly({0: 2}), z2_plus_2]
    while len(basis) <= kmax:
        basis.append(z2_plus_2 * basis[-1] - basis[-2])
    return basis


def conway_from_alexander(p: LaurentPoly) -> LaurentPoly:
    """Rewrite a symmetric Alexander polynomial in ``z`` with ``z^2 = t - 2 + t^-1``."""
    if not p.has_integer_exponents() or not p.is_palindromic():
        raise LaurentError("conway_from_alexander needs a symmetric integer-exponent input")
    if p.is_zero():
        return ZERO
    terms = p.doubled_terms
    kmax = max(terms) // 2
    basis = _chebyshev_basis(kmax)
    out = LaurentPoly({0: terms.get(0, 0)})
    for k in range(1, kmax + 1):
        c = terms.get(2 * k, 0)
        if c:
            out = out + c * basis[k]
    return out


_Z_SQUARED_IN_T = LaurentPoly({2: 1, 0: -2, -2: 1})


def substitute_z(p_in_z: LaurentPoly) -> LaurentPoly:
    """Replace ``z^2`` by ``t - 2 + t^-1``; only even powers of z are allowed."""
    terms = p_in_z.doubled_terms
    if any(k % 4 for k in terms):
        raise LaurentError("odd or fractional powers of z present")
    if any(k < 0 for k in terms):
        raise LaurentError("negative powers of z present")
    out = ZERO
    power = ONE
    for j in range(0, max(terms, default=-1) // 4 + 1):
        c = terms.get(4 * j, 0)
        if c:
            out = out + c * power
        power = power * _Z_SQUARED_IN_T
    return out


# parsing --------------------------------------------------------------------

_TERM_RE = re.compile(
    r"""
    (?P<sign>[+-])?\s*
    (?:
        (?P<coef>\d+)(?:(?:\s*\*\s*|)(?P<var1>[A-Za-z]\w*))?
      | (?P<var2>[A-Za-z]\w*)
    )
    (?:\s*\^\s*(?:
        \(\s*(?P<pnum>[+-]?\d+)\s*(?:/\s*(?P<pden>\d+)\s*)?\)
      | (?P<bare>[+-]?\d+)
    ))?
    \s*
    """,
    re.VERBOSE,
)


def parse(text: str, var: str = "t") -> LaurentPoly:
    """Parse the text format described in the module docstring."""
    s = text.strip()
    if not s:
        raise LaurentError("empty polynomial text")
    pos = 0
    out: dict[int, int] = {}
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise LaurentError(f"cannot parse polynomial at position {pos}: {s[pos:]!r}")
        if not first and m.group("sign") is None:
            raise LaurentError(f"missing operator at position {pos}")
        first = False
        name = m.group("var1") or m.group("var2")
        if name is not None and name != var:
            raise LaurentError(f"unexpected variable {name!r} (expected {var!r})")
        coef = int(m.group("coef")) if m.group("coef") else 1
        if m.group("sign") == "-":
            coef = -coef
        if name is None:
            if m.group("pnum") is not None or m.group("bare") is not None:
                raise LaurentError("exponent on a constant term")
            key = 0
        elif m.group("pnum") is not None:
            num = int(m.group("pnum"))
            den = int(m.group("pden") or 1)
            key = _double(Fraction(num, den))
        elif m.group("bare") is not None:
            key = 2 * int(m.group("bare"))
        else:
            key = 2
        out[key] = out.get(key, 0) + coef
        pos = m.end()
    return LaurentPoly(out)
