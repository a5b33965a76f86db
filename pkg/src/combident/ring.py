"""Exact weights: big rationals and sparse multivariate integer polynomials.

A *weight* is either a :class:`fractions.Fraction` (rational mode) or an
:class:`MPoly` with integer coefficients (symbolic mode).  Both are immutable
and always held in canonical form, so an identity holds exactly when the
difference of its two sides compares equal to zero.

Python ``int`` values act on either mode as scalars.  Mixing a ``Fraction``
with an ``MPoly`` raises :class:`~combident.errors.ModeMismatchError`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import InputError, ModeMismatchError

RATIONAL = "rational"
SYMBOLIC = "symbolic"

# Reserved for the indeterminate of characteristic polynomials.
RESERVED_VARIABLE = "x"

# Sorted tuple of (variable, exponent) pairs, exponents >= 1.
Monomial = tuple[tuple[str, int], ...]

_VAR_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_INT_RE = re.compile(r"[+-]?\d+\Z")
_RAT_RE = re.compile(r"([+-]?\d+)/(\d+)\Z")


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    while i < len(m1) and j < len(m2):
        v1, e1 = m1[i]
        v2, e2 = m2[j]
        if v1 == v2:
            out.append((v1, e1 + e2))
            i += 1
            j += 1
        elif v1 < v2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def _mono_key(m: Monomial):
    # Lex order, largest first once sorted: a^2 > a*b > a > b > 1.
    return tuple((0, v, -e) for v, e in m) + ((1, "", 0),)


def _mono_str(m: Monomial) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


class MPoly:
    """Sparse polynomial with integer coefficients in named variables.

    ``terms`` maps each :data:`Monomial` to a nonzero ``int``.  Instances are
    immutable and hashable; equality is equality of term maps.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean: dict[Monomial, int] = {}
        for mono, coeff in (terms or {}).items():
            if not isinstance(coeff, int):
                raise ModeMismatchError(f"MPoly coefficients must be integers, got {coeff!r}")
            if any(e <= 0 for _, e in mono):
                raise ValueError(f"non-positive exponent in monomial {mono!r}")
            mono = tuple(sorted(mono))
            if len({v for v, _ in mono}) != len(mono):
                raise ValueError(f"repeated variable in monomial {mono!r}")
            total = clean.get(mono, 0) + coeff
            if total:
                clean[mono] = total
            else:
                clean.pop(mono, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, int]) -> MPoly:
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def var(cls, name: str) -> MPoly:
        if not _VAR_RE.match(name):
            raise InputError(f"invalid variable name {name!r}")
        return cls._raw({((name, 1),): 1})

    @classmethod
    def const(cls, c: int) -> MPoly:
        return cls._raw({(): c} if c else {})

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def variables(self) -> set[str]:
        return {v for mono in self._terms for v, _ in mono}

    def is_constant(self) -> bool:
        return not self._terms or list(self._terms) == [()]

    def constant_term(self) -> int:
        return self._terms.get((), 0)

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self._terms.items(), key=lambda t: _mono_key(t[0]))

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> MPoly:
        if isinstance(other, MPoly):
            return other
        if isinstance(other, int):
            return MPoly.const(other)
        if isinstance(other, Fraction):
            raise ModeMismatchError("cannot combine a rational weight with a polynomial weight")
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for mono, c in small.items():
            total = out.get(mono, 0) + c
            if total:
                out[mono] = total
            else:
                del out[mono]
        return MPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> MPoly:
        return MPoly._raw({m: -c for m, c in self._terms.items()})

    def __pos__(self) -> MPoly:
        return self

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
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                total = out.get(m, 0) + c1 * c2
                if total:
                    out[m] = total
                else:
                    del out[m]
        return MPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MPoly:
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result, base = MPoly.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self._terms == other._terms
        if isinstance(other, int):
            return self._terms == MPoly.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def eval(self, assignment: Mapping[str, Fraction | int]) -> Fraction:
        """Substitute rational values for every variable."""
        missing = self.variables() - set(assignment)
        if missing:
            raise InputError(f"no value for variable(s) {sorted(missing)}")
        total = Fraction(0)
        for mono, c in self._terms.items():
            term = Fraction(c)
            for v, e in mono:
                term *= Fraction(assignment[v]) ** e
            total += term
        return total

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (mono, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = _mono_str(mono)
            else:
                body = f"{mag}*{_mono_str(mono)}"
            if i == 0:
                parts.append(body if sign == "+" else "-" + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"MPoly({str(self)!r})"


Weight = Union[Fraction, MPoly]


def mode_of(w: Weight) -> str:
    if isinstance(w, MPoly):
        return SYMBOLIC
    if isinstance(w, Fraction):
        return RATIONAL
    raise TypeError(f"not a weight: {w!r}")


def zero(mode: str) -> Weight:
    return MPoly.const(0) if mode == SYMBOLIC else Fraction(0)


def one(mode: str) -> Weight:
    return MPoly.const(1) if mode == SYMBOLIC else Fraction(1)


def _check_same(a: Weight, b: Weight) -> None:
    if mode_of(a) != mode_of(b):
        raise ModeMismatchError("cannot combine a rational weight with a polynomial weight")


def add(a: Weight, b: Weight) -> Weight:
    _check_same(a, b)
    return a + b


def mul(a: Weight, b: Weight) -> Weight:
    _check_same(a, b)
    return a * b


def neg(a: Weight) -> Weight:
    return -a


def is_zero(w: Weight) -> bool:
    return not w


def product(ws: Iterable[Weight], mode: str) -> Weight:
    out = one(mode)
    for w in ws:
        out = out * w
    return out


def evaluate(p: Weight, assignment: Mapping[str, Fraction | int]) -> Fraction:
    """Evaluate a weight at a rational point; rationals map to themselves."""
    if isinstance(p, Fraction):
        return p
    return p.eval(assignment)


def coerce(value: Weight | int, mode: str) -> Weight:
    """Lift an ``int`` into ``mode``; weights must already be in ``mode``."""
    if isinstance(value, bool):
        raise TypeError("bool is not a weight")
    if isinstance(value, int):
        return MPoly.const(value) if mode == SYMBOLIC else Fraction(value)
    if mode_of(value) != mode:
        if mode == SYMBOLIC and value.denominator == 1:
            return MPoly.const(value.numerator)
        raise ModeMismatchError(f"cannot use {format_weight(value)} as a {mode} weight")
    return value


def unify(values: Iterable[Weight]) -> tuple[str, list[Weight]]:
    """Bring parsed literals into one mode.

    Integers are promoted to polynomials when any polynomial is present; a
    non-integral rational next to a polynomial is a mode mismatch.
    """
    values = list(values)
    mode = SYMBOLIC if any(isinstance(v, MPoly) for v in values) else RATIONAL
    return mode, [coerce(v, mode) for v in values]


# -- literals ----------------------------------------------------------------

def parse_literal(text: str, *, allow_reserved: bool = False) -> Weight:
    """Parse an input literal: integer, ``p/q`` rational, or a variable name."""
    s = str(text).strip()
    if _INT_RE.match(s):
        return Fraction(int(s))
    m = _RAT_RE.match(s)
    if m:
        q = int(m.group(2))
        if q == 0:
            raise InputError(f"zero denominator in {text!r}")
        return Fraction(int(m.group(1)), q)
    if _VAR_RE.match(s):
        if s == RESERVED_VARIABLE and not allow_reserved:
            raise InputError(f"variable name {RESERVED_VARIABLE!r} is reserved")
        return MPoly.var(s)
    raise InputError(f"invalid weight literal {text!r}")


_TERM_RE = re.compile(r"\s*([+-])?\s*([^+\-\s][^+\-]*?)\s*(?=[+-]|\Z)")


def parse_weight(text: str, mode: str | None = None) -> Weight:
    """Parse any string produced by :func:`format_weight`.

    Accepts everything :func:`parse_literal` does plus sums of terms such as
    ``"a*d - 3*b^2*c + 1"``.  With ``mode=SYMBOLIC`` integer strings come
    back as constant polynomials so that round trips compare equal.
    """
    s = text.strip()
    try:
        w = parse_literal(s, allow_reserved=True)
    except InputError:
        w = _parse_poly(s)
    return coerce(w, mode) if mode else w


def _parse_poly(s: str) -> MPoly:
    if not s:
        raise InputError("empty weight literal")
    total = MPoly.const(0)
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise InputError(f"invalid polynomial literal {s!r}")
        sign = -1 if m.group(1) == "-" else 1
        term = MPoly.const(sign)
        for factor in m.group(2).split("*"):
            factor = factor.strip()
            base, _, exp = factor.partition("^")
            if _INT_RE.match(base) and not exp:
                term = term * int(base)
            elif _VAR_RE.match(base) and (not exp or exp.isdigit()):
                term = term * MPoly.var(base) ** (int(exp) if exp else 1)
            else:
                raise InputError(f"invalid polynomial term {factor!r} in {s!r}")
        total = total + term
        pos = m.end()
    return total


def format_weight(w: Weight) -> str:
    return str(w)
