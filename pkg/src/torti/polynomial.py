"""Sparse Laurent polynomials with exact integer coefficients.

Two concrete types share one implementation:

* ``UniLaurent`` -- one variable ``t``; exponents are ints.
* ``BiLaurent`` -- two variables ``x, y``; exponents are ``(i, j)`` pairs.

Values are immutable.  Coefficients are Python ints, so nothing overflows.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Iterator, Mapping

from .errors import DivisibilityError, NormalizationError, UsageError

__all__ = [
    "UniLaurent",
    "BiLaurent",
    "normalize_units",
    "equal_up_to_units",
    "substitute",
    "divide_exact",
    "is_palindromic",
]


class _Laurent:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for e, c in items:
            c = int(c)
            if c:
                e = self._check_exp(e)
                acc[e] = acc.get(e, 0) + c
        self._terms = {e: c for e, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict):
        # trusted constructor: terms already clean
        obj = object.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @staticmethod
    def _check_exp(e):
        raise NotImplementedError

    # -- container protocol ------------------------------------------------
    @property
    def terms(self) -> dict:
        """A copy of the exponent -> coefficient map."""
        return dict(self._terms)

    def items(self) -> Iterator:
        return iter(self._terms.items())

    def coeff(self, e) -> int:
        return self._terms.get(self._check_exp(e), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def norm1(self) -> int:
        """Sum of absolute values of the coefficients."""
        return sum(abs(c) for c in self._terms.values())

    # -- ring operations ---------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, int):
            return type(self).constant(other)
        if type(other) is not type(self):
            if isinstance(other, _Laurent):
                raise UsageError(
                    f"cannot combine {type(self).__name__} with {type(other).__name__}"
                )
            return NotImplemented
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return self._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return self._raw({e: -c for e, c in self._terms.items()})

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
        if isinstance(other, int):
            if other == 0:
                return self._raw({})
            return self._raw({e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        add = self._add_exp
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = add(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        return self._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            # only units are invertible: +-monomials
            if len(self._terms) != 1 or abs(next(iter(self._terms.values()))) != 1:
                raise UsageError("negative powers exist only for +-monomials")
            (e, c), = self._terms.items()
            inv = tuple(-a for a in e) if isinstance(e, tuple) else -e
            return self._raw({inv: c}) ** -n
        result = type(self).constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = type(self).constant(other)
        if type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    @classmethod
    def constant(cls, c: int):
        return cls({cls._zero_exp(): c})

    def shift(self, e):
        """Multiply by the monomial with exponent ``e``."""
        e = self._check_exp(e)
        add = self._add_exp
        return self._raw({add(k, e): c for k, c in self._terms.items()})

    def sorted_items(self) -> list:
        return sorted(self._terms.items(), key=lambda kv: self._sort_key(kv[0]))

    def __repr__(self):
        return f"{type(self).__name__}({self})"


def _fmt_terms(pieces: list[tuple[int, str]]) -> str:
    if not pieces:
        return "0"
    out = []
    for k, (c, mono) in enumerate(pieces):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def _power(var: str, n: int) -> str:
    if n == 0:
        return ""
    if n == 1:
        return var
    return f"{var}^{n}" if n > 0 else f"{var}^({n})"


class UniLaurent(_Laurent):
    """Laurent polynomial in ``t``."""

    __slots__ = ()

    @staticmethod
    def _check_exp(e):
        return int(e)

    @staticmethod
    def _zero_exp():
        return 0

    @staticmethod
    def _add_exp(a, b):
        return a + b

    @staticmethod
    def _sort_key(e):
        return e

    @classmethod
    def t(cls) -> "UniLaurent":
        return cls({1: 1})

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], start: int = 0) -> "UniLaurent":
        """Build ``sum coeffs[k] * t^(start + k)``."""
        return cls((start + k, c) for k, c in enumerate(coeffs))

    def min_exp(self) -> int:
        return min(self._terms)

    def max_exp(self) -> int:
        return max(self._terms)

    def degree(self) -> int:
        """Span ``max - min`` of the exponents; 0 for the zero polynomial."""
        if not self._terms:
            return 0
        return self.max_exp() - self.min_exp()

    def coefficients(self) -> list[int]:
        """Dense coefficient list from the lowest to the highest exponent."""
        if not self._terms:
            return []
        lo, hi = self.min_exp(), self.max_exp()
        return [self._terms.get(e, 0) for e in range(lo, hi + 1)]

    def leading(self) -> int:
        return self._terms[self.max_exp()] if self._terms else 0

    def trailing(self) -> int:
        return self._terms[self.min_exp()] if self._terms else 0

    def shift_to_zero(self) -> "UniLaurent":
        if not self._terms:
            return self
        return self.shift(-self.min_exp())

    def evaluate(self, value):
        """Evaluate at a number; negative exponents need an invertible value."""
        total = 0
        for e, c in self._terms.items():
            total += c * (value ** e)
        return total

    def centered(self) -> "UniLaurent":
        """Shift so the exponent range is symmetric about zero.

        Requires an even span.
        """
        if not self._terms:
            return self
        lo, hi = self.min_exp(), self.max_exp()
        if (lo + hi) % 2:
            raise UsageError("odd span has no centered representative")
        return self.shift(-(lo + hi) // 2)

    def to_json(self) -> list[dict]:
        return [{"c": c, "e": e} for e, c in self.sorted_items()]

    @classmethod
    def from_json(cls, data: list[dict]) -> "UniLaurent":
        return cls((rec["e"], rec["c"]) for rec in data)

    def __str__(self):
        return _fmt_terms([(c, _power("t", e)) for e, c in self.sorted_items()])


class BiLaurent(_Laurent):
    """Laurent polynomial in ``x`` and ``y``; exponents are ``(i, j)``."""

    __slots__ = ()

    @staticmethod
    def _check_exp(e):
        i, j = e
        return (int(i), int(j))

    @staticmethod
    def _zero_exp():
        return (0, 0)

    @staticmethod
    def _add_exp(a, b):
        return (a[0] + b[0], a[1] + b[1])

    @staticmethod
    def _sort_key(e):
        # y-major ascending, then x ascending
        return (e[1], e[0])

    @classmethod
    def x(cls) -> "BiLaurent":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiLaurent":
        return cls({(0, 1): 1})

    @classmethod
    def monomial(cls, i: int, j: int, c: int = 1) -> "BiLaurent":
        return cls({(i, j): c})

    def x_range(self) -> tuple[int, int]:
        xs = [e[0] for e in self._terms]
        return min(xs), max(xs)

    def y_range(self) -> tuple[int, int]:
        ys = [e[1] for e in self._terms]
        return min(ys), max(ys)

    def swap(self) -> "BiLaurent":
        """Exchange ``x`` and ``y``."""
        return self._raw({(j, i): c for (i, j), c in self._terms.items()})

    def invert_y(self) -> "BiLaurent":
        """Substitute ``y -> y^-1``."""
        return self._raw({(i, -j): c for (i, j), c in self._terms.items()})

    def invert(self) -> "BiLaurent":
        """Substitute ``x -> x^-1, y -> y^-1``."""
        return self._raw({(-i, -j): c for (i, j), c in self._terms.items()})

    def evaluate(self, xv, yv):
        total = 0
        for (i, j), c in self._terms.items():
            total += c * (xv ** i) * (yv ** j)
        return total

    def at_y(self, yv: int) -> UniLaurent:
        """Set ``y`` to an integer; ``x`` becomes ``t``."""
        out: dict = {}
        for (i, j), c in self._terms.items():
            out[i] = out.get(i, 0) + c * (yv ** j)
        return UniLaurent(out)

    def y_slice(self, j: int) -> UniLaurent:
        """The coefficient of ``y^j`` as a polynomial in ``x`` (written in ``t``)."""
        return UniLaurent._raw({i: c for (i, jj), c in self._terms.items() if jj == j})

    def to_json(self) -> list[dict]:
        return [{"c": c, "i": i, "j": j} for (i, j), c in self.sorted_items()]

    @classmethod
    def from_json(cls, data: list[dict]) -> "BiLaurent":
        return cls(((rec["i"], rec["j"]), rec["c"]) for rec in data)

    def __str__(self):
        pieces = []
        for (i, j), c in self.sorted_items():
            mono = "*".join(p for p in (_power("x", i), _power("y", j)) if p)
            pieces.append((c, mono))
        return _fmt_terms(pieces)


# ---------------------------------------------------------------------------
# module-level operations


def normalize_units(p: BiLaurent) -> BiLaurent:
    """Canonical representative of ``p`` modulo the units ``+-x^a y^b``.

    Shifts so both minimum exponents are 0, then fixes the overall sign so the
    coefficient of the highest ``x`` power in the top ``y`` slice is positive.
    """
    if isinstance(p, UniLaurent):
        if p.is_zero():
            raise NormalizationError("cannot normalize the zero polynomial")
        q = p.shift_to_zero()
        return -q if q.leading() < 0 else q
    if p.is_zero():
        raise NormalizationError("cannot normalize the zero polynomial")
    xlo, _ = p.x_range()
    ylo, yhi = p.y_range()
    q = p.shift((-xlo, -ylo))
    top = max(i for (i, j) in q._terms if j == yhi - ylo)
    if q._terms[(top, yhi - ylo)] < 0:
        q = -q
    return q


def equal_up_to_units(p: BiLaurent, q: BiLaurent, allow_y_inversion: bool = False) -> bool:
    """True iff ``q = +-x^a y^b p``; with the flag, ``p(x, 1/y)`` is also tried."""
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    nq = normalize_units(q)
    if normalize_units(p) == nq:
        return True
    if allow_y_inversion and isinstance(p, BiLaurent):
        return normalize_units(p.invert_y()) == nq
    return False


def substitute(p: BiLaurent, k: int) -> UniLaurent:
    """Map ``x -> t, y -> t^k``."""
    if k < 1:
        raise UsageError(f"substitution exponent must be >= 1, got {k}")
    out: dict = {}
    for (i, j), c in p.items():
        e = i + k * j
        out[e] = out.get(e, 0) + c
    return UniLaurent(out)


def is_palindromic(p: UniLaurent) -> bool:
    """True iff the dense coefficient list reads the same backwards."""
    cs = p.coefficients()
    return cs == cs[::-1]


def divide_exact(p, q):
    """Exact quotient ``p / q`` in the Laurent ring.

    Raises ``DivisibilityError`` when ``q`` does not divide ``p``.
    """
    if type(p) is not type(q):
        raise UsageError("divide_exact needs operands of the same arity")
    if q.is_zero():
        raise DivisibilityError("division by zero polynomial")
    if p.is_zero():
        return p
    if isinstance(p, UniLaurent):
        return _divide_uni(p, q)
    return _divide_bi(p, q)


def _divide_uni(p: UniLaurent, q: UniLaurent) -> UniLaurent:
    qlo, qhi = q.min_exp(), q.max_exp()
    plo, phi = p.min_exp(), p.max_exp()
    if phi - plo < qhi - qlo:
        raise DivisibilityError(f"{q} does not divide {p}")
    # dense long division on the shifted polynomials
    num = p.coefficients()
    den = q.coefficients()
    lead = den[-1]
    n, m = len(num), len(den)
    quot = [0] * (n - m + 1)
    for k in range(n - m, -1, -1):
        c = num[k + m - 1]
        if c == 0:
            continue
        if c % lead:
            raise DivisibilityError(f"{q} does not divide {p}")
        f = c // lead
        quot[k] = f
        for s in range(m):
            num[k + s] -= f * den[s]
    if any(num):
        raise DivisibilityError(f"{q} does not divide {p}")
    return UniLaurent.from_coeffs(quot, start=plo - qlo)


def _divide_bi(p: BiLaurent, q: BiLaurent) -> BiLaurent:
    # lex long division (y first, then x); every quotient term must land in
    # the box forced by additivity of the x- and y-degrees.
    pxl, pxh = p.x_range()
    pyl, pyh = p.y_range()
    qxl, qxh = q.x_range()
    qyl, qyh = q.y_range()
    xmin, xmax = pxl - qxl, pxh - qxh
    ymin, ymax = pyl - qyl, pyh - qyh
    if xmin > xmax or ymin > ymax:
        raise DivisibilityError(f"{q} does not divide {p}")
    lead_e = max(q._terms, key=lambda e: (e[1], e[0]))
    lead_c = q._terms[lead_e]
    qterms = list(q._terms.items())
    rem = dict(p._terms)
    heap = [(-e[1], -e[0]) for e in rem]
    heapq.heapify(heap)
    quot: dict = {}
    while heap:
        ny, nx = heapq.heappop(heap)
        e = (-nx, -ny)
        c = rem.get(e)
        if not c:
            continue
        if c % lead_c:
            raise DivisibilityError(f"{q} does not divide {p}")
        f = c // lead_c
        qe = (e[0] - lead_e[0], e[1] - lead_e[1])
        if not (xmin <= qe[0] <= xmax and ymin <= qe[1] <= ymax):
            raise DivisibilityError(f"{q} does not divide {p}")
        quot[qe] = f
        for (di, dj), dc in qterms:
            te = (qe[0] + di, qe[1] + dj)
            v = rem.get(te, 0) - f * dc
            if v:
                if te not in rem:
                    heapq.heappush(heap, (-te[1], -te[0]))
                rem[te] = v
            else:
                rem.pop(te, None)
    return BiLaurent._raw(quot)
