"""Even continued fractions of ``beta / 2alpha``.

All sequences hold *halved* entries: ``[[c1, ..., cm]]`` stands for the
fraction ``1 / (2c1 - 1 / (2c2 - ... - 1 / 2cm))``.  Doubling happens only
when a fraction is displayed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import InputError, MalformedFractionError

__all__ = [
    "Rational",
    "StandardCFrac",
    "ModifiedCFrac",
    "CFGraph",
    "Block",
    "CanonDecomp",
    "expand_even",
    "evaluate",
    "modify",
    "standardize",
    "build_graph",
    "linking_number",
    "dual",
    "dual_by_blocks",
    "canonical_decomposition",
    "parse_fraction",
]


@dataclass(frozen=True)
class Rational:
    """``num / den`` with ``den = 2alpha`` even and ``num = beta`` odd."""

    num: int
    den: int

    def __post_init__(self):
        validate_pair(self.den, self.num)

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __str__(self):
        return f"{self.num}/{self.den}"


def validate_pair(two_alpha: int, beta: int) -> None:
    """Raise ``InputError`` unless ``(2alpha, beta)`` names a 2-bridge link."""
    if not isinstance(two_alpha, int) or not isinstance(beta, int):
        raise InputError("2alpha and beta must be integers")
    if two_alpha < 2 or two_alpha % 2:
        raise InputError(f"2alpha must be a positive even integer, got {two_alpha}")
    if beta == 0 or beta % 2 == 0:
        raise InputError(f"gcd/parity violation: beta must be odd and nonzero, got {beta}")
    if gcd(abs(beta), two_alpha) != 1:
        raise InputError(f"gcd/parity violation: gcd({beta}, {two_alpha}) != 1")
    if not -two_alpha < beta < two_alpha:
        raise InputError(f"beta must satisfy -2alpha < beta < 2alpha, got {beta}/{two_alpha}")


def parse_fraction(text: str) -> Rational:
    """Parse ``"B/2A"`` (e.g. ``"21/34"`` or ``"-671/1732"``)."""
    try:
        num_s, den_s = text.strip().split("/")
        return Rational(int(num_s), int(den_s))
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"expected a fraction B/2A, got {text!r}") from None


@dataclass(frozen=True)
class StandardCFrac:
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(c) for c in self.entries))
        if not self.entries:
            raise MalformedFractionError("empty continued fraction")
        if any(c == 0 for c in self.entries):
            raise MalformedFractionError(f"standard form has a zero entry: {self.entries}")
        if len(self.entries) % 2 == 0:
            raise MalformedFractionError(f"standard form must have odd length: {self.entries}")

    def __len__(self):
        return len(self.entries)

    def doubled(self) -> list[int]:
        return [2 * c for c in self.entries]

    def odd_entries(self) -> tuple[int, ...]:
        return self.entries[0::2]

    def __neg__(self) -> "StandardCFrac":
        return StandardCFrac(tuple(-c for c in self.entries))

    def __str__(self):
        return "[[" + ", ".join(map(str, self.entries)) + "]]"


@dataclass(frozen=True)
class ModifiedCFrac:
    """``[[u1, v1, u2, ..., vd, u_{d+1}]]`` with every ``u = +-1``."""

    u: tuple[int, ...]
    v: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(int(a) for a in self.u))
        object.__setattr__(self, "v", tuple(int(b) for b in self.v))
        if len(self.u) != len(self.v) + 1:
            raise MalformedFractionError("modified form needs len(u) == len(v) + 1")
        if any(a not in (1, -1) for a in self.u):
            raise MalformedFractionError(f"odd-position entries must be +-1: {self.u}")

    @classmethod
    def from_entries(cls, entries: Sequence[int]) -> "ModifiedCFrac":
        entries = list(entries)
        if len(entries) % 2 == 0:
            raise MalformedFractionError("modified form must have odd length")
        return cls(tuple(entries[0::2]), tuple(entries[1::2]))

    @property
    def entries(self) -> tuple[int, ...]:
        out = []
        for k, a in enumerate(self.u):
            out.append(a)
            if k < len(self.v):
                out.append(self.v[k])
        return tuple(out)

    def __len__(self):
        return len(self.u) + len(self.v)

    def doubled(self) -> list[int]:
        return [2 * c for c in self.entries]

    def __str__(self):
        return "[[" + ", ".join(map(str, self.entries)) + "]]"


def expand_even(r: Rational) -> StandardCFrac:
    """The all-even continued fraction of ``r``.

    Runs ``t <- 1 / (2c - t)`` from ``t = 2alpha / beta``, taking ``2c`` as the
    even integer within distance 1 of ``t``; stops once ``t`` is an even integer.
    """
    if not isinstance(r, Rational):
        raise InputError("expand_even needs a Rational")
    # t = p / q with q > 0; the step is a unimodular map, so p / q stays reduced
    p, q = (r.den, r.num) if r.num > 0 else (-r.den, -r.num)
    entries = []
    while q != 1 or p % 2:
        # round(t / 2); t is never an odd integer here, so there is no tie
        c = (p + q) // (2 * q)
        entries.append(c)
        p, q = q, 2 * c * q - p
        if q < 0:
            p, q = -p, -q
    entries.append(p // 2)
    return StandardCFrac(tuple(entries))


def evaluate(cf: StandardCFrac | ModifiedCFrac) -> Rational:
    """Value of the continued fraction with the minus-convention nesting."""
    entries = cf.entries
    if not entries:
        raise MalformedFractionError("empty continued fraction")
    t = Fraction(2 * entries[-1])
    for c in reversed(entries[:-1]):
        if t == 0:
            raise MalformedFractionError(f"zero denominator while evaluating {cf}")
        t = 2 * c - 1 / t
    if t == 0:
        raise MalformedFractionError(f"zero denominator while evaluating {cf}")
    value = 1 / t
    try:
        return Rational(value.numerator, value.denominator)
    except InputError as exc:
        raise MalformedFractionError(f"{cf} evaluates to {value}, not a beta/2alpha") from exc


def modify(cf: StandardCFrac) -> ModifiedCFrac:
    """Split every odd-position entry ``c`` into ``(+-1, 0, +-1, ..., +-1)``."""
    out: list[int] = []
    for k, c in enumerate(cf.entries):
        if k % 2 == 0:
            s = 1 if c > 0 else -1
            for n in range(abs(c)):
                if n:
                    out.append(0)
                out.append(s)
        else:
            out.append(c)
    return ModifiedCFrac.from_entries(out)


def standardize(cf: ModifiedCFrac) -> StandardCFrac:
    """Inverse of ``modify``: collapse runs ``(s, 0, s, ..., 0, s)`` into ``n*s``."""
    u, v = cf.u, cf.v
    entries = [u[0]]
    for k, w in enumerate(v):
        nxt = u[k + 1]
        if w == 0:
            if nxt != u[k]:
                raise MalformedFractionError(
                    f"zero between opposite-sign entries at position {2 * k + 2} of {cf}"
                )
            entries[-1] += nxt
        else:
            entries.append(w)
            entries.append(nxt)
    return StandardCFrac(tuple(entries))


@dataclass(frozen=True)
class CFGraph:
    """The weighted plane graph of a modified continued fraction.

    Vertex ``V_i`` sits at ``(i, heights[i])``; ``weights[i]`` is ``2 v_i``
    for interior vertices and 0 at both ends.
    """

    u: tuple[int, ...]
    weights: tuple[int, ...]
    heights: tuple[int, ...]

    @property
    def h(self) -> int:
        return max(self.heights)

    @property
    def q(self) -> int:
        return min(self.heights)

    @property
    def n_edges(self) -> int:
        return len(self.u)

    def is_extremal(self, i: int) -> bool:
        """Ends count as extremal; an interior vertex is extremal at a slope change."""
        if i == 0 or i == len(self.u):
            return True
        return self.u[i - 1] != self.u[i]

    def to_modified(self) -> ModifiedCFrac:
        v = []
        for w in self.weights[1:-1]:
            if w % 2:
                raise MalformedFractionError(f"odd vertex weight {w}")
            v.append(w // 2)
        return ModifiedCFrac(self.u, tuple(v))


def build_graph(cf: ModifiedCFrac | StandardCFrac) -> CFGraph:
    if isinstance(cf, StandardCFrac):
        cf = modify(cf)
    heights = [0]
    for a in cf.u:
        heights.append(heights[-1] + a)
    weights = (0,) + tuple(2 * b for b in cf.v) + (0,)
    return CFGraph(cf.u, weights, tuple(heights))


def linking_number(g: CFGraph | StandardCFrac | ModifiedCFrac) -> int:
    """Height of the last vertex, i.e. the sum of the ``u_i``."""
    if not isinstance(g, CFGraph):
        g = build_graph(g)
    return g.heights[-1]


def dual_graph(g: CFGraph) -> CFGraph:
    weights = []
    for i, w in enumerate(g.weights):
        if g.is_extremal(i):
            weights.append(-w)
        else:
            weights.append(2 * g.u[i - 1] - w)
    return CFGraph(g.u, tuple(weights), g.heights)


def dual(cf: StandardCFrac) -> StandardCFrac:
    """Dual fraction through the weight flip on the graph of ``modify(cf)``."""
    return standardize(dual_graph(build_graph(modify(cf))).to_modified())


# ---------------------------------------------------------------------------
# canonical decomposition


@dataclass(frozen=True)
class Block:
    """A maximal same-sign run ``[[a1, b1, a2, ..., a_{s+1}]]``.

    ``a`` and ``b`` are stored as magnitudes relative to ``sign``: a negative
    block ``[[-a1, -b1, ...]]`` keeps ``a = (a1, ...)`` and ``b = (b1, ...)``.
    """

    sign: int
    a: tuple[int, ...]
    b: tuple[int, ...]

    @property
    def positive(self) -> bool:
        return self.sign > 0

    @property
    def lam(self) -> int:
        return sum(self.a)

    @property
    def rho(self) -> int:
        return sum(1 for x in self.b if x == 1)

    def raw(self) -> list[int]:
        out = []
        for k, x in enumerate(self.a):
            out.append(self.sign * x)
            if k < len(self.b):
                out.append(self.sign * self.b[k])
        return out

    def __str__(self):
        return "[[" + ", ".join(map(str, self.raw())) + "]]"


@dataclass(frozen=True)
class CanonDecomp:
    """``{P1, d1, Q1, e1, P2, ...}``: blocks alternate in sign, joined by separators."""

    blocks: tuple[Block, ...]
    separators: tuple[int, ...]
    lam: int = field(init=False)
    rho: int = field(init=False)

    def __post_init__(self):
        if len(self.separators) != len(self.blocks) - 1:
            raise MalformedFractionError("need exactly one separator between blocks")
        object.__setattr__(self, "lam", sum(b.lam for b in self.blocks))
        object.__setattr__(self, "rho", sum(b.rho for b in self.blocks))

    @property
    def per_block(self) -> list[tuple[str, int, int]]:
        """``(kind, lambda_i, rho_i)`` for every block in order."""
        return [("P" if b.positive else "Q", b.lam, b.rho) for b in self.blocks]

    @property
    def inner_b(self) -> list[int]:
        """All ``b`` and ``b'`` entries (sign-normalized magnitudes)."""
        return [x for blk in self.blocks for x in blk.b]

    def reassemble(self) -> StandardCFrac:
        out: list[int] = []
        for k, blk in enumerate(self.blocks):
            if k:
                out.append(self.separators[k - 1])
            out.extend(blk.raw())
        return StandardCFrac(tuple(out))

    def __str__(self):
        parts = []
        for k, blk in enumerate(self.blocks):
            if k:
                parts.append(str(self.separators[k - 1]))
            parts.append(("P" if blk.positive else "Q") + str(blk))
        return "{" + ", ".join(parts) + "}"


def canonical_decomposition(cf: StandardCFrac) -> CanonDecomp:
    """Split the odd-position entries into maximal same-sign runs."""
    e = cf.entries
    blocks: list[Block] = []
    seps: list[int] = []

    def close(seg):
        s = 1 if seg[0] > 0 else -1
        blocks.append(Block(s, tuple(s * x for x in seg[0::2]), tuple(s * x for x in seg[1::2])))

    start = 0
    for k in range(2, len(e), 2):
        if (e[k] > 0) != (e[start] > 0):
            close(e[start:k - 1])
            seps.append(e[k - 1])
            start = k
    close(e[start:])
    return CanonDecomp(tuple(blocks), tuple(seps))


def _dual_block(blk: Block) -> Block:
    # work on the positive sequence, then restore the sign
    star_b: list[int] = []
    n_u = 0
    for k, a in enumerate(blk.a):
        for n in range(a):
            if n:
                star_b.append(0)
            n_u += 1
        if k < len(blk.b):
            star_b.append(blk.b[k])
    dual_b = [1 - x for x in star_b]
    collapsed = standardize(ModifiedCFrac((1,) * n_u, tuple(dual_b)))
    ent = collapsed.entries
    return Block(blk.sign, ent[0::2], ent[1::2])


def dual_by_blocks(cf: StandardCFrac) -> StandardCFrac:
    """Dual assembled block by block: ``b* -> 1 - b*`` inside blocks, separators negated.

    Independent of the graph construction used by ``dual``.
    """
    cd = canonical_decomposition(cf)
    blocks = tuple(_dual_block(b) for b in cd.blocks)
    return CanonDecomp(blocks, tuple(-s for s in cd.separators)).reassemble()
