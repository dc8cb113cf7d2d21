"""Digit sets, certificates, and exact log-ratio rates.

A certificate bundles an equation with a digit alphabet that was checked to
be solution-free, the base of the digit system, and the rate
log|A_L| / log L.  Rates are kept as exact (size, base) pairs and rendered
to decimals only at reporting boundaries, so comparisons never drift.
"""

from __future__ import annotations

import decimal
import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering

from .equations import Equation, equation_from_json, equation_to_json

MODE_ALL = "all"
MODE_DISTINCT = "distinct"


def _integer_root(n: int, k: int) -> int:
    """Floor of the k-th root of n, exact."""
    if n < 2 or k == 1:
        return n
    r = int(round(n ** (1.0 / k)))
    while r ** k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def _primitive_power(n: int) -> tuple[int, int]:
    """Write n = u**e with e maximal; returns (u, e)."""
    if n < 2:
        return n, 1
    for e in range(n.bit_length(), 1, -1):
        u = _integer_root(n, e)
        if u >= 2 and u ** e == n:
            return u, e
    return n, 1


@total_ordering
@dataclass(frozen=True)
class Rate:
    """Exact rate log(size)/log(base) for integers size >= 1, base >= 2."""

    size: int
    base: int

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("rate base must be at least 2")
        if self.size < 1:
            raise ValueError("rate size must be at least 1")

    @property
    def degenerate(self) -> bool:
        return self.size < 2

    @property
    def decimal(self) -> float:
        if self.size < 2:
            return 0.0
        return math.log(self.size) / math.log(self.base)

    def as_fraction(self) -> Fraction | None:
        """Exact rational value when size and base are powers of a common root."""
        if self.size < 2:
            return Fraction(0)
        u, e = _primitive_power(self.size)
        v, f = _primitive_power(self.base)
        if u == v:
            return Fraction(e, f)
        return None

    def _cmp_key(self):
        """Canonical (root_num, root_den, exponent ratio) for irrational rates.

        log(u**e)/log(v**f) equals log(u**e')/log(v**f') iff e*f' == e'*f, so
        the exponent pair is reduced by its gcd.
        """
        u, e = _primitive_power(self.size)
        v, f = _primitive_power(self.base)
        g = math.gcd(e, f)
        return (u, v, e // g, f // g)

    def __eq__(self, other):
        if not isinstance(other, Rate):
            return NotImplemented
        a, b = self.as_fraction(), other.as_fraction()
        if a is not None and b is not None:
            return a == b
        if (a is None) != (b is None):
            return False  # rational never equals irrational
        return self._cmp_key() == other._cmp_key()

    def __hash__(self):
        frac = self.as_fraction()
        if frac is not None:
            return hash(("rate", frac))
        return hash(("rate", self._cmp_key()))

    def __lt__(self, other):
        if not isinstance(other, Rate):
            return NotImplemented
        if self == other:
            return False
        a, b = self.as_fraction(), other.as_fraction()
        if a is not None and b is not None:
            return a < b
        if a is not None:
            return not _log_ratio_below(other.size, other.base, a)
        if b is not None:
            return _log_ratio_below(self.size, self.base, b)
        # both irrational with multiplicatively independent pairs: bigint
        # cross powers decide; ties are impossible here at integer scale
        return _log_products_below(self.size, self.base, other.size, other.base)

    def to_json(self) -> dict:
        return {
            "num_log": self.size,
            "den_log": self.base,
            "decimal": round(self.decimal, 12),
        }

    @staticmethod
    def from_json(obj) -> "Rate":
        return Rate(int(obj["num_log"]), int(obj["den_log"]))


def _log_ratio_below(s: int, b: int, frac: Fraction) -> bool:
    """Exact test log(s)/log(b) < p/q via s**q < b**p."""
    p, q = frac.numerator, frac.denominator
    if p < 0:
        return False
    return s ** q < b ** p


def _log_products_below(s1: int, b1: int, s2: int, b2: int) -> bool:
    """log s1 * log b2 < log s2 * log b1, at high fixed precision."""
    with decimal.localcontext() as ctx:
        ctx.prec = 60
        lhs = decimal.Decimal(s1).ln() * decimal.Decimal(b2).ln()
        rhs = decimal.Decimal(s2).ln() * decimal.Decimal(b1).ln()
        return lhs < rhs


@dataclass(frozen=True)
class DigitSet:
    """A base L together with an admissible digit alphabet.

    Invariant: side_sum(equation) * max(digits) < L, so digit arithmetic in
    base L never carries; the alphabet must be oracle-certified before it is
    trusted (see Certificate.verified).
    """

    base: int
    digits: tuple[int, ...]
    equation: Equation
    mode: str = MODE_ALL

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("base must be at least 2")
        if not self.digits:
            raise ValueError("digit alphabet is empty")
        if list(self.digits) != sorted(set(self.digits)):
            raise ValueError("digits must be sorted and distinct")
        if self.digits[0] < 0 or self.digits[-1] >= self.base:
            raise ValueError("digits must lie in [0, base)")
        if self.mode not in (MODE_ALL, MODE_DISTINCT):
            raise ValueError(f"unknown mode {self.mode!r}")
        s = self.equation.side_sum
        if s * self.digits[-1] >= self.base:
            raise ValueError(
                f"no-carry violation: {s} * {self.digits[-1]} >= {self.base}"
            )

    @property
    def rate(self) -> Rate:
        return Rate(len(self.digits), self.base)

    @property
    def degenerate(self) -> bool:
        return len(self.digits) < 2


def make_digit_set(base, digits, equation, mode=MODE_ALL) -> DigitSet:
    return DigitSet(int(base), tuple(sorted(set(int(d) for d in digits))), equation, mode)


def tight_base(equation: Equation, digits) -> int:
    """Smallest base satisfying the no-carry condition for these digits."""
    return equation.side_sum * max(digits) + 1


@dataclass(frozen=True)
class Certificate:
    """A digit set plus the record of its exhaustive verification."""

    digit_set: DigitSet
    verified: bool
    oracle_nodes: int = 0
    meta: dict = field(default_factory=dict)

    @property
    def equation(self) -> Equation:
        return self.digit_set.equation

    @property
    def rate(self) -> Rate:
        return self.digit_set.rate

    def to_json(self) -> dict:
        obj = {
            "schema": 1,
            "equation": equation_to_json(self.digit_set.equation),
            "base": self.digit_set.base,
            "digits": list(self.digit_set.digits),
            "rate": self.digit_set.rate.to_json(),
            "verified": self.verified,
            "oracle_nodes": self.oracle_nodes,
            "mode": self.digit_set.mode,
        }
        if self.meta:
            obj["meta"] = self.meta
        return obj

    @staticmethod
    def from_json(obj: dict) -> "Certificate":
        ds = DigitSet(
            int(obj["base"]),
            tuple(int(d) for d in obj["digits"]),
            equation_from_json(obj["equation"]),
            obj.get("mode", MODE_ALL),
        )
        return Certificate(
            ds,
            bool(obj["verified"]),
            int(obj.get("oracle_nodes", 0)),
            dict(obj.get("meta", {})),
        )


def save_certificate(cert: Certificate, path: str) -> None:
    """Write certificate JSON atomically (temp file + rename)."""
    payload = json.dumps(cert.to_json(), indent=2, sort_keys=True)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_certificate(path: str) -> Certificate:
    with open(path, encoding="utf-8") as fh:
        return Certificate.from_json(json.load(fh))
