"""Exact arithmetic on divisor classes of the plane blown up at r points.

A class is written (d; m_1, ..., m_r): plane degree d and multiplicities
m_i at the r blown-up base points.  The pairing is
(d; m).(c; n) = d c - sum m_i n_i, the canonical class is (-3; (-1)^r).
Negative multiplicities are allowed (residual classes need them); the
characteristic and genus formulas are applied verbatim without clamping,
and the clamp to nonnegative multiplicities is a separate explicit step
when building point schemes (see zeroscheme.clamp_nonneg).

Python integers are arbitrary precision, so the bound calculators can share
this arithmetic without overflow concerns.

Text notation: "d;m1,m2,..." with the run-length shorthand "m^k" for k
consecutive equal multiplicities, e.g. "6;2^9".  Parsing and printing
round-trip bit-exactly (printing uses ^k only for k >= 2).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import LatticeMismatchError, NotationError, OutOfRangeError

_TOKEN = re.compile(r"^(-?\d+)(?:\^(\d+))?$")


@dataclass(frozen=True)
class PicClass:
    d: int
    mults: tuple[int, ...] = ()

    @property
    def r(self) -> int:
        return len(self.mults)

    def _check(self, other: "PicClass"):
        if self.r != other.r:
            raise LatticeMismatchError(
                f"classes live on different blow-ups (r={self.r} vs r={other.r})"
            )

    def intersect(self, other: "PicClass") -> int:
        self._check(other)
        return self.d * other.d - sum(m * n for m, n in zip(self.mults, other.mults))

    def chi(self) -> int:
        """Euler characteristic (d+1)(d+2)/2 - sum m_i(m_i+1)/2."""
        return (self.d + 1) * (self.d + 2) // 2 - sum(m * (m + 1) // 2 for m in self.mults)

    def genus(self) -> int:
        """Arithmetic genus of sections: (d-1)(d-2)/2 - sum m_i(m_i-1)/2."""
        return (self.d - 1) * (self.d - 2) // 2 - sum(m * (m - 1) // 2 for m in self.mults)

    def expected_dim(self) -> int:
        """max(chi - 1, -1); requires d >= -2 so that h^2 vanishes."""
        if self.d < -2:
            raise OutOfRangeError(f"expected_dim needs d >= -2, got d={self.d}")
        return max(self.chi() - 1, -1)

    def residual(self, other: "PicClass") -> "PicClass":
        self._check(other)
        return PicClass(self.d - other.d, tuple(m - n for m, n in zip(self.mults, other.mults)))

    def __sub__(self, other: "PicClass") -> "PicClass":
        return self.residual(other)

    def __add__(self, other: "PicClass") -> "PicClass":
        self._check(other)
        return PicClass(self.d + other.d, tuple(m + n for m, n in zip(self.mults, other.mults)))

    def times(self, k: int) -> "PicClass":
        return PicClass(k * self.d, tuple(k * m for m in self.mults))

    # -- notation -------------------------------------------------------

    @staticmethod
    def parse(text: str) -> "PicClass":
        text = text.strip()
        if ";" not in text:
            raise NotationError(f"class notation needs 'd;mults', got {text!r}")
        head, _, tail = text.partition(";")
        try:
            d = int(head)
        except ValueError:
            raise NotationError(f"bad degree {head!r}") from None
        mults: list[int] = []
        tail = tail.strip()
        if tail:
            for tok in tail.split(","):
                m = _TOKEN.match(tok.strip())
                if not m:
                    raise NotationError(f"bad multiplicity token {tok!r}")
                value = int(m.group(1))
                count = int(m.group(2)) if m.group(2) else 1
                if m.group(2) is not None and count < 1:
                    raise NotationError(f"bad repeat count in {tok!r}")
                mults.extend([value] * count)
        return PicClass(d, tuple(mults))

    def __str__(self) -> str:
        parts = []
        i = 0
        ms = self.mults
        while i < len(ms):
            j = i
            while j < len(ms) and ms[j] == ms[i]:
                j += 1
            parts.append(f"{ms[i]}^{j - i}" if j - i > 1 else str(ms[i]))
            i = j
        return f"{self.d};{','.join(parts)}"


def canonical(r: int) -> PicClass:
    """The canonical class (-3; (-1)^r)."""
    if r < 0:
        raise OutOfRangeError("r must be nonnegative")
    return PicClass(-3, (-1,) * r)


def intersect(a: PicClass, b: PicClass) -> int:
    return a.intersect(b)


def chi(d: PicClass) -> int:
    return d.chi()


def genus(d: PicClass) -> int:
    return d.genus()


def expected_dim(d: PicClass) -> int:
    return d.expected_dim()


def residual(d: PicClass, c: PicClass) -> PicClass:
    return d.residual(c)
