"""Symbolic zero-dimensional schemes: fat points and residue points.

A scheme is a list of point conditions at pairwise distinct supports:

  * FreeFat(m)        -- fat point P^m, support generic in the plane;
  * CurveFat(m)       -- fat point on the reference curve C;
  * CurveResidue(m,i) -- residue point D^i(P^m) on C, the scheme of the
                         ideal I_P^(m-1) cap (I_C^i + I_P^m), 0 <= i <= m-1.

In local coordinates (u, v) at a smooth point of C with C = {v = 0}, the
residue-point ideal is monomial: u^a v^b lies in it iff a+b >= m-1 and
(b >= i or a+b >= m).  Degrees, traces and conductor residues below are read
off that model; the package only *applies* the trace/residue rules for the
two variants the Horace bookkeeping needs (simple residues i = m-1 and
tangency residues i = 1) and rejects the rest, which the numeric oracle can
still impose via jets.

Degrees: fat point m(m+1)/2; D^i(P^m) has m(m-1)/2 + i.
Trace on C: fat-on-curve m; D^(m-1)(P^m) is m for m > 1 (0 for m = 1);
the tangency residue D^1(P^(m+1)) traces m+1.
Residue (conductor by C): fat m -> fat m-1; simple residue steps down to
the simple residue of the next lower multiplicity; the tangency constraint
disappears, D^1(P^(m+1)) -> P^(m-1).

Conditions of degree zero are normalized away at construction, so the
degree bookkeeping degree(Z) = trace(Z) + degree(residue(Z)) is total.

Text notation (comma separated, each token optionally ^k for k copies):
"2^9" nine free double points; "C:3^4" four triple points on C;
"C:D(5,4)" the residue point D^4(P^5); "C:T2" the tangency condition at a
point of multiplicity 2 (identical to "C:D(3,1)" and printed as T2).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from .errors import NotationError, PreconditionError, UnsupportedResidueError
from .picard import PicClass

FREE = "free"
FAT = "fat"
RESIDUE = "residue"

_SCHEME_TOKEN = re.compile(
    r"^(?:(?P<free>-?\d+)|C:(?P<fat>\d+)|C:T(?P<tang>\d+)|C:D\((?P<rm>\d+),(?P<ri>\d+)\))(?:\^(?P<count>\d+))?$"
)


@dataclass(frozen=True)
class PointCondition:
    pid: str
    kind: str  # FREE | FAT | RESIDUE
    m: int
    i: int | None = None

    def __post_init__(self):
        if self.kind in (FREE, FAT):
            if self.m < 1:
                raise PreconditionError(f"fat point needs m >= 1, got {self.m}")
            if self.i is not None:
                raise PreconditionError("fat points carry no residue index")
        elif self.kind == RESIDUE:
            if self.m < 1 or self.i is None or not (0 <= self.i <= self.m - 1):
                raise PreconditionError(
                    f"residue point needs m >= 1 and 0 <= i <= m-1, got D^{self.i}(P^{self.m})"
                )
        else:
            raise PreconditionError(f"unknown condition kind {self.kind!r}")

    @property
    def on_curve(self) -> bool:
        return self.kind != FREE

    def degree(self) -> int:
        if self.kind == RESIDUE:
            return self.m * (self.m - 1) // 2 + self.i
        return self.m * (self.m + 1) // 2

    def trace_degree(self) -> int:
        """Degree of the trace on the reference curve."""
        if self.kind == FREE:
            return 0
        if self.kind == FAT:
            return self.m
        if self.i == self.m - 1:  # simple residue
            return self.m if self.m > 1 else 0
        if self.i == 1:  # tangency residue D^1(P^m), m >= 2
            return self.m
        raise UnsupportedResidueError(
            f"no symbolic trace rule for D^{self.i}(P^{self.m}); use the oracle"
        )

    def residue_condition(self) -> "PointCondition | None":
        """Condition of the conductor residue; None when it is empty."""
        if self.kind == FREE:
            return self
        if self.kind == FAT:
            return replace(self, m=self.m - 1) if self.m > 1 else None
        if self.i == self.m - 1:  # simple residue one level down
            if self.m <= 2:  # D^0(P^1) is empty
                return None
            return replace(self, m=self.m - 1, i=self.m - 2)
        if self.i == 1:  # tangency constraint disappears
            return PointCondition(self.pid, FAT, self.m - 2) if self.m > 2 else None
        raise UnsupportedResidueError(
            f"no symbolic residue rule for D^{self.i}(P^{self.m}); use the oracle"
        )


def free_fat(pid: str, m: int) -> PointCondition:
    return PointCondition(pid, FREE, m)


def curve_fat(pid: str, m: int) -> PointCondition:
    return PointCondition(pid, FAT, m)


def curve_residue(pid: str, m: int, i: int) -> PointCondition:
    return PointCondition(pid, RESIDUE, m, i)


def tangency(pid: str, m: int) -> PointCondition:
    """Condition 'multiplicity >= m, and tangent branch to C if exactly m':
    the scheme D^1(P^(m+1)) for m >= 1, the reduced point on C for m = 0."""
    if m == 0:
        return PointCondition(pid, FAT, 1)
    return PointCondition(pid, RESIDUE, m + 1, 1)


@dataclass(frozen=True)
class ZeroScheme:
    conditions: tuple[PointCondition, ...] = ()
    ref_degree: int | None = None  # degree of the (generic) reference curve

    def __post_init__(self):
        kept = tuple(c for c in self.conditions if c.degree() > 0)
        object.__setattr__(self, "conditions", kept)
        pids = [c.pid for c in kept]
        if len(set(pids)) != len(pids):
            raise PreconditionError("point identifiers must be pairwise distinct")
        if self.ref_degree is None and any(c.on_curve for c in kept):
            raise PreconditionError("constrained conditions need a reference curve")
        if self.ref_degree is not None and self.ref_degree < 1:
            raise PreconditionError("reference curve degree must be >= 1")

    def free(self) -> tuple[PointCondition, ...]:
        return tuple(c for c in self.conditions if not c.on_curve)

    def const(self) -> tuple[PointCondition, ...]:
        return tuple(c for c in self.conditions if c.on_curve)

    def degree(self) -> int:
        return sum(c.degree() for c in self.conditions)

    def trace_degree(self) -> int:
        """Total degree of the trace Z cap C."""
        if any(c.on_curve for c in self.conditions) and self.ref_degree is None:
            raise PreconditionError("trace needs a reference curve")
        return sum(c.trace_degree() for c in self.conditions)

    def residue(self) -> "ZeroScheme":
        """The conductor residue of Z by C (free parts untouched)."""
        if self.ref_degree is None:
            raise PreconditionError("residue needs a reference curve")
        out = []
        for c in self.conditions:
            rc = c.residue_condition()
            if rc is not None:
                out.append(rc)
        return ZeroScheme(tuple(out), self.ref_degree)

    def max_mult(self) -> int:
        return max((c.m for c in self.conditions), default=0)

    def chi(self, d: int) -> int:
        """chi of the ideal sheaf twisted by d: (d+1)(d+2)/2 - deg Z."""
        return (d + 1) * (d + 2) // 2 - self.degree()

    def with_condition(self, cond: PointCondition) -> "ZeroScheme":
        return ZeroScheme(self.conditions + (cond,), self.ref_degree)

    # -- notation -------------------------------------------------------

    @staticmethod
    def parse(text: str, ref_degree: int | None = None) -> "ZeroScheme":
        text = text.strip()
        conds: list[PointCondition] = []
        nfree = ncurve = 0
        if text:
            for tok in text.split(","):
                m = _SCHEME_TOKEN.match(tok.strip())
                if not m:
                    raise NotationError(f"bad scheme token {tok!r}")
                count = int(m.group("count")) if m.group("count") else 1
                if count < 1:
                    raise NotationError(f"bad repeat count in {tok!r}")
                for _ in range(count):
                    if m.group("free") is not None:
                        nfree += 1
                        value = int(m.group("free"))
                        if value < 1:
                            raise NotationError(f"free fat point needs m >= 1, got {value}")
                        conds.append(free_fat(f"F{nfree}", value))
                    elif m.group("fat") is not None:
                        ncurve += 1
                        conds.append(curve_fat(f"C{ncurve}", int(m.group("fat"))))
                    elif m.group("tang") is not None:
                        ncurve += 1
                        conds.append(tangency(f"C{ncurve}", int(m.group("tang"))))
                    else:
                        ncurve += 1
                        conds.append(
                            curve_residue(f"C{ncurve}", int(m.group("rm")), int(m.group("ri")))
                        )
        if any(c.on_curve for c in conds) and ref_degree is None:
            raise NotationError("scheme has on-curve conditions; a curve degree is required")
        return ZeroScheme(tuple(conds), ref_degree)

    def __str__(self) -> str:
        def token(c: PointCondition) -> str:
            if c.kind == FREE:
                return str(c.m)
            if c.kind == FAT:
                return f"C:{c.m}"
            if c.i == 1 and c.m >= 2:
                return f"C:T{c.m - 1}"
            return f"C:D({c.m},{c.i})"

        parts = []
        i = 0
        cs = self.conditions
        while i < len(cs):
            j = i
            t = token(cs[i])
            while j < len(cs) and token(cs[j]) == t:
                j += 1
            parts.append(f"{t}^{j - i}" if j - i > 1 else t)
            i = j
        return ",".join(parts)


def degree(z: ZeroScheme) -> int:
    return z.degree()


def trace_degree(z: ZeroScheme) -> int:
    return z.trace_degree()


def residue(z: ZeroScheme) -> ZeroScheme:
    return z.residue()


def clamp_nonneg(d: PicClass) -> ZeroScheme:
    """The family of free fat points P_i^max(m_i, 0), zero multiplicities
    dropped.  Point ids keep the original 1-based index for auditing."""
    conds = [
        free_fat(f"P{idx + 1}", m) for idx, m in enumerate(d.mults) if m > 0
    ]
    return ZeroScheme(tuple(conds))
