"""Randomized exact dimension oracle over GF(p).

"Generic and independent" points are realized by seeded random sampling
over a large prime field: an explicit smooth reference curve, random
distinct points (constrained ones found by intersecting the curve with
random lines), then one interpolation matrix row per linear condition on
the coefficient space of degree-d forms.

Row recipes (p > d throughout):

  * fat point of multiplicity m at P (free or on the curve): the
    homogeneous partial derivatives of exact order m-1 evaluated at P --
    m(m+1)/2 rows, equivalent to all affine jets of order < m when p > d;
  * residue point D^i(P^m) on C: in local coordinates (u, v) at P where
    v = 0 is the truncated local equation of C (tangent line mapped to the
    u-axis, branch solved as a series in u), the jet coefficients of total
    order <= m-2 plus those of order m-1 with v-exponent < i -- that is
    m(m-1)/2 + i rows, matching the symbolic degree.

By semicontinuity a random geometry can only overestimate h^0, so the
reported value is the minimum over independent trials; when that minimum
equals max(chi, 0) (also a lower bound, h^2 vanishing) the system is
certified regular for the generic position.  Failure probability is
O(poly(d)/p) per trial and is not formally bounded here: this is a Monte
Carlo certificate in one direction only.

Trial t uses seed XOR t, so trials are order-independent and the whole
report is a deterministic function of (scheme, d, p, trials, seed).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import curvecheck
from .errors import PreconditionError, SamplingError
from .fieldcore import (
    DEFAULT_PRIME,
    Poly,
    SplitMix64,
    is_prime,
    nullspace_mod,
    rank_mod,
    uni_roots,
    uni_trim,
)
from .zeroscheme import FAT, FREE, RESIDUE, PointCondition, ZeroScheme, tangency

Point = tuple[int, int, int]


def monomials(d: int) -> list[tuple[int, int, int]]:
    """Fixed column order for degree-d forms: (a, b, c) with a descending,
    then b descending."""
    return [(a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1)]


def ncols(d: int) -> int:
    return (d + 1) * (d + 2) // 2 if d >= 0 else 0


@dataclass(frozen=True)
class RankReport:
    N: int
    rows: int
    rank: int
    h0: int
    dim: int
    chi: int
    regular: bool
    p: int
    seed: int
    trials: int

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "chi": self.chi,
            "dim": self.dim,
            "h0": self.h0,
            "p": self.p,
            "rank": self.rank,
            "regular": self.regular,
            "rows": self.rows,
            "seed": self.seed,
            "trials": self.trials,
        }


@dataclass
class Geometry:
    p: int
    seed: int
    placements: dict[str, Point]
    ref_curve: Poly | None = None
    ref_degree: int | None = None


def _normalize(pt: tuple[int, int, int], p: int) -> Point:
    """Scale so the last nonzero coordinate is 1 (canonical representative)."""
    coords = [c % p for c in pt]
    for idx in (2, 1, 0):
        if coords[idx]:
            inv = pow(coords[idx], p - 2, p)
            return tuple(c * inv % p for c in coords)  # type: ignore[return-value]
    raise ValueError("zero vector is not a projective point")


def gradient_at(curve: Poly, pt: Point) -> tuple[int, int, int]:
    return tuple(curve.partial(v).eval(pt) for v in range(3))  # type: ignore[return-value]


def _random_form(degree: int, p: int, rng: SplitMix64) -> Poly:
    coeffs = {}
    for e in monomials(degree):
        coeffs[e] = rng.modp(p)
    return Poly.make(3, coeffs, p)


def sample_smooth_curve(a: int, p: int, rng: SplitMix64, budget: int = 64) -> Poly:
    """Rejection-sample a smooth plane curve of degree a.

    Certification: full singular-locus check for a <= 6 (resultant
    elimination must come back empty with nothing unaccounted); gradient
    spot checks at sampled curve points above that cutoff.
    """
    for _ in range(budget):
        c = _random_form(a, p, rng)
        if c.is_zero() or c.total_degree() != a:
            continue
        if a <= 6:
            try:
                locus = curvecheck.singular_points(c, seed=rng.u64())
            except Exception:
                continue
            if not locus.points and not locus.possibly_nonrational and not locus.degenerate:
                return c
        else:
            ok = True
            probe = SplitMix64(rng.u64())
            for _ in range(24):
                try:
                    pt = _point_on_curve(c, p, probe, {})
                except SamplingError:
                    ok = False
                    break
                if all(v == 0 for v in gradient_at(c, pt)):
                    ok = False
                    break
            if ok:
                return c
    raise SamplingError(
        f"no smooth curve of degree {a} found in {budget} tries; "
        "retry with a different seed or a larger prime"
    )


def _point_on_curve(curve: Poly, p: int, rng: SplitMix64, taken: dict, budget: int = 64) -> Point:
    """A random rational point on the curve: scan random lines and solve the
    restricted univariate equation."""
    for _ in range(budget):
        a = (rng.modp(p), rng.modp(p), 1)
        b = (rng.modp(p), rng.modp(p), 1)
        restricted = uni_trim(curve.restrict_line(a, b))
        if len(restricted) <= 1:
            continue  # line inside the curve or constant restriction
        roots = uni_roots(restricted, p, rng)
        if not roots:
            continue
        t0 = roots[rng.below(len(roots))][0]
        pt = _normalize(tuple((a[i] + t0 * b[i]) % p for i in range(3)), p)
        if pt in taken:
            continue
        if all(v == 0 for v in gradient_at(curve, pt)):
            continue  # landed on a singular point (non-certified curves)
        return pt
    raise SamplingError(
        "no curve point found; the prime may be too small for this degree -- "
        "retry with a larger prime or another seed"
    )


def sample_geometry(
    z: ZeroScheme,
    a: int | None,
    p: int,
    seed: int,
    budget: int = 64,
) -> Geometry:
    """Realize the scheme's supports over GF(p): an explicit smooth curve of
    degree a when constrained conditions are present, pairwise distinct
    points, constrained ones on the curve."""
    if not is_prime(p):
        raise PreconditionError(f"modulus {p} is not prime")
    a = a if a is not None else z.ref_degree
    needs_curve = any(c.on_curve for c in z.conditions)
    if needs_curve and a is None:
        raise PreconditionError("constrained conditions need a curve degree")
    if z.max_mult() >= p or (a or 0) >= p:
        raise PreconditionError("prime too small for the requested degrees")
    rng = SplitMix64(seed)
    curve = sample_smooth_curve(a, p, rng, budget) if needs_curve else None
    placements: dict[str, Point] = {}
    taken: dict[Point, str] = {}
    for cond in z.conditions:
        if cond.on_curve:
            pt = _point_on_curve(curve, p, rng, taken, budget)
        else:
            for _ in range(budget):
                pt = _normalize((rng.modp(p), rng.modp(p), 1), p)
                if pt in taken:
                    continue
                if curve is not None and curve.eval(pt) == 0:
                    continue
                break
            else:
                raise SamplingError("could not place a free point; retry with another seed")
        placements[cond.pid] = pt
        taken[pt] = cond.pid
    return Geometry(p=p, seed=seed, placements=placements, ref_curve=curve, ref_degree=a)


# ---------------------------------------------------------------------------
# condition rows


def _falling(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


def _fat_rows(d: int, pt: Point, m: int, p: int) -> list[list[int]]:
    """Partial-derivative functionals of exact order m-1 at pt."""
    cols = monomials(d)
    maxp = d + 1
    powers = []
    for v in range(3):
        row = [1] * maxp
        for k in range(1, maxp):
            row[k] = row[k - 1] * pt[v] % p
        powers.append(row)
    rows = []
    for i in range(m - 1, -1, -1):
        for j in range(m - 1 - i, -1, -1):
            k = m - 1 - i - j
            row = []
            for (ea, eb, ec) in cols:
                if ea < i or eb < j or ec < k:
                    row.append(0)
                    continue
                val = _falling(ea, i) * _falling(eb, j) % p * _falling(ec, k) % p
                val = val * powers[0][ea - i] % p * powers[1][eb - j] % p * powers[2][ec - k] % p
                row.append(val)
            rows.append(row)
    return rows


# bivariate jets: dict (a, b) -> coeff, truncated to total degree <= order


def _jet_mul(f: dict, g: dict, order: int, p: int) -> dict:
    out: dict = {}
    for (a1, b1), c1 in f.items():
        for (a2, b2), c2 in g.items():
            a, b = a1 + a2, b1 + b2
            if a + b > order:
                continue
            key = (a, b)
            out[key] = (out.get(key, 0) + c1 * c2) % p
    return {k: v for k, v in out.items() if v}


def _jet_pow_table(base: dict, maxexp: int, order: int, p: int) -> list[dict]:
    table = [{(0, 0): 1}]
    for _ in range(maxexp):
        table.append(_jet_mul(table[-1], base, order, p))
    return table


def local_frame(curve: Poly, pt: Point, p: int) -> list[list[int]]:
    """A deterministic coordinate change M (columns) sending [0:0:1] to pt
    and the tangent line of the curve at pt to {Y = 0}."""
    g = gradient_at(curve, pt)
    if all(v == 0 for v in g):
        raise PreconditionError("curve is singular at a support point")
    gx, gy, gz = g

    def cross(u, v):
        return (
            (u[1] * v[2] - u[2] * v[1]) % p,
            (u[2] * v[0] - u[0] * v[2]) % p,
            (u[0] * v[1] - u[1] * v[0]) % p,
        )

    candidates = [
        ((-gy) % p, gx % p, 0),
        ((-gz) % p, 0, gx % p),
        (0, (-gz) % p, gy % p),
    ]
    c1 = None
    for cand in candidates:
        if any(cand) and any(cross(cand, pt)):
            c1 = cand
            break
    if c1 is None:  # unreachable for a nonzero gradient
        raise PreconditionError("degenerate tangent frame")
    c2 = None
    for idx in range(3):
        e = tuple(int(i == idx) for i in range(3))
        det = (
            c1[0] * (e[1] * pt[2] - e[2] * pt[1])
            - c1[1] * (e[0] * pt[2] - e[2] * pt[0])
            + c1[2] * (e[0] * pt[1] - e[1] * pt[0])
        ) % p
        if det:
            c2 = e
            break
    return [[c1[i], c2[i], pt[i]] for i in range(3)]


def _branch_series(curve: Poly, m3: list[list[int]], order: int, p: int) -> list[int]:
    """Solve the local equation of the transformed curve as y = phi(x), with
    phi(0) = 0, order by order (coefficient list, phi[0] = 0).

    In the frame produced by local_frame the curve passes through the origin
    of the affine chart with dC/dy != 0 there, so each phi[k] is determined
    by one division.
    """
    aff = curve.subs_linear(m3).specialize(2, 1)
    ax: dict[int, list[int]] = {}  # y-degree -> coefficients in x
    for j, poly in aff.collect_uni(1).items():
        coeffs = [0] * (poly.degree_in(0) + 1)
        for e, c in poly.coeffs:
            coeffs[e[0]] = c
        ax[j] = uni_trim(coeffs)
    if ax.get(0) and ax[0][0] % p:
        raise PreconditionError("support point not on the curve")
    cy0 = ax[1][0] if ax.get(1) else 0
    if cy0 % p == 0:
        raise PreconditionError("tangent frame failed: dC/dy vanishes at the point")
    inv_cy = pow(cy0, p - 2, p)

    def smul(a: list[int], b: list[int]) -> list[int]:
        out = [0] * (order + 1)
        for i1, c1 in enumerate(a[: order + 1]):
            if c1 == 0:
                continue
            for i2, c2 in enumerate(b[: order + 1 - i1]):
                if c2 == 0:
                    continue
                out[i1 + i2] = (out[i1 + i2] + c1 * c2) % p
        return out

    def compose(phi_now: list[int]) -> list[int]:
        maxj = max(ax) if ax else 0
        powt = [[1] + [0] * order]
        for _ in range(maxj):
            powt.append(smul(powt[-1], phi_now))
        acc = [0] * (order + 1)
        for j, coeffs in ax.items():
            term = smul(coeffs, powt[j])
            for k, c in enumerate(term):
                acc[k] = (acc[k] + c) % p
        return acc

    phi = [0] * (order + 1)
    for k in range(1, order + 1):
        err = compose(phi)[k]
        phi[k] = (-err) * inv_cy % p
    return phi


def _residue_rows(
    d: int, pt: Point, m: int, i: int, curve: Poly, p: int
) -> list[list[int]]:
    """Jet-coefficient functionals for D^i(P^m) in local coordinates at pt."""
    order = m - 1
    m3 = local_frame(curve, pt, p)
    phi = _branch_series(curve, m3, order, p)
    # y-coordinate jet: v + phi(u)
    yjet = {(0, 1): 1}
    for k in range(1, order + 1):
        if phi[k]:
            yjet[(k, 0)] = phi[k]
    lin_jets = []
    for row in range(3):
        jet = {}
        if m3[row][2] % p:
            jet[(0, 0)] = m3[row][2] % p
        if m3[row][0] % p:
            jet[(1, 0)] = (jet.get((1, 0), 0) + m3[row][0]) % p
        if m3[row][1] % p:
            for key, c in yjet.items():
                jet[key] = (jet.get(key, 0) + m3[row][1] * c) % p
        lin_jets.append({k: v % p for k, v in jet.items() if v % p})
    ptabs = [_jet_pow_table(lin_jets[v], d, order, p) for v in range(3)]
    cols = monomials(d)
    jets = []
    for (ea, eb, ec) in cols:
        jet = _jet_mul(ptabs[0][ea], ptabs[1][eb], order, p)
        jet = _jet_mul(jet, ptabs[2][ec], order, p)
        jets.append(jet)
    # functionals: total order <= m-2 entirely, order m-1 with v-exponent < i
    keys = []
    for t in range(m - 1):
        for b in range(t + 1):
            keys.append((t - b, b))
    for b in range(i):
        keys.append((m - 1 - b, b))
    rows = []
    for key in keys:
        rows.append([jet.get(key, 0) for jet in jets])
    return rows


def condition_rows(z: ZeroScheme, d: int, geom: Geometry) -> np.ndarray:
    """The interpolation matrix: one row per imposed linear condition on the
    coefficients of degree-d forms, in scheme order.  Row count always equals
    degree(z)."""
    p = geom.p
    if d >= p:
        raise PreconditionError(f"prime {p} must exceed the degree {d}")
    rows: list[list[int]] = []
    for cond in z.conditions:
        pt = geom.placements[cond.pid]
        if cond.kind in (FREE, FAT):
            rows.extend(_fat_rows(d, pt, cond.m, p))
        elif cond.kind == RESIDUE:
            if geom.ref_curve is None:
                raise PreconditionError("residue condition without a reference curve")
            rows.extend(_residue_rows(d, pt, cond.m, cond.i, geom.ref_curve, p))
        else:  # pragma: no cover
            raise PreconditionError(f"unknown condition kind {cond.kind}")
    n = ncols(d)
    if not rows:
        return np.zeros((0, n), dtype=np.int64)
    return np.array(rows, dtype=np.int64) % p


def h0(
    z: ZeroScheme,
    d: int,
    p: int = DEFAULT_PRIME,
    trials: int = 3,
    seed: int = 0,
    a: int | None = None,
) -> RankReport:
    """Minimum h^0 over independent random geometries (an upper bound for
    the generic value; equality with max(chi, 0) certifies regularity)."""
    if trials < 1:
        raise PreconditionError("trials must be >= 1")
    if d >= p:
        raise PreconditionError(f"prime {p} must exceed the degree {d}")
    n = ncols(d)
    best_h0 = None
    for t in range(trials):
        geom = sample_geometry(z, a, p, seed ^ t)
        mat = condition_rows(z, d, geom)
        rank = rank_mod(mat, p) if mat.size else 0
        h = n - rank
        best_h0 = h if best_h0 is None else min(best_h0, h)
    chi = z.chi(d)
    h0_min = int(best_h0)
    return RankReport(
        N=n,
        rows=z.degree(),
        rank=n - h0_min,
        h0=h0_min,
        dim=h0_min - 1,
        chi=chi,
        regular=(h0_min == max(chi, 0)),
        p=p,
        seed=seed,
        trials=trials,
    )


def extract_basis(z: ZeroScheme, d: int, geom: Geometry) -> list[Poly]:
    """Nullspace of the interpolation matrix as explicit degree-d forms."""
    mat = condition_rows(z, d, geom)
    p = geom.p
    basis = nullspace_mod(mat, p) if mat.size else [v for v in np.eye(ncols(d), dtype=np.int64)]
    cols = monomials(d)
    out = []
    for vec in basis:
        out.append(Poly.make(3, {cols[j]: int(vec[j]) for j in range(len(cols))}, p))
    return out


def dim_on_restriction(
    z: ZeroScheme, d: int, geom: Geometry, tangency_pids: list[str]
) -> RankReport:
    """h^0 of the system augmented by tangency conditions at the listed
    constrained points (each fat point m upgraded to the residue D^1(P^(m+1)),
    one extra row).  Computed on the given geometry (single trial)."""
    conds = []
    byid = {c.pid: c for c in z.conditions}
    for pid in tangency_pids:
        cond = byid.get(pid)
        if cond is None or not cond.on_curve or cond.kind != FAT:
            raise PreconditionError(
                f"tangency point {pid!r} must be a fat point on the reference curve"
            )
    for cond in z.conditions:
        if cond.pid in tangency_pids:
            conds.append(tangency(cond.pid, cond.m))
        else:
            conds.append(cond)
    z2 = ZeroScheme(tuple(conds), z.ref_degree)
    mat = condition_rows(z2, d, geom)
    p = geom.p
    n = ncols(d)
    rank = rank_mod(mat, p) if mat.size else 0
    h = n - rank
    chi = z2.chi(d)
    return RankReport(
        N=n,
        rows=z2.degree(),
        rank=rank,
        h0=h,
        dim=h - 1,
        chi=chi,
        regular=(h == max(chi, 0)),
        p=p,
        seed=geom.seed,
        trials=1,
    )
