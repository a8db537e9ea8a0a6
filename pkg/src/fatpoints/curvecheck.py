"""Analysis of explicit plane curves over GF(p).

Given a homogeneous trivariate form F this module measures multiplicities,
decides ordinarity of a singular point (distinct tangent directions, i.e.
squarefree initial form), hunts for singular points by resultant
elimination, and counts absolutely irreducible factors via the rank of a
first-order differential system.

Rationality caveat: root finding only sees GF(p)-rational points.  Whenever
an eliminant has roots that cannot all be accounted for over GF(p), the
report flags "possibly non-rational singularities" instead of asserting
smoothness; a clean run (empty locus, no flags) certifies smoothness over
the algebraic closure for the chart-covered plane, because every candidate
root was either matched to a verified point or refuted by back-substitution.

Chart choice is by random invertible coordinate change, resampled until the
curve keeps full degree in the chart; the seed is an explicit argument, so
all results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import OutOfRangeError, PreconditionError
from .fieldcore import (
    Poly,
    SplitMix64,
    bi_resultant,
    uni_deg,
    uni_deriv,
    uni_eval,
    uni_gcd,
    uni_roots,
    uni_trim,
)

Point = tuple[int, int, int]

DESK_DEGREE_CUTOFF = 12


def _falling(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


def _partial_eval(f: Poly, pt: Point, order: tuple[int, int, int]) -> int:
    """Evaluate the iterated partial derivative d^order F at pt."""
    p = f.p
    i, j, k = order
    acc = 0
    for (a, b, c), coeff in f.coeffs:
        if a < i or b < j or c < k:
            continue
        t = coeff * (_falling(a, i) % p) % p * (_falling(b, j) % p) % p * (_falling(c, k) % p) % p
        t = t * pow(pt[0] % p, a - i, p) % p * pow(pt[1] % p, b - j, p) % p * pow(pt[2] % p, c - k, p) % p
        acc = (acc + t) % p
    return acc


def multiplicity_at(f: Poly, pt: Point) -> int:
    """Smallest total order of a nonvanishing Taylor coefficient at pt
    (0 means the curve misses the point).  Needs p > deg F so that the
    homogeneous-partial criterion is exact."""
    if f.is_zero():
        raise PreconditionError("multiplicity of the zero form")
    d = f.total_degree()
    if d >= f.p:
        raise PreconditionError("prime must exceed the degree")
    for k in range(d + 1):
        for i in range(k, -1, -1):
            for j in range(k - i, -1, -1):
                if _partial_eval(f, pt, (i, j, k - i - j)) != 0:
                    return k
    return d + 1  # unreachable for pt a genuine projective point


def _point_frame(pt: Point, p: int) -> list[list[int]]:
    """Any deterministic invertible matrix with third column pt."""
    for i1 in range(3):
        for i2 in range(3):
            if i1 == i2:
                continue
            e1 = tuple(int(v == i1) for v in range(3))
            e2 = tuple(int(v == i2) for v in range(3))
            det = (
                e1[0] * (e2[1] * pt[2] - e2[2] * pt[1])
                - e1[1] * (e2[0] * pt[2] - e2[2] * pt[0])
                + e1[2] * (e2[0] * pt[1] - e2[1] * pt[0])
            ) % p
            if det:
                return [[e1[r], e2[r], pt[r] % p] for r in range(3)]
    raise PreconditionError("zero vector is not a projective point")


def initial_form(f: Poly, pt: Point) -> tuple[int, Poly]:
    """(multiplicity, degree-m initial binary form) of F at pt, in affine
    coordinates centered at the point."""
    p = f.p
    m3 = _point_frame(pt, p)
    aff = f.subs_linear(m3).specialize(2, 1)
    if aff.is_zero():
        raise PreconditionError("form vanishes identically")
    mult = min(sum(e) for e, _ in aff.coeffs)
    init = Poly.make(3, {e: c for e, c in aff.coeffs if sum(e) == mult}, p)
    return mult, init


def is_ordinary(f: Poly, pt: Point, m: int) -> bool:
    """True iff the degree-m initial form at pt is squarefree, i.e. the
    tangent cone consists of m distinct lines."""
    if m < 2:
        raise PreconditionError("ordinarity is defined for multiplicity >= 2")
    measured = multiplicity_at(f, pt)
    if measured != m:
        raise PreconditionError(f"multiplicity at the point is {measured}, not {m}")
    _, init = initial_form(f, pt)
    p = f.p
    b = [0] * (m + 1)
    for (a, bb, _), c in init.coeffs:
        b[a] = c
    b = uni_trim(b)  # binary form B(x, y), dehomogenized at y = 1
    inf_mult = m - uni_deg(b)
    if inf_mult >= 2:
        return False
    g = uni_gcd(b, uni_deriv(b, p), p)
    return uni_deg(g) == 0


# ---------------------------------------------------------------------------
# singular locus


@dataclass
class SingularLocus:
    points: list[Point] = field(default_factory=list)
    possibly_nonrational: bool = False
    degenerate: bool = False


def _random_invertible(p: int, rng: SplitMix64) -> list[list[int]]:
    while True:
        m = [[rng.modp(p) for _ in range(3)] for _ in range(3)]
        det = (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        ) % p
        if det:
            return m


def _uni_in(f: Poly, var: int) -> list[int]:
    out = [0] * (max(f.degree_in(var), 0) + 1)
    for e, c in f.coeffs:
        out[e[var]] = c
    return uni_trim(out)


def _specialize_uni(f: Poly, var_fixed: int, value: int, var_kept: int) -> list[int]:
    q = f.specialize(var_fixed, value)
    return _uni_in(q, var_kept)


def is_squarefree(f: Poly, seed: int = 0) -> bool:
    """Squarefree test: in a chart where the curve is monic in y of full
    degree, the y-discriminant vanishes identically iff a factor repeats."""
    if f.is_zero():
        raise PreconditionError("zero form")
    p = f.p
    d = f.total_degree()
    if d == 0:
        raise PreconditionError("constant form")
    rng = SplitMix64(seed)
    for _ in range(8):
        m3 = _random_invertible(p, rng)
        g = f.subs_linear(m3)
        if dict(g.coeffs).get((0, d, 0), 0) == 0:
            continue
        aff = g.specialize(2, 1)
        fy = aff.partial(1)
        disc = uni_trim(bi_resultant(aff, fy, var=1, keep=0))
        return bool(disc)
    raise PreconditionError("no full-degree chart found (degenerate form)")


def singular_points(f: Poly, seed: int = 0, cutoff: int = DESK_DEGREE_CUTOFF) -> SingularLocus:
    """All GF(p)-rational singular points of the squarefree curve F, by
    resultant elimination and back-substitution in a random full-degree
    chart plus a direct sweep of the chart's line at infinity.

    Flags: possibly_nonrational when some eliminant degree cannot be
    accounted for by GF(p)-rational roots (candidates may exist over an
    extension); degenerate when every chart attempt produced identically
    vanishing eliminants.
    """
    p = f.p
    d = f.total_degree()
    if d < 1:
        raise PreconditionError("the form must be nonconstant")
    if d > cutoff:
        raise OutOfRangeError(f"degree {d} above the desk-scale cutoff {cutoff}")
    if d >= p:
        raise PreconditionError("prime must exceed the degree")
    if not is_squarefree(f, seed=seed):
        raise PreconditionError("non-squarefree form: singular along a whole component")
    rng = SplitMix64(seed ^ 0x5EED)
    grads = [f.partial(v) for v in range(3)]

    def verified(pt: Point) -> bool:
        return all(g.eval(pt) == 0 for g in grads) and f.eval(pt) == 0

    for _attempt in range(4):
        m3 = _random_invertible(p, rng)
        g = f.subs_linear(m3)
        if dict(g.coeffs).get((0, d, 0), 0) == 0:
            continue
        aff = g.specialize(2, 1)
        fx, fy = aff.partial(0), aff.partial(1)
        if fx.is_zero() or fy.is_zero():
            continue
        e1 = uni_trim(bi_resultant(aff, fx, var=1, keep=0))
        e2 = uni_trim(bi_resultant(aff, fy, var=1, keep=0))
        if not e1 or not e2:
            continue
        flag_nr = False
        found: list[Point] = []
        gx = uni_gcd(e1, e2, p)
        if uni_deg(gx) > 0:
            roots = uni_roots(gx, p, rng)
            if sum(mult for _, mult in roots) < uni_deg(gx):
                flag_nr = True
            for x0, _ in roots:
                hy = uni_gcd(
                    uni_gcd(
                        _specialize_uni(aff, 0, x0, 1),
                        _specialize_uni(fx, 0, x0, 1),
                        p,
                    ),
                    _specialize_uni(fy, 0, x0, 1),
                    p,
                )
                if uni_deg(hy) <= 0:
                    continue
                yroots = uni_roots(hy, p, rng)
                if sum(mult for _, mult in yroots) < uni_deg(hy):
                    flag_nr = True
                for y0, _ in yroots:
                    orig = tuple(
                        (m3[r][0] * x0 + m3[r][1] * y0 + m3[r][2]) % p for r in range(3)
                    )
                    found.append(orig)
        # the chart misses its line at infinity (Z = 0 in new coordinates):
        # sweep it directly through the three transformed partials
        binfs = [g.partial(v).specialize(2, 0) for v in range(3)]
        if all(b.is_zero() for b in binfs):
            continue  # cannot happen for squarefree f in a full-degree chart
        uni_forms = []
        inf_mults = []
        for b in binfs:
            if b.is_zero():
                continue  # vanishes on the whole line, constrains nothing
            # binary form of degree d-1 in (x, y); u(t) = b(t, 1)
            u = [0] * (b.degree_in(0) + 1)
            for e, c in b.coeffs:
                u[e[0]] = c
            uni_forms.append(uni_trim(u))
            inf_mults.append((d - 1) - b.degree_in(0))
        ginf = uni_forms[0]
        for u in uni_forms[1:]:
            ginf = uni_gcd(ginf, u, p)
        if uni_deg(ginf) > 0:
            roots = uni_roots(ginf, p, rng)
            if sum(mult for _, mult in roots) < uni_deg(ginf):
                flag_nr = True
            for t0, _ in roots:
                orig = tuple((m3[r][0] * t0 + m3[r][1]) % p for r in range(3))
                found.append(orig)
        if min(inf_mults, default=0) >= 1:
            # the point [1:0:0] of the new chart is a common candidate
            orig = tuple(m3[r][0] % p for r in range(3))
            found.append(orig)
        pts = []
        seen = set()
        for cand in found:
            if all(c == 0 for c in cand):
                continue
            norm = _normalize_point(cand, p)
            if norm not in seen and verified(norm):
                seen.add(norm)
                pts.append(norm)
        return SingularLocus(points=sorted(pts), possibly_nonrational=flag_nr, degenerate=False)
    return SingularLocus(points=[], possibly_nonrational=True, degenerate=True)


def _normalize_point(pt, p: int) -> Point:
    coords = [c % p for c in pt]
    for idx in (2, 1, 0):
        if coords[idx]:
            inv = pow(coords[idx], p - 2, p)
            return tuple(c * inv % p for c in coords)  # type: ignore[return-value]
    raise ValueError("zero vector")


# ---------------------------------------------------------------------------
# absolute factor count (differential criterion)


def absolute_factor_count(f: Poly, seed: int = 0) -> int:
    """Number of absolutely irreducible factors of a squarefree form.

    Counts solutions (g, h) of f g_y - g f_y = f h_x - h f_x with
    deg_x g <= m-1, deg_y g <= n, deg_x h <= m, deg_y h <= n-1 for the
    dehomogenized curve of bidegree (m, n); in a full-bidegree chart the
    solution dimension equals the number of absolutely irreducible factors
    provided the characteristic exceeds (2m-1)n.  This reuses the rank
    kernel instead of factoring.
    """
    import numpy as np

    from .fieldcore import rank_mod

    p = f.p
    d = f.total_degree()
    if d < 1:
        raise PreconditionError("the form must be nonconstant")
    if p <= (2 * d - 1) * d:
        raise PreconditionError(
            f"prime {p} below the validity bound (2d-1)d = {(2 * d - 1) * d}"
        )
    if not is_squarefree(f, seed=seed):
        raise PreconditionError("non-squarefree form")
    rng = SplitMix64(seed ^ 0xFAC7)
    for _ in range(16):
        m3 = _random_invertible(p, rng)
        g3 = f.subs_linear(m3)
        coeffs = dict(g3.coeffs)
        if coeffs.get((d, 0, 0), 0) and coeffs.get((0, d, 0), 0):
            break
    else:
        raise PreconditionError("no full-bidegree chart found")
    aff = {}
    for (a, b, _), c in g3.specialize(2, 1).coeffs:
        aff[(a, b)] = c
    fx = {}
    fy = {}
    for (a, b), c in aff.items():
        if a:
            fx[(a - 1, b)] = (fx.get((a - 1, b), 0) + a * c) % p
        if b:
            fy[(a, b - 1)] = (fy.get((a, b - 1), 0) + b * c) % p
    mdeg, ndeg = d, d  # full bidegree by chart choice

    def mul_into(target: dict, poly: dict, mono: tuple[int, int], sign: int):
        a0, b0 = mono
        for (a, b), c in poly.items():
            key = (a + a0, b + b0)
            target[key] = (target.get(key, 0) + sign * c) % p

    g_basis = [(i, j) for i in range(mdeg) for j in range(ndeg + 1)]
    h_basis = [(i, j) for i in range(mdeg + 1) for j in range(ndeg)]
    columns = []
    for (i, j) in g_basis:
        col: dict = {}
        if j:  # f * d/dy (x^i y^j)
            mul_into(col, aff, (i, j - 1), j)
        mul_into(col, fy, (i, j), -1)  # - x^i y^j * f_y
        columns.append(col)
    for (i, j) in h_basis:
        col = {}
        if i:  # - f * d/dx (x^i y^j)
            mul_into(col, aff, (i - 1, j), -i)
        mul_into(col, fx, (i, j), 1)  # + x^i y^j * f_x
        columns.append(col)
    row_index: dict[tuple[int, int], int] = {}
    for col in columns:
        for key in col:
            if key not in row_index:
                row_index[key] = len(row_index)
    mat = np.zeros((len(row_index), len(columns)), dtype=np.int64)
    for cidx, col in enumerate(columns):
        for key, val in col.items():
            mat[row_index[key], cidx] = val % p
    nullity = len(columns) - rank_mod(mat, p)
    return nullity


# ---------------------------------------------------------------------------
# combined report


def analyze(
    f: Poly,
    points: list[Point],
    expected_mults: list[int] | None = None,
    seed: int = 0,
) -> dict:
    """Per-point multiplicity/ordinarity report plus global squarefreeness,
    factor count and extra singular points (JSON-ready dict)."""
    p = f.p
    sqf = is_squarefree(f, seed=seed)
    factors = absolute_factor_count(f, seed=seed) if sqf else None
    entries = []
    norm_given = set()
    for idx, pt in enumerate(points):
        npt = _normalize_point(pt, p)
        norm_given.add(npt)
        mult = multiplicity_at(f, npt)
        ordinary = None
        if mult >= 2:
            ordinary = is_ordinary(f, npt, mult)
        entries.append(
            {
                "point": ":".join(str(c) for c in npt),
                "mult_expected": None if expected_mults is None else expected_mults[idx],
                "mult_observed": mult,
                "ordinary": ordinary,
            }
        )
    extra = None
    flags = {"possibly_nonrational": False, "degenerate": False}
    if sqf and f.total_degree() <= DESK_DEGREE_CUTOFF:
        locus = singular_points(f, seed=seed)
        extra = [
            ":".join(str(c) for c in pt) for pt in locus.points if pt not in norm_given
        ]
        flags = {
            "possibly_nonrational": locus.possibly_nonrational,
            "degenerate": locus.degenerate,
        }
    return {
        "squarefree": sqf,
        "factors": factors,
        "points": entries,
        "extra_singularities": extra,
        **flags,
    }
