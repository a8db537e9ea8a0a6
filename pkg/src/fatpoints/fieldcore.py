"""Exact computational kernel over prime fields GF(p).

Contents:
  * deterministic primality test and a small counter-based PRNG (SplitMix64)
    so every randomized computation is reproducible from a 64-bit seed;
  * dense matrices over GF(p) as numpy int64 arrays, with exact
    Gauss-Jordan elimination (rank, reduced row echelon form, nullspace);
  * univariate polynomials as ascending coefficient lists: gcd, resultant,
    root finding, truncated power series arithmetic and composition;
  * a small multivariate polynomial type (2 or 3 variables) with partial
    derivatives, linear substitution and resultants by
    evaluation/interpolation.

Everything is elementary integer arithmetic; entries are kept reduced in
[0, p) and products fit in int64 for p below 2^31 (the default modulus is
1 000 003, far under that).  All routines are deterministic given their
inputs; randomized ones take an explicit SplitMix64 instance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, NotationError, PreconditionError

MASK64 = (1 << 64) - 1

DEFAULT_PRIME = 1_000_003


# ---------------------------------------------------------------------------
# primality / field spec


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3 * 10^24."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    """A prime modulus p; oracle entry points additionally validate that p
    exceeds the working degree, so that vanishing to order k is exactly
    k(k+1)/2 independent derivative conditions."""

    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if not is_prime(self.p):
            raise PreconditionError(f"modulus {self.p} is not prime")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(p)")
        return pow(a, self.p - 2, self.p)


class SplitMix64:
    """Tiny deterministic PRNG; identical streams on every platform."""

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection."""
        if n <= 0:
            raise ValueError("below() needs n >= 1")
        limit = (MASK64 + 1) - ((MASK64 + 1) % n)
        while True:
            r = self.u64()
            if r < limit:
                return r % n

    def modp(self, p: int) -> int:
        return self.below(p)

    def nonzero_modp(self, p: int) -> int:
        while True:
            r = self.below(p)
            if r:
                return r


# ---------------------------------------------------------------------------
# dense matrices over GF(p)  (numpy int64; entries reduced mod p)


def as_matrix(rows_or_array, cols: int | None = None) -> np.ndarray:
    """Coerce nested lists to a 2-D int64 array (empty matrices allowed)."""
    a = np.array(rows_or_array, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape((0, cols)) if a.size == 0 else a.reshape((1, -1))
    return a


def rref_mod(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(p); returns (rref, pivot columns).

    Straight Gauss-Jordan with modular inverses: exact, deterministic
    (first nonzero entry is the pivot), vectorized row updates.
    """
    a = np.array(mat, dtype=np.int64) % p
    nrows, ncols = a.shape
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        nz = np.nonzero(a[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
        inv = pow(int(a[row, col]), p - 2, p)
        a[row] = a[row] * inv % p
        other = np.nonzero(a[:, col])[0]
        other = other[other != row]
        if other.size:
            a[other] = (a[other] - np.outer(a[other, col], a[row])) % p
        pivots.append(col)
        row += 1
    return a, pivots


def rank_mod(mat: np.ndarray, p: int) -> int:
    """Rank over GF(p).  Elimination only below the pivot row (cheaper than
    full rref when the basis is not needed)."""
    a = np.array(mat, dtype=np.int64) % p
    nrows, ncols = a.shape
    rank = 0
    for col in range(ncols):
        if rank >= nrows:
            break
        nz = np.nonzero(a[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, col]), p - 2, p)
        a[rank] = a[rank] * inv % p
        below = np.nonzero(a[rank + 1 :, col])[0]
        if below.size:
            rows = below + rank + 1
            a[rows] = (a[rows] - np.outer(a[rows, col], a[rank])) % p
        rank += 1
    return rank


def nullspace_mod(mat: np.ndarray, p: int) -> list[np.ndarray]:
    """Basis of the right nullspace {v : M v = 0} over GF(p).

    The basis is the canonical one read off the rref (one vector per free
    column), so it is deterministic.
    """
    a = np.array(mat, dtype=np.int64) % p
    nrows, ncols = a.shape
    if nrows == 0:
        return [np.eye(ncols, dtype=np.int64)[:, j] for j in range(ncols)]
    r, pivots = rref_mod(a, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(ncols, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-int(r[i, f])) % p
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# univariate polynomials over GF(p): ascending coefficient lists,
# normalized so the last entry is nonzero ([] is the zero polynomial)


def uni_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def uni_deg(f: list[int]) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(f) - 1


def uni_add(f: list[int], g: list[int], p: int) -> list[int]:
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % p
    return uni_trim(out)


def uni_sub(f: list[int], g: list[int], p: int) -> list[int]:
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] - c) % p
    return uni_trim(out)


def uni_scale(f: list[int], c: int, p: int) -> list[int]:
    c %= p
    if c == 0:
        return []
    return uni_trim([a * c % p for a in f])


def uni_mul(f: list[int], g: list[int], p: int) -> list[int]:
    if not f or not g:
        return []
    # int64 convolution is safe: len < ~9000 terms for p ~ 10^6
    out = np.convolve(np.array(f, dtype=np.int64), np.array(g, dtype=np.int64))
    return uni_trim(list((out % p).astype(int)))


def uni_divmod(f: list[int], g: list[int], p: int) -> tuple[list[int], list[int]]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    dg = uni_deg(g)
    inv_lc = pow(g[-1], p - 2, p)
    q = [0] * max(0, len(f) - dg)
    while uni_deg(f) >= dg:
        k = uni_deg(f) - dg
        c = f[-1] * inv_lc % p
        q[k] = c
        for i, gc in enumerate(g):
            f[k + i] = (f[k + i] - c * gc) % p
        uni_trim(f)
    return uni_trim(q), f


def uni_mod(f: list[int], g: list[int], p: int) -> list[int]:
    return uni_divmod(f, g, p)[1]


def uni_gcd(f: list[int], g: list[int], p: int) -> list[int]:
    """Monic gcd."""
    a, b = list(f), list(g)
    while b:
        a, b = b, uni_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def uni_eval(f: list[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def uni_deriv(f: list[int], p: int) -> list[int]:
    return uni_trim([i * c % p for i, c in enumerate(f)][1:])


def uni_powmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    """base(x)^e mod (mod(x), p) by square and multiply."""
    result = [1]
    b = uni_mod(base, mod, p)
    while e:
        if e & 1:
            result = uni_mod(uni_mul(result, b, p), mod, p)
        b = uni_mod(uni_mul(b, b, p), mod, p)
        e >>= 1
    return result


def uni_resultant(f: list[int], g: list[int], p: int) -> int:
    """Resultant with the Sylvester-determinant sign convention
    (rows: coefficients of f, then of g).  Computed by the Euclidean
    recursion res(f,g) = (-1)^(deg f * deg g) lc(g)^(deg f - deg r) res(g,r).

    Conventions for degenerate inputs: res(f, 0) = res(0, g) = 0, and the
    resultant of two nonzero constants is 1 (empty determinant).
    """
    if not f or not g:
        return 0
    res = 1
    a, b = list(f), list(g)
    while True:
        da, db = uni_deg(a), uni_deg(b)
        if db == 0:
            return res * pow(b[0], da, p) % p
        if da < db:
            if (da * db) % 2 == 1:
                res = -res % p
            a, b = b, a
            continue
        r = uni_mod(a, b, p)
        if not r:
            return 0
        if (da * db) % 2 == 1:
            res = -res % p
        res = res * pow(b[-1], da - uni_deg(r), p) % p
        a, b = b, r


def uni_roots(f: list[int], p: int, rng: SplitMix64) -> list[tuple[int, int]]:
    """All roots of f in GF(p) with multiplicities, sorted by root value.

    Distinct roots come from gcd(f, x^p - x), split by the standard random
    (x+delta)^((p-1)/2) trick; multiplicities by repeated division.
    """
    f = uni_trim(list(f))
    if not f:
        raise DegenerateInputError("roots of the zero polynomial")
    if uni_deg(f) == 0:
        return []
    # x^p mod f, via repeated squaring
    xp = uni_powmod([0, 1], p, f, p)
    lin = uni_gcd(uni_sub(xp, [0, 1], p), f, p)
    roots: list[int] = []

    def split(g: list[int]):
        d = uni_deg(g)
        if d == 0:
            return
        if d == 1:
            roots.append((-g[0]) * pow(g[1], p - 2, p) % p)
            return
        while True:
            delta = rng.modp(p)
            h = uni_powmod([delta, 1], (p - 1) // 2, g, p)
            h = uni_gcd(uni_sub(h, [1], p), g, p)
            if 0 < uni_deg(h) < d:
                split(h)
                split(uni_divmod(g, h, p)[0])
                return

    split(lin)
    out = []
    for r in sorted(roots):
        mult = 0
        g = f
        while True:
            q, rem = uni_divmod(g, [(-r) % p, 1], p)
            if rem:
                break
            mult += 1
            g = q
        out.append((r, mult))
    return out


# ---------------------------------------------------------------------------
# truncated power series (ascending coefficients, indices 0..order)


def series_mul(a: list[int], b: list[int], order: int, p: int) -> list[int]:
    out = [0] * (order + 1)
    for i, ca in enumerate(a[: order + 1]):
        if ca == 0:
            continue
        for j, cb in enumerate(b[: order + 1 - i]):
            out[i + j] = (out[i + j] + ca * cb) % p
    return out


def series_compose(outer: list[int], inner: list[int], order: int, p: int) -> list[int]:
    """outer(inner(t)) truncated to t^order, exact over GF(p).

    The inner series must have zero constant term (otherwise composition is
    not defined on truncations).
    """
    if inner and inner[0] % p != 0:
        raise PreconditionError("inner series must have zero constant term")
    acc = [0] * (order + 1)
    for c in reversed(outer):
        acc = series_mul(acc, inner, order, p)
        acc[0] = (acc[0] + c) % p
    return acc


# ---------------------------------------------------------------------------
# multivariate polynomials (2 or 3 variables) over GF(p)

_VAR_NAMES = ("x", "y", "z")


@dataclass(frozen=True)
class Poly:
    """Sparse multivariate polynomial over GF(p): exponent tuple -> coeff.

    Immutable; all operations return new instances and take the modulus from
    the instance.  Only 2 and 3 variables are needed (affine curves and
    homogeneous curve equations).
    """

    nvars: int
    coeffs: tuple[tuple[tuple[int, ...], int], ...]
    p: int

    # -- construction -------------------------------------------------

    @staticmethod
    def make(nvars: int, mapping: dict, p: int) -> "Poly":
        clean = {}
        for e, c in mapping.items():
            c %= p
            if c:
                e = tuple(int(v) for v in e)
                if len(e) != nvars or any(v < 0 for v in e):
                    raise ValueError(f"bad exponent tuple {e}")
                clean[e] = c
        items = tuple(sorted(clean.items()))
        return Poly(nvars, items, p)

    @staticmethod
    def zero(nvars: int, p: int) -> "Poly":
        return Poly(nvars, (), p)

    @staticmethod
    def const(nvars: int, c: int, p: int) -> "Poly":
        return Poly.make(nvars, {(0,) * nvars: c}, p)

    @staticmethod
    def variable(nvars: int, idx: int, p: int) -> "Poly":
        e = [0] * nvars
        e[idx] = 1
        return Poly.make(nvars, {tuple(e): 1}, p)

    def to_dict(self) -> dict:
        return dict(self.coeffs)

    # -- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def total_degree(self) -> int:
        if not self.coeffs:
            return -1
        return max(sum(e) for e, _ in self.coeffs)

    def degree_in(self, var: int) -> int:
        if not self.coeffs:
            return -1
        return max(e[var] for e, _ in self.coeffs)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e, _ in self.coeffs}
        return len(degs) <= 1

    # -- arithmetic -----------------------------------------------------

    def add(self, other: "Poly") -> "Poly":
        d = self.to_dict()
        for e, c in other.coeffs:
            d[e] = (d.get(e, 0) + c) % self.p
        return Poly.make(self.nvars, d, self.p)

    def sub(self, other: "Poly") -> "Poly":
        d = self.to_dict()
        for e, c in other.coeffs:
            d[e] = (d.get(e, 0) - c) % self.p
        return Poly.make(self.nvars, d, self.p)

    def scale(self, c: int) -> "Poly":
        c %= self.p
        return Poly.make(self.nvars, {e: v * c for e, v in self.coeffs}, self.p)

    def mul(self, other: "Poly") -> "Poly":
        out: dict = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = (out.get(e, 0) + c1 * c2) % self.p
        return Poly.make(self.nvars, out, self.p)

    def pow(self, k: int) -> "Poly":
        result = Poly.const(self.nvars, 1, self.p)
        base = self
        while k:
            if k & 1:
                result = result.mul(base)
            base = base.mul(base)
            k >>= 1
        return result

    def partial(self, var: int) -> "Poly":
        out: dict = {}
        for e, c in self.coeffs:
            if e[var] == 0:
                continue
            e2 = list(e)
            e2[var] -= 1
            out[tuple(e2)] = (out.get(tuple(e2), 0) + c * e[var]) % self.p
        return Poly.make(self.nvars, out, self.p)

    def eval(self, point: tuple[int, ...]) -> int:
        p = self.p
        maxdeg = [self.degree_in(v) for v in range(self.nvars)]
        powers = []
        for v in range(self.nvars):
            row = [1] * (max(maxdeg[v], 0) + 1)
            for k in range(1, len(row)):
                row[k] = row[k - 1] * (point[v] % p) % p
            powers.append(row)
        acc = 0
        for e, c in self.coeffs:
            t = c
            for v in range(self.nvars):
                t = t * powers[v][e[v]] % p
            acc = (acc + t) % p
        return acc

    # -- substitutions ---------------------------------------------------

    def subs_linear(self, mat) -> "Poly":
        """Substitute x_i -> sum_j mat[i][j] * y_j (the coordinate change
        F(M y) used for moving points and charts)."""
        p = self.p
        forms = [
            Poly.make(self.nvars, {tuple(int(k == j) for k in range(self.nvars)): int(mat[i][j]) for j in range(self.nvars)}, p)
            for i in range(self.nvars)
        ]
        # precompute powers of each substituted form up to needed degree
        needed = [self.degree_in(v) for v in range(self.nvars)]
        pows = []
        for v in range(self.nvars):
            row = [Poly.const(self.nvars, 1, p)]
            for _ in range(max(needed[v], 0)):
                row.append(row[-1].mul(forms[v]))
            pows.append(row)
        acc = Poly.zero(self.nvars, p)
        for e, c in self.coeffs:
            t = Poly.const(self.nvars, c, p)
            for v in range(self.nvars):
                if e[v]:
                    t = t.mul(pows[v][e[v]])
            acc = acc.add(t)
        return acc

    def specialize(self, var: int, value: int) -> "Poly":
        """Set one variable to a constant; the result keeps nvars (exponent 0
        in that slot)."""
        out: dict = {}
        value %= self.p
        for e, c in self.coeffs:
            t = c * pow(value, e[var], self.p) % self.p
            e2 = list(e)
            e2[var] = 0
            key = tuple(e2)
            out[key] = (out.get(key, 0) + t) % self.p
        return Poly.make(self.nvars, out, self.p)

    def drop_var(self, var: int) -> "Poly":
        """Remove a variable that no longer occurs (after specialize)."""
        if self.degree_in(var) > 0:
            raise ValueError("variable still occurs")
        out = {}
        for e, c in self.coeffs:
            out[tuple(v for i, v in enumerate(e) if i != var)] = c
        return Poly.make(self.nvars - 1, out, self.p)

    def collect_uni(self, var: int) -> dict[int, "Poly"]:
        """Coefficients with respect to one variable, as polynomials in the
        remaining ones (same nvars, exponent 0 in `var`)."""
        out: dict[int, dict] = {}
        for e, c in self.coeffs:
            e2 = list(e)
            k = e2[var]
            e2[var] = 0
            out.setdefault(k, {})[tuple(e2)] = c
        return {k: Poly.make(self.nvars, d, self.p) for k, d in out.items()}

    def restrict_line(self, a: tuple[int, ...], b: tuple[int, ...]) -> list[int]:
        """Univariate coefficients of t -> F(a + t b)."""
        p = self.p
        lin = [[a[i] % p, b[i] % p] for i in range(self.nvars)]
        needed = [self.degree_in(v) for v in range(self.nvars)]
        pows = []
        for v in range(self.nvars):
            row = [[1]]
            for _ in range(max(needed[v], 0)):
                row.append(uni_mul(row[-1], lin[v], p))
            pows.append(row)
        acc: list[int] = []
        for e, c in self.coeffs:
            t = [c]
            for v in range(self.nvars):
                if e[v]:
                    t = uni_mul(t, pows[v][e[v]], p)
            acc = uni_add(acc, t, p)
        return acc

    # -- text form --------------------------------------------------------

    def __str__(self) -> str:
        return poly_str(self)


def poly_str(f: Poly) -> str:
    """Render as an inline expression, e.g. "x^2*y - 3*z^3"."""
    if f.is_zero():
        return "0"
    parts = []
    for e, c in sorted(f.coeffs, key=lambda t: (-sum(t[0]), tuple(-v for v in t[0]))):
        mono = "*".join(
            _VAR_NAMES[v] + (f"^{e[v]}" if e[v] > 1 else "")
            for v in range(f.nvars)
            if e[v]
        )
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts)


def poly_parse(text: str, nvars: int, p: int) -> Poly:
    """Parse either an inline expression ("x^2*y - 3*z^3") or
    "monomial:coeff" lines ("x^2*y:1").  Variables are x, y and (for
    nvars=3) z; coefficients are integers, reduced mod p.
    """
    text = text.strip()
    if not text:
        raise NotationError("empty polynomial")
    terms: dict[tuple[int, ...], int] = {}

    def add_term(mono: str, coeff: int):
        e = [0] * nvars
        mono = mono.strip()
        if mono in ("", "1"):
            pass
        else:
            for factor in mono.split("*"):
                factor = factor.strip()
                if not factor:
                    raise NotationError(f"bad monomial {mono!r}")
                if "^" in factor:
                    name, _, exp = factor.partition("^")
                    k = int(exp)
                else:
                    name, k = factor, 1
                name = name.strip()
                if name not in _VAR_NAMES[:nvars]:
                    raise NotationError(f"unknown variable {name!r}")
                e[_VAR_NAMES.index(name)] += k
        key = tuple(e)
        terms[key] = (terms.get(key, 0) + coeff) % p

    if ":" in text and "\n" in text or (":" in text and "+" not in text and "-" not in text.lstrip("-")):
        # monomial:coeff lines
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            mono, _, coeff = line.rpartition(":")
            if not mono:
                raise NotationError(f"bad coefficient line {line!r}")
            add_term(mono, int(coeff) % p)
    else:
        # inline expression: split on +/- at top level
        s = text.replace("-", "+-")
        for chunk in s.split("+"):
            chunk = chunk.strip()
            if not chunk:
                continue
            neg = chunk.startswith("-")
            if neg:
                chunk = chunk[1:].strip()
            # leading numeric coefficient, if any
            coeff = 1
            if chunk and (chunk[0].isdigit()):
                head, sep, rest = chunk.partition("*")
                if sep and not head.isdigit():
                    raise NotationError(f"bad term {chunk!r}")
                if head.isdigit():
                    coeff = int(head)
                    chunk = rest if sep else ""
            add_term(chunk, (-coeff if neg else coeff) % p)
    return Poly.make(nvars, terms, p)


def poly_coeff_lines(f: Poly) -> str:
    """Inverse of the "monomial:coeff" input form."""
    lines = []
    for e, c in f.coeffs:
        mono = "*".join(
            _VAR_NAMES[v] + (f"^{e[v]}" if e[v] > 1 else "")
            for v in range(f.nvars)
            if e[v]
        ) or "1"
        lines.append(f"{mono}:{c}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# resultants of multivariate polynomials (evaluation / interpolation)


def lagrange_interp(points: list[tuple[int, int]], p: int) -> list[int]:
    """Univariate interpolation through (x_i, y_i), all x_i distinct.
    Newton divided differences, then expansion to the monomial basis."""
    result: list[int] = []
    basis = [1]
    xs = [x for x, _ in points]
    coeffs: list[int] = []
    n = len(points)
    table = [y for _, y in points]
    coeffs.append(table[0])
    for level in range(1, n):
        new = []
        for i in range(n - level):
            num = (table[i + 1] - table[i]) % p
            den = (xs[i + level] - xs[i]) % p
            new.append(num * pow(den, p - 2, p) % p)
        table = new
        coeffs.append(table[0])
    for k in range(n):
        result = uni_add(result, uni_scale(basis, coeffs[k], p), p)
        if k < n - 1:
            basis = uni_mul(basis, [(-xs[k]) % p, 1], p)
    return result


def resultant(f: Poly, g: Poly, var: int) -> Poly:
    """Sylvester resultant eliminating `var`; the result is a polynomial in
    the remaining variables (same nvars, exponent 0 in `var`).

    Evaluation/interpolation: specialize the other variables at points where
    neither leading coefficient in `var` vanishes, take scalar resultants,
    interpolate.  The sign convention is the Sylvester determinant with f's
    coefficient rows first.
    """
    if f.is_zero() or g.is_zero():
        raise DegenerateInputError("resultant of the zero polynomial")
    p = f.p
    df, dg = f.degree_in(var), g.degree_in(var)
    if df == 0 and dg == 0:
        raise DegenerateInputError("both inputs constant in the eliminated variable")
    others = [v for v in range(f.nvars) if v != var and (f.degree_in(v) > 0 or g.degree_in(v) > 0)]
    # degree bound of the resultant in each remaining variable
    bound = df * max(g.total_degree(), 0) + dg * max(f.total_degree(), 0)
    lcf = f.collect_uni(var).get(df, Poly.zero(f.nvars, p))
    lcg = g.collect_uni(var).get(dg, Poly.zero(g.nvars, p))

    def scalar_res(fu: list[int], gu: list[int]) -> int:
        return uni_resultant(fu, gu, p)

    def eval_uni(poly: Poly, assignment: dict[int, int]) -> list[int]:
        q = poly
        for v, val in assignment.items():
            q = q.specialize(v, val)
        coeffs = [0] * (poly.degree_in(var) + 1)
        for e, c in q.coeffs:
            coeffs[e[var]] = c
        return uni_trim(coeffs)

    def recurse(assignment: dict[int, int], remaining: list[int]) -> Poly:
        if not remaining:
            fu = eval_uni(f, assignment)
            gu = eval_uni(g, assignment)
            val = scalar_res(fu, gu)
            return Poly.const(f.nvars, val, p)
        v = remaining[0]
        samples: list[tuple[int, Poly]] = []
        x = 0
        while len(samples) < bound + 1:
            if x >= p:
                raise DegenerateInputError("field too small for interpolation")
            assignment[v] = x
            lf = lcf
            lg = lcg
            for w, val in assignment.items():
                lf = lf.specialize(w, val)
                lg = lg.specialize(w, val)
            # skip sample points that drop the leading coefficient of the
            # not-yet-specialized slice only when fully specialized below
            ok = True
            if len(remaining) == 1:
                ok = (not lf.is_zero()) and (not lg.is_zero())
            if ok:
                samples.append((x, recurse(assignment, remaining[1:])))
            del assignment[v]
            x += 1
        # interpolate coefficient-wise in v
        keys = set()
        for _, poly_val in samples:
            keys.update(e for e, _ in poly_val.coeffs)
        out: dict = {}
        for key in keys:
            pts = []
            for xval, poly_val in samples:
                pts.append((xval, dict(poly_val.coeffs).get(key, 0)))
            interp = lagrange_interp(pts, p)
            for k, c in enumerate(interp):
                if c:
                    e = list(key)
                    e[v] = k
                    out[tuple(e)] = (out.get(tuple(e), 0) + c) % p
        return Poly.make(f.nvars, out, p)

    if not others:
        fu = [0] * (df + 1)
        for e, c in f.coeffs:
            fu[e[var]] = c
        gu = [0] * (dg + 1)
        for e, c in g.coeffs:
            gu[e[var]] = c
        return Poly.const(f.nvars, scalar_res(uni_trim(fu), uni_trim(gu)), p)
    return recurse({}, others)


def bi_resultant(f: Poly, g: Poly, var: int, keep: int) -> list[int]:
    """Resultant of two polynomials that only involve {var, keep}, returned
    as a univariate coefficient list in `keep`.  Fast path used by the curve
    analyzer (degrees there stay in the low hundreds).

    Sample points where either leading coefficient vanishes are skipped, so
    the specialization property of resultants holds at every sample.
    """
    p = f.p
    df, dg = f.degree_in(var), g.degree_in(var)
    if df <= 0 and dg <= 0:
        raise DegenerateInputError("both inputs constant in the eliminated variable")
    bound = df * g.degree_in(keep) + dg * f.degree_in(keep)
    # coefficients with respect to `var`, each univariate in `keep`
    funi = {k: _as_uni(poly, keep) for k, poly in f.collect_uni(var).items()}
    guni = {k: _as_uni(poly, keep) for k, poly in g.collect_uni(var).items()}
    samples: list[tuple[int, int]] = []
    x = 0
    while len(samples) < bound + 1 and x < p:
        lf = uni_eval(funi.get(df, []), x, p)
        lg = uni_eval(guni.get(dg, []), x, p)
        if lf != 0 and lg != 0:
            fu = uni_trim([uni_eval(funi.get(k, []), x, p) for k in range(df + 1)])
            gu = uni_trim([uni_eval(guni.get(k, []), x, p) for k in range(dg + 1)])
            samples.append((x, uni_resultant(fu, gu, p)))
        x += 1
    if len(samples) < bound + 1:
        raise DegenerateInputError("field too small for resultant interpolation")
    return lagrange_interp(samples, p)


def _as_uni(poly: Poly, var: int) -> list[int]:
    out = [0] * (max(poly.degree_in(var), 0) + 1)
    for e, c in poly.coeffs:
        if sum(e) != e[var]:
            raise ValueError("polynomial not univariate in the kept variable")
        out[e[var]] = c
    return uni_trim(out)
