"""Hypothesis checkers for the Horace-style dimension arguments.

Each checker consumes plain arithmetic data (divisor classes, scheme
descriptions, integer parameters), evaluates its side conditions exactly,
and emits an immutable certificate node:

    {rule, params, checks: [{name, lhs, op, rhs, pass}], subclaims, discharge}

A node with empty subclaims is self-contained arithmetic; otherwise the
subclaims are the obligations that remain, each dischargeable by one of
  arithmetic | ah-axiom | xu-axiom | highdim-theorem | oracle | assumption.

The checkers never prove the underlying geometry; they verify that every
numeric hypothesis of the corresponding statement holds and record the
bookkeeping so a verifier can replay it bit-exactly.  Checks named in
ADVISORY_IN_ORACLE_MODE are asymptotic-threshold conditions that only an
axiom-mode certificate must satisfy; desk-scale oracle-backed runs record
their actual truth value and discharge the affected claims by explicit
rank computations instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    InconsistentInstanceError,
    InfeasibleParametersError,
    LatticeMismatchError,
    OutOfRangeError,
    PreconditionError,
)
from .picard import PicClass
from .zeroscheme import (
    FAT,
    FREE,
    RESIDUE,
    PointCondition,
    ZeroScheme,
    curve_fat,
    curve_residue,
    free_fat,
    tangency,
)

DISCHARGES = ("arithmetic", "ah-axiom", "xu-axiom", "highdim-theorem", "oracle", "assumption")

# checks that axiom mode must enforce but oracle-backed desk runs only record
ADVISORY_IN_ORACLE_MODE = {
    ("vanish", "i-curve-degree"),
    ("vanish", "ii-degree-threshold"),
    ("vanish", "count-lower-bound"),
}

HIGHDIM_CONCLUSIONS = (
    "base-point-free",
    "geometrically-irreducible",
    "smooth",
    "transversal-intersection",
    "irreducible-intersection",
)


@dataclass(frozen=True)
class Check:
    name: str
    lhs: int | str | bool
    op: str
    rhs: int | str | bool
    passed: bool

    def to_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "op": self.op, "rhs": self.rhs, "pass": self.passed}

    @staticmethod
    def from_dict(d: dict) -> "Check":
        return Check(d["name"], d["lhs"], d["op"], d["rhs"], d["pass"])


def _evaluate(op: str, lhs, rhs) -> bool:
    if op == "==":
        return lhs == rhs
    if op == "!=":
        return lhs != rhs
    if op == "<=":
        return lhs <= rhs
    if op == ">=":
        return lhs >= rhs
    if op == "<":
        return lhs < rhs
    if op == ">":
        return lhs > rhs
    raise ValueError(f"unknown comparison {op!r}")


def check(name: str, lhs, op: str, rhs) -> Check:
    return Check(name, lhs, op, rhs, _evaluate(op, lhs, rhs))


@dataclass
class Node:
    rule: str
    params: dict
    checks: list[Check] = field(default_factory=list)
    subclaims: list["Node"] = field(default_factory=list)
    discharge: str = "arithmetic"

    def checks_ok(self, advisory: set[str] = frozenset()) -> bool:
        return all(c.passed or c.name in advisory for c in self.checks)

    def failed_checks(self, advisory: set[str] = frozenset()) -> list[Check]:
        return [c for c in self.checks if not c.passed and c.name not in advisory]

    def find(self, rule: str) -> "Node | None":
        for sub in self.subclaims:
            if sub.rule == rule:
                return sub
        return None

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "params": self.params,
            "checks": [c.to_dict() for c in self.checks],
            "subclaims": [s.to_dict() for s in self.subclaims],
            "discharge": self.discharge,
        }

    @staticmethod
    def from_dict(d: dict) -> "Node":
        if d.get("discharge") not in DISCHARGES:
            raise PreconditionError(f"unknown discharge {d.get('discharge')!r}")
        return Node(
            rule=d["rule"],
            params=dict(d["params"]),
            checks=[Check.from_dict(c) for c in d["checks"]],
            subclaims=[Node.from_dict(s) for s in d["subclaims"]],
            discharge=d["discharge"],
        )


# ---------------------------------------------------------------------------
# Geometric Horace Lemma


@dataclass(frozen=True)
class HorgeoInstance:
    """Arithmetic data of one application of the geometric Horace step.

    dd is the class under study, cc the class of the auxiliary curve (degree
    a with s simple base points), g the genus of cc, alpha the dimension
    growth -(dd.cc + 1 - g), s_on_curve the number of points specialized
    onto the curve, spec_indices the alpha+1 tangency indices (1-based,
    among the specialized points).
    """

    dd: PicClass
    cc: PicClass
    g: int
    alpha: int
    s_on_curve: int
    spec_indices: tuple[int, ...]
    chi_dd: int

    def to_params(self) -> dict:
        return {
            "dd": str(self.dd),
            "cc": str(self.cc),
            "g": self.g,
            "alpha": self.alpha,
            "s_on_curve": self.s_on_curve,
            "spec_indices": list(self.spec_indices),
            "chi_dd": self.chi_dd,
        }

    @staticmethod
    def from_params(params: dict) -> "HorgeoInstance":
        return HorgeoInstance(
            dd=PicClass.parse(params["dd"]),
            cc=PicClass.parse(params["cc"]),
            g=int(params["g"]),
            alpha=int(params["alpha"]),
            s_on_curve=int(params["s_on_curve"]),
            spec_indices=tuple(int(i) for i in params["spec_indices"]),
            chi_dd=int(params["chi_dd"]),
        )


def residual_tangency_scheme(
    dd: PicClass, s: int, indices: tuple[int, ...], a: int
) -> ZeroScheme:
    """The plane model of the residual system with tangency conditions: the
    first s points sit on the curve with multiplicity m_i - 1, the listed
    indices additionally carry the tangency residue, the rest stay free."""
    idxset = set(indices)
    conds: list[PointCondition] = []
    for i in range(s):
        n = dd.mults[i] - 1
        if n < 0:
            raise PreconditionError("specialized point with multiplicity 0")
        if (i + 1) in idxset:
            conds.append(tangency(f"Q{i + 1}", n))
        elif n >= 1:
            conds.append(curve_fat(f"Q{i + 1}", n))
    for j in range(s, dd.r):
        if dd.mults[j] >= 1:
            conds.append(free_fat(f"P{j + 1}", dd.mults[j]))
    return ZeroScheme(tuple(conds), a)


def check_horgeo(inst: HorgeoInstance) -> Node:
    """Verify the arithmetic hypotheses of the geometric Horace step and
    emit the remaining obligations as subclaims.

    Self-checked here: the alpha bookkeeping (recomputed, never trusted),
    alpha >= 0, enough generic points on the curve, the tangency index
    count, and the emptiness criterion for the auxiliary class.  Emitted as
    subclaims: the regularity of the residual-with-tangencies system
    (hypothesis 4) and the geometric properties of the residual curve
    (hypotheses 6 to 10).
    """
    dd, cc = inst.dd, inst.cc
    if dd.r != cc.r:
        raise LatticeMismatchError("dd and cc must share the number of points")
    alpha2 = -(dd.intersect(cc) + 1 - inst.g)
    if alpha2 != inst.alpha:
        raise InconsistentInstanceError(
            f"stored alpha {inst.alpha} != recomputed {alpha2} from the classes"
        )
    a = cc.d
    s = inst.s_on_curve
    alpha = inst.alpha
    ddc = dd - cc
    checks = [
        check("hyp1-alpha-recomputed", alpha2, "==", alpha),
        check("hyp1-alpha-nonneg", alpha, ">=", 0),
        check("chi-recomputed", dd.chi(), "==", inst.chi_dd),
        check("hyp2-generic-points-on-curve", s, ">=", inst.g),
        check("hyp5-aux-class-not-effective", s, ">", a * (a + 3) // 2),
        check("dimension-growth", (inst.chi_dd - 1 + alpha) - (inst.chi_dd - 1), "==", alpha),
    ]
    if alpha >= 1:
        checks.append(check("hyp3-tangency-index-count", len(inst.spec_indices), "==", alpha + 1))
        in_range = all(1 <= i <= s for i in inst.spec_indices)
        checks.append(check("hyp3-indices-specialized", int(in_range), "==", 1))
    else:
        checks.append(check("hyp3-tangency-index-count", len(inst.spec_indices), "==", 0))

    tc = alpha + 1 if alpha >= 1 else 0
    z4 = residual_tangency_scheme(dd, s, inst.spec_indices, a)
    expected_h0 = max(ddc.chi() - tc, 0)
    hyp4 = Node(
        rule="hypothesis",
        params={
            "number": 4,
            "residual_class": str(ddc),
            "tangency_count": tc,
            "scheme": str(z4),
            "curve_degree": a,
            "degree": dd.d - a,
            "expected_h0": expected_h0,
        },
        checks=[
            check("exact-sequence-chi", ddc.chi(), "==", inst.chi_dd + alpha),
            check("scheme-chi-consistent", z4.chi(dd.d - a), "==", ddc.chi() - tc),
        ],
        discharge="assumption",
    )
    hyp7_checks = [check("vacuous-alpha-positive", alpha, ">=", 1)] if alpha >= 1 else []
    stubs = [hyp4]
    for number, prop in (
        (6, "residual-geometrically-irreducible"),
        (7, "specialization-normal-closure"),
        (8, "residual-meets-curve-transversally"),
        (9, "residual-curve-intersection-irreducible"),
        (10, "residual-smooth"),
    ):
        stubs.append(
            Node(
                rule="hypothesis",
                params={"number": number, "property": prop, "residual_class": str(ddc)},
                checks=hyp7_checks if number == 7 else [],
                discharge="arithmetic" if (number == 7 and alpha >= 1) else "assumption",
            )
        )
    params = inst.to_params()
    params.update(
        {
            "a": a,
            "dim_Lx": inst.chi_dd - 1,
            "dim_Ly": inst.chi_dd - 1 + alpha,
            "residual_class": str(ddc),
        }
    )
    return Node(rule="horgeo", params=params, checks=checks, subclaims=stubs)


# ---------------------------------------------------------------------------
# differential Horace step


def xu_node(d_res: int, mults: list[int]) -> Node:
    """H^1 vanishing for a few fat points via the quadratic criterion:
    d >= 3 max(m_i) and (d+3)^2 > (10/9) sum (m_i+1)^2 (checked in integers
    as 9(d+3)^2 > 10 sum)."""
    top = max(mults, default=0)
    lhs = 9 * (d_res + 3) * (d_res + 3)
    rhs = 10 * sum((m + 1) * (m + 1) for m in mults)
    checks = [
        check("degree-vs-multiplicity", d_res, ">=", 3 * top),
        check("quadratic-criterion", lhs, ">", rhs),
    ]
    return Node(
        rule="xu-axiom",
        params={"d_res": d_res, "mults": list(mults)},
        checks=checks,
        discharge="xu-axiom",
    )


def xu_ok(d_res: int, mults: list[int]) -> bool:
    return xu_node(d_res, mults).checks_ok()


def hordiff_residue_scheme(z0: ZeroScheme, block: list[int], a: int) -> ZeroScheme:
    """Residue of Z0 by the curve, plus the simple residues of the moved
    block (multiplicity-1 block points leave nothing behind)."""
    conds = list(z0.residue().conditions)
    for j, mj in enumerate(block):
        if mj >= 2:
            conds.append(curve_residue(f"B{j + 1}", mj, mj - 1))
    return ZeroScheme(tuple(conds), a)


def check_hordiff(z0: ZeroScheme, block: list[int], d: int, a: int, g: int) -> Node:
    """Verify the counting conditions of the differential Horace step.

    z0 is the part that stays put, block the multiplicities of the free
    points moved onto the curve.  Checks: d > a, chi(I_Z(d)) <= 0, the block
    size identity beta = da + 1 - g - deg(Z cap C) (mismatch is an error,
    not a failed check), and the generic-count condition for the trace line
    bundle.  Subclaims: the H^1 vanishing of the moved block (Xu criterion)
    and the H^0 vanishing of the residue scheme in degree d - a.
    """
    beta = len(block)
    trace = z0.trace_degree()
    beta_expected = d * a + 1 - g - trace
    if beta_expected < 0:
        raise InfeasibleParametersError(
            f"negative block size: da+1-g-deg(Z cap C) = {beta_expected}"
        )
    if beta_expected != beta:
        raise InconsistentInstanceError(
            f"block size {beta} != da+1-g-deg(Z cap C) = {beta_expected}"
        )
    deg_z = z0.degree() + sum(m * (m + 1) // 2 for m in block)
    chi_z = (d + 1) * (d + 2) // 2 - deg_z
    support = sum(1 for c in z0.conditions if c.on_curve) + beta
    checks = [
        check("degree-above-curve", d, ">", a),
        check("chi-nonpositive", chi_z, "<=", 0),
        check("beta-identity", beta, "==", beta_expected),
        check("beta-nonneg", beta, ">=", 0),
        check("trace-bundle-generic-count", support, ">=", g),
    ]
    t_scheme = hordiff_residue_scheme(z0, block, a)
    iv = Node(
        rule="hypothesis",
        params={
            "number": "hordiff-iv",
            "scheme": str(t_scheme),
            "curve_degree": a,
            "degree": d - a,
            "expected_h0": 0,
        },
        discharge="assumption",
    )
    return Node(
        rule="hordiff",
        params={
            "z0": str(z0),
            "block": list(block),
            "d": d,
            "a": a,
            "g": g,
            "beta": beta,
            "trace": trace,
        },
        checks=checks,
        subclaims=[xu_node(d - a, list(block)), iv],
    )


# ---------------------------------------------------------------------------
# candidate classification


NOT_CONFIGURATION = "NotConfiguration"
CONFIGURATION_ONLY = "ConfigurationOnly"
CANDIDATE = "Candidate"
EXTENDED_CANDIDATE = "ExtendedCandidate"


@dataclass(frozen=True)
class CandidateVerdict:
    verdict: str
    reasons: tuple[str, ...]
    checks: tuple[Check, ...]


def classify_candidate(z: ZeroScheme, d: int, m: int, a: int) -> CandidateVerdict:
    """Configuration shape plus the two candidate inequalities.

    Shape: free part made of fat points, constrained part of fat points or
    simple residues on the curve, all multiplicities <= m.  Candidate:
    chi(I_Z(d)) <= 0 and the trace fits on the curve,
    h^0(C, O_C(d)) = da + 1 - g >= deg(Z cap C); with chi > 0 and the trace
    test passing the scheme is a candidate in the extended sense (the
    winning claim becomes h^1 = 0).  The genus formula for h^0(C, O_C(d))
    needs d >= a - 2; smaller d is rejected.
    """
    if d < a - 2:
        raise OutOfRangeError(f"candidate test needs d >= a-2 (got d={d}, a={a})")
    reasons: list[str] = []
    shape_ok = True
    for c in z.conditions:
        if c.kind == FREE:
            pass
        elif c.kind == FAT:
            pass
        elif c.kind == RESIDUE:
            if c.i != c.m - 1:
                shape_ok = False
                reasons.append(f"{c.pid}: only simple residues allowed, got D^{c.i}(P^{c.m})")
        if c.m > m:
            shape_ok = False
            reasons.append(f"{c.pid}: multiplicity {c.m} exceeds the bound {m}")
    g = (a - 1) * (a - 2) // 2
    capacity = d * a + 1 - g
    chi_z = z.chi(d)
    trace = z.trace_degree() if shape_ok else 0
    checks = [
        check("configuration-shape", int(shape_ok), "==", 1),
        check("chi-nonpositive", chi_z, "<=", 0),
        check("trace-capacity", capacity, ">=", trace),
    ]
    if not shape_ok:
        verdict = NOT_CONFIGURATION
    elif capacity < trace:
        verdict = CONFIGURATION_ONLY
        reasons.append(f"trace {trace} exceeds h0(C, O_C(d)) = {capacity}")
    elif chi_z <= 0:
        verdict = CANDIDATE
    else:
        verdict = EXTENDED_CANDIDATE
        reasons.append(f"chi(I_Z(d)) = {chi_z} > 0: winning means h1 = 0")
    return CandidateVerdict(verdict, tuple(reasons), tuple(checks))


def candidate_node(z: ZeroScheme, d: int, m: int, a: int) -> Node:
    v = classify_candidate(z, d, m, a)
    checks = list(v.checks)
    checks.append(check("chain-terminal-15m2-7m", 15 * m * m - 7 * m, ">=", 0))
    return Node(
        rule="candidate",
        params={
            "scheme": str(z),
            "curve_degree": z.ref_degree,
            "d": d,
            "m": m,
            "a": a,
            "verdict": v.verdict,
            "reasons": list(v.reasons),
        },
        checks=checks,
    )


# ---------------------------------------------------------------------------
# high-dimension systems


def check_highdim(
    dd: PicClass, cc: PicClass, g: int, a: int, m: int, d0: int, a_cfg: int
) -> Node:
    """Hypotheses of the high-dimension statement: degree above the
    vanishing threshold, chi at least degree+1, and enough intersection
    with the auxiliary curve.  On success the conclusions are recorded as
    theorem-backed subclaims."""
    if dd.r != cc.r:
        raise LatticeMismatchError("dd and cc must share the number of points")
    checks = [
        check("degree-threshold", dd.d, ">=", d0 + 1),
        check("chi-vs-degree", dd.chi(), ">=", dd.d + 1),
        check("pairing-lower-bound", dd.intersect(cc) + 1 - g, ">=", a),
        check("multiplicity-bound", max(dd.mults, default=0), "<=", m),
        check("curve-degree-threshold", a, ">=", a_cfg),
    ]
    conclusions = [
        Node(rule="conclusion", params={"property": prop}, discharge="highdim-theorem")
        for prop in HIGHDIM_CONCLUSIONS
    ]
    return Node(
        rule="highdim",
        params={
            "dd": str(dd),
            "cc": str(cc),
            "g": g,
            "a": a,
            "m": m,
            "d0": d0,
            "a_cfg": a_cfg,
        },
        checks=checks,
        subclaims=conclusions,
    )


# ---------------------------------------------------------------------------
# the constructive vanishing pipeline


def find_s_vanish(
    d: int, a: int, g: int, alpha: int, n_list: list[int], m_list: list[int], m: int
) -> tuple[int, int]:
    """Smallest s with beta = da+1-g-alpha-sum(n)-sum(m_j, j<=s) in [0, m-1]
    and s + beta <= r.  Raises naming the violated constraint."""
    base = d * a + 1 - g - alpha - sum(n_list)
    if base < 0:
        raise InfeasibleParametersError(
            f"capacity da+1-g-alpha-sum(n) = {base} is negative (condition iii fails)"
        )
    r = len(m_list)
    prefix = 0
    window_hit = False
    for s in range(r + 1):
        beta = base - prefix
        if beta < 0:
            break
        if beta <= m - 1:
            window_hit = True
            if s + beta <= r:
                return s, beta
        if s < r:
            prefix += m_list[s]
    if window_hit:
        raise InfeasibleParametersError("s + beta <= r fails for every window hit")
    raise InfeasibleParametersError(
        "no s puts beta into the window [0, m-1] (multiplicity prefix sums skip it)"
    )


def vanish_schemes(
    a: int,
    alpha: int,
    n_list: list[int],
    m_list: list[int],
    s: int,
    beta: int,
) -> tuple[ZeroScheme, list[int]]:
    """Build Z0 (tangency points, plain curve points, moved prefix, untouched
    free points) and the moved block for the differential step."""
    conds: list[PointCondition] = []
    for i, n in enumerate(n_list):
        if i < alpha:
            conds.append(tangency(f"O{i + 1}", n))
        elif n >= 1:
            conds.append(curve_fat(f"O{i + 1}", n))
    for j in range(s):
        conds.append(curve_fat(f"Q{j + 1}", m_list[j]))
    for j in range(s + beta, len(m_list)):
        conds.append(free_fat(f"R{j + 1}", m_list[j]))
    z0 = ZeroScheme(tuple(conds), a)
    block = list(m_list[s : s + beta])
    return z0, block


def check_vanish(
    d: int,
    a: int,
    m: int,
    t: int,
    r: int,
    n_list: list[int],
    m_list: list[int],
    alpha: int,
    a_cfg: int,
    d0: int,
) -> Node:
    """The constructive vanishing pipeline for the residual-with-tangencies
    claim: parameter search, trace-capacity bookkeeping, the differential
    Horace step, and the candidate test for its residue scheme.

    The class is (d; n_1..n_t on the curve, m_1..m_r free) with alpha
    tangency conditions among the first points and chi equal to alpha.  The
    terminal H^0 vanishing of the residue candidate is left as the single
    subclaim obligation (discharged by the asymptotic axiom or an oracle).
    """
    if len(n_list) != t or len(m_list) != r:
        raise InconsistentInstanceError("list lengths disagree with t, r")
    if not (0 <= alpha <= t):
        raise PreconditionError(f"alpha must lie in [0, t], got {alpha}")
    g = (a - 1) * (a - 2) // 2
    chi_class = (
        (d + 1) * (d + 2) // 2
        - sum(n * (n + 1) // 2 for n in n_list)
        - sum(mm * (mm + 1) // 2 for mm in m_list)
    )
    if chi_class != alpha:
        raise InconsistentInstanceError(
            f"chi of the class is {chi_class}, alpha is {alpha}; the pipeline needs equality"
        )
    s, beta = find_s_vanish(d, a, g, alpha, n_list, m_list, m)
    z0, block = vanish_schemes(a, alpha, n_list, m_list, s, beta)
    hordiff = check_hordiff(z0, block, d, a, g)
    count = t - n_list.count(0) + s + beta  # distinct constrained supports
    checks = [
        check("chi-matches-alpha", chi_class, "==", alpha),
        check("n-bounds", max(n_list, default=0), "<=", m - 1),
        check("m-bounds", max(m_list, default=0), "<=", m),
        check("i-curve-degree", a, ">=", max(a_cfg, 4 * m)),
        check("ii-degree-threshold", d, ">=", max(d0 + a, 2 * a * m)),
        check("iii-capacity", d * a + 1 - g - sum(n_list) - alpha, ">=", 0),
        check("ajust-window-low", beta, ">=", 0),
        check("ajust-window-high", beta, "<=", m - 1),
        check("s-plus-beta", s + beta, "<=", r),
        check("count-lower-bound", 2 * m * (t + s + beta), ">=", 4 * a * a * m - a * a),
        check("chain-terminal-neg7m2", -7 * m * m - 4 * m + 1, "<=", 0),
    ]
    return Node(
        rule="vanish",
        params={
            "d": d,
            "a": a,
            "m": m,
            "t": t,
            "r": r,
            "n_list": list(n_list),
            "m_list": list(m_list),
            "alpha": alpha,
            "a_cfg": a_cfg,
            "d0": d0,
            "s": s,
            "beta": beta,
            "support_count": count,
        },
        checks=checks,
        subclaims=[hordiff],
    )


# ---------------------------------------------------------------------------
# axiom leaves


def ah_axiom_leaf(a: int, m: int, degree: int, branch: str, a_cfg: int, d0: int) -> Node:
    """Invocation of the asymptotic vanishing axiom for a candidate: valid
    when the configured thresholds are met.  branch records whether the
    winning claim is h0 = 0 or h1 = 0 (extended candidates)."""
    if branch not in ("h0-vanishes", "h1-vanishes"):
        raise PreconditionError(f"unknown axiom branch {branch!r}")
    return Node(
        rule="ah-axiom",
        params={"a": a, "m": m, "degree": degree, "branch": branch, "a_cfg": a_cfg, "d0": d0},
        checks=[
            check("a-threshold", a, ">=", a_cfg),
            check("degree-threshold", degree, ">=", d0),
        ],
        discharge="ah-axiom",
    )
