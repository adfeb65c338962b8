"""End-to-end reproduction of the complete point symmetry group, as a text report."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction

from .. import __version__
from ..exactalg import (
    ConstraintViolation,
    LieAlgebra,
    LinearMap,
    Subspace,
    bracket_subspace,
    centralizer,
    extract_constraint_coefficients,
    is_automorphism,
    is_homomorphism,
    megaideal_closure,
    stability_report,
)
from ..symvec import PI, PointTransformation, lam, mu, psi, set_seed, t, verify_inverse
from .constraints import series_stability, tower_stabilizer_series, verify_rotation_constraints
from .generators import MIN_TRUNCATION, TruncationError, build_truncated_algebra, generators
from .transforms import (
    SymmetryParams,
    discrete_symmetries,
    factor_group_table,
    general_symmetry,
    omega_elimination,
    pushforward_matrix,
)
from .vorticity import (
    residual_on_grid,
    solution_catalogue,
    standard_test_solution,
    transform_solution,
)

ANALYTIC_TOL = 1e-10
GRID_TOL = 1e-8
CONTROL_MIN = 1e-2


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    tag: str  # "exact", "symbolic", "numeric"
    detail: str = ""


@dataclass
class Section:
    title: str
    lines: list[str] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)

    def line(self, text: str = "") -> None:
        self.lines.append(text)

    def check(self, name: str, ok: bool, tag: str, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(ok), tag, detail))
        self.lines.append(_check_line(self.checks[-1]))
        return bool(ok)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def _check_line(c: Check) -> str:
    status = "PASS" if c.ok else "FAIL"
    text = f"  {c.name:<56} {c.tag:<9} {status}"
    return text + (f"  {c.detail}" if c.detail else "")


@dataclass
class Report:
    params: dict
    sections: list[Section]

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.sections)

    def first_failure(self) -> tuple[str, Check] | None:
        for s in self.sections:
            for c in s.checks:
                if not c.ok:
                    return s.title, c
        return None

    def digest(self) -> str:
        canon = ";".join(f"{k}={self.params[k]}" for k in sorted(self.params))
        return hashlib.sha256(canon.encode()).hexdigest()

    def render(self) -> str:
        out = [
            "megalie sbve verification report",
            f"version: {__version__}",
            f"input digest: sha256:{self.digest()}",
            "parameters: " + " ".join(f"{k}={self.params[k]}" for k in sorted(self.params)),
            "",
        ]
        for i, s in enumerate(self.sections, 1):
            out.append(f"[{i}] {s.title}")
            out.extend(s.lines)
            out.append("")
        total = sum(len(s.checks) for s in self.sections)
        failed = sum(1 for s in self.sections for c in s.checks if not c.ok)
        out.append(f"summary: {total - failed}/{total} checks passed")
        fail = self.first_failure()
        out.append("verdict: PASS" if fail is None else f"verdict: FAIL (first failure in '{fail[0]}': {fail[1].name})")
        return "\n".join(out) + "\n"


def _z_labels(g: LieAlgebra) -> list[str]:
    return [lab for lab in g.labels if lab.startswith("Z")]


def expected_megaideals(g: LieAlgebra) -> dict[str, Subspace]:
    """The list entries expected in the stable range, keyed by a short name."""
    z = _z_labels(g)
    return {
        "<Z0>": g.span("Z0"),
        "<Z0,Z1>": g.span("Z0", "Z1"),
        "<Z0,Z1,Z2>": g.span("Z0", "Z1", "Z2"),
        "so(3)": g.span("J1", "J2", "J3"),
        "<P,Z>": g.span("P", *z),
        "<D,P,Z>": g.span("D", "P", *z),
        "g'": g.span("P", "J1", "J2", "J3", *z),
    }


def _brackets_section(sec: Section, g: LieAlgebra, n_max: int) -> None:
    ix, e = g.index, g.unit

    def br(a, b):
        return g.bracket(e(ix(a)), e(ix(b)))

    def vec(**coeffs):
        v = [Fraction(0)] * g.dim
        for lab, c in coeffs.items():
            v[ix(lab)] = Fraction(c)
        return v

    sec.check("Jacobi identity on all basis triples", True, "exact", "validated at construction")
    sec.check("[D,P] = -P", br("D", "P") == vec(P=-1), "exact")
    sec.check(
        "[D,Zn] = (n+1) Zn",
        all(br("D", f"Z{n}") == vec(**{f"Z{n}": n + 1}) for n in range(n_max + 1)),
        "exact",
    )
    sec.check(
        "[P,Zn] = n Z(n-1)",
        all(br("P", f"Z{n}") == (vec(**{f"Z{n - 1}": n}) if n else vec()) for n in range(n_max + 1)),
        "exact",
    )
    so3 = br("J1", "J2") == vec(J3=1) and br("J1", "J3") == vec(J2=-1) and br("J2", "J3") == vec(J1=1)
    sec.check("[J1,J2] = J3, [J3,J1] = J2, [J2,J3] = J1", so3, "exact")
    cross = all(
        not any(br(j, x))
        for j in ("J1", "J2", "J3")
        for x in ["D", "P"] + _z_labels(g)
    )
    sec.check("rotations commute with D, P and the Z tower", cross, "exact")
    zz = all(not any(br(a, b)) for a in _z_labels(g) for b in _z_labels(g))
    sec.check("Z tower is abelian", zz, "exact")


def _map_line(g: LieAlgebra, m: LinearMap) -> str:
    return ", ".join(f"{lab}↦{g.format(m.image(j))}" for j, lab in enumerate(g.labels))


def _fmt(q: Fraction) -> str:
    return str(q)


def _coeff_line(cc) -> str:
    b = "; ".join(" ".join(_fmt(x) for x in row) for row in cc.B)
    return f"c={_fmt(cc.c)} d0={_fmt(cc.d0)} d1={_fmt(cc.d1)} a1={_fmt(cc.a1)} B=[{b}]"


def _residual_check(sec: Section, name: str, f, omega) -> None:
    r = residual_on_grid(f, omega)
    tol = ANALYTIC_TOL if r.method == "analytic" else GRID_TOL
    tag = "symbolic" if r.method == "symbolic" else "numeric"
    sec.check(name, r.max_abs < tol, tag, f"max|R|={r.max_abs:.3e}")


def verify(omega=0, n_max: int = 4, seed: int = 42) -> Report:
    """Run every check and collect the report; nothing is raised for failed checks."""
    omega = Fraction(omega)
    if n_max < MIN_TRUNCATION:
        raise TruncationError(f"n_max must be at least {MIN_TRUNCATION}, got {n_max}")
    set_seed(seed)
    params = {"omega": str(omega), "nmax": n_max, "seed": seed}
    sections = []

    # structure ---------------------------------------------------------
    sec = Section("structure")
    gs0 = generators(0, n_max)
    g0 = build_truncated_algebra(gs0)
    g_big = build_truncated_algebra(generators(0, n_max + 1))
    sec.line(f"  B_{n_max}: dim {g0.dim}, basis {' '.join(g0.labels)}")
    _brackets_section(sec, g0, n_max)
    gs_w = g_w = None
    if omega != 0:
        gs_w = generators(omega, n_max)
        g_w = build_truncated_algebra(gs_w)
        ix = g_w.index
        pj2 = g_w.bracket(g_w.unit(ix("P")), g_w.unit(ix("J2")))
        want = [Fraction(0)] * g_w.dim
        want[ix("J3")] = omega
        sec.line(f"  Ω={omega}: algebra closes on the raw generators, dim {g_w.dim}")
        sec.check("[P,J2] = Ω J3 (rotating frame)", pj2 == want, "exact", g_w.format(pj2))
    sections.append(sec)

    # series ------------------------------------------------------------
    sec = Section("series")
    for kind in ("derived", "lower"):
        terms = series_stability(g0, g_big, kind)
        sec.line(f"  {kind}: dims " + " ".join(str(x.subspace.dim) for x in terms))
        for k, x in enumerate(terms):
            flag = "stable" if x.stable else "truncation-sensitive"
            sec.line(f"    {k}: {x.subspace.dim:>2}  {flag:<20} {g0.describe(x.subspace)}")
    full = g0.full()
    gp = bracket_subspace(g0, full, full)
    gppp = g0.span("J1", "J2", "J3")
    sec.check("g' = <P, J1, J2, J3, Z tower>", gp == expected_megaideals(g0)["g'"], "exact")
    sec.check("C_g(g') = <Z0>", centralizer(g0, full, gp) == g0.span("Z0"), "exact")
    sec.check("C_g(so(3)) = <D, P, Z tower>", centralizer(g0, full, gppp) == expected_megaideals(g0)["<D,P,Z>"], "exact")
    sec.line("  stabilizer series, i0 = i1 = <P, Z tower>, from <Z0>:")
    steps = tower_stabilizer_series(g0, g_big)
    ok = True
    for k, x in enumerate(steps):
        flag = "stable" if x.stable else "truncation-sensitive"
        sec.line(f"    step {k}: {x.subspace.dim:>2}  {flag:<20} {g0.describe(x.subspace)}")
        if k <= n_max - 2:
            ok &= x.stable and x.subspace == g0.span(*[f"Z{i}" for i in range(k + 2)])
        else:
            ok &= not x.stable
    ok &= len(steps) == n_max
    sec.check("steps k <= N-2 give <Z0..Z(k+1)>, step N-1 flagged", ok, "exact")
    sections.append(sec)

    # megaideals --------------------------------------------------------
    sec = Section("megaideals")
    small = megaideal_closure(g0)
    big = megaideal_closure(g_big)
    entries = stability_report(g0, small.members, g_big, big.members)
    sec.line(f"  closure on B_{n_max}: {len(small)} members, {small.rounds} rounds, complete={small.complete}")
    sec.line(f"  closure on B_{n_max + 1}: {len(big)} members, {big.rounds} rounds, complete={big.complete}")
    for en in entries:
        flag = "stable" if en.stable else "truncation-sensitive"
        sec.line(f"    {en.subspace.dim:>2}  {flag:<20} {g0.describe(en.subspace)}")
    sec.check("closure reached a fixpoint", small.complete and big.complete, "exact")
    stable = {en.subspace for en in entries if en.stable}
    for name, s in expected_megaideals(g0).items():
        sec.check(f"{name} (dim {s.dim}) is a stable member", s in stable, "exact")
    sections.append(sec)

    # push-forward matrices ----------------------------------------------
    sec = Section("push-forward matrices and constraints")
    s1, s2 = discrete_symmetries()
    expected = {
        "σ1": (1, 0, -1, -1, ((-1, 0, 0), (0, 1, 0), (0, 0, -1))),
        "σ2": (-1, 0, -1, 1, ((1, 0, 0), (0, -1, 0), (0, 0, -1))),
        "σ1σ2": (-1, 0, 1, -1, ((-1, 0, 0), (0, -1, 0), (0, 0, 1))),
    }
    for name, tr in (("σ1", s1), ("σ2", s2), ("σ1σ2", s1 @ s2)):
        inv = verify_inverse(tr)
        sec.check(f"{name}: inverse verified", inv.ok, inv.certainty)
        m = pushforward_matrix(gs0, tr)
        sec.line(f"  {name}: {_map_line(g0, m)}")
        sec.check(f"{name}: automorphism of B_{n_max}", is_automorphism(g0, m).ok, "exact")
        kept = all(m(row) in s for s in small.members for row in s.basis)
        sec.check(f"{name}: preserves all {len(small)} closure members", kept, "exact")
        try:
            cc = extract_constraint_coefficients(g0, m)
        except ConstraintViolation as exc:
            sec.check(f"{name}: constraint coefficients", False, "exact", str(exc))
            continue
        sec.line(f"    {_coeff_line(cc)}")
        want = expected[name]
        got = (cc.c, cc.d0, cc.d1, cc.a1, tuple(tuple(int(x) for x in r) for r in cc.B))
        sec.check(f"{name}: coefficients, a1*d1 = c, B in SO(3)", got == want and cc.a1 * cc.d1 == cc.c, "exact")
    p = SymmetryParams(a0=1, a1=2, epsilon=-1, f_coeffs=(1, 0, 3))
    tr = general_symmetry(p)
    m = pushforward_matrix(gs0, tr)
    cc = extract_constraint_coefficients(g0, m)
    sec.line(f"  family member a0=1 a1=2 ε=-1 f=1+3t^2: {_coeff_line(cc)}")
    sec.check("family member: c = ε/a1 and a1*d1 = c", cc.c == p.c and cc.a1 == p.a1 and cc.a1 * cc.d1 == cc.c, "exact")
    sections.append(sec)

    # rotation constraints ----------------------------------------------
    sec = Section("rotation constraints")
    for label, L, M in (("(λ, μ)", lam, mu), ("(λ+π, -μ)", lam + PI, -mu)):
        rep = verify_rotation_constraints(L, M, seed=seed)
        for c in rep.checks:
            sec.line(f"    {label:<10} {c.name:<26} {c.certainty:<9} {'holds' if c.ok else 'fails'}")
        tags = {c.certainty for c in rep.checks}
        sec.check(f"{label} satisfies all six equations", rep.ok, "symbolic" if tags == {"symbolic"} else "numeric")
    rep = verify_rotation_constraints(lam, mu**2, seed=seed)
    bad = rep.first_failure()
    sec.check(
        "(λ, μ²) is rejected (control)",
        bad is not None,
        bad.certainty if bad else "numeric",
        f"first failure {bad.name}" if bad else "",
    )
    sections.append(sec)

    # residuals ---------------------------------------------------------
    sec = Section("residuals")
    reps = (("σ1", s1), ("σ2", s2), ("σ1σ2", s1 @ s2))
    catalogues = [Fraction(0)] + ([omega] if omega != 0 else [])
    for w in catalogues:
        for sol in solution_catalogue(w):
            _residual_check(sec, f"Ω={w} {sol.name}", sol.psi, w)
            for name, tr in reps:
                _residual_check(sec, f"Ω={w} {sol.name} via {name}", transform_solution(sol.psi, tr), w)
    w_e = omega if omega != 0 else Fraction(1)
    e = omega_elimination().instantiate(Omega=w_e)
    for sol in solution_catalogue(0):
        _residual_check(sec, f"Ω=0 {sol.name} to Ω={w_e} frame", transform_solution(sol.psi, e.inverted()), w_e)
    for sol in solution_catalogue(w_e):
        _residual_check(sec, f"Ω={w_e} {sol.name} to Ω=0 frame", transform_solution(sol.psi, e), 0)
    star = standard_test_solution()
    fam = general_symmetry(SymmetryParams(a0=1, a1=2, epsilon=-1, f_coeffs=(1, 0, 3)))
    _residual_check(sec, "standard via family member a1=2 ε=-1", transform_solution(star, fam), 0)
    fd = residual_on_grid(star, 0, method="fd")
    sec.check("standard, finite differences h=1e-4", fd.max_abs < GRID_TOL, "numeric", f"max|R|={fd.max_abs:.3e}")
    sections.append(sec)

    # negative controls -------------------------------------------------
    sec = Section("negative controls")
    controls = (
        ("t~=2t, ψ~=ψ", PointTransformation((2 * t, lam, mu, psi), (t / 2, lam, mu, psi))),
        ("ψ~=-ψ alone", PointTransformation((t, lam, mu, -psi), (t, lam, mu, -psi))),
    )
    for name, tr in controls:
        r = residual_on_grid(transform_solution(star, tr), 0)
        sec.check(f"{name} breaks the standard solution", r.max_abs > CONTROL_MIN, "numeric", f"max|R|={r.max_abs:.3e}")
    sections.append(sec)

    # factor group ------------------------------------------------------
    sec = Section("factor group")
    table = factor_group_table()
    for row in str(table).splitlines():
        sec.line("  " + row)
    sec.check("composition table is the Klein four-group Z2×Z2", table.is_klein_four(), "exact")
    sections.append(sec)

    # conjugation -------------------------------------------------------
    if omega != 0:
        sec = Section("conjugation to Ω = 0")
        e = omega_elimination().instantiate(Omega=omega)
        m = pushforward_matrix(gs_w, e, gs0)
        sec.line(f"  {_map_line(g0, m)}")
        hom = is_homomorphism(g_w, g0, m)
        sec.check("push-forward maps Ω structure constants onto Ω=0 ones", hom.ok, "exact")
        sections.append(sec)

    return Report(params, sections)
