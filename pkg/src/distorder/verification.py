"""Numerical audit of the identities the solvers rely on.

Every check produces a :class:`Check` whose ``passed`` flag is recomputable
from ``achieved``, ``target`` and ``comparison``.  Nothing here is random:
grids and node counts are fixed, so reports are reproducible.
"""
import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import NonDegeneracyViolated
from .fractional_operators import (
    GridFunction,
    correction_term,
    distributed_operator,
    gl_deriv_all,
    rl_head_term,
    termwise_deriv,
)
from .quadrature import DEFAULT_CONFIG
from .solvers import (
    BoundaryProblem,
    CauchyProblem,
    DataFunction,
    evaluate_series,
    evaluate_series_deriv,
    simpson_weights,
    solve_bvp,
    solve_cauchy,
)
from .special_functions import eval_h, lambda_power
from .spectrum import DEFAULT_BETA, CharacteristicRoot, OrderInterval, char_fn, mode_inner_product

# Tolerances of the shipped suites.  Tests patch these to exercise failure paths.
TARGETS = {
    "roots": 1e-12,
    "orthogonality": 1e-10,
    "eigen": 1e-8,
    "annihilation": 1e-8,
    "equation": 1e-7,
    "coefficients": 1e-8,
    "initial": 1e-7,
    "boundary": 1e-7,
    "reduction": 1e-12,
    "realness": 1e-10,
    "nondegeneracy": 1e-12,
    "gl_order": 0.8,
    "gl_error": 1e-2,
    "finite_difference": 1e-5,
}

_COMPARE = {
    "le": lambda a, t: a <= t,
    "ge": lambda a, t: a >= t,
    "gt": lambda a, t: a > t,
}


@dataclass
class Check:
    name: str
    target: float
    achieved: float
    details: str = ""
    comparison: str = "le"
    expected_fail: bool = False
    data: dict = field(default_factory=dict)

    @property
    def passed(self):
        return bool(_COMPARE[self.comparison](self.achieved, self.target))

    @property
    def status(self):
        if self.expected_fail:
            return "XPASS" if self.passed else "XFAIL"
        return "PASS" if self.passed else "FAIL"

    def to_dict(self):
        d = asdict(self)
        d["passed"] = self.passed
        d["status"] = self.status
        return d


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)
    elapsed: float = 0.0

    def add(self, check):
        self.checks.append(check)
        return check

    def extend(self, other):
        self.checks.extend(other.checks)
        return self

    @property
    def ok(self):
        """True when every check not marked expected-fail passed."""
        return all(c.passed for c in self.checks if not c.expected_fail)

    @property
    def unexpected_failures(self):
        return [c for c in self.checks if not c.expected_fail and not c.passed]

    def to_dict(self):
        return {"ok": self.ok, "elapsed": self.elapsed, "checks": [c.to_dict() for c in self.checks]}

    def format_text(self):
        lines = []
        for c in self.checks:
            op = {"le": "<=", "ge": ">=", "gt": ">"}[c.comparison]
            lines.append(f"{c.status:5s} {c.name}: {c.achieved:.3e} {op} {c.target:.3e}  {c.details}".rstrip())
        bad = len(self.unexpected_failures)
        lines.append(f"{len(self.checks)} checks, {bad} unexpected failure(s)")
        return "\n".join(lines)


def _single(check):
    rep = VerificationReport()
    rep.add(check)
    return rep


# --- manufactured problems ---------------------------------------------------


def manufactured_coefficients(k_star=3):
    """c*_k = 1/(1 + k^2) for 0 < |k| <= k_star."""
    return {k: 1.0 / (1.0 + k * k) for k in range(-k_star, k_star + 1) if k}


def manufactured_data(coefs, weights, beta=DEFAULT_BETA, nodes=513):
    """Samples of sum_k c_k lambda_k^alpha weights[k] on a uniform grid of [0, beta]."""
    alphas = np.linspace(0.0, beta, nodes)
    vals = np.zeros(nodes, dtype=complex)
    for k, c in coefs.items():
        vals += c * np.exp(2j * np.pi * k * alphas / beta) * weights[k]
    # real-symmetric coefficients give real data; drop rounding-level imaginary parts
    if all(abs(coefs.get(-k, 0) - np.conj(c)) == 0 for k, c in coefs.items()):
        vals = vals.real
    return DataFunction.sampled(alphas, vals, beta)


def manufactured_cauchy(a=1.0, k_star=3, k_max=8, nodes=513, beta=DEFAULT_BETA, config=DEFAULT_CONFIG):
    coefs = manufactured_coefficients(k_star)
    weights = {k: eval_h(a, CharacteristicRoot(k, beta), config=config) for k in coefs}
    phi = manufactured_data(coefs, weights, beta, nodes)
    return CauchyProblem(a, phi, OrderInterval(beta), k_max, config), coefs


def manufactured_bvp(a=1.0, b=2.0, a0=1.0, b0=2.0, k_star=3, k_max=8, nodes=513, beta=DEFAULT_BETA,
                     config=DEFAULT_CONFIG):
    coefs = manufactured_coefficients(k_star)
    weights = {}
    for k in coefs:
        r = CharacteristicRoot(k, beta)
        weights[k] = a0 * eval_h(a, r, config=config) + b0 * eval_h(b, r, config=config)
    phi = manufactured_data(coefs, weights, beta, nodes)
    return BoundaryProblem(a, b, a0, b0, phi, OrderInterval(beta), k_max, config), coefs


def degenerate_b0(a, b, beta=DEFAULT_BETA, m=1, config=DEFAULT_CONFIG):
    """Real b0 minimizing |h(a, lambda_m) + b0 h(b, lambda_m)| (with a0 = 1)."""
    r = CharacteristicRoot(m, beta)
    ha, hb = eval_h(a, r, config=config), eval_h(b, r, config=config)
    return -(ha * hb.conjugate()).real / abs(hb) ** 2


def degenerate_left_endpoint(b, beta=DEFAULT_BETA, m=1, lo=1e-6, hi=None, config=DEFAULT_CONFIG):
    """Find a < b with h(a, lambda_m) / h(b, lambda_m) real.

    Then the real choice ``degenerate_b0(a, b)`` annihilates the m-th
    boundary denominator.  Bisection in log(a) on Im(h(a) conj h(b)).
    """
    r = CharacteristicRoot(m, beta)
    hb = eval_h(b, r, config=config)

    def g(log_a):
        return (eval_h(math.exp(log_a), r, config=config) * hb.conjugate()).imag

    grid = np.linspace(math.log(lo), math.log(hi if hi is not None else b), 200)[:-1]
    vals = [g(t) for t in grid]
    for t0, t1, v0, v1 in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if v0 == 0.0:
            return math.exp(t0)
        if v0 * v1 < 0.0:
            for _ in range(200):
                tm = 0.5 * (t0 + t1)
                vm = g(tm)
                if vm == 0.0 or t1 - t0 < 1e-15:
                    break
                if v0 * vm < 0.0:
                    t1, v1 = tm, vm
                else:
                    t0, v0 = tm, vm
            return math.exp(0.5 * (t0 + t1))
    raise ValueError("no sign change of Im(h(a) conj h(b)) on the search range")


# --- individual checks -------------------------------------------------------


def check_roots(beta=DEFAULT_BETA, k_max=20):
    rep = VerificationReport()
    worst = max(abs(char_fn(CharacteristicRoot(k, beta), beta)) for k in range(-k_max, k_max + 1) if k)
    rep.add(Check("roots.char_fn", TARGETS["roots"], worst, f"max |F(lambda_k)|, 0<|k|<={k_max}"))
    dev = abs(char_fn(1.0, beta) - beta)
    rep.add(Check("roots.limit_at_one", TARGETS["roots"], dev, f"|F(1) - beta|, F(1)={char_fn(1.0, beta).real!r}"))
    return rep


def check_orthogonality(beta=DEFAULT_BETA, k_range=5, quad_points=129):
    """Composite Simpson on ``quad_points`` nodes against the closed form."""
    if quad_points < 65 or quad_points % 2 == 0:
        raise ValueError("quad_points must be odd and >= 65")
    alphas = np.linspace(0.0, beta, quad_points)
    w = simpson_weights(quad_points, beta / (quad_points - 1))
    ks = [k for k in range(-k_range, k_range + 1) if k]
    off, diag, n_pairs, n_diag = 0.0, 0.0, 0, 0
    for k in ks:
        for n in ks:
            num = np.sum(w * np.exp(2j * np.pi * (k - n) * alphas / beta))
            dev = abs(num - mode_inner_product(k, n, beta))
            n_pairs += 1
            if k == n:
                n_diag += 1
                diag = max(diag, dev)
            else:
                off = max(off, dev)
    rep = VerificationReport()
    details = f"{n_pairs} pairings ({n_diag} diagonal), {quad_points}-node Simpson"
    rep.add(Check("orthogonality", TARGETS["orthogonality"], max(off, diag), details,
                  data={"pairings": n_pairs, "diagonals": n_diag, "max_offdiag": off, "max_diag": diag}))
    return rep


def check_eigen_relation(xs=(1.0, 2.0, 5.0), alphas=(0.3, 0.7, 1.0, 1.37), lams=None,
                         beta=DEFAULT_BETA, config=DEFAULT_CONFIG):
    """|D^alpha h - lambda^alpha h| / (1 + |h|) over a grid, D^alpha by direct quadrature."""
    if lams is None:
        lams = [CharacteristicRoot(1, beta), CharacteristicRoot(-1, beta), CharacteristicRoot(3, beta), 0.5, 2.0]
    worst = 0.0
    for lam in lams:
        for x in xs:
            h = eval_h(x, lam, config=config)
            for al in alphas:
                d = termwise_deriv(x, lam, al, config)
                worst = max(worst, abs(d - lambda_power(lam, al) * h) / (1.0 + abs(h)))
    n = len(lams) * len(xs) * len(alphas)
    return _single(Check("eigen_relation", TARGETS["eigen"], worst, f"{n} (x, alpha, lambda) points"))


def check_annihilation(xs=(1.5, 2.5), ks=(-3, -2, -1, 1, 2, 3), beta=DEFAULT_BETA, config=DEFAULT_CONFIG):
    """int_0^beta D^alpha h(x, lambda_k) dalpha vanishes at every root."""
    worst = 0.0
    for k in ks:
        r = CharacteristicRoot(k, beta)
        for x in xs:
            h = eval_h(x, r, config=config)
            res = distributed_operator(lambda al: termwise_deriv(x, r, al, config), beta, config)
            worst = max(worst, abs(res) / (1.0 + abs(h)))
    return _single(Check("annihilation", TARGETS["annihilation"], worst,
                         f"roots k={list(ks)}, x={list(xs)}, normalized by 1+|h|"))


def check_equation_residual(s, x_grid, config=DEFAULT_CONFIG, target=None, name="equation_residual"):
    """max |int_0^beta D^alpha y(x) dalpha| / (1 + max |y|) over ``x_grid``."""
    xs = [float(x) for x in x_grid]
    if not xs or min(xs) <= 0.0:
        raise ValueError("x_grid must be nonempty and positive")
    res, ymax = 0.0, 0.0
    for x in xs:
        r = distributed_operator(lambda al: evaluate_series_deriv(s, x, al), s.beta, config)
        res = max(res, abs(r))
        ymax = max(ymax, abs(evaluate_series(s, x)))
    achieved = res / (1.0 + ymax)
    return _single(Check(name, TARGETS["equation"] if target is None else target, achieved,
                         f"{len(xs)} abscissae, max|y|={ymax:.3e}"))


def _residual_nodes(phi, beta, alpha_points):
    if phi.is_sampled:
        n = phi.alphas.size
        stride = max(1, (n - 1) // alpha_points)
        return phi.alphas[::stride]
    return np.linspace(0.0, beta, alpha_points)


_INCOMPLETE_NOTE = "data has no projection on the k != 0 modes; the constant mode is outside the basis"


def _data_residual(s, phi, combo, alpha_points, name, expected_fail):
    if alpha_points < 16:
        raise ValueError("alpha_points must be >= 16")
    nodes = _residual_nodes(phi, s.beta, alpha_points)
    target_vals = phi.evaluate(nodes, s.beta)
    model = np.array([combo(al) for al in nodes])
    sup = float(np.max(np.abs(model - target_vals)))
    scale = float(np.max(np.abs(target_vals)))
    details = f"{nodes.size} alpha points, sup|phi|={scale:.3e}"
    if expected_fail or (s.diagnostics.get("zero_projection") and scale > 0):
        details += "; " + _INCOMPLETE_NOTE
    return _single(Check(name, TARGETS["initial" if "initial" in name else "boundary"] * (1.0 + scale), sup,
                         details, expected_fail=expected_fail))


def check_initial_residual(s, p, alpha_points=64, expected_fail=False, name="initial_residual"):
    """sup_alpha |D^alpha y(a) - phi(alpha)|; target 1e-7 (1 + sup|phi|)."""
    return _data_residual(s, p.phi, lambda al: evaluate_series_deriv(s, p.a, al), alpha_points, name,
                          expected_fail)


def check_boundary_residual(s, p, alpha_points=64, expected_fail=False, name="boundary_residual"):
    """sup_alpha |a0 D^alpha y(a) + b0 D^alpha y(b) - phi(alpha)|."""
    def combo(al):
        return p.a0 * evaluate_series_deriv(s, p.a, al) + p.b0 * evaluate_series_deriv(s, p.b, al)

    return _data_residual(s, p.phi, combo, alpha_points, name, expected_fail)


def scan_nondegeneracy(a, b, a0, b0, beta=DEFAULT_BETA, k_max=16, config=DEFAULT_CONFIG):
    """Tabulate |a0 h(a, lambda_m) + b0 h(b, lambda_m)|; pass iff the minimum exceeds the floor."""
    if not 0.0 < a < b:
        raise ValueError("need 0 < a < b")
    table = {}
    for m in range(-k_max, k_max + 1):
        if m == 0:
            continue
        r = CharacteristicRoot(m, beta)
        table[m] = abs(a0 * eval_h(a, r, config=config) + b0 * eval_h(b, r, config=config))
    m_min = min(table, key=table.get)
    return _single(Check("nondegeneracy", TARGETS["nondegeneracy"], table[m_min],
                         f"min at m={m_min} over 0<|m|<={k_max}", comparison="gt",
                         data={"denominators": table}))


def check_coefficients(s, coefs, name):
    err = max(abs(s.coefficients.get(k, 0j) - coefs.get(k, 0.0)) for k in set(s.coefficients) | set(coefs))
    return _single(Check(name, TARGETS["coefficients"], err, f"k_max={s.k_max}"))


def check_realness(s, xs, name="realness"):
    worst = 0.0
    for x in xs:
        y = evaluate_series(s, x)
        worst = max(worst, abs(y.imag) / (1.0 + abs(y)))
    return _single(Check(name, TARGETS["realness"], worst, f"{len(xs)} abscissae"))


def check_finite_difference(x=1.0, lam=2.0, step=1e-5, config=DEFAULT_CONFIG):
    """First derivative of h against a central difference in x.

    d/dx h is the classical derivative, i.e. termwise_deriv + correction_term.
    The convention-truncated termwise_deriv alone misses the nu in (-1, 0)
    part (1/Gamma(nu) is finite there), so that comparison is expected to fail.
    """
    fd = (eval_h(x + step, lam, config=config) - eval_h(x - step, lam, config=config)) / (2 * step)
    d = termwise_deriv(x, lam, 1.0, config)
    c = d + correction_term(x, lam, 1.0, config)
    rep = VerificationReport()
    rep.add(Check("alpha_one.classical_vs_fd", TARGETS["finite_difference"], abs(c - fd) / abs(fd),
                  f"x={x}, lambda={lam}, step={step}"))
    rep.add(Check("alpha_one.termwise_vs_fd", TARGETS["finite_difference"], abs(d - fd) / abs(fd),
                  "convention drops int_{-1}^{0} x^(nu-1) lambda^nu / Gamma(nu) dnu", expected_fail=True))
    return rep


def gl_oracle_study(lam=None, alpha=0.5, steps=(4e-3, 2e-3, 1e-3), x_eval=(1.5, 2.0, 2.5, 3.0), x0=1.0,
                    x_end=3.0, beta=DEFAULT_BETA, config=DEFAULT_CONFIG):
    """Grunwald-Letnikov on samples of h against termwise_deriv + correction_term.

    GL runs from the terminal x0 on samples of h over [x0, x_end]; the part of
    the lower-terminal-0 derivative coming from [0, x0], where h has its
    1/(x log^2 x) singularity, is added by ``rl_head_term``.  Orders are
    log2 of successive error ratios.
    """
    lam = CharacteristicRoot(1, beta) if lam is None else lam
    steps = sorted(steps, reverse=True)
    fine = steps[-1]
    n_fine = int(round((x_end - x0) / fine))
    samples = np.array([eval_h(x0 + j * fine, lam, config=config) for j in range(n_fine + 1)])
    ref, heads, hs = {}, {}, {}
    for x in x_eval:
        ref[x] = termwise_deriv(x, lam, alpha, config) + correction_term(x, lam, alpha, config)
        heads[x] = rl_head_term(x, x0, lam, alpha, config)
        hs[x] = eval_h(x, lam, config=config)
    errors = {x: [] for x in x_eval}
    for st in steps:
        stride = int(round(st / fine))
        grid = GridFunction(x0, st, samples[::stride])
        gl = gl_deriv_all(grid, alpha)
        for x in x_eval:
            idx = int(round((x - x0) / st))
            errors[x].append(abs(gl[idx] + heads[x] - ref[x]))
    orders = {x: [math.log2(e[i] / e[i + 1]) for i in range(len(e) - 1)] for x, e in errors.items()}
    return {"errors": errors, "orders": orders, "h": hs, "reference": ref, "heads": heads, "steps": steps}


def check_gl_oracle(config=DEFAULT_CONFIG, beta=DEFAULT_BETA, x_final=2.0, h_floor=0.01, **kw):
    # |h(x, lambda_1)| is about 0.02-0.06 on [1, 3], so the floor sits below that
    study = gl_oracle_study(config=config, beta=beta, **kw)
    measured = [x for x in study["orders"] if abs(study["h"][x]) >= h_floor]
    rep = VerificationReport()
    min_order = min(min(study["orders"][x]) for x in measured) if measured else float("nan")
    rep.add(Check("gl_oracle.order", TARGETS["gl_order"], min_order,
                  f"min observed order over x={measured}, steps={study['steps']}", comparison="ge",
                  data={"orders": {str(x): v for x, v in study["orders"].items()}}))
    err = study["errors"][x_final][-1]
    tol = TARGETS["gl_error"] * (1.0 + abs(study["h"][x_final]))
    rep.add(Check("gl_oracle.final_error", tol, err, f"at x={x_final}, step={study['steps'][-1]}"))
    lam = kw.get("lam") or CharacteristicRoot(1, beta)
    corr = abs(correction_term(x_final, lam, kw.get("alpha", 0.5), config))
    rep.add(Check("gl_oracle.correction_resolved", corr, err, "GL error below |correction_term| at x_final"))
    return rep


# --- suites ------------------------------------------------------------------


def default_suite(config=DEFAULT_CONFIG, beta=DEFAULT_BETA):
    rep = VerificationReport()
    rep.extend(check_roots(beta))
    rep.extend(check_orthogonality(beta, 5, 129))
    rep.extend(check_eigen_relation(beta=beta, config=config))
    rep.extend(check_annihilation(beta=beta, config=config))

    p, coefs = manufactured_cauchy(beta=beta, config=config)
    s = solve_cauchy(p)
    rep.extend(check_coefficients(s, coefs, "cauchy.coefficients"))
    rep.extend(check_initial_residual(s, p, 64, name="cauchy.initial_residual"))
    rep.extend(check_realness(s, np.linspace(p.a, p.a + 3.0, 13), "cauchy.realness"))
    rep.extend(check_equation_residual(s, np.linspace(p.a, p.a + 2.0, 5), config, name="cauchy.equation_residual"))

    q, coefs_b = manufactured_bvp(beta=beta, config=config)
    sb = solve_bvp(q)
    rep.extend(check_coefficients(sb, coefs_b, "bvp.coefficients"))
    rep.extend(check_boundary_residual(sb, q, 64, name="bvp.boundary_residual"))
    reduced = solve_bvp(BoundaryProblem(p.a, 2.0, 1.0, 0.0, p.phi, p.interval, p.k_max, config))
    gap = max(abs(reduced.coefficients[k] - s.coefficients[k]) for k in s.coefficients)
    rep.add(Check("bvp.cauchy_reduction", TARGETS["reduction"], gap, "a0=1, b0=0 against the Cauchy solver"))
    rep.extend(scan_nondegeneracy(q.a, q.b, q.a0, q.b0, beta, 16, config))

    const = CauchyProblem(1.0, DataFunction.constant(1.0), OrderInterval(beta), 16, config)
    sc = solve_cauchy(const)
    cmax = max(abs(c) for c in sc.coefficients.values())
    rep.add(Check("constant_phi.coefficients", TARGETS["realness"], cmax, "phi = 1 projects to zero"))
    rep.extend(check_initial_residual(sc, const, 64, expected_fail=True, name="constant_phi.initial_residual"))
    return rep


def full_suite(config=DEFAULT_CONFIG, beta=DEFAULT_BETA):
    rep = default_suite(config, beta)
    rep.extend(check_finite_difference(config=config))
    rep.extend(check_gl_oracle(config=config, beta=beta))

    r = CharacteristicRoot(1, beta)
    single = solve_cauchy(CauchyProblem(1.0, DataFunction.mode(1, eval_h(1.0, r, config=config)),
                                        OrderInterval(beta), 4, config))
    rep.extend(check_equation_residual(single, [1.5, 2.5], config, target=TARGETS["annihilation"],
                                       name="single_mode.equation_residual"))

    b = 4.0
    a = degenerate_left_endpoint(b, beta, 1, config=config)
    b0 = degenerate_b0(a, b, beta, 1, config)
    phi = DataFunction.mode(1)
    try:
        solve_bvp(BoundaryProblem(a, b, 1.0, b0, phi, OrderInterval(beta), 2, config))
        raised = 0.0
    except NonDegeneracyViolated as exc:
        # real a0, b0: the conjugate mode m = -1 degenerates together with m = 1
        raised = 1.0 if abs(exc.m) == 1 else 0.0
    rep.add(Check("bvp.degenerate_raises", 1.0, raised, f"a={a:.6g}, b={b}, a0=1, b0={b0:.6g}",
                  comparison="ge"))
    return rep


def run_suite(name="default", config=DEFAULT_CONFIG, beta=DEFAULT_BETA):
    suites = {"default": default_suite, "full": full_suite}
    if name not in suites:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(suites)}")
    t0 = time.perf_counter()
    rep = suites[name](config, beta)
    rep.elapsed = time.perf_counter() - t0
    return rep
