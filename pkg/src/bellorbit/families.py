"""State families (Werner, Bell-diagonal, ...) and parameter sweeps with
bisection-located thresholds."""

import csv
import io
import itertools
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .chsh import analyze_chsh
from .errors import EmptyGrid, OutOfRange, UnknownFamily
from .kernels.constants import BELL_BASIS
from .orbit import OrbitConfig, Verdict, classify_al
from .states import SINGLET, is_absolutely_separable, is_entangled_ppt, validate_state
from .unitaries import cnot

SIMPLEX_TOL = 1e-12
BISECT_TOL = 1e-6
BISECT_MAX_ITER = 60


class Family(str, Enum):
    WERNER = "werner"
    BELL_DIAGONAL = "bell-diagonal"
    GENERALIZED_WERNER = "generalized-werner"
    DIAGONAL_SEPARABLE = "diagonal-separable"
    PRODUCT_PLUS_UNITARY = "product-plus-unitary"


def _check_unit_interval(name, x):
    if not (0.0 <= x <= 1.0):
        raise OutOfRange(f"{name} = {x!r} outside [0, 1]")


def make_werner(p):
    _check_unit_interval("p", p)
    return validate_state(p * SINGLET.mat + (1.0 - p) / 4.0 * np.eye(4))


def make_bell_diagonal(p1, p2, p3, p4):
    """Weights on (phi+, phi-, psi+, psi-)."""
    w = np.array([p1, p2, p3, p4], dtype=float)
    if np.any(w < -SIMPLEX_TOL) or abs(w.sum() - 1.0) > SIMPLEX_TOL:
        raise OutOfRange(f"weights {w.tolist()} are not on the probability simplex")
    w = np.clip(w, 0.0, None)
    return validate_state(((BELL_BASIS * w) @ BELL_BASIS.T).astype(np.complex128))


def bell_diagonal_correlations(p1, p2, p3, p4):
    """Diagonal of T for a Bell-diagonal state."""
    return np.array([p1 - p2 + p3 - p4, -p1 + p2 + p3 - p4, p1 + p2 - p3 - p4])


def make_generalized_werner(p, a=1.0 / np.sqrt(3.0)):
    """p |psi><psi| + (1-p) I/4 with |psi> = a|00> + b|11>, b = sqrt(1 - a^2)."""
    _check_unit_interval("p", p)
    if not (0.0 < a < 1.0):
        raise OutOfRange(f"a = {a!r} outside (0, 1)")
    psi = np.array([a, 0.0, 0.0, np.sqrt(1.0 - a * a)])
    return validate_state(p * np.outer(psi, psi) + (1.0 - p) / 4.0 * np.eye(4))


def make_diagonal_separable(p):
    """diag((1-p)/4, (1+3p)/4, (1-p)/4, (1-p)/4) in the computational basis."""
    _check_unit_interval("p", p)
    q = (1.0 - p) / 4.0
    return validate_state(np.diag([q, (1.0 + 3.0 * p) / 4.0, q, q]))


def make_product_plus_unitary(alpha, u=None):
    """u [(alpha|0> + beta|1>) x |0>] u^H with beta = sqrt(1 - |alpha|^2) >= 0."""
    alpha = complex(alpha)
    if abs(alpha) > 1.0 + 1e-12:
        raise OutOfRange(f"|alpha| = {abs(alpha)!r} exceeds 1")
    beta = np.sqrt(max(0.0, 1.0 - abs(alpha) ** 2))
    psi = np.kron([alpha, beta], [1.0, 0.0])
    u = cnot() if u is None else np.asarray(u, dtype=np.complex128)
    psi = u @ psi
    return validate_state(np.outer(psi, psi.conj()))


@dataclass(frozen=True)
class FamilySpec:
    kind: Family
    params: dict = field(default_factory=dict)

    def build(self):
        return build_state(self.kind, self.params)


def build_state(kind, params):
    try:
        kind = Family(kind)
    except ValueError:
        raise UnknownFamily(f"unknown family {kind!r}; choose from {[f.value for f in Family]}") from None
    params = dict(params)
    if kind is Family.WERNER:
        return make_werner(params["p"])
    if kind is Family.BELL_DIAGONAL:
        p1, p2, p3 = params["p1"], params["p2"], params["p3"]
        p4 = params.get("p4", 1.0 - p1 - p2 - p3)
        return make_bell_diagonal(p1, p2, p3, p4)
    if kind is Family.GENERALIZED_WERNER:
        return make_generalized_werner(params["p"], params.get("a", 1.0 / np.sqrt(3.0)))
    if kind is Family.DIAGONAL_SEPARABLE:
        return make_diagonal_separable(params["p"])
    return make_product_plus_unitary(params["alpha"])


CHECKS = ("chsh", "ppt", "as", "orbit")


def analyze_point(rho, checks, config=OrbitConfig()):
    """One sweep row worth of analyses for a single state."""
    row = {}
    ch = analyze_chsh(rho)
    row["m"] = ch.m_value
    row["max_chsh"] = ch.max_chsh
    if "chsh" in checks:
        row["chsh_nonlocal"] = not ch.local
    if "ppt" in checks:
        ent, lam = is_entangled_ppt(rho)
        row["ppt_entangled"] = ent
        row["ppt_min_eig"] = lam
    if "as" in checks:
        ok, margin = is_absolutely_separable(rho)
        row["abs_separable"] = ok
        row["abs_margin"] = margin
    if "orbit" in checks:
        cls = classify_al(rho, config)
        row["orbit_verdict"] = cls.verdict.value
        row["orbit_m_max"] = cls.m_max
    return row


# predicate whose true/false flip marks each check's boundary
PREDICATES = {
    "chsh": lambda rho, cfg: not analyze_chsh(rho).local,
    "ppt": lambda rho, cfg: is_entangled_ppt(rho)[0],
    "as": lambda rho, cfg: not is_absolutely_separable(rho)[0],
    "orbit": lambda rho, cfg: classify_al(rho, cfg).verdict is Verdict.NON_ABSOLUTELY_LOCAL,
}


@dataclass(frozen=True)
class Threshold:
    check: str
    param: str
    value: float
    lower: float
    upper: float


def bisect_threshold(pred, lo, hi, tol=BISECT_TOL, max_iter=BISECT_MAX_ITER):
    """Locate the flip of a boolean predicate between lo and hi (pred(lo) != pred(hi))."""
    f_lo = pred(lo)
    if f_lo == pred(hi):
        raise ValueError("predicate does not change sign on the bracket")
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if pred(mid) == f_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi), lo, hi


@dataclass
class SweepTable:
    family: str
    params: list
    checks: tuple
    rows: list
    thresholds: list

    def columns(self):
        cols = list(self.params)
        for r in self.rows:
            for k in r:
                if k not in cols:
                    cols.append(k)
        return cols

    def to_text(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        cols = self.columns()
        w.writerow(cols)
        for r in self.rows:
            w.writerow([_fmt(r.get(c, "")) for c in cols])
        buf.write("# thresholds\n")
        for t in self.thresholds:
            buf.write(f"# {t.check},{t.param},{_fmt(t.value)},{_fmt(t.lower)},{_fmt(t.upper)}\n")
        return buf.getvalue()


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def sweep_family(kind, grid, checks=("chsh", "ppt", "as"), fixed=None, config=OrbitConfig()):
    """Evaluate ``checks`` on every point of the cartesian ``grid`` (name -> values).

    For a one-parameter grid, each sign flip of a check's predicate between
    neighbouring grid points is refined by bisection. Bell-diagonal points
    off the simplex are skipped.
    """
    try:
        kind = Family(kind)
    except ValueError:
        raise UnknownFamily(f"unknown family {kind!r}") from None
    unknown = set(checks) - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks {sorted(unknown)}")
    names = list(grid)
    values = [list(map(float, grid[n])) for n in names]
    if not names or any(len(v) == 0 for v in values):
        raise EmptyGrid("parameter grid is empty")
    fixed = dict(fixed or {})
    rows, points = [], []
    for combo in itertools.product(*values):
        params = {**fixed, **dict(zip(names, combo))}
        try:
            rho = build_state(kind, params)
        except OutOfRange:
            if kind is Family.BELL_DIAGONAL:
                continue
            raise
        row = dict(zip(names, combo))
        row.update(analyze_point(rho, checks, config))
        rows.append(row)
        points.append(combo)
    if not rows:
        raise EmptyGrid("no valid grid points")

    thresholds = []
    if len(names) == 1 and len(rows) > 1:
        name = names[0]
        xs = [p[0] for p in points]
        for check in checks:
            pred = _param_predicate(kind, fixed, name, PREDICATES[check], config)
            flags = [pred(x) for x in xs]
            for i in range(len(xs) - 1):
                if flags[i] != flags[i + 1]:
                    val, lo, hi = bisect_threshold(pred, xs[i], xs[i + 1])
                    thresholds.append(Threshold(check, name, val, lo, hi))
    return SweepTable(kind.value, names, tuple(checks), rows, thresholds)


def _param_predicate(kind, fixed, name, pred, config):
    def f(x):
        return bool(pred(build_state(kind, {**fixed, name: x}), config))

    return f


def parse_grid_spec(spec):
    """'p=0:1:0.01' (start:stop:step, inclusive) or 'p=0.1,0.2,0.3'."""
    if "=" not in spec:
        raise ValueError(f"bad grid spec {spec!r}; expected name=start:stop:step or name=v1,v2")
    name, rhs = spec.split("=", 1)
    name, rhs = name.strip(), rhs.strip()
    if not rhs:
        return name, []
    if ":" in rhs:
        start, stop, step = (float(s) for s in rhs.split(":"))
        if step <= 0:
            raise ValueError("grid step must be positive")
        n = int(np.floor((stop - start) / step + 1e-9)) + 1
        return name, [float(v) for v in np.round(start + step * np.arange(max(n, 0)), 12)]
    return name, [float(s) for s in rhs.split(",") if s.strip()]
