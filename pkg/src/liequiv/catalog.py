"""Built-in generator families and the structure constants of their span.

The verified families, for spatial dimension N:

    X0       time translation
    X1..XN   space translations
    S        pressure shift
    Y1..YN   velocity boosts
    T        trace shift of the stress, compensated through G
    Z1       space/velocity scaling with weight-2 action on p, Pi, G
    Z2       density/pressure/stress/G scaling

(N + N + 5 entries).  For N >= 2 rotation candidates J{i}{j} are exposed in
two readings: ``naive`` leaves the constitutive coordinates fixed, and
``tensorial`` conjugates the stress through the infinitesimal rotation,
delta Pi = Omega Pi - Pi Omega.  Candidates are exploratory and carry no
closed-form flow in the exact carrier.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .expr import Expr, ZERO
from .flows import has_closed_form
from .generators import GeneratorSpec, bracket, make_generator
from .jets import JetRegistry, UnsupportedDimensionError
from .linsolve import InconsistentSystemError, solve_linear

KIND_VERIFIED = "theorem"
KIND_CANDIDATE = "rotation-candidate"


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    name: str
    kind: str
    spec: GeneratorSpec
    has_flow: bool


def _unit(dim: int, idx: int) -> tuple:
    return tuple(Expr.const(1) if k == idx else ZERO for k in range(dim))


def _rotation_specs(reg: JetRegistry, i: int, j: int):
    """(naive, tensorial) rotation generators in the x_i-x_j plane."""
    dim = reg.dim
    omega = [[Fraction(0)] * dim for _ in range(dim)]
    omega[i - 1][j - 1] = Fraction(-1)
    omega[j - 1][i - 1] = Fraction(1)

    xi_x = tuple(
        sum((omega[r][c] * Expr.of(reg.x[c]) for c in range(dim)), ZERO)
        for r in range(dim))
    eta_u = tuple(
        sum((omega[r][c] * Expr.of(reg.u[c]) for c in range(dim)), ZERO)
        for r in range(dim))

    naive = make_generator(reg, xi_x=xi_x, eta_u=eta_u)

    mu_pi = []
    for (r, c) in reg.pi_pairs():
        val = ZERO
        for m in range(1, dim + 1):
            val = val + omega[r - 1][m - 1] * Expr.of(reg.pi_at(m, c))
            val = val - omega[m - 1][c - 1] * Expr.of(reg.pi_at(r, m))
        mu_pi.append(val)
    tensorial = make_generator(reg, xi_x=xi_x, eta_u=eta_u, mu_pi=tuple(mu_pi))
    return naive, tensorial


def build_catalog(dim: int, reg: JetRegistry) -> tuple:
    if dim not in (1, 2, 3):
        raise UnsupportedDimensionError(f"dimension must be 1, 2 or 3, got {dim!r}")
    if dim != reg.dim:
        raise ValueError("dimension does not match registry")
    rng = range(1, dim + 1)
    entries = []

    def add(name, kind, spec):
        entries.append(CatalogEntry(name, kind, spec, has_closed_form(reg, name)))

    add("X0", KIND_VERIFIED, make_generator(reg, xi_t=1))
    for i in rng:
        add(f"X{i}", KIND_VERIFIED, make_generator(reg, xi_x=_unit(dim, i - 1)))
    add("S", KIND_VERIFIED, make_generator(reg, eta_p=1))
    for i in rng:
        add(f"Y{i}", KIND_VERIFIED, make_generator(
            reg,
            xi_x=tuple(Expr.of(reg.t) if k == i - 1 else ZERO for k in range(dim)),
            eta_u=_unit(dim, i - 1)))
    add("T", KIND_VERIFIED, make_generator(
        reg,
        mu_pi=tuple(Expr.const(1) if a == b else ZERO for (a, b) in reg.pi_pairs()),
        mu_g=-Expr.of(reg.h)))
    add("Z1", KIND_VERIFIED, make_generator(
        reg,
        xi_x=tuple(Expr.of(a) for a in reg.x),
        eta_u=tuple(Expr.of(a) for a in reg.u),
        eta_p=2 * Expr.of(reg.p),
        mu_pi=tuple(2 * Expr.of(reg.pi[pair]) for pair in reg.pi_pairs()),
        mu_g=2 * Expr.of(reg.g)))
    add("Z2", KIND_VERIFIED, make_generator(
        reg,
        eta_rho=Expr.of(reg.rho),
        eta_p=Expr.of(reg.p),
        mu_pi=tuple(Expr.of(reg.pi[pair]) for pair in reg.pi_pairs()),
        mu_g=Expr.of(reg.g)))

    planes = [(i, j) for i in rng for j in rng if i < j]
    rotations = [(pair, _rotation_specs(reg, *pair)) for pair in planes]
    for (i, j), (naive, _) in rotations:
        add(f"J{i}{j}_naive", KIND_CANDIDATE, naive)
    for (i, j), (_, tensorial) in rotations:
        add(f"J{i}{j}_tensorial", KIND_CANDIDATE, tensorial)
    return tuple(entries)


def verified_entries(catalog) -> tuple:
    return tuple(e for e in catalog if e.kind == KIND_VERIFIED)


def candidate_entries(catalog) -> tuple:
    return tuple(e for e in catalog if e.kind == KIND_CANDIDATE)


def find_entry(catalog, name: str):
    for e in catalog:
        if e.name == name:
            return e
    return None


def _feature_vector(reg: JetRegistry, g: GeneratorSpec) -> dict:
    from .generators import base_coefficients
    vec = {}
    for direction, coeff in base_coefficients(reg, g).items():
        for mono, c in coeff.terms:
            vec[(direction.name, mono.key)] = c
    return vec


@dataclass(frozen=True)
class StructureTable:
    names: tuple
    combos: dict      # (name1, name2) -> {name: Fraction}, zero entries absent
    closed: bool
    failures: tuple   # pairs whose bracket left the span

    def cell(self, n1: str, n2: str) -> dict:
        return self.combos.get((n1, n2), {})


def decompose_in_span(reg: JetRegistry, g: GeneratorSpec, entries) -> dict | None:
    """Exact coefficients expressing ``g`` over the entries, or None."""
    vectors = {e.name: _feature_vector(reg, e.spec) for e in entries}
    target = _feature_vector(reg, g)
    features = sorted(set(target) | {f for v in vectors.values() for f in v})
    equations = []
    for f in features:
        row = {e.name: vectors[e.name].get(f, Fraction(0)) for e in entries
               if vectors[e.name].get(f)}
        equations.append((row, target.get(f, Fraction(0))))
    try:
        solution, _ = solve_linear(equations, [e.name for e in entries])
    except InconsistentSystemError:
        return None
    return {n: c for n, c in solution.items() if c}


def structure_constants(reg: JetRegistry, entries) -> StructureTable:
    """All pairwise brackets expressed over the entries themselves."""
    names = tuple(e.name for e in entries)
    specs = {e.name: e.spec for e in entries}
    combos = {}
    failures = []
    for a in range(len(names)):
        for b in range(a + 1, len(names)):
            n1, n2 = names[a], names[b]
            br = bracket(reg, specs[n1], specs[n2])
            combo = decompose_in_span(reg, br, entries)
            if combo is None:
                failures.append((n1, n2))
                continue
            combos[(n1, n2)] = combo
            combos[(n2, n1)] = {k: -v for k, v in combo.items()}
    return StructureTable(names, combos, not failures, tuple(failures))
