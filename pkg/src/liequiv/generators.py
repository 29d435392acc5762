"""Equivalence generators: ansatz checking, prolongation, action, brackets.

A generator is a vector field on the extended space,

    X = xi^t d/dt + xi^{x_i} d/dx_i + eta^{u_i} d/du_i + eta^p d/dp
        + eta^rho d/drho + mu^{Pi_ij} d/dPi_ij + mu^G d/dG + mu^H d/dH,

restricted to the classical ansatz: xi and eta coefficients live on
(t, x, u, p, rho); mu coefficients on Pi components live on the velocity
gradient jets and the Pi components; mu^G and mu^H live on (p, rho, G, H).
Opaque ``?name`` constants are admitted everywhere for ansatz exploration.

Prolongation extends the field to the first-order jets, the spatial
second-order velocity jets, and the stress-derivative coordinates:

    zeta^a_w    = D_w(eta^a) - sum_v D_w(xi^v) a_v
    zeta^a_wv   = D_v(zeta^a_w) - sum_z D_v(xi^z) a_wz
    mu^{ij}_kl  = Dt_kl(mu^{ij}) - sum_rs Pi^{ij}_rs Dt_kl(zeta^{u_r}_{x_s})

where D_w is the registered total derivative and Dt_kl is the total
derivative in the element-argument space, realized by the chaining partial
by u^r_{x^s} (constant on everything that is not a gradient jet or a Pi
component).

The directional action of a prolonged field treats every coordinate of the
extended space as independent, as a vector field must; the constitutive
argument declarations play no role there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .expr import (Atom, Expr, ZERO, as_expr, atoms_of, diff_atom,
                   diff_partial, is_unknown, is_zero, UnknownSymbolError)
from .jets import JetRegistry, total_derivative


class AnsatzError(Exception):
    """A generator coefficient depends on a coordinate its slot forbids."""


@dataclass(frozen=True)
class GeneratorSpec:
    """Coefficients of an equivalence generator in the classical ansatz.

    ``mu_pi`` is ordered like ``registry.pi_pairs()``; stress-derivative
    coefficients are not free data, they are produced by prolongation.
    """

    dim: int
    xi_t: Expr
    xi_x: tuple
    eta_u: tuple
    eta_p: Expr
    eta_rho: Expr
    mu_pi: tuple
    mu_g: Expr
    mu_h: Expr

    def is_trivial(self) -> bool:
        coeffs = ((self.xi_t, self.eta_p, self.eta_rho, self.mu_g, self.mu_h)
                  + self.xi_x + self.eta_u + self.mu_pi)
        return all(is_zero(c) for c in coeffs)


def _check_atoms(coeff: Expr, allowed: set, slot: str):
    for a in atoms_of(coeff):
        if is_unknown(a):
            continue
        if a not in allowed:
            raise AnsatzError(f"{slot} may not depend on {a.name}")


def validate_ansatz(reg: JetRegistry, g: GeneratorSpec):
    """Raise AnsatzError when a coefficient leaves its admitted atom set."""
    point = {reg.t, reg.p, reg.rho} | set(reg.x) | set(reg.u)
    _check_atoms(g.xi_t, point, "xi^t")
    for i, c in enumerate(g.xi_x, start=1):
        _check_atoms(c, point, f"xi^x{i}")
    for k, c in enumerate(g.eta_u, start=1):
        _check_atoms(c, point, f"eta^u{k}")
    _check_atoms(g.eta_p, point, "eta^p")
    _check_atoms(g.eta_rho, point, "eta^rho")

    gradient = set(reg.u_x.values()) | set(reg.pi.values())
    for (i, j), c in zip(reg.pi_pairs(), g.mu_pi):
        _check_atoms(c, gradient, f"mu^Pi{i}{j}")
    state = {reg.p, reg.rho, reg.g, reg.h}
    _check_atoms(g.mu_g, state, "mu^G")
    _check_atoms(g.mu_h, state, "mu^H")


def make_generator(reg: JetRegistry, *, xi_t=0, xi_x=None, eta_u=None,
                   eta_p=0, eta_rho=0, mu_pi=None, mu_g=0, mu_h=0) -> GeneratorSpec:
    dim = reg.dim
    xi_x = tuple(as_expr(v) for v in (xi_x or (0,) * dim))
    eta_u = tuple(as_expr(v) for v in (eta_u or (0,) * dim))
    pairs = reg.pi_pairs()
    mu_pi = tuple(as_expr(v) for v in (mu_pi or (0,) * len(pairs)))
    if len(xi_x) != dim or len(eta_u) != dim or len(mu_pi) != len(pairs):
        raise ValueError("coefficient tuple lengths do not match the dimension")
    g = GeneratorSpec(dim, as_expr(xi_t), xi_x, eta_u, as_expr(eta_p),
                      as_expr(eta_rho), mu_pi, as_expr(mu_g), as_expr(mu_h))
    validate_ansatz(reg, g)
    return g


def zero_generator(reg: JetRegistry) -> GeneratorSpec:
    return make_generator(reg)


def combine(reg: JetRegistry, parts) -> GeneratorSpec:
    """Exact rational linear combination of generators: parts = [(c, g), ...]."""
    acc = zero_generator(reg)
    for c, g in parts:
        c = Fraction(c)
        acc = GeneratorSpec(
            reg.dim,
            acc.xi_t + c * g.xi_t,
            tuple(a + c * b for a, b in zip(acc.xi_x, g.xi_x)),
            tuple(a + c * b for a, b in zip(acc.eta_u, g.eta_u)),
            acc.eta_p + c * g.eta_p,
            acc.eta_rho + c * g.eta_rho,
            tuple(a + c * b for a, b in zip(acc.mu_pi, g.mu_pi)),
            acc.mu_g + c * g.mu_g,
            acc.mu_h + c * g.mu_h,
        )
    return acc


def base_coefficients(reg: JetRegistry, g: GeneratorSpec) -> dict:
    """Ordered map coordinate -> coefficient over the unprolonged directions."""
    out = {reg.t: g.xi_t}
    for i in range(reg.dim):
        out[reg.x[i]] = g.xi_x[i]
    for k in range(reg.dim):
        out[reg.u[k]] = g.eta_u[k]
    out[reg.p] = g.eta_p
    out[reg.rho] = g.eta_rho
    for pair, c in zip(reg.pi_pairs(), g.mu_pi):
        out[reg.pi[pair]] = c
    out[reg.g] = g.mu_g
    out[reg.h] = g.mu_h
    return out


class ProlongedGenerator:
    """A generator together with all prolonged coefficients.

    ``coefficient(atom)`` covers the base directions, the first-order jets,
    the spatial second-order velocity jets and the stress-derivative
    coordinates; those maps are exposed as ``zeta1``, ``zeta2`` and
    ``mu_d`` for inspection.
    """

    def __init__(self, reg: JetRegistry, base: GeneratorSpec,
                 zeta1: dict, zeta2: dict, mu_d: dict):
        self.registry = reg
        self.base = base
        self.zeta1 = zeta1
        self.zeta2 = zeta2
        self.mu_d = mu_d
        table = base_coefficients(reg, base)
        table.update(zeta1)
        table.update(zeta2)
        table.update(mu_d)
        self._table = table

    def coefficient(self, a: Atom):
        return self._table.get(a)

    def coefficients(self) -> dict:
        return dict(self._table)


def first_jet_coefficients(reg: JetRegistry, g: GeneratorSpec) -> dict:
    """First-prolongation coefficients for every first-order jet."""
    dirs = (reg.t,) + reg.x
    xis = (g.xi_t,) + g.xi_x
    d_xi = {(v, w): total_derivative(xi, w, reg)
            for v, xi in zip(dirs, xis) for w in dirs}

    base = [(reg.u[k], g.eta_u[k]) for k in range(reg.dim)]
    base += [(reg.p, g.eta_p), (reg.rho, g.eta_rho)]

    zeta1 = {}
    for alpha, eta in base:
        for w in dirs:
            val = total_derivative(eta, w, reg)
            for v in dirs:
                d = d_xi[(v, w)]
                if not is_zero(d):
                    val = val - d * reg.advance(alpha, v)
            zeta1[reg.advance(alpha, w)] = val
    return zeta1


def prolong(reg: JetRegistry, g: GeneratorSpec) -> ProlongedGenerator:
    validate_ansatz(reg, g)
    dirs = (reg.t,) + reg.x
    xis = (g.xi_t,) + g.xi_x
    d_xi = {(v, w): total_derivative(xi, w, reg)
            for v, xi in zip(dirs, xis) for w in dirs}

    zeta1 = first_jet_coefficients(reg, g)

    zeta2 = {}
    for k in range(1, reg.dim + 1):
        for l in range(1, reg.dim + 1):
            for j in range(l, reg.dim + 1):
                first = zeta1[reg.u_x[(k, l)]]
                val = total_derivative(first, reg.x[j - 1], reg)
                for v in dirs:
                    d = d_xi[(v, reg.x[j - 1])]
                    if not is_zero(d):
                        val = val - d * reg.advance(reg.u_x[(k, l)], v)
                zeta2[reg.u_xx[(k, l, j)]] = val

    mu_d = {}
    pairs = reg.pi_pairs()
    grad_keys = sorted(reg.u_x)
    for (i, j), mu in zip(pairs, g.mu_pi):
        for (k, l) in grad_keys:
            arg = reg.u_x[(k, l)]
            val = diff_partial(mu, arg)
            for (r, s) in grad_keys:
                d = diff_partial(zeta1[reg.u_x[(r, s)]], arg)
                if not is_zero(d):
                    val = val - reg.pi_d[(i, j, r, s)] * d
            mu_d[reg.pi_d[(i, j, k, l)]] = val

    return ProlongedGenerator(reg, g, zeta1, zeta2, mu_d)


def apply_with_trace(reg: JetRegistry, pg: ProlongedGenerator, e) -> tuple:
    """Directional derivative of ``e`` with the per-coordinate contributions.

    Returns (total, trace) where trace is the tuple of (coordinate, term)
    pairs, in canonical coordinate order, before any cross-coordinate
    cancellation; summing the trace normalizes to the total.
    """
    e = as_expr(e)
    total = ZERO
    trace = []
    for a in atoms_of(e):
        if is_unknown(a):
            continue
        c = pg.coefficient(a)
        if c is None:
            raise UnknownSymbolError(
                f"no prolonged action is defined for {a.name}")
        if is_zero(c):
            continue
        term = c * diff_atom(e, a)
        if not is_zero(term):
            trace.append((a, term))
            total = total + term
    return total, tuple(trace)


def apply_generator(reg: JetRegistry, pg: ProlongedGenerator, e) -> Expr:
    total, _ = apply_with_trace(reg, pg, e)
    return total


def _derivation(reg: JetRegistry, table: dict, e: Expr) -> Expr:
    out = ZERO
    for a in atoms_of(e):
        if is_unknown(a):
            continue
        c = table.get(a)
        if c is None:
            raise AnsatzError(
                f"bracket coefficient depends on {a.name}, outside the "
                "classical ansatz directions")
        if not is_zero(c):
            out = out + c * diff_atom(e, a)
    return out


def bracket(reg: JetRegistry, g1: GeneratorSpec, g2: GeneratorSpec) -> GeneratorSpec:
    """Lie bracket [g1, g2], coefficient-wise on the base directions.

    Each generator acts as a derivation over all coordinates its partner's
    coefficients may contain; for the gradient jets inside mu^Pi coefficients
    the action uses the first-prolongation jet coefficients, so the bracket
    agrees with the bracket of the prolonged fields.
    """
    tables = []
    for g in (g1, g2):
        validate_ansatz(reg, g)
        table = base_coefficients(reg, g)
        zeta1 = first_jet_coefficients(reg, g)
        for atom in reg.u_x.values():
            table[atom] = zeta1[atom]
        tables.append(table)
    t1, t2 = tables

    def component(direction: Atom) -> Expr:
        return (_derivation(reg, t1, t2[direction])
                - _derivation(reg, t2, t1[direction]))

    return make_generator(
        reg,
        xi_t=component(reg.t),
        xi_x=tuple(component(a) for a in reg.x),
        eta_u=tuple(component(a) for a in reg.u),
        eta_p=component(reg.p),
        eta_rho=component(reg.rho),
        mu_pi=tuple(component(reg.pi[pair]) for pair in reg.pi_pairs()),
        mu_g=component(reg.g),
        mu_h=component(reg.h),
    )
