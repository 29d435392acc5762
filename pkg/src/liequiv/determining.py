"""Determining equations, verdicts, and infinitesimal/finite cross checks.

The invariance residual of a generator on an equation is the directional
derivative of the equation under the prolonged field, restricted to the
solution manifold (principal time derivatives eliminated, rho denominators
cleared) and split by monomials in the parametric coordinates: the spatial
second-order velocity jets, the first-order spatial jets of u, p and rho,
and the constitutive coordinates Pi^{ij}, Pi^{ij}_{kl}, G, H.  Everything in
t, x, u, p, rho (and any opaque ?constants) stays inside the split
coefficients.

A generator is an equivalence symmetry exactly when every split coefficient
is the zero expression; the first nonzero entry in canonical order is kept
as a witness.  For families with a closed-form flow the same statement is
cross-checked finitely: the pullback of each equation must equal a nonzero
factor, constant over the space, times the equation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .expr import (Expr, Monomial, ZERO, atoms_of, collect, evaluate,
                   is_unknown, is_zero)
from .flows import SCALE, SCALE_INV, FiniteTransformation, reduce_scale
from .generators import GeneratorSpec, apply_generator, prolong
from .jets import JetRegistry
from .linsolve import solve_linear
from .system import BalanceSystem, restrict_to_manifold


def parametric_atoms(reg: JetRegistry) -> tuple:
    atoms = list(reg.u_xx.values())
    atoms += list(reg.u_x.values())
    atoms += list(reg.p_x) + list(reg.rho_x)
    atoms += list(reg.pi.values()) + list(reg.pi_d.values())
    atoms += [reg.g, reg.h]
    return tuple(sorted(atoms))


@dataclass(frozen=True)
class EquationSplit:
    equation: str
    rho_power: int
    terms: tuple  # ((parametric Monomial, coefficient Expr), ...) sorted


@dataclass(frozen=True)
class DeterminingSystem:
    dim: int
    generator: str
    parametric: tuple
    splits: tuple

    def coefficients(self) -> tuple:
        return tuple(c for s in self.splits for _, c in s.terms)


def recompose(split: EquationSplit) -> Expr:
    """Sum of monomial * coefficient; equals the restricted residual."""
    total = ZERO
    for mono, coeff in split.terms:
        total = total + Expr(((mono, Fraction(1)),)) * coeff
    return total


def determining_equations(system: BalanceSystem, g: GeneratorSpec,
                          name: str = "generator") -> DeterminingSystem:
    reg = system.registry
    pg = prolong(reg, g)
    parametric = parametric_atoms(reg)
    splits = []
    for eq_name, eq in system.equations():
        residual = apply_generator(reg, pg, eq)
        restricted, power = restrict_to_manifold(residual, system)
        buckets = {} if is_zero(restricted) else collect(restricted, parametric)
        splits.append(EquationSplit(eq_name, power, tuple(buckets.items())))
    return DeterminingSystem(reg.dim, name, parametric, tuple(splits))


@dataclass(frozen=True)
class EquationVerdict:
    equation: str
    status: str  # "zero" | "nonzero"
    rho_power: int
    witness_monomial: str | None
    witness_coefficient: str | None


@dataclass(frozen=True)
class FiniteFactor:
    equation: str
    factor: str | None
    ok: bool


@dataclass(frozen=True)
class FiniteCheckResult:
    passed: bool
    factors: tuple


@dataclass(frozen=True)
class Verdict:
    generator: str
    zero: bool
    equations: tuple
    finite: FiniteCheckResult | None
    agreement: bool | None


def verify(system: BalanceSystem, g: GeneratorSpec,
           name: str = "generator") -> Verdict:
    dsys = determining_equations(system, g, name)
    eq_verdicts = []
    all_zero = True
    for split in dsys.splits:
        if split.terms:
            all_zero = False
            mono, coeff = split.terms[0]
            eq_verdicts.append(EquationVerdict(
                split.equation, "nonzero", split.rho_power,
                str(mono), str(coeff)))
        else:
            eq_verdicts.append(EquationVerdict(
                split.equation, "zero", split.rho_power, None, None))
    return Verdict(name, all_zero, tuple(eq_verdicts), None, None)


def _factor_string(coeff: Fraction, k: int) -> str:
    if k == 0:
        exp_part = ""
    elif k == 1:
        exp_part = "exp(a)"
    elif k == -1:
        exp_part = "exp(-a)"
    else:
        exp_part = f"exp({k}*a)"
    if not exp_part:
        return str(coeff)
    if coeff == 1:
        return exp_part
    return f"{coeff}*{exp_part}"


def finite_check(system: BalanceSystem, ft: FiniteTransformation) -> FiniteCheckResult:
    """Pull every equation back through the coordinate maps and test that the
    result is a nonzero constant multiple (a rational times a power of
    exp(a)) of the original equation."""
    factors = []
    passed = True
    for eq_name, eq in system.equations():
        pullback = ft.transform(eq)
        found = None
        lead_mono, lead_coeff = eq.leading()
        for mono, c in pullback.terms:
            q = mono.try_divide(lead_mono)
            if q is None:
                continue
            if any(a != SCALE and a != SCALE_INV for a in q.atoms()):
                continue
            lam = Expr(((q, c / lead_coeff),))
            if reduce_scale(lam * eq) == pullback:
                k = q.exponent(SCALE) - q.exponent(SCALE_INV)
                found = _factor_string(c / lead_coeff, k)
                break
        if found is None:
            passed = False
            factors.append(FiniteFactor(eq_name, None, False))
        else:
            factors.append(FiniteFactor(eq_name, found, True))
    return FiniteCheckResult(passed, tuple(factors))


def check_entry(system: BalanceSystem, entry) -> Verdict:
    """Infinitesimal verdict plus, when a closed-form flow exists, the finite
    cross-check and the agreement flag between the two routes."""
    from .flows import exponentiate, has_closed_form
    base = verify(system, entry.spec, entry.name)
    if not has_closed_form(system.registry, entry.name):
        return base
    ft = exponentiate(system.registry, entry.name)
    fin = finite_check(system, ft)
    return Verdict(base.generator, base.zero, base.equations, fin,
                   base.zero == fin.passed)


def witness_is_sound(system: BalanceSystem, verdict: Verdict, seed: int = 7,
                     draws: int = 5) -> bool:
    """The recorded witness coefficient evaluates to a nonzero rational for
    at least one of ``draws`` seeded random rational points."""
    import random

    from .dsl import parse_expr

    reg = system.registry
    rng = random.Random(seed)
    for ev in verdict.equations:
        if ev.status != "nonzero":
            continue
        coeff = parse_expr(reg, ev.witness_coefficient)
        hit = False
        for _ in range(draws):
            point = {a: Fraction(rng.randint(1, 19), rng.randint(1, 7))
                     for a in atoms_of(coeff)}
            if evaluate(coeff, point) != 0:
                hit = True
                break
        if not hit:
            return False
    return True


def solve_unknowns(dsys: DeterminingSystem) -> dict:
    """Values of the ?constants forced by the determining equations.

    Every split coefficient must vanish identically in the remaining
    coordinates, which yields one linear equation over the unknowns per
    residual monomial.  Raises on a nonlinear occurrence; returns the unique
    exact solution (unknowns the system does not constrain stay at 0, and
    are reported by the companion ``free`` list).
    """
    unknowns = sorted(
        {a for c in dsys.coefficients() for a in atoms_of(c) if is_unknown(a)})
    equations = []
    for coeff in dsys.coefficients():
        groups = {}
        for mono, c in coeff.terms:
            lin = {}
            rest = []
            for a, k in mono.factors:
                if is_unknown(a):
                    if k > 1:
                        raise ValueError(
                            f"coefficient is nonlinear in unknown {a.name}")
                    lin[a] = True
                else:
                    rest.append((a, k))
            if len(lin) > 1:
                raise ValueError("coefficient mixes unknowns within one term")
            key = Monomial(rest)
            row = groups.setdefault(key, ({}, [Fraction(0)]))
            if lin:
                a = next(iter(lin))
                row[0][a] = row[0].get(a, Fraction(0)) + c
            else:
                row[1][0] += c
        for coeffs, const in groups.values():
            equations.append((coeffs, -const[0]))
    solution, free = solve_linear(equations, unknowns)
    return {"solution": solution, "free": free}

