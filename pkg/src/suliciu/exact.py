"""Closed-form Riemann solutions: three-contact classical solutions and
entropy-admissible delta shocks, with point sampling."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    Params,
    Region,
    State,
    bracket,
    check_state,
    classify,
    delta_condition,
    eigenvalues,
    flux,
    primitive_to_conserved,
)
from .errors import (
    DegenerateJump,
    EntropyViolation,
    NoClassicalSolution,
    NotInDeltaRegion,
    UnsolvedRegion,
)


@dataclass(frozen=True)
class ClassicalSolution:
    """Self-similar solution made of three contact discontinuities.

    The four constant states Ul, U1, U2, Ur are separated by contacts moving
    at sigma1 <= sigma2 <= sigma3.
    """

    Ul: State
    U1: State
    U2: State
    Ur: State
    sigma1: float
    sigma2: float
    sigma3: float


@dataclass(frozen=True)
class DeltaShockSolution:
    """Concentrated-mass solution: weight w(t) = w_rate * t travels along
    x = u_delta * t, carrying the value g for the auxiliary field."""

    u_delta: float
    w_rate: float
    g: float
    Ul: State
    Ur: State


RiemannSolution = ClassicalSolution | DeltaShockSolution


@dataclass(frozen=True)
class SingularPoint:
    """Sample record on the concentration line: accumulated weight, line speed
    and the value carried for the auxiliary field."""

    weight: float
    speed: float
    g_value: float


def solve_classical(Ul: State, Ur: State, p: Params) -> ClassicalSolution:
    """Build the three-contact solution from the contact-invariant equalities.

    The middle velocity and auxiliary value are shared by both intermediate
    states:

        u* = (u_l + u_r)/2 + s (v_l - v_r)/2
        v* = (v_l + v_r)/2 + (u_l - u_r)/(2 s)

    and the intermediate specific volumes follow from continuity of v + 1/rho
    across the outer waves. Raises NoClassicalSolution when either
    intermediate density fails to be positive or the speeds come out
    unordered, which signals a pair outside the classically solvable set.
    """
    check_state(Ul, p)
    check_state(Ur, p)
    s = p.s
    u_star = 0.5 * (Ul.u + Ur.u) + 0.5 * s * (Ul.v - Ur.v)
    v_star = 0.5 * (Ul.v + Ur.v) + 0.5 * (Ul.u - Ur.u) / s
    inv_rho1 = Ul.v + 1.0 / Ul.rho - v_star
    inv_rho2 = Ur.v + 1.0 / Ur.rho - v_star
    if inv_rho1 <= p.eps_rho or inv_rho2 <= p.eps_rho:
        raise NoClassicalSolution(
            f"intermediate specific volumes ({inv_rho1}, {inv_rho2}) not positive"
        )
    U1 = State(1.0 / inv_rho1, u_star, v_star)
    U2 = State(1.0 / inv_rho2, u_star, v_star)
    sigma1 = eigenvalues(Ul, p)[0]
    sigma2 = u_star
    sigma3 = eigenvalues(Ur, p)[2]
    if not (sigma1 <= sigma2 + p.eps_tie and sigma2 <= sigma3 + p.eps_tie):
        raise NoClassicalSolution(
            f"wave speeds unordered: ({sigma1}, {sigma2}, {sigma3})"
        )
    return ClassicalSolution(Ul, U1, U2, Ur, sigma1, sigma2, sigma3)


def delta_speed_roots(Ul: State, Ur: State, p: Params) -> tuple[float, float]:
    """Both roots of the shock-speed quadratic for a pair with a density jump.

    Returns (selected, rejected): the first root makes the concentrated weight
    grow (+sqrt branch), the second would give it a negative growth rate.
    Raises DegenerateJump when the density jump vanishes or the discriminant
    is not positive.
    """
    br = bracket(Ul.rho, Ur.rho)
    if abs(br) <= 1e-10 * max(Ul.rho, Ur.rho):
        raise DegenerateJump("density jump vanishes; the speed quadratic degenerates")
    d4 = _quarter_discriminant(Ul, Ur, p)
    if d4 <= 0.0:
        raise DegenerateJump(f"speed quadratic has no distinct real roots (disc/4 = {d4})")
    bru = bracket(Ul.rho * Ul.u, Ur.rho * Ur.u)
    root = math.sqrt(d4)
    return ((bru - root) / br, (bru + root) / br)


def _quarter_discriminant(Ul: State, Ur: State, p: Params) -> float:
    """Quarter of the discriminant of the shock-speed quadratic,
    [rho u]^2 - [rho][rho u^2 + s^2 v]."""
    bru = bracket(Ul.rho * Ul.u, Ur.rho * Ur.u)
    br = bracket(Ul.rho, Ur.rho)
    brf = bracket(flux(Ul, p)[1], flux(Ur, p)[1])
    return bru * bru - br * brf


def solve_delta(Ul: State, Ur: State, p: Params) -> DeltaShockSolution:
    """Solve for the entropy-admissible concentrated-mass solution.

    For an equal-density jump the speed is the velocity average shifted by the
    auxiliary jump; otherwise it is the weight-growing root of the quadratic

        [rho] u^2 - 2 [rho u] u + [rho u^2 + s^2 v] = 0.

    The growth rate of the weight and the carried value g follow from the
    integrated jump relations. Raises NotInDeltaRegion when the admissibility
    preconditions fail, DegenerateJump on vanishing velocity jump or
    discriminant, and EntropyViolation when the computed speed falls outside
    the overcompressive bracket (such pairs pass the region test yet admit no
    admissible solution).
    """
    check_state(Ul, p)
    check_state(Ur, p)
    lam1_l = eigenvalues(Ul, p)[0]
    lam3_r = eigenvalues(Ur, p)[2]
    if lam1_l < lam3_r - p.eps_tie:
        raise NotInDeltaRegion(
            f"characteristics do not cross: lambda1(left)={lam1_l} < lambda3(right)={lam3_r}"
        )
    if not delta_condition(Ul, Ur, p):
        raise NotInDeltaRegion("jump-size inequality fails for this pair")

    s = p.s
    br = bracket(Ul.rho, Ur.rho)
    du = bracket(Ul.u, Ur.u)
    dv = bracket(Ul.v, Ur.v)
    brv = bracket(Ul.rho * Ul.v, Ur.rho * Ur.v)
    bq = bracket(flux(Ul, p)[2], flux(Ur, p)[2])

    if abs(br) <= 1e-10 * max(Ul.rho, Ur.rho):
        if abs(du) <= p.eps_tie * max(1.0, abs(Ul.u), abs(Ur.u)):
            raise DegenerateJump("velocity jump too small for the equal-density formulas")
        u_delta = 0.5 * (Ul.u + Ur.u) + s * s * dv / (2.0 * Ul.rho * du)
        w_rate = Ul.rho * du
        g = (-brv * u_delta + bq) / (Ul.rho * du)
    else:
        d4 = _quarter_discriminant(Ul, Ur, p)
        if d4 <= 0.0:
            raise DegenerateJump(
                f"speed quadratic has no distinct real roots (disc/4 = {d4})"
            )
        bru = bracket(Ul.rho * Ul.u, Ur.rho * Ur.u)
        root = math.sqrt(d4)
        u_delta = (bru - root) / br
        w_rate = root
        g = (-brv * u_delta + bq) / root

    ok, margin_left, margin_right = check_entropy(u_delta, Ul, Ur, p)
    if not ok:
        raise EntropyViolation(
            f"speed {u_delta} outside overcompressive bracket "
            f"[{lam3_r}, {lam1_l}] (margins {margin_left}, {margin_right})"
        )
    return DeltaShockSolution(u_delta, w_rate, g, Ul, Ur)


def solve(Ul: State, Ur: State, p: Params) -> RiemannSolution:
    """Dispatch on the region classification; raises UnsolvedRegion for pairs
    admitting neither solution type."""
    region = classify(Ul, Ur, p)
    if region is Region.CLASSICAL:
        return solve_classical(Ul, Ur, p)
    if region is Region.DELTA_SHOCK:
        return solve_delta(Ul, Ur, p)
    lam1_l = eigenvalues(Ul, p)[0]
    lam3_r = eigenvalues(Ur, p)[2]
    du = bracket(Ul.u, Ur.u)
    rhs = p.s * p.s * bracket(Ul.v, Ur.v) * (1.0 / Ur.rho - 1.0 / Ul.rho)
    raise UnsolvedRegion(
        "no classical solution (lambda1(left) = "
        f"{lam1_l} >= lambda3(right) = {lam3_r}) and the jump-size inequality "
        f"fails ((u_l - u_r)^2 = {du * du} < {rhs})"
    )


def check_entropy(
    u_delta: float, Ul: State, Ur: State, p: Params
) -> tuple[bool, float, float]:
    """Overcompressivity test lambda3(right) <= u_delta <= lambda1(left).

    Returns (ok, margin_left, margin_right) with margins
    lambda1(left) - u_delta and u_delta - lambda3(right); ties within eps_tie
    pass.
    """
    lam1_l = eigenvalues(Ul, p)[0]
    lam3_r = eigenvalues(Ur, p)[2]
    margin_left = lam1_l - u_delta
    margin_right = u_delta - lam3_r
    ok = margin_left >= -p.eps_tie and margin_right >= -p.eps_tie
    return ok, margin_left, margin_right


def quadratic_residual(u_delta: float, Ul: State, Ur: State, p: Params) -> float:
    """Value of [rho] u^2 - 2 [rho u] u + [rho u^2 + s^2 v] at a trial speed.

    Vanishes at the admissible shock speed; for an equal-density jump the
    quadratic degenerates to a linear function and the value is still
    returned as written.
    """
    br = bracket(Ul.rho, Ur.rho)
    bru = bracket(Ul.rho * Ul.u, Ur.rho * Ur.u)
    brf = bracket(flux(Ul, p)[1], flux(Ur, p)[1])
    return br * u_delta * u_delta - 2.0 * bru * u_delta + brf


def rh_residual_classical(sol: ClassicalSolution, p: Params) -> np.ndarray:
    """Jump-condition residuals sigma*[U] - [F] across each contact.

    Returns a (3, 3) array, one row per wave; all entries vanish for a valid
    solution.
    """
    waves = (
        (sol.sigma1, sol.Ul, sol.U1),
        (sol.sigma2, sol.U1, sol.U2),
        (sol.sigma3, sol.U2, sol.Ur),
    )
    out = np.empty((3, 3))
    for k, (sigma, A, B) in enumerate(waves):
        ca = primitive_to_conserved(A)
        cb = primitive_to_conserved(B)
        fa = flux(A, p)
        fb = flux(B, p)
        jump_u = (ca.rho - cb.rho, ca.mom - cb.mom, ca.q - cb.q)
        out[k] = [sigma * jump_u[i] - (fa[i] - fb[i]) for i in range(3)]
    return out


def sample_classical(sol: ClassicalSolution, xi: float) -> State:
    """State at similarity coordinate xi = x/t; right-continuous at the
    wave speeds."""
    if xi < sol.sigma1:
        return sol.Ul
    if xi < sol.sigma2:
        return sol.U1
    if xi < sol.sigma3:
        return sol.U2
    return sol.Ur


def sample_delta(
    sol: DeltaShockSolution, t: float, x: float, eps: float = 0.0
) -> State | SingularPoint:
    """Solution at (t, x) for t > 0: plateau states off the concentration line,
    a SingularPoint record within the eps half-width band around it."""
    if not t > 0.0:
        raise ValueError(f"sampling requires t > 0, got t={t}")
    xs = sol.u_delta * t
    if x < xs - eps:
        return sol.Ul
    if x > xs + eps:
        return sol.Ur
    return SingularPoint(weight=sol.w_rate * t, speed=sol.u_delta, g_value=sol.g)
