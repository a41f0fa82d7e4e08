"""States, eigenstructure and region classification for the Suliciu relaxation system.

The system evolves (rho, rho*u, rho*v) with fluxes
(rho*u, rho*u^2 + s^2*v, rho*u*v + u) for a constant parameter s > 0.
All three characteristic fields are linearly degenerate, with speeds
u - s/rho, u, u + s/rho, so every elementary wave is a contact discontinuity
and sufficiently compressive data concentrate mass into a moving Dirac measure.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import InvalidState

#: Jump bracket convention used throughout: [f] = f(left) - f(right).


@dataclass(frozen=True)
class Params:
    """Model and tolerance parameters.

    s        -- wave-speed parameter, strictly positive
    eps_rho  -- vacuum guard: densities below this are rejected
    eps_tie  -- absolute tolerance for eigenvalue inequality ties
    """

    s: float = 1.0
    eps_rho: float = 1e-12
    eps_tie: float = 1e-12

    def __post_init__(self):
        if not (self.s > 0.0):
            raise InvalidState(f"wave-speed parameter must be positive, got s={self.s}")
        if not (self.eps_rho > 0.0 and self.eps_tie > 0.0):
            raise InvalidState("tolerances eps_rho and eps_tie must be positive")


@dataclass(frozen=True)
class State:
    """Primitive fluid state (rho, u, v); rho must stay above the vacuum guard."""

    rho: float
    u: float
    v: float

    def __post_init__(self):
        if not (self.rho > 0.0):
            raise InvalidState(f"density must be positive, got rho={self.rho}")


@dataclass(frozen=True)
class Conserved:
    """Conserved cell variables (rho, rho*u, rho*v)."""

    rho: float
    mom: float
    q: float


class Region(enum.Enum):
    """Classification of a Riemann state pair."""

    CLASSICAL = "Classical"
    DELTA_SHOCK = "DeltaShock"
    UNSOLVED = "Unsolved"


def check_state(U: State, p: Params) -> None:
    """Reject states below the vacuum guard."""
    if U.rho < p.eps_rho:
        raise InvalidState(f"density {U.rho} below vacuum guard {p.eps_rho}")


def primitive_to_conserved(U: State) -> Conserved:
    return Conserved(U.rho, U.rho * U.u, U.rho * U.v)


def conserved_to_primitive(C: Conserved, p: Params) -> State:
    """Recover (rho, u, v) by division; raises on vacuum."""
    if C.rho < p.eps_rho:
        raise InvalidState(f"conserved density {C.rho} below vacuum guard {p.eps_rho}")
    return State(C.rho, C.mom / C.rho, C.q / C.rho)


def eigenvalues(U: State, p: Params) -> tuple[float, float, float]:
    """Characteristic speeds (u - s/rho, u, u + s/rho), strictly increasing."""
    c = p.s / U.rho
    return (U.u - c, U.u, U.u + c)


def riemann_invariants(U: State, p: Params) -> tuple[float, float, float]:
    """Riemann invariants (s^2 v - s u, v + 1/rho, s^2 v + s u).

    The first and second are constant across 3-waves, the second and third
    across 1-waves; u and v themselves are constant across 2-waves.
    """
    s = p.s
    return (s * s * U.v - s * U.u, U.v + 1.0 / U.rho, s * s * U.v + s * U.u)


def flux(U: State, p: Params) -> tuple[float, float, float]:
    """Flux of the conserved variables at a primitive state."""
    s2 = p.s * p.s
    return (
        U.rho * U.u,
        U.rho * U.u * U.u + s2 * U.v,
        U.rho * U.u * U.v + U.u,
    )


def bracket(a_minus: float, a_plus: float) -> float:
    """Jump bracket [a] = a_minus - a_plus (left minus right)."""
    return a_minus - a_plus


def delta_condition(Ul: State, Ur: State, p: Params) -> bool:
    """Jump-size inequality required for a concentrated-mass solution:

        (u_l - u_r)^2 >= s^2 (v_l - v_r) (1/rho_r - 1/rho_l)

    Equivalent to a non-negative discriminant of the shock-speed quadratic.
    """
    du = bracket(Ul.u, Ur.u)
    dv = bracket(Ul.v, Ur.v)
    return du * du >= p.s * p.s * dv * (1.0 / Ur.rho - 1.0 / Ul.rho)


def classify(Ul: State, Ur: State, p: Params) -> Region:
    """Sort a state pair into CLASSICAL, DELTA_SHOCK or UNSOLVED.

    The pair is classical when the fastest left characteristic lags the
    slowest right one (lambda_1(Ul) < lambda_3(Ur)); it supports a delta shock
    when the characteristics cross and the jump-size inequality holds.
    Ties within eps_tie count as crossing.
    """
    check_state(Ul, p)
    check_state(Ur, p)
    lam1_l = eigenvalues(Ul, p)[0]
    lam3_r = eigenvalues(Ur, p)[2]
    if lam1_l < lam3_r - p.eps_tie:
        return Region.CLASSICAL
    if delta_condition(Ul, Ur, p):
        return Region.DELTA_SHOCK
    return Region.UNSOLVED
