"""
Curve data on the torus for triangle and bigon counts
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

Slope = Tuple[int, int]
Point = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class GenusOneTriple:
    """
    Three oriented curves beta, gamma, delta on R^2 / Z^2.

    Positions are given in the coordinates where beta and delta are the axes:
    beta is y = beta_offset, delta is x = delta_offset and gamma is g2 x - g1 y = gamma_offset,
    gamma_offset defaulting to g2 / 2. The twist point p sits on delta at height twist_height.
    """
    beta: Slope = (1, 0)
    gamma: Slope = (1, 1)
    delta: Slope = (0, 1)
    beta_offset: Fraction = Fraction(0)
    gamma_offset: Optional[Fraction] = None
    delta_offset: Fraction = Fraction(0)
    orientations: Tuple[int, int, int] = (1, -1, 1)
    basepoint: Point = (Fraction(1, 2), Fraction(1, 2))
    twist_height: Fraction = Fraction(1, 4)

    @property
    def twist_point(self) -> Point:
        return self.delta_offset, self.twist_height


@dataclass(frozen=True)
class StandardTriple:
    """Triple after the change of basis sending beta to (1, 0) and delta to (0, 1)"""
    g1: int
    g2: int
    b0: Fraction
    c0: Fraction
    d0: Fraction

    @property
    def corner(self) -> Point:
        """beta cap delta"""
        return self.d0, self.b0


@dataclass(frozen=True)
class TriangleClass:
    """
    Triangle with corners beta cap delta, beta cap gamma and gamma cap delta.

    h is the signed length of the beta edge; classes of one pair index k have h = h0 + k - 1
    and h = h0 - k.
    """
    k: int
    h: Fraction
    n_z: int
    delta_p_parity: int
    untwisted_sign: int
    vertices: Tuple[Point, Point, Point]

    @property
    def twisted_sign(self) -> int:
        return self.untwisted_sign * (-1) ** self.delta_p_parity


@dataclass(frozen=True)
class BigonConfiguration:
    """
    Two isotopic curves on the annulus (R / Z) x R.

    alpha is the horizontal circle y = alpha_offset. beta is the graph of the periodic
    piecewise linear function through beta_profile, a list of (x, y) vertices with x increasing
    in [0, 1); the last vertex joins the first one translated by (1, 0).
    """
    beta_profile: Tuple[Point, ...] = ((Fraction(0), Fraction(-1, 4)), (Fraction(1, 2), Fraction(1, 4)))
    alpha_offset: Fraction = Fraction(0)
    alpha_orientation: int = 1
    beta_orientation: int = 1


@dataclass(frozen=True)
class Crossing:
    """beta cap alpha at position x, with the direction (dx, dy) of beta there, dx > 0"""
    x: Fraction
    dx: Fraction
    dy: Fraction


@dataclass(frozen=True)
class BigonClass:
    """
    One bigon between alpha and beta, from generator `source` to generator `target`.

    arc is the interval of alpha it covers, right end possibly past 1; above says whether
    beta bounds it from above.
    """
    name: str
    sign: int
    source: int
    target: int
    arc: Tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))
    above: bool = True
