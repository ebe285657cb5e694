"""
Triangle and bigon counts for genus-one curve configurations
"""
import logging
from fractions import Fraction
from math import floor, gcd
from typing import List, Optional, Sequence, Tuple

from sympy import Symbol

from pinfloer.core.exceptions import InvalidInputException, TriangleEnumerationException
from pinfloer.core.parallel import parallel_map
from pinfloer.models.grading import GeneratorLocalData
from pinfloer.models.homology import ChainComplex, SparseIntMatrix
from pinfloer.models.torus import (
    BigonClass, BigonConfiguration, Crossing, GenusOneTriple, Point, StandardTriple, TriangleClass
)
from pinfloer.services.grading import GradingService

logger = logging.getLogger(__name__)

# Minimal triangle counts positively; rotation partners agree.
UNTWISTED_SIGN = 1


def _det(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _side(p: Point, q: Point, r: Point) -> Fraction:
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def _strictly_inside(point: Point, vertices: Tuple[Point, Point, Point]) -> bool:
    a, b, c = vertices
    sides = (_side(a, b, point), _side(b, c, point), _side(c, a, point))
    return all(s > 0 for s in sides) or all(s < 0 for s in sides)


def _is_integer(value: Fraction) -> bool:
    return Fraction(value).denominator == 1


class TriangleService:
    """Service class for genus-one triangle and bigon enumeration"""

    @staticmethod
    def standardize(T: GenusOneTriple) -> StandardTriple:
        """
        Change basis so that beta and delta become the coordinate axes

        Raises:
            TriangleEnumerationException: For non-primitive or dependent slopes, intersection
                numbers other than -1, or a basepoint or twist point in the wrong place
        """
        for name, slope in (("beta", T.beta), ("gamma", T.gamma), ("delta", T.delta)):
            if gcd(*slope) != 1:
                raise TriangleEnumerationException(f"{name} slope {slope} is not primitive")
        if any(o not in (1, -1) for o in T.orientations):
            raise InvalidInputException(f"orientations must be +-1, got {T.orientations}")
        beta, gamma, delta = (tuple(o * v for v in s)
                              for o, s in zip(T.orientations, (T.beta, T.gamma, T.delta)))
        pairings = {"beta.gamma": _det(beta, gamma), "gamma.delta": _det(gamma, delta),
                    "delta.beta": _det(delta, beta)}
        if any(v != -1 for v in pairings.values()):
            raise TriangleEnumerationException("oriented intersection numbers must all be -1",
                                               details=pairings)

        det = _det(T.beta, T.delta)
        # [beta delta]^-1 * gamma
        g1 = (T.delta[1] * T.gamma[0] - T.delta[0] * T.gamma[1]) * det
        g2 = (-T.beta[1] * T.gamma[0] + T.beta[0] * T.gamma[1]) * det
        if abs(det) != 1 or (abs(g1), abs(g2)) != (1, 1):
            raise TriangleEnumerationException("slopes do not form a standard triple",
                                               details={"det": det, "gamma": [g1, g2]})
        c0 = Fraction(g2, 2) if T.gamma_offset is None else Fraction(T.gamma_offset)
        std = StandardTriple(g1, g2, Fraction(T.beta_offset), c0, Fraction(T.delta_offset))

        zx, zy = T.basepoint
        if _is_integer(zx - std.d0) or _is_integer(zy - std.b0) or _is_integer(g2 * zx - g1 * zy - c0):
            raise TriangleEnumerationException("basepoint lies on a curve")
        py = T.twist_height
        if _is_integer(py - std.b0) or _is_integer(g2 * std.d0 - g1 * py - c0):
            raise TriangleEnumerationException("twist point sits on an intersection point")
        return std

    @staticmethod
    def base_offset(std: StandardTriple) -> Fraction:
        """h0 in (0, 1): position of beta cap gamma to the right of beta cap delta"""
        h0 = (std.c0 + std.g1 * std.b0) / std.g2 - std.d0
        h0 -= floor(h0)
        if h0 == 0:
            raise TriangleEnumerationException("the three curves meet in a single point")
        return h0

    @staticmethod
    def triangle(T: GenusOneTriple, k: int, h: Fraction, std: Optional[StandardTriple] = None) -> TriangleClass:
        """Triangle with beta edge of signed length h, with n_z and the delta parity counted exactly"""
        std = std or TriangleService.standardize(T)
        V = std.corner
        B = (V[0] + h, V[1])
        D = (V[0], V[1] - std.g1 * std.g2 * h)
        vertices = (V, B, D)
        return TriangleClass(
            k=k,
            h=h,
            n_z=TriangleService.basepoint_multiplicity(T, vertices),
            delta_p_parity=TriangleService.twist_count(T, V, D) % 2,
            untwisted_sign=UNTWISTED_SIGN,
            vertices=vertices,
        )

    @staticmethod
    def basepoint_multiplicity(T: GenusOneTriple, vertices: Tuple[Point, Point, Point]) -> int:
        """Number of lattice translates of z strictly inside the triangle"""
        zx, zy = T.basepoint
        xs = [v[0] for v in vertices]
        ys = [v[1] for v in vertices]
        count = 0
        for i in range(floor(min(xs) - zx), floor(max(xs) - zx) + 2):
            for j in range(floor(min(ys) - zy), floor(max(ys) - zy) + 2):
                if _strictly_inside((zx + i, zy + j), vertices):
                    count += 1
        return count

    @staticmethod
    def twist_count(T: GenusOneTriple, V: Point, D: Point) -> int:
        """Translates of p on the open delta edge from V to D"""
        px, py = T.twist_point
        if not _is_integer(V[0] - px):
            return 0
        low, high = sorted((V[1], D[1]))
        return sum(1 for j in range(floor(low - py), floor(high - py) + 2) if low < py + j < high)

    @staticmethod
    def enumerate_triangles(T: GenusOneTriple, max_k: int) -> List[TriangleClass]:
        """
        Triangle classes between the distinguished intersection points

        Args:
            T: curve configuration
            max_k: largest pair index

        Returns:
            List[TriangleClass]: two classes per k = 1..max_k, ordered by (k, h)

        Raises:
            InvalidInputException: If max_k < 1
            TriangleEnumerationException: For degenerate curve data
        """
        if max_k < 1:
            raise InvalidInputException(f"maxk must be at least 1, got {max_k}")
        std = TriangleService.standardize(T)
        h0 = TriangleService.base_offset(std)

        def pair(k: int) -> List[TriangleClass]:
            return sorted(
                (TriangleService.triangle(T, k, h, std) for h in (h0 + k - 1, h0 - k)),
                key=lambda cls: cls.h
            )

        classes = [cls for part in parallel_map(pair, range(1, max_k + 1)) for cls in part]
        logger.info(f"Enumerated {len(classes)} triangle classes up to k={max_k}")
        return classes

    @staticmethod
    def pair_sum(T: GenusOneTriple, k: int, twisted: bool = False,
                 classes: Optional[Sequence[TriangleClass]] = None) -> int:
        """Signed count of the pair with index k, twisted by (-1)^delta_p_parity when asked"""
        classes = classes if classes is not None else TriangleService.enumerate_triangles(T, k)
        members = [cls for cls in classes if cls.k == k]
        if not members:
            raise InvalidInputException(f"no triangle classes enumerated for k={k}")
        return sum(cls.twisted_sign if twisted else cls.untwisted_sign for cls in members)

    @staticmethod
    def rotate_class(T: GenusOneTriple, cls: TriangleClass) -> TriangleClass:
        """
        Image of a class under the 180 degree rotation about z

        Raises:
            TriangleEnumerationException: If the rotation does not preserve the three curve families
        """
        std = TriangleService.standardize(T)
        zx, zy = T.basepoint
        g1, g2 = std.g1, std.g2
        preserved = (
            _is_integer(2 * zx - 2 * std.d0)
            and _is_integer(2 * zy - 2 * std.b0)
            and _is_integer(2 * (g2 * zx - g1 * zy) - 2 * std.c0)
        )
        if not preserved:
            raise TriangleEnumerationException("rotation about z does not preserve the curves")
        V, B, D = ((2 * zx - p[0], 2 * zy - p[1]) for p in cls.vertices)
        shift = (V[0] - std.d0, V[1] - std.b0)
        V, B, D = ((p[0] - shift[0], p[1] - shift[1]) for p in (V, B, D))
        h = B[0] - V[0]
        h0 = TriangleService.base_offset(std)
        k = int(h - h0) + 1 if h > 0 else int(h0 - h)
        vertices = (V, B, D)
        return TriangleClass(
            k=k,
            h=h,
            n_z=TriangleService.basepoint_multiplicity(T, vertices),
            delta_p_parity=TriangleService.twist_count(T, V, D) % 2,
            untwisted_sign=cls.untwisted_sign,
            vertices=vertices,
        )

    @staticmethod
    def brute_force_classes(T: GenusOneTriple, max_k: int, window: Optional[int] = None) -> List[Fraction]:
        """
        Edge lengths h of every triangle found by scanning lifted intersection points

        Scans beta cap gamma along the beta line and gamma cap delta along the delta line through
        the corner in the fundamental domain, keeping collinear pairs on one gamma lift whose
        basepoint multiplicity is within the bound for max_k.
        """
        std = TriangleService.standardize(T)
        window = window or max_k + 3
        bound = max_k * (max_k - 1) // 2
        g1, g2 = std.g1, std.g2
        V = (std.d0 - floor(std.d0), std.b0 - floor(std.b0))
        found = set()
        for m in range(-4 * window, 4 * window + 1):
            bx = (std.c0 + m + g1 * V[1]) / g2
            if not 0 < abs(bx - V[0]) <= window:
                continue
            for m2 in range(-4 * window, 4 * window + 1):
                dy = (g2 * V[0] - std.c0 - m2) / g1
                if not 0 < abs(dy - V[1]) <= window:
                    continue
                B, D = (bx, V[1]), (V[0], dy)
                if g2 * B[0] - g1 * B[1] != g2 * D[0] - g1 * D[1]:
                    continue
                if TriangleService.basepoint_multiplicity(T, (V, B, D)) <= bound:
                    found.add(bx - V[0])
        return sorted(found)

    @staticmethod
    def generating_functions(T: GenusOneTriple, max_k: int, U: Optional[Symbol] = None):
        """
        (untwisted, twisted) sums of sign * U^n_z over all classes up to max_k

        Returns:
            Tuple of sympy polynomials in U
        """
        U = U or Symbol("U")
        classes = TriangleService.enumerate_triangles(T, max_k)
        untwisted = sum(cls.untwisted_sign * U ** cls.n_z for cls in classes)
        twisted = sum(cls.twisted_sign * U ** cls.n_z for cls in classes)
        return untwisted, twisted

    @staticmethod
    def crossings(config: BigonConfiguration) -> List[Crossing]:
        """
        Transverse points of beta cap alpha in increasing position

        Raises:
            InvalidInputException: For a malformed profile or orientations other than +-1
            TriangleEnumerationException: If a profile vertex lies on alpha
        """
        profile = [(Fraction(x), Fraction(y)) for x, y in config.beta_profile]
        xs = [x for x, _ in profile]
        if len(profile) < 2 or not all(0 <= x < 1 for x in xs) or any(b <= a for a, b in zip(xs, xs[1:])):
            raise InvalidInputException("beta profile needs two or more vertices with increasing x in [0, 1)")
        if config.alpha_orientation not in (1, -1) or config.beta_orientation not in (1, -1):
            raise InvalidInputException("curve orientations must be +-1")
        level = Fraction(config.alpha_offset)
        if any(y == level for _, y in profile):
            raise TriangleEnumerationException("beta meets alpha at a vertex of its profile",
                                               details={"alpha_offset": str(level)})
        closed = profile + [(profile[0][0] + 1, profile[0][1])]
        found = []
        for (x1, y1), (x2, y2) in zip(closed, closed[1:]):
            if (y1 - level) * (y2 - level) < 0:
                dx, dy = x2 - x1, y2 - y1
                found.append(Crossing((x1 + (level - y1) * dx / dy) % 1, dx, dy))
        return sorted(found, key=lambda c: c.x)

    @staticmethod
    def crossing_signs(config: BigonConfiguration) -> List[int]:
        """Local intersection signs alpha . beta at the crossings in increasing position"""
        alpha = (config.alpha_orientation, 0)
        signs = []
        for c in TriangleService.crossings(config):
            beta = (config.beta_orientation * c.dx, config.beta_orientation * c.dy)
            signs.append(1 if _det(alpha, beta) > 0 else -1)
        return signs

    @staticmethod
    def enumerate_bigons(config: BigonConfiguration) -> List[BigonClass]:
        """
        The two bigons between isotopic curves crossing twice

        Generators are the crossings in increasing position. Each bigon runs between consecutive
        crossings; its counterclockwise boundary follows alpha from source to target. Bigon A lies
        above alpha and B below. A bigon counts +1 when its boundary runs against the orientation
        of beta.

        Raises:
            TriangleEnumerationException: Unless there are exactly two crossings
        """
        crossings = TriangleService.crossings(config)
        if len(crossings) != 2:
            raise TriangleEnumerationException(
                f"isotopic curves must cross exactly twice, got {len(crossings)} crossing(s)",
                details={"crossings": [str(c.x) for c in crossings]}
            )
        bigons = []
        for i in (0, 1):
            left, right = crossings[i], crossings[1 - i]
            arc = (left.x, right.x if right.x > left.x else right.x + 1)
            above = left.dy > 0
            # alpha runs left to right under an upper region, right to left over a lower one
            source, target = (i, 1 - i) if above else (1 - i, i)
            beta_direction = -1 if above else 1
            bigons.append(BigonClass(
                name="A" if above else "B",
                sign=-beta_direction * config.beta_orientation,
                source=source,
                target=target,
                arc=arc,
                above=above,
            ))
        return sorted(bigons, key=lambda b: b.name)

    @staticmethod
    def bigon_complex(config: BigonConfiguration) -> ChainComplex:
        """
        Rank-two complex of the bigon configuration

        Generators are graded by gr_HF of the genus-one diagram with alpha and beta in the same
        homology class, lifted to Z so the differential lowers degree by one; the single matrix
        entry is the signed bigon count.
        """
        bigons = TriangleService.enumerate_bigons(config)
        source, target = bigons[0].source, bigons[0].target
        if any((b.source, b.target) != (source, target) for b in bigons):
            raise TriangleEnumerationException("bigons must join the same pair of generators",
                                               details={"bigons": [(b.name, b.source, b.target) for b in bigons]})
        data = GradingService.surface_data(1, [[1, 0]], [[1, 0]])
        signs = TriangleService.crossing_signs(config)
        gradings = [GradingService.gr_hf(data, GeneratorLocalData((0,), (s,))) for s in signs]
        if (gradings[source] - gradings[target]) % 2 != 1:
            raise TriangleEnumerationException("bigons must change the grading by one",
                                               details={"gradings": gradings})
        coefficient = sum(b.sign for b in bigons)
        top = gradings[source]
        bottom = top - 1
        boundary = SparseIntMatrix.from_entries(1, 1, [(0, 0, coefficient)])
        return ChainComplex(
            {top: 1, bottom: 1},
            {top: boundary},
            {top: [source], bottom: [target]},
        )
