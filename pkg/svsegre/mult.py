"""Local computations at the origin of affine space.

Local lengths of isolated points, multiplicities of equidimensional zero
sets through generic linear slicing, and the Segre numbers e_k(J, 0) of an
ideal through the local SV recursion with scalar generic combinations.
"""

import logging
from typing import List, Sequence

from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement, PolyRing

from svsegre.groebner import Ideal, saturate, vector_space_dimension
from svsegre.models import (
    GenericityError,
    NonIsolatedError,
    SegreNumbers,
    ValidationError,
)
from svsegre.poly import (
    constant_term,
    make_ring,
    monomial,
    monomials_of_degree,
    random_combination,
    random_linear_form,
    substitute,
)
from svsegre.rng import RandomSource
from svsegre.scheme import DEFAULT_RETRIES

logger = logging.getLogger(__name__)

STABILIZATION_CAP = 64
EMBEDDED_CAVEAT = (
    "multiplicities of intermediate SV schemes are local lengths of generic "
    "slices and count embedded components at the origin if any exist"
)


class AffineIdeal(Ideal):
    """Ideal of an affine coordinate ring; the distinguished point is the origin."""

    def maximal_ideal(self) -> Ideal:
        return Ideal(self.ring, self.ring.gens, self.budget)

    def vanishes_at_origin(self) -> bool:
        return origin_in_zero_set(self)


def as_affine(ideal: Ideal) -> AffineIdeal:
    if isinstance(ideal, AffineIdeal):
        return ideal
    return AffineIdeal(ideal.ring, ideal.generators, ideal.budget)


def origin_in_zero_set(ideal: Ideal) -> bool:
    """The origin lies on V(I) iff every generator has zero constant term."""
    return all(not constant_term(g) for g in ideal.generators)


def is_isolated(ideal: Ideal) -> bool:
    """True iff the origin is an isolated point of V(I).

    Saturating by m removes exactly the m-primary component, so the origin is
    isolated iff it lies on V(I) but not on V(I : m^∞).
    """
    if not origin_in_zero_set(ideal):
        return False
    return not origin_in_zero_set(saturate(ideal, as_affine(ideal).maximal_ideal()))


def _power_of_maximal(ring: PolyRing, N: int) -> List[PolyElement]:
    return [monomial(ring, exps) for exps in monomials_of_degree(ring.ngens, N)]


def local_length(ideal: Ideal, cap: int = STABILIZATION_CAP) -> int:
    """Length of the m-primary component of I at the origin.

    Computes dim R/(I + m^N) for N = 2, 4, 8, ... until two successive values
    agree; 0 when the origin is not on V(I).
    """
    if not origin_in_zero_set(ideal) or ideal.is_unit():
        return 0
    if not is_isolated(ideal):
        raise NonIsolatedError(
            f"The origin is not an isolated point of V({', '.join(map(str, ideal.generators))})"
        )
    return _stabilized_length(ideal, cap)


def _stabilized_length(ideal: Ideal, cap: int) -> int:
    previous = None
    N = 2
    while N <= cap:
        truncated = ideal.like(ideal.generators + tuple(_power_of_maximal(ideal.ring, N)))
        length = vector_space_dimension(truncated)
        logger.debug("local length with m^%d: %d", N, length)
        if length == previous:
            return length
        previous = length
        N *= 2
    raise NonIsolatedError(f"Local length did not stabilize up to m^{cap}")


def mult_at_origin(ideal: Ideal, k: int, rng: RandomSource,
                   retries: int = DEFAULT_RETRIES,
                   cap: int = STABILIZATION_CAP) -> int:
    """Multiplicity at the origin of the k-dimensional part of V(I).

    Slices with k random linear forms through the origin and takes the local
    length. Returns 0 when the origin is not on V(I), or when it is already
    isolated after k - 1 forms (no k-dimensional component passes through it).
    """
    if k < 0:
        raise ValidationError(f"dimension must be non-negative, got {k}")
    if not origin_in_zero_set(ideal) or ideal.is_unit():
        return 0
    if k == 0:
        return _stabilized_length(ideal, cap) if is_isolated(ideal) else 0
    for attempt in range(retries + 1):
        forms = [random_linear_form(ideal.ring, rng) for _ in range(k)]
        partial = ideal.like(ideal.generators + tuple(forms[:-1]))
        if is_isolated(partial):
            return 0
        sliced = ideal.like(ideal.generators + tuple(forms))
        if is_isolated(sliced):
            return _stabilized_length(sliced, cap)
        logger.warning("slicing with %d linear forms left a positive-dimensional germ; "
                       "resampling (attempt %d)", k, attempt + 1)
    raise GenericityError(
        f"Could not cut V(I) down to an isolated point with {k} generic linear forms "
        f"after {retries} retries; is V(I) of dimension {k} at the origin?"
    )


def local_dimension(ideal: Ideal, rng: RandomSource) -> int:
    """Dimension of V(I) at the origin: the least number of generic linear
    forms through the origin after which the origin is isolated."""
    if not origin_in_zero_set(ideal) or ideal.is_unit():
        raise ValidationError("The origin does not lie on V(I)")
    current = ideal
    for k in range(ideal.ring.ngens + 1):
        if is_isolated(current):
            return k
        current = current.like(current.generators + (random_linear_form(ideal.ring, rng),))
    raise GenericityError("Generic linear forms failed to isolate the origin")


def segre_numbers(J: Ideal, rng: RandomSource, retries: int = DEFAULT_RETRIES,
                  cap: int = STABILIZATION_CAP) -> SegreNumbers:
    """Segre numbers e_κ..e_n of J at the origin by the local SV recursion.

    out_0 is the zero ideal; at step k, total_k = out_{k-1} + (h_k) with
    h_k a scalar generic combination of the generators of J,
    out_k = total_k : J^∞ and e_k = mult(total_k, n-k) - mult(out_k, n-k).
    """
    if J.is_zero():
        raise ValidationError("Segre numbers need a nonzero ideal")
    if not origin_in_zero_set(J) or J.is_unit():
        raise ValidationError("The origin does not lie on V(J)")
    n = J.ring.ngens
    kappa = n - local_dimension(J, rng.spawn(0))
    stream = rng.spawn(1)
    e = [0] * (n + 1)
    out = J.like([])
    for k in range(1, n + 1):
        if out.is_unit() or not origin_in_zero_set(out):
            break
        h = J.ring.zero
        while not h:
            h = random_combination(J.generators, stream)
        total = out.like(out.generators + (h,))
        out = saturate(total, J)
        e[k] = (mult_at_origin(total, n - k, stream, retries, cap)
                - mult_at_origin(out, n - k, stream, retries, cap))
        logger.debug("local SV step %d: e_%d = %d", k, k, e[k])
        if e[k] < 0:
            raise GenericityError(
                f"Segre number e_{k} came out negative ({e[k]}); the combinations were not generic"
            )
    below = tuple(e[1:kappa])
    if any(below):
        raise GenericityError(
            f"Segre numbers below codimension {kappa} must vanish, got {list(below)}; "
            f"the combinations were not generic"
        )
    return SegreNumbers(kappa=kappa, e=tuple(e[kappa:]), seed=rng.seed, below_kappa=below)


def hs_multiplicity(J: Ideal, rng: RandomSource, retries: int = DEFAULT_RETRIES,
                    cap: int = STABILIZATION_CAP) -> int:
    """Hilbert-Samuel multiplicity of an m-primary J: its top Segre number."""
    numbers = segre_numbers(J, rng, retries, cap)
    n = J.ring.ngens
    if numbers.kappa < n:
        raise ValidationError(
            f"J is not m-primary: V(J) has codimension {numbers.kappa} < {n} at the origin"
        )
    return numbers.number(n)


def affine_chart(ideal: Ideal, point: Sequence[int]) -> AffineIdeal:
    """Dehomogenize a projective ideal at ``point`` and move it to the origin.

    With p_i the first nonzero coordinate, x_i is set to 1 and every other
    x_j to p_j / p_i + y_j, where y_j are the affine coordinates.
    """
    ring = ideal.ring
    if len(point) != ring.ngens:
        raise ValidationError(
            f"Chart point needs {ring.ngens} coordinates, got {len(point)}"
        )
    domain = ring.domain
    coords = [domain.convert(int(p)) for p in point]
    nonzero = [i for i, p in enumerate(coords) if p]
    if not nonzero:
        raise ValidationError("The chart point must have a nonzero coordinate")
    i = nonzero[0]
    names = [str(s) for j, s in enumerate(ring.symbols) if j != i]
    chart = make_ring(names, domain, ring.order)
    images = []
    gens = iter(chart.gens)
    for j in range(ring.ngens):
        if j == i:
            images.append(chart.one)
        else:
            images.append(next(gens) + chart.ground_new(domain.quo(coords[j], coords[i])))
    logger.debug("affine chart at %s drops %s", list(point), ring.symbols[i])
    return AffineIdeal(chart, [substitute(g, images, chart) for g in ideal.generators],
                       ideal.budget)


def is_invertible(matrix: Sequence[Sequence], domain) -> bool:
    rows = [[domain.convert(a) for a in row] for row in matrix]
    return bool(DomainMatrix(rows, (len(rows), len(rows)), domain).det())


def random_linear_change(ring: PolyRing, rng: RandomSource,
                         retries: int = DEFAULT_RETRIES) -> List[List]:
    """A random invertible square matrix over the ring's field."""
    n = ring.ngens
    for _ in range(retries + 1):
        matrix = [[rng.coefficient(ring.domain, nonzero=False) for _ in range(n)]
                  for _ in range(n)]
        if is_invertible(matrix, ring.domain):
            return matrix
    raise GenericityError("Could not draw an invertible matrix")


def linear_substitution(ideal: Ideal, matrix: Sequence[Sequence]) -> Ideal:
    """The ideal J ∘ A, with x_i replaced by Σ_j A[i][j] x_j."""
    ring = ideal.ring
    if len(matrix) != ring.ngens or any(len(row) != ring.ngens for row in matrix):
        raise ValidationError(f"Substitution matrix must be {ring.ngens}x{ring.ngens}")
    if not is_invertible(matrix, ring.domain):
        raise ValidationError("Substitution matrix is not invertible")
    images = [sum((x.mul_ground(ring.domain.convert(a)) for a, x in zip(row, ring.gens)),
                  ring.zero) for row in matrix]
    return ideal.like(substitute(g, images, ring) for g in ideal.generators)
