"""Projective schemes as saturated homogeneous ideals, and sections of O(d)."""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement, PolyRing

from svsegre.groebner import Budget, Ideal, hilbert, saturate, unit_ideal
from svsegre.models import (
    GenericityError,
    HilbertData,
    NonHomogeneousError,
    ValidationError,
)
from svsegre.poly import (
    is_homogeneous,
    monomial,
    monomials_of_degree,
    random_combination,
    total_degree,
)
from svsegre.rng import RandomSource

logger = logging.getLogger(__name__)

DEFAULT_RETRIES = 5
DEFAULT_FAMILY_SLACK = 2


@dataclass
class ProjScheme:
    """Subscheme of P^n given by an ideal saturated by (x_0, ..., x_n).

    The empty scheme is the unit ideal with dimension -1 and degree 0.
    """
    n: int
    ideal: Ideal
    hilbert: HilbertData

    @property
    def ring(self) -> PolyRing:
        return self.ideal.ring

    @property
    def dim(self) -> int:
        return self.hilbert.dim

    @property
    def degree(self) -> int:
        return self.hilbert.degree

    @property
    def is_empty(self) -> bool:
        return self.hilbert.dim < 0

    def __repr__(self):
        return f"ProjScheme(P^{self.n}, dim={self.dim}, degree={self.degree})"


@dataclass(frozen=True)
class SectionFamily:
    """Forms of one degree d generating J up to saturation: sections of O(d)."""
    twist: int
    forms: Tuple[PolyElement, ...]
    source: Ideal

    def validate(self):
        if self.twist < 1:
            raise ValidationError(f"twist must be positive, got {self.twist}")
        if not self.forms:
            raise ValidationError("a section family needs at least one form")
        for i, form in enumerate(self.forms):
            homogeneous, degree = is_homogeneous(form)
            if not homogeneous or degree != self.twist:
                raise ValidationError(
                    f"form #{i + 1} is not homogeneous of degree {self.twist}: {form}"
                )

    @property
    def ideal(self) -> Ideal:
        return self.source.like(self.forms)

    def __len__(self):
        return len(self.forms)

    @property
    def rank(self) -> int:
        """Dimension of the span of the forms."""
        domain = self.forms[0].ring.domain
        monoms = sorted({m for f in self.forms for m in f.itermonoms()})
        rows = [[f.get(m, domain.zero) for m in monoms] for f in self.forms]
        return DomainMatrix(rows, (len(rows), len(monoms)), domain).rank()


def irrelevant_ideal(ring: PolyRing, budget: Optional[Budget] = None) -> Ideal:
    return Ideal(ring, ring.gens, budget)


def scheme_of(ideal: Ideal) -> ProjScheme:
    """Saturate a homogeneous ideal by the irrelevant ideal and wrap it."""
    if not ideal.is_homogeneous():
        raise NonHomogeneousError(f"Projective schemes need homogeneous ideals, got {ideal}")
    n = ideal.ring.ngens - 1
    saturated = saturate(ideal, irrelevant_ideal(ideal.ring, ideal.budget))
    if saturated.is_unit():
        return ProjScheme(n, unit_ideal(ideal.ring, ideal.budget), HilbertData(-1, 0))
    return ProjScheme(n, saturated, hilbert(saturated))


def make_scheme(gens: Sequence[PolyElement], n: int, ring: Optional[PolyRing] = None,
                budget: Optional[Budget] = None) -> ProjScheme:
    """Scheme of homogeneous generators in n + 1 variables."""
    if ring is None:
        if not gens:
            raise ValidationError("make_scheme needs a ring when there are no generators")
        ring = gens[0].ring
    if ring.ngens != n + 1:
        raise ValidationError(
            f"P^{n} needs {n + 1} variables, the ring has {ring.ngens}"
        )
    for i, g in enumerate(gens):
        if not is_homogeneous(g)[0]:
            raise NonHomogeneousError(f"generator #{i + 1} is not homogeneous: {g}")
    scheme = scheme_of(Ideal(ring, gens, budget))
    logger.debug("scheme in P^%d: dim %d, degree %d", n, scheme.dim, scheme.degree)
    return scheme


def whole_space(ring: PolyRing, budget: Optional[Budget] = None) -> ProjScheme:
    """P^n itself: the zero ideal."""
    n = ring.ngens - 1
    return ProjScheme(n, Ideal(ring, (), budget), HilbertData(n, 1))


def _degree_products(J: Ideal, d: int) -> list:
    ring = J.ring
    products = []
    for g in J.generators:
        for mu in monomials_of_degree(ring.ngens, d - total_degree(g)):
            products.append(g * monomial(ring, mu))
    return products


def equalize_degrees(J: Ideal, rng: RandomSource, twist: Optional[int] = None,
                     slack: int = DEFAULT_FAMILY_SLACK,
                     retries: int = DEFAULT_RETRIES) -> SectionFamily:
    """Random forms of one degree d whose scheme equals the scheme of J.

    The forms are random combinations of the products g·μ, μ a monomial of
    degree d - deg g, so they span a subspace of the degree-d piece of J.
    n + slack forms are drawn (slack >= 1, so at least n + 1); forms beyond
    the span of the products are dependent. Every family is checked by
    comparing saturations by the irrelevant ideal.
    """
    if J.is_zero():
        raise ValidationError("equalize_degrees needs a nonzero ideal")
    if slack < 1:
        raise ValidationError(f"slack must be at least 1, got {slack}")
    if not J.is_homogeneous():
        raise NonHomogeneousError(f"equalize_degrees needs a homogeneous ideal, got {J}")
    top = max(total_degree(g) for g in J.generators)
    d = top if twist is None else twist
    if d < top:
        raise ValidationError(
            f"twist {d} is below the largest generator degree {top}"
        )
    products = _degree_products(J, d)
    size = J.ring.ngens + slack - 1
    irrelevant = irrelevant_ideal(J.ring, J.budget)
    target = saturate(J, irrelevant)
    for attempt in range(retries + 1):
        forms = [random_combination(products, rng) for _ in range(size)]
        if all(forms):
            candidate = saturate(J.like(forms), irrelevant)
            if candidate.equals(target):
                family = SectionFamily(d, tuple(forms), J)
                logger.debug("equalized to %d forms of degree %d after %d retries",
                             size, d, attempt)
                return family
        logger.warning("degree equalization attempt %d changed the scheme; resampling",
                       attempt + 1)
    raise GenericityError(
        f"Could not equalize generators to degree {d} without changing the scheme "
        f"after {retries} retries"
    )


def generic_section(family: SectionFamily, rng: RandomSource) -> PolyElement:
    """h = Σ a_i f_i with random a_i, resampled until nonzero."""
    if not family.forms:
        raise ValidationError("generic_section needs a nonempty family")
    while True:
        h = random_combination(family.forms, rng)
        if h:
            return h


def contains(A: ProjScheme, B: ProjScheme) -> bool:
    """Ideal inclusion ideal(A) ⊆ ideal(B), i.e. B ⊆ A as schemes."""
    if A.n != B.n:
        raise ValidationError(f"Ambient mismatch: P^{A.n} vs P^{B.n}")
    return A.ideal.issubset(B.ideal)
