"""Groebner bases and the ideal toolbox built on them.

Buchberger's algorithm with normal pair selection and the Gebauer-Moeller
criteria, normal forms, colon ideals, saturation, intersection by
elimination, and Hilbert series of leading-term ideals.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.domains import ZZ
from sympy.polys.orderings import MonomialOrder, grevlex
from sympy.polys.rings import PolyElement, PolyRing, ring as poly_ring

from svsegre.models import (
    BudgetExceededError,
    HilbertData,
    NonHomogeneousError,
    RingMismatchError,
    ValidationError,
)
from svsegre.poly import BlockOrder, convert, is_homogeneous, ring_with_order

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Budget:
    """Limits that turn runaway Buchberger runs into BudgetExceededError."""
    max_pairs: int = 200000
    max_basis: int = 5000


DEFAULT_BUDGET = Budget()


def spoly(f: PolyElement, g: PolyElement) -> PolyElement:
    """Return the s-polynomial of monic polynomials f and g."""
    R = f.ring
    lcm = R.monomial_lcm(f.LM, g.LM)
    return f.mul_monom(R.monomial_div(lcm, f.LM)) - g.mul_monom(R.monomial_div(lcm, g.LM))


def _select(G: List[PolyElement], P: set) -> Tuple[int, int]:
    """Normal strategy: the pair with the smallest lcm of leading monomials."""
    R = G[0].ring

    def key(pair):
        i, j = pair
        return R.order(R.monomial_lcm(G[i].LM, G[j].LM)), i, j

    return min(P, key=key)


def _update(G: List[PolyElement], P: set, f: PolyElement) -> Tuple[List[PolyElement], set]:
    """Add f to the basis G, pruning pairs with the Gebauer-Moeller criteria."""
    R = f.ring
    lcm, mul, div = R.monomial_lcm, R.monomial_mul, R.monomial_div
    lmf = f.LM
    lmG = [g.LM for g in G]

    P = {p for p in P if (not div(lcm(lmG[p[0]], lmG[p[1]]), lmf)
                          or lcm(lmG[p[0]], lmG[p[1]]) == lcm(lmG[p[0]], lmf)
                          or lcm(lmG[p[0]], lmG[p[1]]) == lcm(lmG[p[1]], lmf))}
    lcm_dict: Dict[tuple, List[int]] = {}
    for i in range(len(G)):
        lcm_dict.setdefault(lcm(lmG[i], lmf), []).append(i)
    minimalized_lcms = []
    for L in sorted(lcm_dict, key=R.order):
        if all(not div(L, L_) for L_ in minimalized_lcms):
            minimalized_lcms.append(L)
    new_pairs = set()
    for L in minimalized_lcms:
        # product criterion: coprime leading monomials reduce to zero
        if not any(lcm(lmG[i], lmf) == mul(lmG[i], lmf) for i in lcm_dict[L]):
            new_pairs.add((min(lcm_dict[L]), len(G)))
    return G + [f], P | new_pairs


def _minimalize(G: List[PolyElement]) -> List[PolyElement]:
    R = G[0].ring
    Gmin: List[PolyElement] = []
    for f in sorted(G, key=lambda h: R.order(h.LM)):
        if all(not R.monomial_div(f.LM, g.LM) for g in Gmin):
            Gmin.append(f)
    return Gmin


def _interreduce(G: List[PolyElement]) -> List[PolyElement]:
    reduced = [G[i].rem(G[:i] + G[i + 1:]).monic() for i in range(len(G))]
    R = G[0].ring
    return sorted(reduced, key=lambda h: R.order(h.LM), reverse=True)


def buchberger(F: Sequence[PolyElement], budget: Budget = DEFAULT_BUDGET) -> List[PolyElement]:
    """Reduced Groebner basis of F with respect to the order of F's ring."""
    F = [f for f in F if f]
    if not F:
        return []
    R = F[0].ring
    G: List[PolyElement] = []
    P: set = set()
    for f in F:
        if f.LM == R.zero_monom:
            return [R.one]
        G, P = _update(G, P, f.monic())
    pairs = 0
    while P:
        pair = _select(G, P)
        P.remove(pair)
        pairs += 1
        if pairs > budget.max_pairs:
            raise BudgetExceededError(
                f"Groebner basis computation exceeded {budget.max_pairs} pairs "
                f"(basis size {len(G)}); raise --budget or simplify the input"
            )
        r = spoly(G[pair[0]], G[pair[1]]).rem(G)
        if not r:
            continue
        if r.LM == R.zero_monom:
            logger.debug("unit ideal detected after %d pairs", pairs)
            return [R.one]
        G, P = _update(G, P, r.monic())
        if len(G) > budget.max_basis:
            raise BudgetExceededError(
                f"Groebner basis grew past {budget.max_basis} elements"
            )
    basis = _interreduce(_minimalize(G))
    logger.debug("groebner basis: %d elements from %d generators, %d pairs",
                 len(basis), len(F), pairs)
    return basis


class Ideal:
    """An ideal of a polynomial ring given by generators.

    Reduced Groebner bases are computed lazily and cached per monomial order.
    The cache makes an Ideal single-owner: complete the basis before sharing
    it between threads.
    """

    def __init__(self, ring: PolyRing, generators: Iterable[PolyElement] = (),
                 budget: Optional[Budget] = None):
        self.ring = ring
        self.budget = budget or DEFAULT_BUDGET
        gens = []
        for g in generators:
            g = convert(g, ring)
            if g:
                gens.append(g)
        self.generators: Tuple[PolyElement, ...] = tuple(gens)
        self._bases: Dict[MonomialOrder, Tuple[PolyElement, ...]] = {}

    def __repr__(self):
        gens = ', '.join(str(g) for g in self.generators)
        return f"Ideal({gens})"

    def like(self, generators: Iterable[PolyElement]) -> 'Ideal':
        """A new ideal in the same ring with the same budget."""
        return type(self)(self.ring, generators, self.budget)

    def _check_ring(self, other: 'Ideal'):
        if self.ring.symbols != other.ring.symbols or self.ring.domain != other.ring.domain:
            raise RingMismatchError(f"Ring mismatch: {self.ring} vs {other.ring}")

    def groebner_basis(self, order: Optional[MonomialOrder] = None) -> Tuple[PolyElement, ...]:
        """Reduced Groebner basis, as polynomials of a ring carrying ``order``."""
        order = order if order is not None else self.ring.order
        if order not in self._bases:
            R = ring_with_order(self.ring, order)
            gens = [R.from_dict(dict(g)) for g in self.generators]
            self._bases[order] = tuple(buchberger(gens, self.budget))
        return self._bases[order]

    def normal_form(self, f: PolyElement, order: Optional[MonomialOrder] = None) -> PolyElement:
        basis = self.groebner_basis(order)
        if not basis:
            return convert(f, self.ring)
        R = basis[0].ring
        remainder = R.from_dict(dict(convert(f, self.ring))).rem(list(basis))
        return self.ring.from_dict(dict(remainder))

    def contains(self, f: PolyElement) -> bool:
        return not self.normal_form(f)

    def issubset(self, other: 'Ideal') -> bool:
        """True iff every generator of self lies in other."""
        self._check_ring(other)
        return all(other.contains(g) for g in self.generators)

    def equals(self, other: 'Ideal') -> bool:
        return self.issubset(other) and other.issubset(self)

    def is_unit(self) -> bool:
        basis = self.groebner_basis()
        return len(basis) == 1 and basis[0].LM == basis[0].ring.zero_monom

    def is_zero(self) -> bool:
        return not self.generators

    def is_homogeneous(self) -> bool:
        return all(is_homogeneous(g)[0] for g in self.generators)

    def __add__(self, other: 'Ideal') -> 'Ideal':
        self._check_ring(other)
        return self.like(self.generators + tuple(convert(g, self.ring) for g in other.generators))

    def hilbert(self) -> HilbertData:
        return hilbert(self)


def groebner_basis(ideal: Ideal, order: Optional[MonomialOrder] = None) -> Tuple[PolyElement, ...]:
    return ideal.groebner_basis(order)


def normal_form(f: PolyElement, ideal: Ideal, order: Optional[MonomialOrder] = None) -> PolyElement:
    return ideal.normal_form(f, order)


def unit_ideal(ring: PolyRing, budget: Optional[Budget] = None) -> Ideal:
    return Ideal(ring, [ring.one], budget)


def eliminate(ideal: Ideal, count: int) -> List[PolyElement]:
    """Basis elements free of the first ``count`` variables, in the ideal's ring."""
    basis = ideal.groebner_basis(BlockOrder(count))
    return [ideal.ring.from_dict(dict(g)) for g in basis
            if all(not any(m[:count]) for m in g.itermonoms())]


def _elimination_variable(ring: PolyRing) -> str:
    names = {str(s) for s in ring.symbols}
    name = '_t'
    while name in names:
        name += '_'
    return name


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J: eliminate t from t·I + (1 - t)·J."""
    I._check_ring(J)
    if I.is_zero() or J.is_zero():
        return I.like([])
    R = I.ring
    big = PolyRing((_elimination_variable(R),) + tuple(str(s) for s in R.symbols),
                   R.domain, BlockOrder(1))
    t = big.gens[0]

    def lift(f):
        return big.from_dict({(0,) + monom: c for monom, c in f.iterterms()})

    gens = [t * lift(f) for f in I.generators]
    gens += [(big.one - t) * lift(g) for g in J.generators]
    elimination = Ideal(big, gens, I.budget)
    kept = eliminate(elimination, 1)
    return I.like(R.from_dict({monom[1:]: c for monom, c in g.iterterms()}) for g in kept)


def quotient_by_element(I: Ideal, g: PolyElement) -> Ideal:
    """I : (g), as (I ∩ (g)) / g."""
    g = convert(g, I.ring)
    if not g:
        return unit_ideal(I.ring, I.budget)
    meet = intersect(I, I.like([g]))
    return I.like(h.exquo(g) for h in meet.generators)


def colon(I: Ideal, J: Ideal) -> Ideal:
    """I : J, the intersection over generators g of J of I : (g)."""
    I._check_ring(J)
    if J.is_zero():
        return unit_ideal(I.ring, I.budget)
    result = None
    for g in J.generators:
        part = quotient_by_element(I, g)
        result = part if result is None else intersect(result, part)
    return result


def saturate(I: Ideal, J: Ideal) -> Ideal:
    """I : J^∞, iterating the colon until two iterates coincide."""
    current = I
    rounds = 0
    while True:
        rounds += 1
        following = colon(current, J)
        # current ⊆ following always holds, so one inclusion decides
        if following.issubset(current):
            logger.debug("saturation stabilized after %d colon rounds", rounds)
            return current
        current = following


_T, _t = poly_ring('t', ZZ)


def _minimal_monomials(monomials: Iterable[tuple]) -> FrozenSet[tuple]:
    ordered = sorted(set(monomials), key=sum)
    kept: List[tuple] = []
    for m in ordered:
        if not any(all(a <= b for a, b in zip(k, m)) for k in kept):
            kept.append(m)
    return frozenset(kept)


@lru_cache(maxsize=8192)
def _hilbert_numerator(generators: FrozenSet[tuple], nvars: int) -> PolyElement:
    """N(t) with HS(R/M) = N(t) / (1 - t)^nvars for the monomial ideal M."""
    if not generators:
        return _T.one
    if any(sum(m) == 0 for m in generators):
        return _T.zero
    counts = [sum(1 for m in generators if m[i]) for i in range(nvars)]
    shared = [i for i in range(nvars) if counts[i] > 1]
    if not shared:
        result = _T.one
        for m in generators:
            result *= _T.one - _t ** sum(m)
        return result
    pivot = max(shared, key=lambda i: (counts[i], -i))
    unit = tuple(1 if i == pivot else 0 for i in range(nvars))
    plus = _minimal_monomials([m for m in generators if not m[pivot]] + [unit])
    quotient = _minimal_monomials(
        tuple(e - 1 if i == pivot and e else e for i, e in enumerate(m)) for m in generators
    )
    return _hilbert_numerator(plus, nvars) + _t * _hilbert_numerator(quotient, nvars)


def leading_monomials(ideal: Ideal) -> FrozenSet[tuple]:
    return _minimal_monomials(g.LM for g in ideal.groebner_basis(grevlex))


def hilbert_series_data(ideal: Ideal) -> Tuple[int, int]:
    """(Krull dimension, multiplicity) of R/LT(I), LT taken in grevlex.

    The multiplicity is Q(1) for HS = Q(t) / (1 - t)^D with Q(1) != 0; for
    D = 0 it is the vector-space dimension of R/I.
    """
    numerator = _hilbert_numerator(leading_monomials(ideal), ideal.ring.ngens)
    if not numerator:
        return -1, 0
    dimension = ideal.ring.ngens
    while numerator(1) == 0:
        numerator = numerator.exquo(_T.one - _t)
        dimension -= 1
    return dimension, int(numerator(1))


def krull_dimension(ideal: Ideal) -> int:
    return hilbert_series_data(ideal)[0]


def vector_space_dimension(ideal: Ideal) -> int:
    """dim_k R/I for a zero-dimensional ideal (0 for the unit ideal)."""
    dimension, multiplicity = hilbert_series_data(ideal)
    if dimension > 0:
        raise ValidationError(
            f"{ideal} is not zero-dimensional (Krull dimension {dimension})"
        )
    return multiplicity


def hilbert(ideal: Ideal) -> HilbertData:
    """Projective dimension and degree of the scheme of a homogeneous ideal."""
    if not ideal.is_homogeneous():
        raise NonHomogeneousError(f"Hilbert data needs a homogeneous ideal, got {ideal}")
    dimension, multiplicity = hilbert_series_data(ideal)
    if dimension <= 0:
        return HilbertData(dim=-1, degree=0)
    return HilbertData(dim=dimension - 1, degree=multiplicity)
