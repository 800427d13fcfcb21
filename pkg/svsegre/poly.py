"""Exact multivariate polynomials over the rationals and prime fields.

Polynomials are ``sympy`` ``PolyElement`` objects: sparse maps from exponent
tuples to nonzero coefficients of an exact domain (``QQ`` or ``GF(p)``).
This module adds the ring construction, monomial orders and the handful of
operations the geometric layers need on top of them.
"""

import itertools
import operator
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy import isprime
from sympy.polys.domains import QQ, FiniteField
from sympy.polys.orderings import MonomialOrder, grevlex, lex
from sympy.polys.rings import PolyElement, PolyRing

from svsegre.models import RingMismatchError, ValidationError
from svsegre.rng import RandomSource

DEFAULT_PRIME = 2 ** 62 - 57


class BlockOrder(MonomialOrder):
    """Elimination order: the first ``block`` variables are eliminated.

    Monomials compare by graded reverse lex on the first block, ties broken
    by graded reverse lex on the remaining variables.
    """

    alias = 'block'
    is_global = True
    is_default = False

    def __init__(self, block: int):
        self.block = block

    def __call__(self, monomial):
        return (grevlex(monomial[:self.block]), grevlex(monomial[self.block:]))

    def __repr__(self):
        return f"BlockOrder({self.block})"

    def __str__(self):
        return f"block({self.block})"

    def __eq__(self, other):
        return isinstance(other, BlockOrder) and other.block == self.block

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(('block', self.block))


_ORDERS = {'grevlex': grevlex, 'lex': lex}


def monomial_order(kind: str = 'grevlex', block: int = 0) -> MonomialOrder:
    """Return the monomial order named ``kind`` (grevlex, lex or block)."""
    if kind == 'block':
        if block < 1:
            raise ValidationError("block order needs at least one eliminated variable")
        return BlockOrder(block)
    if kind not in _ORDERS:
        raise ValidationError(
            f"Unknown monomial order '{kind}'. Must be one of: grevlex, lex, block"
        )
    return _ORDERS[kind]


def prime_field(p: int = DEFAULT_PRIME):
    """Return GF(p) with residues represented in [0, p)."""
    if p < 2 or not isprime(p):
        raise ValidationError(f"Field modulus {p} is not a prime")
    return FiniteField(p, symmetric=False)


def field_from_spec(spec: Optional[str], default_prime: int = DEFAULT_PRIME):
    """Parse a field spec: ``q``, ``fp``, ``fp:<prime>`` or ``fp <prime>``."""
    if spec is None:
        return prime_field(default_prime)
    text = spec.strip().lower()
    if text in ('q', 'qq'):
        return QQ
    kind, _, modulus = text.replace(':', ' ').partition(' ')
    if kind != 'fp':
        raise ValidationError(f"Bad field spec '{spec}'. Use q, fp or fp:<prime>")
    modulus = modulus.strip()
    if not modulus:
        return prime_field(default_prime)
    try:
        p = int(modulus)
    except ValueError:
        raise ValidationError(f"Bad prime '{modulus}' in field spec '{spec}'")
    return prime_field(p)


def make_ring(names: Sequence[str], field=None, order='grevlex') -> PolyRing:
    """Build a polynomial ring over ``field`` (default GF(DEFAULT_PRIME))."""
    names = [name.strip() for name in names]
    if not names:
        raise ValidationError("A ring needs at least one variable")
    duplicates = sorted({name for name in names if names.count(name) > 1})
    if duplicates:
        raise ValidationError(f"Duplicate variable names: {', '.join(duplicates)}")
    if field is None:
        field = prime_field()
    if isinstance(order, str):
        order = monomial_order(order)
    return PolyRing(names, field, order)


def ring_with_order(ring: PolyRing, order: MonomialOrder) -> PolyRing:
    """Same variables and field, different monomial order."""
    if ring.order == order:
        return ring
    return PolyRing(ring.symbols, ring.domain, order)


def convert(f: PolyElement, ring: PolyRing) -> PolyElement:
    """Move ``f`` into ``ring``, which must share variables and field."""
    if f.ring == ring:
        return f
    if f.ring.symbols != ring.symbols or f.ring.domain != ring.domain:
        raise RingMismatchError(
            f"Cannot move a polynomial from {f.ring} into {ring}"
        )
    return ring.from_dict(dict(f))


def arith(p: PolyElement, q: PolyElement, op: str) -> PolyElement:
    """Exact add, sub or mul of two polynomials of the same ring."""
    if p.ring != q.ring:
        raise RingMismatchError(f"Ring mismatch: {p.ring} vs {q.ring}")
    ops = {'add': operator.add, 'sub': operator.sub, 'mul': operator.mul}
    if op not in ops:
        raise ValidationError(f"Unknown operation '{op}'. Must be one of: add, sub, mul")
    return ops[op](p, q)


def leading_term(p: PolyElement, order: Optional[MonomialOrder] = None) -> Tuple[tuple, object]:
    """Return the order-maximal monomial of ``p`` and its coefficient."""
    if not p:
        raise ValidationError("The zero polynomial has no leading term")
    key = order if order is not None else p.ring.order
    monom = max(p.itermonoms(), key=key)
    return monom, p[monom]


def is_homogeneous(p: PolyElement) -> Tuple[bool, Optional[int]]:
    """Return ``(True, d)`` if every term has total degree d.

    The zero polynomial is homogeneous of every degree; its degree is None.
    """
    degrees = {sum(monom) for monom in p.itermonoms()}
    if not degrees:
        return True, None
    if len(degrees) == 1:
        return True, degrees.pop()
    return False, None


def total_degree(p: PolyElement) -> int:
    """Total degree; -1 for the zero polynomial."""
    return max((sum(monom) for monom in p.itermonoms()), default=-1)


def constant_term(p: PolyElement):
    return p.get(p.ring.zero_monom, p.ring.domain.zero)


def monomials_of_degree(nvars: int, degree: int) -> List[tuple]:
    """All exponent vectors in ``nvars`` variables of the given total degree."""
    result = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for i in combo:
            exps[i] += 1
        result.append(tuple(exps))
    return sorted(result, reverse=True)


def monomial(ring: PolyRing, exponents: Iterable[int]) -> PolyElement:
    return ring.one.mul_monom(tuple(exponents))


def random_linear_form(ring: PolyRing, rng: RandomSource,
                       through_origin: bool = True) -> PolyElement:
    """Linear form with random coefficients; no constant term if ``through_origin``."""
    domain = ring.domain
    terms = {}
    for i in range(ring.ngens):
        exps = [0] * ring.ngens
        exps[i] = 1
        terms[tuple(exps)] = rng.coefficient(domain)
    if not through_origin:
        terms[ring.zero_monom] = rng.coefficient(domain)
    return ring.from_dict(terms)


def random_combination(forms: Sequence[PolyElement], rng: RandomSource) -> PolyElement:
    """Sum of the forms with random nonzero coefficients."""
    ring = forms[0].ring
    result = ring.zero
    for form in forms:
        result += form.mul_ground(rng.coefficient(ring.domain))
    return result


def substitute(f: PolyElement, images: Sequence[PolyElement],
               ring: Optional[PolyRing] = None) -> PolyElement:
    """Replace the i-th variable of ``f`` by ``images[i]`` simultaneously."""
    if len(images) != f.ring.ngens:
        raise ValidationError(
            f"Expected {f.ring.ngens} images for substitution, got {len(images)}"
        )
    target = ring if ring is not None else images[0].ring
    result = target.zero
    for monom, coeff in f.iterterms():
        term = target.one.mul_ground(coeff)
        for image, exp in zip(images, monom):
            if exp:
                term *= image ** exp
        result += term
    return result
