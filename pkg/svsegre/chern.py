"""Cohomology of P^n: Chern and Segre classes of split bundles, the
transforms between SV degrees and Segre degrees, and Gysin images of
complete intersections.

A class is its coefficient vector c_0..c_n over QQ, standing for
Σ c_k H^k with H^{n+1} = 0. Products, inverses and powers are truncated
power series in QQ[H] computed with ``sympy.polys.ring_series`` at
precision n + 1.
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.ring_series import rs_mul, rs_pow, rs_series_inversion
from sympy.polys.rings import PolyElement, ring

from svsegre.models import SVResult, ValidationError

SERIES_RING, H = ring('H', QQ)


def rational(value):
    """Coerce an int, Fraction or QQ element into QQ."""
    try:
        return QQ(int(value.numerator), int(value.denominator))
    except AttributeError:
        raise ValidationError(f"Expected a rational number, got {value!r}")


@dataclass(frozen=True)
class CohomClass:
    """Element of the truncated ring QQ[H]/(H^{n+1})."""
    n: int
    coeffs: Tuple

    def __post_init__(self):
        if self.n < 0:
            raise ValidationError(f"ambient dimension must be non-negative, got {self.n}")
        coeffs = tuple(rational(c) for c in self.coeffs)
        if len(coeffs) != self.n + 1:
            raise ValidationError(
                f"a class on P^{self.n} has {self.n + 1} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, 'coeffs', coeffs)

    @classmethod
    def of(cls, n: int, coeffs: Iterable) -> 'CohomClass':
        """Build from any coefficient list, padding with zeros and truncating."""
        values = list(coeffs)[:n + 1]
        return cls(n, tuple(values) + (0,) * (n + 1 - len(values)))

    @classmethod
    def from_series(cls, n: int, series: PolyElement) -> 'CohomClass':
        """Read a QQ[H] element back, dropping H^{n+1} and above."""
        return cls(n, tuple(series.get((k,), QQ.zero) for k in range(n + 1)))

    @classmethod
    def zero(cls, n: int) -> 'CohomClass':
        return cls.of(n, [])

    @classmethod
    def one(cls, n: int) -> 'CohomClass':
        return cls.of(n, [1])

    @classmethod
    def hyperplane(cls, n: int, power: int = 1, scale=1) -> 'CohomClass':
        """scale · H^power (zero when power > n)."""
        if power < 0:
            raise ValidationError(f"H^{power} is not a class")
        return cls.of(n, [0] * power + [scale])

    @property
    def series(self) -> PolyElement:
        return SERIES_RING.from_dict({(k,): c for k, c in enumerate(self.coeffs) if c})

    @property
    def precision(self) -> int:
        return self.n + 1

    def _check(self, other: 'CohomClass'):
        if self.n != other.n:
            raise ValidationError(f"Ambient mismatch: P^{self.n} vs P^{other.n}")

    def __add__(self, other: 'CohomClass') -> 'CohomClass':
        self._check(other)
        return CohomClass(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> 'CohomClass':
        return CohomClass(self.n, tuple(-a for a in self.coeffs))

    def __sub__(self, other: 'CohomClass') -> 'CohomClass':
        return self + (-other)

    def __mul__(self, other) -> 'CohomClass':
        if not isinstance(other, CohomClass):
            scalar = rational(other)
            return CohomClass(self.n, tuple(a * scalar for a in self.coeffs))
        self._check(other)
        return CohomClass.from_series(self.n, rs_mul(self.series, other.series, H, self.precision))

    def __rmul__(self, scalar) -> 'CohomClass':
        return self * scalar

    def inverse(self) -> 'CohomClass':
        """Multiplicative inverse as a truncated power series; needs c_0 != 0."""
        if not self.coeffs[0]:
            raise ValidationError("Only classes with nonzero constant term are invertible")
        return CohomClass.from_series(self.n, rs_series_inversion(self.series, H, self.precision))

    def __pow__(self, exponent: int) -> 'CohomClass':
        if exponent == 0:
            return CohomClass.one(self.n)
        if exponent < 0 and not self.coeffs[0]:
            raise ValidationError("Only classes with nonzero constant term are invertible")
        if self.is_zero():
            return self
        return CohomClass.from_series(self.n, rs_pow(self.series, exponent, H, self.precision))

    def degree(self, k: int):
        """Coefficient of H^k; zero beyond the ambient dimension."""
        if k < 0:
            raise ValidationError(f"no degree {k} part")
        return self.coeffs[k] if k <= self.n else QQ.zero

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_list(self) -> list:
        return list(self.coeffs)

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            power = '' if k == 0 else ('H' if k == 1 else f'H^{k}')
            if not power:
                terms.append(str(c))
            elif c == 1:
                terms.append(power)
            elif c == -1:
                terms.append(f'-{power}')
            else:
                terms.append(f'{c}{power}')
        return ' + '.join(terms).replace('+ -', '- ') or '0'


@dataclass(frozen=True)
class SplitBundle:
    """The bundle O(d_1) ⊕ ... ⊕ O(d_r) on P^n."""
    twists: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.twists)

    def validate(self):
        if not self.twists:
            raise ValidationError("a split bundle needs at least one summand")


def _line(n: int, d) -> CohomClass:
    return CohomClass.of(n, [1, d])


def chern_total(bundle: SplitBundle, n: int) -> CohomClass:
    """c(⊕O(d_i)) = Π (1 + d_i H)."""
    bundle.validate()
    result = CohomClass.one(n)
    for d in bundle.twists:
        result = result * _line(n, d)
    return result


def segre_total(bundle: SplitBundle, n: int) -> CohomClass:
    """s(E) = 1 / c(E)."""
    return chern_total(bundle, n).inverse()


def _codim_offset(n: int, mu_dim: int) -> int:
    if not 0 <= mu_dim <= n:
        raise ValidationError(f"cycle dimension {mu_dim} is not between 0 and {n}")
    return n - mu_dim


def segre_from_sv_degrees(v_degrees: Sequence, d: int, n: int,
                          mu_dim: Optional[int] = None) -> CohomClass:
    """S = Σ_j (1 + dH)^{-j} · v_j H^{c+j}, c the codimension of the cycle.

    The coefficient of H^k only depends on the v_j with c + j <= k.
    """
    mu_dim = len(v_degrees) - 1 if mu_dim is None else mu_dim
    offset = _codim_offset(n, mu_dim)
    result = CohomClass.zero(n)
    line = _line(n, d)
    for j, v in enumerate(v_degrees):
        if v:
            result = result + line ** (-j) * CohomClass.hyperplane(n, offset + j, v)
    return result


def segre_from_sv(r: SVResult) -> CohomClass:
    return segre_from_sv_degrees(r.v_degrees, r.d, r.n, r.mu_dim)


def sv_from_segre(S: CohomClass, d: int, mu_dim: Optional[int] = None) -> Tuple:
    """V = Σ_j (1 - dH)^{-j} · S_{c+j} H^{c+j}, read back as a degree vector."""
    n = S.n
    mu_dim = n if mu_dim is None else mu_dim
    offset = _codim_offset(n, mu_dim)
    result = CohomClass.zero(n)
    line = _line(n, -d)
    for j in range(mu_dim + 1):
        s = S.degree(offset + j)
        if s:
            result = result + line ** (-j) * CohomClass.hyperplane(n, offset + j, s)
    return tuple(result.degree(offset + j) for j in range(mu_dim + 1))


def _check_twists(twists: Sequence[int], n: int) -> Tuple[int, ...]:
    twists = tuple(int(d) for d in twists)
    if not twists:
        raise ValidationError("a complete intersection needs at least one twist")
    if any(d < 1 for d in twists):
        raise ValidationError(f"twists of defining forms must be positive, got {list(twists)}")
    if len(twists) > n:
        raise ValidationError(
            f"codimension {len(twists)} complete intersection does not fit in P^{n}"
        )
    return twists


def segre_regular_embedding(twists: Sequence[int], n: int) -> CohomClass:
    """s(N) ∩ [Z] for Z cut out by forms of degrees d_1..d_κ, N = ⊕O(d_i)|_Z."""
    twists = _check_twists(twists, n)
    degree = 1
    for d in twists:
        degree *= d
    return segre_total(SplitBundle(twists), n) * CohomClass.hyperplane(n, len(twists), degree)


def gysin_map(gamma: CohomClass, twists: Sequence[int], n: int) -> CohomClass:
    """c(N) ∧ S(J, γ) for a complete intersection, i.e. i_* i^* γ."""
    if gamma.n != n:
        raise ValidationError(f"gamma lives on P^{gamma.n}, expected P^{n}")
    twists = _check_twists(twists, n)
    return chern_total(SplitBundle(twists), n) * segre_regular_embedding(twists, n) * gamma


def ci_product_check(twists: Sequence[int], extra: int, n: int) -> bool:
    """Adding one more generic hypersurface multiplies the Segre classes."""
    twists = tuple(twists)
    if len(twists) + 1 > n:
        raise ValidationError(
            f"codimension {len(twists) + 1} complete intersection does not fit in P^{n}"
        )
    joined = segre_regular_embedding(twists + (extra,), n)
    product = segre_regular_embedding(twists, n) * segre_regular_embedding((extra,), n)
    return joined == product


def gysin_from_sv(r: SVResult, kappa: int) -> CohomClass:
    """Codimension-kappa part of c(N) ∧ S computed from SV degrees.

    For κ sections of O(d) it equals Σ_{j<=κ} d^{κ-j} v_j H^κ.
    """
    offset = _codim_offset(r.n, r.mu_dim)
    if not 0 <= kappa <= r.mu_dim:
        raise ValidationError(f"kappa must lie in 0..{r.mu_dim}, got {kappa}")
    total = sum(r.d ** (kappa - j) * r.v_degrees[j] for j in range(kappa + 1))
    return CohomClass.hyperplane(r.n, offset + kappa, total)


def segre_degrees(S: CohomClass, kappa: int) -> List:
    """Coefficients of H^κ..H^n."""
    if not 0 <= kappa <= S.n:
        raise ValidationError(f"kappa must lie in 0..{S.n}, got {kappa}")
    return [S.degree(k) for k in range(kappa, S.n + 1)]
