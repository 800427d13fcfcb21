"""The Stückrad-Vogel engine on projective schemes.

At step k a generic section h_k of L ⊗ J, L = O(d), cuts the cycle that
survived outside Z = V(J) so far; the part of the cut lying in Z is the SV
cycle v_k and the rest carries on. Only degrees are tracked: the degree of
v_k is the Bézout degree of the cut minus the degree of what stays outside.
"""

import logging
from typing import List, Optional

from svsegre.groebner import Ideal, hilbert, saturate
from svsegre.models import (
    GenericityAnomalyError,
    GenericityError,
    HilbertData,
    MassReport,
    MixedDimensionError,
    SVResult,
    ValidationError,
)
from svsegre.rng import RandomSource
from svsegre.scheme import (
    DEFAULT_FAMILY_SLACK,
    DEFAULT_RETRIES,
    ProjScheme,
    SectionFamily,
    equalize_degrees,
    generic_section,
    scheme_of,
    whole_space,
)

logger = logging.getLogger(__name__)

EQUALIZE_STREAM = 0


def _outside_data(ideal: Ideal) -> HilbertData:
    if ideal.is_unit():
        return HilbertData(-1, 0)
    return hilbert(ideal)


def sv_run(family: SectionFamily, mu: ProjScheme, rng: RandomSource,
           retries: int = DEFAULT_RETRIES) -> SVResult:
    """Run the SV algorithm of the sections ``family`` on the cycle ``mu``."""
    family.validate()
    if mu.is_empty:
        raise ValidationError("The input cycle is empty")
    J = family.source
    d = family.twist
    mu_dim = mu.dim
    v_degrees = [0] * (mu_dim + 1)
    trace = []
    resamples = 0

    def result(residual: int) -> SVResult:
        r = SVResult(
            n=mu.n, d=d, mu_dim=mu_dim, mu_degree=mu.degree,
            v_degrees=tuple(v_degrees), residual_degree=residual,
            out_trace=tuple(trace), seed=rng.seed, retries=resamples,
            sections=family.rank,
        )
        r.validate()
        return r

    if J.issubset(mu.ideal):
        # J vanishes identically on mu: v = v_0 = mu
        v_degrees[0] = mu.degree
        trace.append((-1, 0))
        return result(0)

    current = saturate(mu.ideal, J)
    data = _outside_data(current)
    if data.dim < 0:
        v_degrees[0] = mu.degree
        trace.append((-1, 0))
        return result(0)
    if data.dim != mu_dim:
        raise MixedDimensionError(
            f"The part of the input cycle outside Z has dimension {data.dim}, "
            f"but the cycle has dimension {mu_dim}; mixed bookkeeping is not supported"
        )
    v_degrees[0] = mu.degree - data.degree
    trace.append((data.dim, data.degree))
    outside_degree = data.degree

    for k in range(1, mu_dim + 1):
        if not outside_degree:
            break
        expected = mu_dim - k
        for attempt in range(retries + 1):
            h = generic_section(family, rng)
            total = scheme_of(current + current.like([h]))
            if total.dim == expected and total.degree == d * outside_degree:
                break
            resamples += 1
            logger.warning(
                "SV step %d: section is not generic (dim %d, degree %d; expected %d, %d)",
                k, total.dim, total.degree, expected, d * outside_degree,
            )
        else:
            raise GenericityError(
                f"SV step {k}: no proper intersection after {retries} retries"
            )
        current = saturate(total.ideal, J)
        data = _outside_data(current)
        if 0 <= data.dim < expected:
            logger.warning("SV step %d: only lower-dimensional pieces stay outside Z", k)
        kept = data.degree if data.dim == expected else 0
        v_degrees[k] = d * outside_degree - kept
        trace.append((data.dim, data.degree))
        logger.debug("SV step %d: v_%d = %d, outside degree %d", k, k, v_degrees[k], kept)
        outside_degree = kept

    residual = outside_degree if len(trace) == mu_dim + 1 else 0
    return result(residual)


def sv_mass_check(r: SVResult, mu_degree: Optional[int] = None) -> MassReport:
    """Compare deg_L(mu) with the L-degrees of the SV cycles plus the residual.

    A cycle of dimension j and ordinary degree e has L-degree d^j · e.
    """
    if mu_degree is None:
        mu_degree = r.mu_degree
    lhs = r.d ** r.mu_dim * mu_degree
    rhs = sum(r.d ** (r.mu_dim - k) * v for k, v in enumerate(r.v_degrees))
    rhs += r.residual_degree
    forced = 0 < r.sections <= r.mu_dim
    ok = lhs == rhs and (not forced or r.residual_degree == 0)
    return MassReport(lhs=lhs, rhs=rhs, ok=ok, residual_forced_zero=forced)


def sv_repeat(family: SectionFamily, mu: ProjScheme, trials: int, base_seed: int,
              retries: int = DEFAULT_RETRIES,
              rational_bound: Optional[int] = None) -> SVResult:
    """Run independent trials and return their common result."""
    if trials < 2:
        raise ValidationError(f"sv_repeat needs at least 2 trials, got {trials}")
    base = RandomSource(base_seed) if rational_bound is None \
        else RandomSource(base_seed, rational_bound)
    results: List[SVResult] = [
        sv_run(family, mu, base.spawn(EQUALIZE_STREAM + 1 + i), retries)
        for i in range(trials)
    ]
    reference = results[0]
    disagreeing = [i for i, r in enumerate(results) if not r.same_degrees(reference)]
    if disagreeing:
        summary = '; '.join(
            f"trial {i}: {list(r.v_degrees)} residual {r.residual_degree}"
            for i, r in enumerate(results)
        )
        raise GenericityAnomalyError(
            f"SV trials disagree ({summary}); the random choices were not generic "
            f"or the field characteristic interferes",
            [0] + disagreeing,
        )
    return reference


def sv_of_ideal(J: Ideal, seed: int = 1, mu: Optional[ProjScheme] = None,
                twist: Optional[int] = None, trials: int = 1,
                retries: int = DEFAULT_RETRIES, slack: int = DEFAULT_FAMILY_SLACK,
                rational_bound: Optional[int] = None) -> SVResult:
    """Equalize J to one degree and run SV on mu (default: all of P^n)."""
    base = RandomSource(seed) if rational_bound is None else RandomSource(seed, rational_bound)
    family = equalize_degrees(J, base.spawn(EQUALIZE_STREAM), twist=twist,
                              slack=slack, retries=retries)
    if mu is None:
        mu = whole_space(J.ring, J.budget)
    if trials > 1:
        return sv_repeat(family, mu, trials, seed, retries, rational_bound)
    return sv_run(family, mu, base.spawn(EQUALIZE_STREAM + 1), retries)
