"""
The index ledger: sum of finite umbilic indices against 1 - R/2.
"""
import logging
from typing import Dict, Optional, Sequence

from curvature.forms import principal_form
from polynomials.factors import real_linear_factors
from polynomials.models import Poly
from umbilic_atlas.statuses import Verdict
from umbilics.finite import search_finite_umbilics
from umbilics.infinity import coprime_on_factors, leading_forms, sphere_index_sum
from umbilics.models import FiniteSearch, InfinityUmbilic, PHLedger

logger = logging.getLogger('umbilics')


def ledger_hypotheses(f: Poly, search: FiniteSearch) -> Dict[str, bool]:
    """
    Hypotheses of the index formula: simple real factors of f_n, for n >= 3
    no real linear factor shared by f_n and f_(n-1), isolated umbilics.
    """
    n, fn, fn1 = leading_forms(f)
    factorization = real_linear_factors(fn)
    coprime = True
    if n >= 3:
        coprime = coprime_on_factors(fn, fn1, factorization.factors)
    return {
        'leading_square_free': factorization.all_simple,
        'coprime_leading_factors': coprime,
        'umbilics_isolated': not search.non_isolated,
    }


def assemble_ledger(f: Poly, search: FiniteSearch,
                    infinity: Optional[Sequence[InfinityUmbilic]] = None) -> PHLedger:
    n, fn, _ = leading_forms(f)
    R = real_linear_factors(fn).R
    hypotheses = ledger_hypotheses(f, search)
    sum_halves = sum(u.index_num_halves for u in search.umbilics)
    rhs_halves = 2 - R
    certified = all(u.certified for u in search.umbilics)

    if not all(hypotheses.values()):
        verdict = Verdict.HYPOTHESES_VIOLATED
    elif sum_halves == rhs_halves:
        verdict = Verdict.PASS
    else:
        verdict = Verdict.INCONCLUSIVE
        logger.warning(f"Index sum {sum_halves}/2 differs from 1 - R/2 = {rhs_halves}/2 in box {search.box}")

    equator = total = None
    if infinity is not None:
        sums = sphere_index_sum(sum_halves, infinity)
        equator, total = sums['equator_sum_halves'], sums['sphere_total_halves']
    logger.info(f"Ledger: n={n}, R={R}, sum={sum_halves}/2, rhs={rhs_halves}/2, verdict={verdict.value}")
    return PHLedger(n, R, list(search.umbilics), sum_halves, rhs_halves, hypotheses, verdict,
                    search.box, certified, equator, total)


def ph_check(f: Poly, box: Optional[Sequence[float]] = None, tol: Optional[float] = None,
             samples: Optional[int] = None, workers: Optional[int] = None,
             infinity: Optional[Sequence[InfinityUmbilic]] = None) -> PHLedger:
    """Find the finite umbilics of f and compare their index sum with 1 - R/2."""
    search = search_finite_umbilics(principal_form(f), box, tol, samples, workers)
    return assemble_ledger(f, search, infinity)
