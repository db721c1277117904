import logging
import time
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np

from app.models.matrix import Matrix, unit_vector
from app.models.ring import InvolutiveRing, RingElement, make_ring
from app.models.section import InvariantTuple
from app.schemas.harness import CampaignReport, CampaignTag, SampleConfig
from app.services.kostant import KostantService
from app.services.logger import Logger
from app.services.matrices import MatrixService
from app.services.oracle import MAX_ORACLE_N, OracleService
from app.services.sampler import SamplerService, substream_rng, substream_sizes
from app.utils.config import Config
from app.utils.errors import CostBoundExceededError, DimensionMismatchError, UsageError

logger = logging.getLogger(__name__)

# Largest n for which sections also get the Krylov regularity check.
KRYLOV_MAX_N = 6

Outcome = Tuple[bool, Dict[str, Any]]
Check = Callable[[InvolutiveRing, int, np.random.Generator], Outcome]


@lru_cache(maxsize=None)
def _oracle(n: int):
    return OracleService.symbolic_charpoly_oracle(n)


def _random_matrix(ring: InvolutiveRing, n: int, rng: np.random.Generator) -> Matrix:
    return Matrix.build(ring, n, lambda i, j: ring.random_element(rng))


def _random_fixed_unit(ring: InvolutiveRing, rng: np.random.Generator) -> RingElement:
    while True:
        u = ring.random_fixed(rng)
        if u.is_unit():
            return u


def _check_membership(ring, n, rng) -> Outcome:
    gamma = SamplerService.sample_u_n(ring, n, rng)
    report = MatrixService.in_unitary_lie_algebra(gamma)
    return report.passed, {"matrix": gamma.to_dict(), "report": report.model_dump()}


def _check_lie_closure(ring, n, rng) -> Outcome:
    first = SamplerService.sample_u_n(ring, n, rng)
    second = SamplerService.sample_u_n(ring, n, rng)
    scalar = ring.random_fixed(rng)
    derived = {
        "sum": first + second,
        "scaled": first.scale(scalar),
        "bracket": MatrixService.bracket(first, second),
    }
    failed = [name for name, m in derived.items() if not MatrixService.in_unitary_lie_algebra(m).passed]
    return not failed, {
        "first": first.to_dict(),
        "second": second.to_dict(),
        "scalar": scalar.to_dict(),
        "failed": failed,
    }


def _check_section(ring, n, rng) -> Outcome:
    a = KostantService.random_invariant_tuple(ring, n, rng)
    result = KostantService.build_x(a)
    other_alpha = ring.choose_alpha() * _random_fixed_unit(ring, rng)
    other = KostantService.build_x(a, other_alpha)
    same_invariants = MatrixService.char_poly(result.X) == MatrixService.char_poly(other.X)
    regular = n > KRYLOV_MAX_N or MatrixService.krylov_unit(result.X, unit_vector(ring, n, 0))
    ok = result.verified and other.verified and same_invariants and regular
    return ok, {
        "section": result.to_dict(),
        "other_alpha": other_alpha.to_dict(),
        "alpha_independent": same_invariants,
        "krylov_unit": regular,
    }


def _check_round_trip(ring, n, rng) -> Outcome:
    a = KostantService.random_invariant_tuple(ring, n, rng)
    result = KostantService.build_x(a)
    recovered = KostantService.phi_n(result.X)
    return result.verified and recovered == a, {"section": result.to_dict(), "recovered": recovered.to_dict()}


def _check_phi_round_trip(ring, n, rng) -> Outcome:
    gamma = SamplerService.sample_u_n(ring, n, rng)
    a = KostantService.phi_n(gamma)
    result = KostantService.build_x(a)
    ok = result.verified and MatrixService.char_poly(result.X) == MatrixService.char_poly(gamma)
    return ok, {"gamma": gamma.to_dict(), "a": a.to_dict(), "section": result.to_dict()}


def _untwisted_rejected(a: InvariantTuple) -> Outcome:
    b = KostantService.solve_b(a)
    untwisted = KostantService.model_matrix(b, a.n)
    report = MatrixService.in_unitary_lie_algebra(untwisted)
    return not report.passed, {"a": a.to_dict(), "model_matrix": untwisted.to_dict(), "report": report.model_dump()}


def _check_negative_control(ring, n, rng) -> Outcome:
    return _untwisted_rejected(KostantService.random_invariant_tuple(ring, n, rng))


def _check_charpoly(ring, n, rng) -> Outcome:
    a = _random_matrix(ring, n, rng)
    fast = MatrixService.char_poly(a)
    slow = OracleService.cofactor_charpoly(a)
    return fast == slow, {"matrix": a.to_dict(), "berkowitz": fast.to_dict(), "cofactor": slow.to_dict()}


def _check_cayley_hamilton(ring, n, rng) -> Outcome:
    a = _random_matrix(ring, n, rng)
    value = MatrixService.char_poly(a).evaluate_at(a)
    return value.is_zero(), {"matrix": a.to_dict(), "chi_of_matrix": value.to_dict()}


def _check_oracle(ring, n, rng) -> Outcome:
    oracle = _oracle(n)
    free_b = [ring.random_element(rng) for _ in range(n)]
    numeric = MatrixService.char_poly(KostantService.model_matrix(free_b, n)).invariants()
    symbolic = tuple(OracleService.evaluate(oracle[k], free_b, ring) for k in range(1, n + 1))

    parity_b = [ring.random_parity(rng, k) for k in range(1, n + 1)]
    a = InvariantTuple(ring, [OracleService.evaluate(oracle[k], parity_b, ring) for k in range(1, n + 1)])
    solved = KostantService.solve_b(a)
    ok = numeric == symbolic and solved == parity_b
    return ok, {
        "b": [c.to_dict() for c in free_b],
        "parity_b": [c.to_dict() for c in parity_b],
        "solved_b": [c.to_dict() for c in solved],
    }


CHECKS: Dict[CampaignTag, Check] = {
    CampaignTag.MEMBERSHIP: _check_membership,
    CampaignTag.LIE_CLOSURE: _check_lie_closure,
    CampaignTag.SECTION: _check_section,
    CampaignTag.ROUND_TRIP: _check_round_trip,
    CampaignTag.PHI_ROUND_TRIP: _check_phi_round_trip,
    CampaignTag.NEGATIVE_CONTROL: _check_negative_control,
    CampaignTag.CHARPOLY: _check_charpoly,
    CampaignTag.CAYLEY_HAMILTON: _check_cayley_hamilton,
    CampaignTag.ORACLE: _check_oracle,
}


def _exhaustive_outcomes(tag: CampaignTag, ring: InvolutiveRing, n: int) -> Iterable[Outcome]:
    if tag == CampaignTag.NEGATIVE_CONTROL:
        return (_untwisted_rejected(a) for a in KostantService.enumerate_invariant_tuples(ring, n))
    if tag == CampaignTag.MEMBERSHIP:
        return (
            (MatrixService.in_unitary_lie_algebra(m).passed, {"matrix": m.to_dict()})
            for m in SamplerService.sampler_support(ring, n)
        )
    raise UsageError(f"Campaign {tag.value} has no exhaustive mode", campaign=tag.value)


def _tally(outcomes: Iterable[Outcome]) -> Tuple[int, int, Optional[Dict[str, Any]]]:
    passes = failures = 0
    first = None
    for ok, evidence in outcomes:
        if ok:
            passes += 1
        else:
            failures += 1
            if first is None:
                first = evidence
    return passes, failures, first


class CampaignService:
    """Property campaigns over seed-derived sample streams."""

    @staticmethod
    def run_campaign(config: SampleConfig, workers: Optional[int] = None) -> CampaignReport:
        """Run one campaign.

        The stream is cut into fixed-size substreams, each with its own
        SeedSequence child; workers take whole substreams and results are
        merged by substream index, so the report does not depend on workers.

        Args:
            config: Descriptor, n, count, seed, campaign tag
            workers: Thread count (Config.WORKERS if omitted)

        Returns:
            CampaignReport: pass and failure counts with the first counterexample
        """
        tag, n = config.campaign, config.n
        if tag == CampaignTag.NEGATIVE_CONTROL and n < 2:
            raise DimensionMismatchError("The untwisted control needs n >= 2: at n = 1 it is a member", n=n)
        if tag in (CampaignTag.CHARPOLY, CampaignTag.ORACLE) and n > MAX_ORACLE_N:
            raise CostBoundExceededError(f"Campaign {tag.value} is limited to n <= {MAX_ORACLE_N}", n=n)

        ring = make_ring(config.descriptor)
        if tag == CampaignTag.ORACLE:
            _oracle(n)
        start = time.perf_counter()

        if config.exhaustive:
            passes, failures, first = _tally(_exhaustive_outcomes(tag, ring, n))
        else:
            check = CHECKS[tag]

            def run_substream(job: Tuple[int, int]):
                index, size = job
                rng = substream_rng(config.seed, index)
                return _tally(check(ring, n, rng) for _ in range(size))

            jobs = list(enumerate(substream_sizes(config.count)))
            with ThreadPoolExecutor(max_workers=workers or Config.WORKERS) as pool:
                partials: List = list(pool.map(run_substream, jobs))

            passes = sum(p for p, _, _ in partials)
            failures = sum(f for _, f, _ in partials)
            first = next((c for _, _, c in partials if c is not None), None)

        elapsed_ms = round((time.perf_counter() - start) * 1000, 3)
        logger.info(f"Campaign {tag.value}: {passes} passed, {failures} failed in {elapsed_ms} ms")
        if first is not None:
            Logger().log_campaign_failure(tag.value, first, function_name="run_campaign")

        return CampaignReport(
            campaign=tag,
            config=config,
            passes=passes,
            failures=failures,
            first_counterexample=first,
            elapsed_ms=elapsed_ms,
        )
