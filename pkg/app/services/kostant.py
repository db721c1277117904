import logging
from itertools import product
from typing import Iterator, List, Optional, Sequence

from sympy import isprime

from app.models.matrix import Matrix, Polynomial
from app.models.ring import InvolutiveRing, RingElement
from app.models.section import InvariantTuple, SectionResult
from app.schemas.section import ExistenceStatus, ExistenceVerdict, SectionReport, TheoremCase
from app.services.matrices import MatrixService
from app.utils.errors import (
    DimensionMismatchError,
    InvalidAlphaError,
    InvalidDescriptorError,
    NotInLieAlgebraError,
)

logger = logging.getLogger(__name__)


class KostantService:
    """Section of the characteristic-polynomial map on u_n, built over R."""

    @staticmethod
    def model_matrix(b: Sequence[RingElement], n: int) -> Matrix:
        """Companion-type matrix D^-1 X D.

        First row (-b_1, ..., -b_{n-1}, -2 b_n), ones on the subdiagonal, and
        -b_k at row n+1-k of the last column for 1 <= k <= n-1. At n = 1 the
        only entry is the (1, n) corner, so the matrix is (-2 b_1).
        """
        if len(b) != n:
            raise DimensionMismatchError(f"Expected {n} coefficients, got {len(b)}", n=n, length=len(b))
        ring = b[0].ring
        return KostantService._display(ring, n, b, ring.one(), [ring.one()] * n)

    @staticmethod
    def solve_b(a: InvariantTuple) -> List[RingElement]:
        """Recover (b_1, ..., b_n) from the characteristic polynomial.

        a_k depends only on b_1, ..., b_k and is linear in b_k with coefficient
        2, so forward substitution applies: with b_k = 0 and later entries zero,
        read the x^(n-k) coefficient c_k and set b_k = (a_k - c_k) / 2.

        Raises:
            NonInvertibleTwoError: 2 is not a unit in the ring
        """
        ring, n = a.ring, a.n
        half = ring.two_inverse()
        b = [ring.zero()] * n
        for k in range(1, n + 1):
            trial = MatrixService.char_poly(KostantService.model_matrix(b, n))
            c_k = trial.coefficient(n - k)
            b[k - 1] = (a[k] - c_k) * half
        logger.debug(f"Solved b = {b} for a = {a!r}")
        return b

    @staticmethod
    def diag_alpha(alpha: RingElement, n: int) -> Matrix:
        """D_{alpha,n} = diag(1, alpha, ..., alpha^(n-1))."""
        return Matrix.diagonal(alpha.ring, [alpha ** k for k in range(n)])

    @staticmethod
    def diag_alpha_inverse(alpha: RingElement, n: int) -> Matrix:
        """diag(1, alpha^-1, ..., alpha^-(n-1))."""
        return Matrix.diagonal(alpha.ring, [alpha ** (-k) for k in range(n)])

    @staticmethod
    def check_alpha(alpha: RingElement) -> None:
        if not alpha.is_unit():
            raise InvalidAlphaError(f"alpha = {alpha!r} is not a unit", alpha=alpha.to_dict())
        if not alpha.is_trace_zero():
            raise InvalidAlphaError(f"alpha + sigma(alpha) != 0 for alpha = {alpha!r}", alpha=alpha.to_dict())

    @staticmethod
    def case_table_entry(i: int, j: int, n: int, b: Sequence[RingElement], alpha: RingElement) -> RingElement:
        """X_{i,j} (1-based) read from the case table of the membership proof."""
        ring = alpha.ring
        if (i, j) == (1, n):
            return -2 * alpha ** (-(n - 1)) * b[n - 1]
        for k in range(1, n):
            if (i, j) == (1, k) or (i, j) == (n + 1 - k, n):
                return -(alpha ** (-(k - 1))) * b[k - 1]
            if (i, j) == (k + 1, k):
                return alpha
        return ring.zero()

    @staticmethod
    def build_x(a: InvariantTuple, alpha: Optional[RingElement] = None) -> SectionResult:
        """Build the section matrix X for a and verify it.

        Args:
            a: Invariant tuple (a_1, ..., a_n)
            alpha: Trace-zero unit; the ring's canonical choice if omitted

        Returns:
            SectionResult: X, b, alpha and the report of every identity check

        Raises:
            InvalidAlphaError: alpha is not a trace-zero unit
            NonInvertibleTwoError: 2 is not a unit in the ring
        """
        ring, n = a.ring, a.n
        alpha = ring.choose_alpha() if alpha is None else alpha
        KostantService.check_alpha(alpha)
        b = KostantService.solve_b(a)

        powers = [alpha ** (-k) for k in range(n)]
        x = KostantService._display(ring, n, b, alpha, powers)
        by_case = Matrix.build(ring, n, lambda i, j: KostantService.case_table_entry(i + 1, j + 1, n, b, alpha))

        membership = MatrixService.in_unitary_lie_algebra(x)
        charpoly_match = MatrixService.char_poly(x) == Polynomial.from_invariants(ring, a.values)
        conjugated = KostantService.diag_alpha_inverse(alpha, n) * x * KostantService.diag_alpha(alpha, n)
        conjugacy_match = conjugated == KostantService.model_matrix(b, n)
        b_parity = all(c.has_parity(k) for k, c in enumerate(b, start=1))

        report = SectionReport(
            membership=membership.passed,
            charpoly_match=charpoly_match,
            conjugacy_match=conjugacy_match,
            b_parity=b_parity,
            placement_match=x == by_case,
            first_failure=membership.first_failure,
        )
        if not report.all_passed:
            logger.error(f"Section check failed for a = {a!r}: {report.model_dump()}")
        return SectionResult(a=a, b=tuple(b), alpha=alpha, X=x, report=report)

    @staticmethod
    def phi_n(gamma: Matrix) -> InvariantTuple:
        """gamma -> (a_1, ..., a_n) with chi_gamma = x^n + a_1 x^(n-1) + ... + a_n.

        Raises:
            NotInLieAlgebraError: gamma fails the membership test
            CodomainViolationError: the coefficients break sigma-parity
        """
        report = MatrixService.in_unitary_lie_algebra(gamma)
        if not report.passed:
            raise NotInLieAlgebraError(
                "Matrix is not in the unitary Lie algebra",
                report=report.model_dump(),
            )
        return InvariantTuple(gamma.ring, MatrixService.char_poly(gamma).invariants())

    @staticmethod
    def kostant_exists(n: int, residue_char: int) -> ExistenceVerdict:
        """Whether phi_n admits a section over the integers.

        Two sufficient conditions combine: the residue characteristic does not
        divide n (non-constructive), or it differs from 2 (the explicit matrix
        built here). Odd n always meets one of them.
        """
        if n < 1:
            raise DimensionMismatchError(f"n must be >= 1, got {n}", n=n)
        if not isprime(residue_char):
            raise InvalidDescriptorError(f"Residue characteristic {residue_char} is not prime", residue_char=residue_char)

        via_rank = n % residue_char != 0
        via_explicit = residue_char != 2
        return ExistenceVerdict(
            n=n,
            residue_char=residue_char,
            status=ExistenceStatus.YES_OVER_O if (via_rank or via_explicit) else ExistenceStatus.NO_GUARANTEE,
            theorem_case=TheoremCase.ODD_N if n % 2 == 1 else TheoremCase.EVEN_N,
            constructive_here=via_explicit,
            via_rank_condition=via_rank,
            via_explicit_section=via_explicit,
        )

    @staticmethod
    def enumerate_invariant_tuples(ring: InvolutiveRing, n: int) -> Iterator[InvariantTuple]:
        """Every invariant tuple over a finite backend."""
        fixed = [x for x in ring.elements() if x.is_fixed()]
        trace_zero = [x for x in ring.elements() if x.is_trace_zero()]
        choices = [trace_zero if i % 2 else fixed for i in range(1, n + 1)]
        for values in product(*choices):
            yield InvariantTuple(ring, values)

    @staticmethod
    def random_invariant_tuple(ring: InvolutiveRing, n: int, rng) -> InvariantTuple:
        return InvariantTuple(ring, [ring.random_parity(rng, i) for i in range(1, n + 1)])

    @staticmethod
    def _display(
        ring: InvolutiveRing,
        n: int,
        b: Sequence[RingElement],
        subdiagonal: RingElement,
        powers: Sequence[RingElement],
    ) -> Matrix:
        # powers[k] = alpha^-k; the model matrix is the case alpha = 1
        rows = [[ring.zero()] * n for _ in range(n)]
        for k in range(1, n):
            entry = -(powers[k - 1] * b[k - 1])
            rows[0][k - 1] = entry
            rows[n - k][n - 1] = entry
            rows[k][k - 1] = subdiagonal
        rows[0][n - 1] = -2 * powers[n - 1] * b[n - 1]
        return Matrix(ring, rows)
