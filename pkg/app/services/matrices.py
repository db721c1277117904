import logging
from typing import List, Sequence

from app.models.matrix import Matrix, Polynomial, dot
from app.models.ring import InvolutiveRing, RingElement
from app.schemas.matrix import EntryFailure, MembershipReport
from app.utils.errors import DimensionMismatchError

logger = logging.getLogger(__name__)


class MatrixService:
    """Matrix identities over involutive rings."""

    @staticmethod
    def gram_matrix(n: int, ring: InvolutiveRing) -> Matrix:
        """Anti-diagonal Gram matrix Phi_n of the hermitian form.

        Args:
            n: Dimension, n >= 1
            ring: Ring the entries live in

        Returns:
            Matrix: (Phi_n)_{i,j} = 1 iff i + j = n + 1 (1-based)
        """
        if n < 1:
            raise DimensionMismatchError(f"Gram matrix needs n >= 1, got {n}", n=n)
        one, zero = ring.one(), ring.zero()
        return Matrix.build(ring, n, lambda i, j: one if i + j == n - 1 else zero)

    @staticmethod
    def in_unitary_lie_algebra(a: Matrix) -> MembershipReport:
        """Check Phi A + sigma(A^t) Phi = 0.

        The left side is computed twice: as a matrix product, and entrywise as
        A_{n+1-i,j} + sigma(A_{n+1-j,i}). The report passes only if both paths
        agree and every entry is zero.

        Args:
            a: Square matrix to test

        Returns:
            MembershipReport: pass/fail with the first offending entry
        """
        n, ring = a.n, a.ring
        phi = MatrixService.gram_matrix(n, ring)
        by_product = phi * a + a.transpose().sigma_entrywise() * phi
        by_index = Matrix.build(ring, n, lambda i, j: a[n - 1 - i, j] + a[n - 1 - j, i].sigma())

        paths_agree = by_product == by_index
        if not paths_agree:
            logger.error(f"Membership paths disagree for {a!r}: {by_product!r} vs {by_index!r}")

        zero = ring.zero()
        for i in range(n):
            for j in range(n):
                value = by_product[i, j]
                if value != zero:
                    return MembershipReport(
                        passed=False,
                        paths_agree=paths_agree,
                        first_failure=EntryFailure(i=i + 1, j=j + 1, value=value.to_dict()),
                    )
        return MembershipReport(passed=paths_agree, paths_agree=paths_agree)

    @staticmethod
    def berkowitz_vector(a: Matrix) -> List[RingElement]:
        """Coefficients of det(xI - A), high to low, without division.

        Partition A = [[a, R], [C, A']]; the vector of A is the Toeplitz matrix
        built from 1, -a, -RC, -RA'C, ... applied to the vector of A'.
        """
        ring = a.ring
        rows = [list(row) for row in a.rows]
        return _berkowitz(ring, rows)

    @staticmethod
    def char_poly(a: Matrix) -> Polynomial:
        """det(xI - A) as a monic polynomial, valid over any commutative backend."""
        return Polynomial(a.ring, list(reversed(MatrixService.berkowitz_vector(a))))

    @staticmethod
    def determinant(a: Matrix) -> RingElement:
        constant = MatrixService.berkowitz_vector(a)[-1]
        return constant if a.n % 2 == 0 else -constant

    @staticmethod
    def krylov_unit(a: Matrix, v: Sequence[RingElement]) -> bool:
        """True iff det[v | Av | ... | A^(n-1) v] is a unit."""
        columns = [list(v)]
        for _ in range(a.n - 1):
            columns.append(a.apply(columns[-1]))
        krylov = Matrix.build(a.ring, a.n, lambda i, j: columns[j][i])
        return MatrixService.determinant(krylov).is_unit()

    @staticmethod
    def bracket(a: Matrix, b: Matrix) -> Matrix:
        return a * b - b * a


def _berkowitz(ring: InvolutiveRing, rows: List[List[RingElement]]) -> List[RingElement]:
    n = len(rows)
    one = ring.one()
    if n == 1:
        return [one, -rows[0][0]]

    corner = rows[0][0]
    r = rows[0][1:]
    c = [row[0] for row in rows[1:]]
    sub = [row[1:] for row in rows[1:]]

    # diagonals of the Toeplitz matrix: 1, -a, -RC, -RA'C, ..., -RA'^(n-2)C
    diags = [one, -corner]
    vec = c
    for k in range(n - 1):
        if k > 0:
            vec = [dot(ring, row, vec) for row in sub]
        diags.append(-dot(ring, r, vec))

    inner = _berkowitz(ring, sub)
    zero = ring.zero()
    out = []
    for i in range(n + 1):
        acc = zero
        for j in range(min(i + 1, n)):
            acc = acc + diags[i - j] * inner[j]
        out.append(acc)
    return out
