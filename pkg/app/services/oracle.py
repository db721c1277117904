"""Brute-force oracles: symbolic cofactor expansion of the companion-type
matrix, and a numeric cofactor characteristic polynomial over R[x].

Both serve as references for the Berkowitz-based code paths.
"""
import logging
from typing import Dict, List, Sequence

import sympy

from app.models.matrix import Matrix, Polynomial
from app.models.ring import InvolutiveRing, RingElement
from app.schemas.harness import OracleCoefficient, OracleResponse, OracleTerm
from app.utils.errors import CostBoundExceededError, DimensionMismatchError, OracleAssertionError

logger = logging.getLogger(__name__)

MAX_ORACLE_N = 5

SymbolicPolynomial = sympy.Poly

X_SYMBOL = sympy.Symbol("x")
ALPHA = sympy.Symbol("alpha")
ALPHA_INV = sympy.Symbol("alpha_inv")


def b_symbols(n: int) -> List[sympy.Symbol]:
    return list(sympy.symbols(f"b1:{n + 1}"))


def _case_table(n: int, b: Sequence, alpha, alpha_inv) -> List[List]:
    """X from the case table; alpha = alpha_inv = 1 gives the model matrix."""
    rows = [[sympy.Integer(0)] * n for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if (i, j) == (1, n):
                rows[i - 1][j - 1] = -2 * alpha_inv ** (n - 1) * b[n - 1]
                continue
            for k in range(1, n):
                if (i, j) == (1, k) or (i, j) == (n + 1 - k, n):
                    rows[i - 1][j - 1] = -alpha_inv ** (k - 1) * b[k - 1]
                elif (i, j) == (k + 1, k):
                    rows[i - 1][j - 1] = alpha
    return rows


def _cofactor_det(rows: List[List]):
    if len(rows) == 1:
        return rows[0][0]
    total = 0
    for j, entry in enumerate(rows[0]):
        if entry == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        total += (-1) ** j * entry * _cofactor_det(minor)
    return total


def _symbolic_charpoly(rows: List[List]) -> sympy.Poly:
    n = len(rows)
    shifted = [
        [(X_SYMBOL if i == j else 0) - rows[i][j] for j in range(n)]
        for i in range(n)
    ]
    return sympy.Poly(sympy.expand(_cofactor_det(shifted)), X_SYMBOL)


class OracleService:
    """Reference computations for small n."""

    @staticmethod
    def symbolic_charpoly_oracle(n: int) -> Dict[int, SymbolicPolynomial]:
        """Expand det(xI - M(b)) and return a_k as a polynomial in b_1, ..., b_n.

        Raises:
            CostBoundExceededError: n > 5
            OracleAssertionError: some a_k involves b_j for j > k, or is not
                linear in b_k with coefficient exactly 2
        """
        if n < 1:
            raise DimensionMismatchError(f"n must be >= 1, got {n}", n=n)
        if n > MAX_ORACLE_N:
            raise CostBoundExceededError(
                f"Symbolic oracle is limited to n <= {MAX_ORACLE_N}",
                n=n,
                bound=MAX_ORACLE_N,
            )

        b = b_symbols(n)
        one = sympy.Integer(1)
        chi = _symbolic_charpoly(_case_table(n, b, one, one))

        coefficients = {}
        for k in range(1, n + 1):
            expr = chi.coeff_monomial(X_SYMBOL ** (n - k))
            poly = sympy.Poly(expr, *b, domain=sympy.ZZ)
            later = [g for g in b[k:] if poly.degree(g) > 0]
            if later:
                raise OracleAssertionError(f"a_{k} depends on {later}", k=k, expression=str(expr))
            if sympy.expand(sympy.diff(expr, b[k - 1])) != 2:
                raise OracleAssertionError(
                    f"a_{k} is not 2 b_{k} plus lower terms",
                    k=k,
                    expression=str(expr),
                )
            coefficients[k] = poly
        logger.debug(f"Oracle for n = {n}: {[str(p.as_expr()) for p in coefficients.values()]}")
        return coefficients

    @staticmethod
    def symbolic_alpha_independence(n: int) -> bool:
        """det(xI - X) with symbolic alpha reduces to the alpha-free coefficients."""
        if n > MAX_ORACLE_N:
            raise CostBoundExceededError(f"Symbolic oracle is limited to n <= {MAX_ORACLE_N}", n=n)
        b = b_symbols(n)
        one = sympy.Integer(1)
        twisted = _symbolic_charpoly(_case_table(n, b, ALPHA, ALPHA_INV))
        model = _symbolic_charpoly(_case_table(n, b, one, one))
        for k in range(n + 1):
            reduced = sympy.cancel(twisted.coeff_monomial(X_SYMBOL ** k).subs(ALPHA_INV, 1 / ALPHA))
            if sympy.expand(reduced - model.coeff_monomial(X_SYMBOL ** k)) != 0:
                logger.error(f"alpha survives in the x^{k} coefficient for n = {n}: {reduced}")
                return False
        return True

    @staticmethod
    def evaluate(poly: SymbolicPolynomial, values: Sequence[RingElement], ring: InvolutiveRing) -> RingElement:
        """Substitute ring elements for the generators of poly."""
        acc = ring.zero()
        for monomial, coefficient in poly.terms():
            term = ring.from_int(int(coefficient))
            for value, exponent in zip(values, monomial):
                if exponent:
                    term = term * value ** exponent
            acc = acc + term
        return acc

    @staticmethod
    def cofactor_charpoly(a: Matrix) -> Polynomial:
        """det(xI - A) by cofactor expansion over R[x]."""
        ring, n = a.ring, a.n
        shifted = [
            [_poly_sub(ring, [ring.zero(), ring.one()] if i == j else [], [a[i, j]]) for j in range(n)]
            for i in range(n)
        ]
        coeffs = _poly_det(ring, shifted)
        coeffs += [ring.zero()] * (n + 1 - len(coeffs))
        return Polynomial(ring, coeffs[: n + 1])

    @staticmethod
    def describe(n: int) -> OracleResponse:
        coefficients = OracleService.symbolic_charpoly_oracle(n)
        return OracleResponse(
            n=n,
            coefficients=[
                OracleCoefficient(
                    k=k,
                    expression=str(poly.as_expr()),
                    terms=[
                        OracleTerm(exponents=list(monomial), coefficient=int(c))
                        for monomial, c in poly.terms()
                    ],
                )
                for k, poly in coefficients.items()
            ],
            triangular=True,
            alpha_independent=OracleService.symbolic_alpha_independence(n),
        )


# Polynomials over R as coefficient lists, low to high.

def _poly_add(ring: InvolutiveRing, p: List[RingElement], q: List[RingElement]) -> List[RingElement]:
    size = max(len(p), len(q))
    zero = ring.zero()
    return [(p[k] if k < len(p) else zero) + (q[k] if k < len(q) else zero) for k in range(size)]


def _poly_sub(ring: InvolutiveRing, p: List[RingElement], q: List[RingElement]) -> List[RingElement]:
    return _poly_add(ring, p, [-c for c in q])


def _poly_mul(ring: InvolutiveRing, p: List[RingElement], q: List[RingElement]) -> List[RingElement]:
    if not p or not q:
        return []
    out = [ring.zero()] * (len(p) + len(q) - 1)
    for i, c in enumerate(p):
        for j, e in enumerate(q):
            out[i + j] = out[i + j] + c * e
    return out


def _poly_det(ring: InvolutiveRing, rows: List[List[List[RingElement]]]) -> List[RingElement]:
    if len(rows) == 1:
        return list(rows[0][0])
    total: List[RingElement] = []
    for j, entry in enumerate(rows[0]):
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = _poly_mul(ring, entry, _poly_det(ring, minor))
        total = _poly_add(ring, total, term) if j % 2 == 0 else _poly_sub(ring, total, term)
    return total
