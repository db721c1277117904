from typing import Any, Callable, List, Sequence, Tuple

from app.models.ring import InvolutiveRing, RingElement
from app.utils.errors import DescriptorMismatchError, DimensionMismatchError, InvalidElementError, NotMonicError


class Matrix:
    """Immutable n x n matrix over an involutive ring; indices are 0-based in code."""

    __slots__ = ("ring", "n", "rows")

    def __init__(self, ring: InvolutiveRing, rows: Sequence[Sequence[RingElement]]):
        n = len(rows)
        if n < 1 or any(len(row) != n for row in rows):
            raise DimensionMismatchError(
                "Matrix must be square with n >= 1",
                shape=[len(row) for row in rows],
            )
        for row in rows:
            for entry in row:
                if entry.ring != ring:
                    raise DescriptorMismatchError(
                        "Matrix entry belongs to another ring",
                        expected=ring.descriptor.to_json_dict(),
                        found=entry.ring.descriptor.to_json_dict(),
                    )
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", tuple(tuple(row) for row in rows))

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def build(cls, ring: InvolutiveRing, n: int, entry: Callable[[int, int], RingElement]) -> "Matrix":
        return cls(ring, [[entry(i, j) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, ring: InvolutiveRing, n: int) -> "Matrix":
        z = ring.zero()
        return cls.build(ring, n, lambda i, j: z)

    @classmethod
    def identity(cls, ring: InvolutiveRing, n: int) -> "Matrix":
        return cls.diagonal(ring, [ring.one()] * n)

    @classmethod
    def diagonal(cls, ring: InvolutiveRing, entries: Sequence[RingElement]) -> "Matrix":
        z = ring.zero()
        return cls.build(ring, len(entries), lambda i, j: entries[i] if i == j else z)

    @classmethod
    def from_dict(cls, ring: InvolutiveRing, payload: Any) -> "Matrix":
        """Accepts {"n": int, "entries": [[...]]} or a bare list of rows."""
        if isinstance(payload, dict):
            rows = payload.get("entries")
            n = payload.get("n")
        else:
            rows, n = payload, None
        if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
            raise InvalidElementError("Matrix entries must be a list of rows")
        if n is not None and n != len(rows):
            raise DimensionMismatchError("Matrix payload n does not match its entries", n=n)
        return cls(ring, [[ring.decode(c) for c in row] for row in rows])

    def __getitem__(self, index: Tuple[int, int]) -> RingElement:
        i, j = index
        return self.rows[i][j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ring == other.ring and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.ring, self.rows))

    def __repr__(self) -> str:
        return f"Matrix({[list(row) for row in self.rows]})"

    def _check(self, other: "Matrix") -> None:
        if other.ring != self.ring:
            raise DescriptorMismatchError(
                "Matrices belong to different rings",
                left=self.ring.descriptor.to_json_dict(),
                right=other.ring.descriptor.to_json_dict(),
            )
        if other.n != self.n:
            raise DimensionMismatchError(f"Dimension mismatch: {self.n} vs {other.n}", left=self.n, right=other.n)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix.build(self.ring, self.n, lambda i, j: self.rows[i][j] + other.rows[i][j])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix.build(self.ring, self.n, lambda i, j: self.rows[i][j] - other.rows[i][j])

    def __neg__(self) -> "Matrix":
        return Matrix.build(self.ring, self.n, lambda i, j: -self.rows[i][j])

    def __mul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        columns = list(zip(*other.rows))
        return Matrix(self.ring, [[dot(self.ring, row, col) for col in columns] for row in self.rows])

    def scale(self, c: RingElement) -> "Matrix":
        return Matrix.build(self.ring, self.n, lambda i, j: c * self.rows[i][j])

    def apply(self, v: Sequence[RingElement]) -> List[RingElement]:
        if len(v) != self.n:
            raise DimensionMismatchError(f"Vector of length {len(v)} for an {self.n} x {self.n} matrix")
        return [dot(self.ring, row, v) for row in self.rows]

    def transpose(self) -> "Matrix":
        return Matrix.build(self.ring, self.n, lambda i, j: self.rows[j][i])

    def sigma_entrywise(self) -> "Matrix":
        return Matrix.build(self.ring, self.n, lambda i, j: self.rows[i][j].sigma())

    def is_zero(self) -> bool:
        z = self.ring.zero()
        return all(entry == z for row in self.rows for entry in row)

    def to_dict(self) -> dict:
        return {"n": self.n, "entries": [[entry.to_dict() for entry in row] for row in self.rows]}


def dot(ring: InvolutiveRing, u: Sequence[RingElement], v: Sequence[RingElement]) -> RingElement:
    acc = ring.zero()
    for a, b in zip(u, v):
        acc = acc + a * b
    return acc


class Polynomial:
    """Monic polynomial, coefficients stored low to high (c_0 ... c_n, c_n = 1)."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: InvolutiveRing, coeffs: Sequence[RingElement]):
        if not coeffs or coeffs[-1] != ring.one():
            raise NotMonicError("Leading coefficient must be exactly 1")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_invariants(cls, ring: InvolutiveRing, invariants: Sequence[RingElement]) -> "Polynomial":
        """(a_1, ..., a_n) -> x^n + a_1 x^(n-1) + ... + a_n."""
        return cls(ring, list(reversed(invariants)) + [ring.one()])

    def invariants(self) -> Tuple[RingElement, ...]:
        return tuple(reversed(self.coeffs[:-1]))

    def coefficient(self, k: int) -> RingElement:
        """Coefficient of x^k."""
        return self.coeffs[k]

    def evaluate_at(self, matrix: Matrix) -> Matrix:
        result = Matrix.zero(self.ring, matrix.n)
        identity = Matrix.identity(self.ring, matrix.n)
        for c in reversed(self.coeffs):
            result = result * matrix + identity.scale(c)
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.ring, self.coeffs))

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)})"

    def to_dict(self) -> dict:
        return {"monic_coeffs_low_to_high": [c.to_dict() for c in self.coeffs]}


def unit_vector(ring: InvolutiveRing, n: int, k: int) -> List[RingElement]:
    return [ring.one() if i == k else ring.zero() for i in range(n)]
