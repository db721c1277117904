import logging
from itertools import product
from typing import Iterator, List, Sequence, Tuple

import numpy as np

from app.models.matrix import Matrix
from app.models.ring import InvolutiveRing, RingElement, make_ring
from app.schemas.harness import SampleConfig
from app.services.matrices import MatrixService

logger = logging.getLogger(__name__)

# Samples per seed-derived substream; fixed so the stream does not depend on
# how many workers consume it.
SUBSTREAM_SIZE = 25


def substream_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def substream_sizes(count: int) -> List[int]:
    full, rest = divmod(count, SUBSTREAM_SIZE)
    return [SUBSTREAM_SIZE] * full + ([rest] if rest else [])


def _free_positions(n: int) -> List[Tuple[int, int]]:
    """Positions on or above the anti-diagonal, row-major (0-based)."""
    return [(i, j) for i in range(n) for j in range(n) if i + j <= n - 1]


class SamplerService:
    """Random and exhaustive elements of u_n(o)."""

    @staticmethod
    def assemble(ring: InvolutiveRing, n: int, values: Sequence[RingElement]) -> Matrix:
        """Fill free positions from values and mirror the rest.

        A_{n+1-j, n+1-i} = -sigma(A_{i,j}); anti-diagonal values must be trace-zero.
        """
        rows = [[ring.zero()] * n for _ in range(n)]
        for (i, j), value in zip(_free_positions(n), values):
            rows[i][j] = value
            if i + j < n - 1:
                rows[n - 1 - j][n - 1 - i] = -value.sigma()
        return Matrix(ring, rows)

    @staticmethod
    def sample_u_n(ring: InvolutiveRing, n: int, rng: np.random.Generator) -> Matrix:
        values = [
            ring.random_trace_zero(rng) if i + j == n - 1 else ring.random_element(rng)
            for i, j in _free_positions(n)
        ]
        sample = SamplerService.assemble(ring, n, values)
        report = MatrixService.in_unitary_lie_algebra(sample)
        assert report.passed, f"sampler produced a non-member: {report.model_dump()}"
        return sample

    @staticmethod
    def substream(ring: InvolutiveRing, n: int, seed: int, index: int, size: int) -> List[Matrix]:
        rng = substream_rng(seed, index)
        return [SamplerService.sample_u_n(ring, n, rng) for _ in range(size)]

    @staticmethod
    def sample_stream(config: SampleConfig) -> Iterator[Matrix]:
        """Seed-deterministic stream of config.count members of u_n(o)."""
        ring = make_ring(config.descriptor)
        for index, size in enumerate(substream_sizes(config.count)):
            yield from SamplerService.substream(ring, config.n, config.seed, index, size)

    @staticmethod
    def sampler_support(ring: InvolutiveRing, n: int) -> Iterator[Matrix]:
        """Every matrix the sampler can emit (finite backends only)."""
        elements = list(ring.elements())
        trace_zero = [x for x in elements if x.is_trace_zero()]
        choices = [trace_zero if i + j == n - 1 else elements for i, j in _free_positions(n)]
        for values in product(*choices):
            yield SamplerService.assemble(ring, n, values)

    @staticmethod
    def enumerate_u_n(ring: InvolutiveRing, n: int) -> Iterator[Matrix]:
        """Brute-force u_n over a finite backend by testing every matrix."""
        elements = list(ring.elements())
        for entries in product(elements, repeat=n * n):
            candidate = Matrix.build(ring, n, lambda i, j: entries[i * n + j])
            if MatrixService.in_unitary_lie_algebra(candidate).passed:
                yield candidate
