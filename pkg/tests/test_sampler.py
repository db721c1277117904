import pytest

from app.schemas.harness import SampleConfig
from app.services.matrices import MatrixService
from app.services.sampler import SUBSTREAM_SIZE, SamplerService, substream_sizes
from app.utils.errors import InvalidDescriptorError


def config(**overrides):
    fields = {"descriptor": {"backend": "ff", "p": 5}, "n": 3, "count": 40, "seed": 11}
    fields.update(overrides)
    return SampleConfig(**fields)


def test_substream_sizes():
    assert substream_sizes(1) == [1]
    assert substream_sizes(SUBSTREAM_SIZE) == [SUBSTREAM_SIZE]
    assert substream_sizes(2 * SUBSTREAM_SIZE + 3) == [SUBSTREAM_SIZE, SUBSTREAM_SIZE, 3]


def test_stream_is_seed_deterministic():
    first = list(SamplerService.sample_stream(config()))
    second = list(SamplerService.sample_stream(config()))
    assert first == second
    assert len(first) == 40
    assert first != list(SamplerService.sample_stream(config(seed=12)))


def test_longer_stream_extends_shorter_one():
    short = list(SamplerService.sample_stream(config(count=30)))
    long = list(SamplerService.sample_stream(config(count=60)))
    assert long[:SUBSTREAM_SIZE] == short[:SUBSTREAM_SIZE]


@pytest.mark.parametrize("descriptor", [
    {"backend": "ff", "p": 3},
    {"backend": "series", "p": 5, "N": 3},
    {"backend": "rational"},
])
def test_samples_are_members(descriptor):
    for gamma in SamplerService.sample_stream(config(descriptor=descriptor, n=4, count=30)):
        assert MatrixService.in_unitary_lie_algebra(gamma).passed


def test_sampler_support_is_all_of_u2_over_f9(f3):
    support = set(SamplerService.sampler_support(f3, 2))
    brute_force = set(SamplerService.enumerate_u_n(f3, 2))
    # u_2 has dimension n^2 = 4 over F_3
    assert len(brute_force) == 81
    assert support == brute_force


def test_rational_backend_cannot_be_enumerated(qi):
    with pytest.raises(InvalidDescriptorError):
        list(SamplerService.sampler_support(qi, 1))


def test_one_by_one_samples_are_trace_zero():
    for gamma in SamplerService.sample_stream(config(n=1, count=20)):
        assert gamma[0, 0].is_trace_zero()
