import pytest

from app.models.matrix import Matrix, Polynomial, unit_vector
from app.services.matrices import MatrixService
from app.services.oracle import OracleService
from app.services.sampler import SamplerService
from app.utils.errors import DescriptorMismatchError, DimensionMismatchError, InvalidElementError, NotMonicError
from tests.conftest import finite_field, rational


def random_matrix(ring, n, rng):
    return Matrix.build(ring, n, lambda i, j: ring.random_element(rng))


def test_gram_matrix_is_anti_diagonal(f5):
    phi = MatrixService.gram_matrix(3, f5)
    one, zero = f5.one(), f5.zero()
    assert phi.rows == ((zero, zero, one), (zero, one, zero), (one, zero, zero))
    assert phi * phi == Matrix.identity(f5, 3)


def test_gram_matrix_needs_positive_n(f5):
    with pytest.raises(DimensionMismatchError):
        MatrixService.gram_matrix(0, f5)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_zero_and_omega_scalar_are_members(f5, n):
    assert MatrixService.in_unitary_lie_algebra(Matrix.zero(f5, n)).passed
    omega_scalar = Matrix.identity(f5, n).scale(f5.omega())
    assert MatrixService.in_unitary_lie_algebra(omega_scalar).passed


def test_gram_matrix_is_not_a_member(f3):
    # Phi Phi + sigma(Phi^t) Phi = 2I
    report = MatrixService.in_unitary_lie_algebra(MatrixService.gram_matrix(2, f3))
    assert not report.passed
    assert report.paths_agree
    assert (report.first_failure.i, report.first_failure.j) == (1, 1)
    assert report.first_failure.value.model_dump() == {"x": 2, "y": 0}


def test_identity_is_not_a_member(f5):
    report = MatrixService.in_unitary_lie_algebra(Matrix.identity(f5, 3))
    assert not report.passed
    assert (report.first_failure.i, report.first_failure.j) == (1, 3)


def test_membership_index_identity(f7, rng):
    for _ in range(200):
        gamma = SamplerService.sample_u_n(f7, 4, rng)
        for i in range(4):
            for j in range(4):
                assert gamma[3 - i, j] + gamma[3 - j, i].sigma() == f7.zero()


def test_char_poly_two_by_two(f7):
    a, b, c, d = (f7.make(x, y) for x, y in [(1, 2), (3, 0), (0, 5), (6, 1)])
    m = Matrix(f7, [[a, b], [c, d]])
    chi = MatrixService.char_poly(m)
    assert chi.invariants() == (-(a + d), a * d - b * c)
    assert MatrixService.determinant(m) == a * d - b * c


def test_char_poly_of_diagonal(qi):
    entries = [qi.decode(v) for v in (["1/2", "0"], ["0", "1"], ["-3", "2/3"])]
    chi = MatrixService.char_poly(Matrix.diagonal(qi, entries))
    x = qi.one()
    expected = [x]
    for e in entries:
        expected = [x] + [expected[k] - e * expected[k - 1] for k in range(1, len(expected))] + [-e * expected[-1]]
    assert chi == Polynomial(qi, list(reversed(expected)))
    assert MatrixService.determinant(Matrix.diagonal(qi, entries)) == entries[0] * entries[1] * entries[2]


@pytest.mark.parametrize("make_ring", [lambda: finite_field(3), rational], ids=["F3", "rational"])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_berkowitz_matches_cofactor_expansion(make_ring, n, rng):
    ring = make_ring()
    for _ in range(20 if n < 5 else 4):
        a = random_matrix(ring, n, rng)
        assert MatrixService.char_poly(a) == OracleService.cofactor_charpoly(a)


@pytest.mark.parametrize("n", range(1, 7))
def test_cayley_hamilton(any_ring, n, rng):
    for _ in range(5):
        a = random_matrix(any_ring, n, rng)
        assert MatrixService.char_poly(a).evaluate_at(a).is_zero()


def test_char_poly_is_conjugation_invariant(f7, rng):
    n = 4
    for _ in range(50):
        a = random_matrix(f7, n, rng)
        c = f7.random_element(rng)
        shear = Matrix.build(f7, n, lambda i, j: f7.one() if i == j else (c if (i, j) == (0, 2) else f7.zero()))
        inverse = Matrix.build(f7, n, lambda i, j: f7.one() if i == j else (-c if (i, j) == (0, 2) else f7.zero()))
        assert shear * inverse == Matrix.identity(f7, n)
        assert MatrixService.char_poly(shear * a * inverse) == MatrixService.char_poly(a)


def test_krylov_unit(f5):
    assert MatrixService.krylov_unit(Matrix.identity(f5, 1), unit_vector(f5, 1, 0))
    assert not MatrixService.krylov_unit(Matrix.identity(f5, 3), unit_vector(f5, 3, 0))
    shift = Matrix.build(f5, 3, lambda i, j: f5.one() if i == j + 1 else f5.zero())
    assert MatrixService.krylov_unit(shift, unit_vector(f5, 3, 0))
    assert not MatrixService.krylov_unit(shift, unit_vector(f5, 3, 2))


def test_lie_closure(f5, rng):
    for _ in range(50):
        x = SamplerService.sample_u_n(f5, 3, rng)
        y = SamplerService.sample_u_n(f5, 3, rng)
        assert MatrixService.in_unitary_lie_algebra(x + y).passed
        assert MatrixService.in_unitary_lie_algebra(x.scale(f5.random_fixed(rng))).passed
        assert MatrixService.in_unitary_lie_algebra(MatrixService.bracket(x, y)).passed


def test_polynomial_must_be_monic(f5):
    with pytest.raises(NotMonicError):
        Polynomial(f5, [f5.one(), f5.from_int(2)])
    chi = Polynomial.from_invariants(f5, [f5.from_int(3), f5.omega()])
    assert chi.coeffs == (f5.omega(), f5.from_int(3), f5.one())
    assert chi.invariants() == (f5.from_int(3), f5.omega())
    assert chi.degree == 2


def test_matrix_shape_and_ring_checks(f3, f5):
    with pytest.raises(DimensionMismatchError):
        Matrix(f5, [[f5.one(), f5.zero()]])
    with pytest.raises(DescriptorMismatchError):
        Matrix(f5, [[f3.one()]])
    with pytest.raises(DimensionMismatchError):
        Matrix.identity(f5, 2) + Matrix.identity(f5, 3)


def test_matrix_from_dict(f3):
    bare = Matrix.from_dict(f3, [[[0, 1], [0, 2]], [[0, 1], [0, 1]]])
    wrapped = Matrix.from_dict(f3, {"n": 2, "entries": [[{"x": 0, "y": 1}, [0, 2]], [[0, 1], [0, 1]]]})
    assert bare == wrapped
    assert Matrix.from_dict(f3, bare.to_dict()) == bare
    with pytest.raises(DimensionMismatchError):
        Matrix.from_dict(f3, {"n": 3, "entries": [[0]]})


@pytest.mark.parametrize("payload", [{"n": 1, "entries": 5}, {"n": 2}, 7, [[0], 3]])
def test_matrix_payload_must_be_rows(f3, payload):
    with pytest.raises(InvalidElementError):
        Matrix.from_dict(f3, payload)
