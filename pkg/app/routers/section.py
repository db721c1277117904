import logging
from typing import Tuple

from pydantic import BaseModel

from app.models.matrix import Matrix, unit_vector
from app.models.ring import make_ring
from app.models.section import InvariantTuple
from app.schemas.cli import CliConfig
from app.schemas.section import ExistenceStatus, SectionResponse, VerifyResponse
from app.services.kostant import KostantService
from app.services.matrices import MatrixService
from app.utils.arguments import load_json_argument, resolve_descriptor
from app.utils.errors import UsageError

logger = logging.getLogger(__name__)


def cmd_build(config: CliConfig) -> Tuple[BaseModel, int]:
    """
    Build the section matrix for --a and verify it.

    Exit status 0 iff membership, characteristic polynomial, conjugacy,
    b-parity and placement checks all pass.
    """
    ring = make_ring(resolve_descriptor(config))
    a = InvariantTuple.from_dict(ring, load_json_argument(config.a, "--a"))
    if config.n is not None and config.n != a.n:
        raise UsageError(f"--n {config.n} does not match the {a.n} entries of --a", n=config.n)

    alpha = None
    if config.alpha is not None:
        alpha = ring.decode(load_json_argument(config.alpha, "--alpha"))

    logger.info(f"Building section for n = {a.n} over {ring!r}")
    result = KostantService.build_x(a, alpha)
    response = SectionResponse(**result.to_dict())
    return response, 0 if result.verified else 1


def cmd_verify(config: CliConfig) -> Tuple[BaseModel, int]:
    """
    Check an arbitrary matrix for membership in u_n; report its invariants.
    """
    descriptor = resolve_descriptor(config)
    ring = make_ring(descriptor)
    matrix = Matrix.from_dict(ring, load_json_argument(config.matrix, "--matrix"))

    membership = MatrixService.in_unitary_lie_algebra(matrix)
    chi = MatrixService.char_poly(matrix)
    invariants = None
    if membership.passed:
        invariants = KostantService.phi_n(matrix).to_dict()

    response = VerifyResponse(
        descriptor=ring.descriptor,
        membership=membership.passed,
        paths_agree=membership.paths_agree,
        first_failure=membership.first_failure,
        char_poly=chi.to_dict(),
        invariants=invariants,
        krylov_unit=MatrixService.krylov_unit(matrix, unit_vector(ring, matrix.n, 0)),
    )
    return response, 0 if membership.passed else 1


def cmd_exists(config: CliConfig) -> Tuple[BaseModel, int]:
    """
    Report which existence guarantee covers (n, residue characteristic).
    """
    verdict = KostantService.kostant_exists(config.n, config.residue_char)
    return verdict, 0 if verdict.status == ExistenceStatus.YES_OVER_O else 1
