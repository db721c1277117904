from typing import Any, Dict


class KostantError(Exception):
    """Base error; `exit_status` is what the CLI returns for it."""

    code = "kostant-error"
    exit_status = 1

    def __init__(self, detail: str, **context: Any):
        super().__init__(detail)
        self.detail = detail
        self.context = context

    def to_dict(self) -> Dict[str, Any]:
        return {"error": self.code, "message": self.detail, "data": self.context or None}


class UsageError(KostantError):
    code = "usage-error"
    exit_status = 2


class InvalidDescriptorError(KostantError):
    code = "invalid-descriptor"


class DescriptorMismatchError(KostantError):
    code = "descriptor-mismatch"


class NonInvertibleError(KostantError):
    code = "non-invertible"


class NonInvertibleTwoError(NonInvertibleError):
    """Residue characteristic 2: the section needs 2 to be a unit."""

    code = "non-invertible-2"


class NoValidAlphaError(KostantError):
    code = "no-valid-alpha"


class InvalidAlphaError(KostantError):
    code = "invalid-alpha"


class DimensionMismatchError(KostantError):
    code = "dimension-mismatch"


class NotMonicError(KostantError):
    code = "not-monic"


class CodomainViolationError(KostantError):
    code = "codomain-violation"


class NotInLieAlgebraError(KostantError):
    code = "not-in-lie-algebra"


class CostBoundExceededError(KostantError):
    code = "cost-bound-exceeded"


class OracleAssertionError(KostantError):
    code = "oracle-assertion"


class InvalidElementError(KostantError):
    code = "invalid-element"
