from typing import Any, Dict, Optional

from pydantic import BaseModel


class ResponseModel(BaseModel):
    """Base response model."""
    success: bool
    message: str
    data: Optional[Any] = None


class ErrorResponse(ResponseModel):
    """Machine-readable error printed by the CLI on a domain or usage failure."""
    success: bool = False
    error: str
    data: Optional[Dict[str, Any]] = None

    class Config:
        json_schema_extra = {
            "example": {
                "success": False,
                "message": "p = 2 is excluded: the section requires residue characteristic other than 2",
                "error": "non-invertible-2",
                "data": {"descriptor": {"backend": "finite-field-quadratic", "p": 2, "d": None, "N": None}},
            }
        }
