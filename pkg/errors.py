from typing import Optional


class NholoError(Exception):
    """Base error for every failure the library reports to callers"""

    code = "NHOLO_ERROR"

    def __init__(self, message: str, details: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_payload(self):
        """Wrap the error in the standard error envelope"""
        from models import ErrorInfo, ErrorPayload

        return ErrorPayload(
            error=ErrorInfo(message=self.message, code=self.code, details=self.details)
        )


class DomainError(NholoError, ValueError):
    """Argument outside the mathematical domain of an operation"""

    code = "DOMAIN_ERROR"


class PrecisionError(NholoError, ValueError):
    """Too few q-coefficients to answer the question exactly"""

    code = "PRECISION_ERROR"
