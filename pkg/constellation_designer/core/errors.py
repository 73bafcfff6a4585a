"""
Exception hierarchy for the constellation designer.

Every error carries a stable ``error_code`` string so callers (and the CLI)
can branch on the failure kind without parsing messages.
"""


class ConstellationDesignError(Exception):
    """Base class for all library errors."""

    error_code = "UNKNOWN_ERROR"

    def __init__(self, message: str):
        super().__init__(message)
        self.error_message = message

    def to_dict(self) -> dict:
        return {"error_code": self.error_code, "error_message": self.error_message}


class ConfigurationError(ConstellationDesignError):
    """Invalid parameters, grids or combinations of options."""

    error_code = "CONFIG_ERROR"


class CodecError(ConstellationDesignError):
    """Encoder, puncturing, mapping or decoder input violations."""

    error_code = "CODEC_ERROR"


class AlignmentError(CodecError):
    """No supertrellis period aligns coded bits with whole symbols."""

    error_code = "ALIGNMENT_NOT_FOUND"


class NumericalFailureError(ConstellationDesignError):
    """A linear system was singular although the series should converge."""

    error_code = "NUMERICAL_FAILURE"


class ConvergenceError(NumericalFailureError):
    """An iterative method did not reach its tolerance."""

    error_code = "NO_CONVERGENCE"


class LutKeyError(ConstellationDesignError, KeyError):
    """Requested look-up-table record is absent."""

    error_code = "LUT_KEY_MISSING"

    def __str__(self) -> str:
        return self.error_message


class LutFormatError(ConstellationDesignError):
    """Look-up-table file cannot be parsed or violates record invariants."""

    error_code = "LUT_MALFORMED"


class FixtureError(ConstellationDesignError):
    """Bundled fixture store failed verification."""

    error_code = "FIXTURE_INVALID"
