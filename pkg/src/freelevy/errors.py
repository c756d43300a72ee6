"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: configuration problems exit 1,
mathematical rejections exit 2 and convergence failures exit 3.
"""


class FreeLevyError(Exception):
    """Base class for every library error."""

    exit_code = 2
    kind = "error"

    def to_dict(self):
        return {"error": self.kind, "message": str(self)}


class ConfigError(FreeLevyError, ValueError):
    exit_code = 1
    kind = "config"


class DomainError(FreeLevyError, ValueError):
    """An argument lies outside the half-plane an operation is defined on."""

    kind = "domain"


class RejectedInput(FreeLevyError, ValueError):
    """Input is valid but mathematically unsuitable (non-SD law, heavy tail...)."""

    kind = "rejected"


class UnsupportedRepresentation(FreeLevyError, TypeError):
    kind = "unsupported_representation"


class ConvergenceError(FreeLevyError, RuntimeError):
    """A numerical procedure failed to reach its tolerance."""

    exit_code = 3
    kind = "convergence"

    def __init__(self, message, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics

    def to_dict(self):
        out = super().to_dict()
        for key, val in self.diagnostics.items():
            out[key] = _jsonable(val)
        return out


class QuadratureError(ConvergenceError):
    kind = "quadrature"


class SolverError(ConvergenceError):
    kind = "solver"


def _jsonable(val):
    try:
        import numpy as np

        arr = np.asarray(val)
        if np.iscomplexobj(arr):
            return {"re": arr.real.tolist(), "im": arr.imag.tolist()}
        return arr.tolist()
    except Exception:  # pragma: no cover - best effort only
        return repr(val)
