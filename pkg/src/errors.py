"""
Error hierarchy.

Every error carries an `exit_code` (used by the CLI) and a human-readable
`detail`, the way HTTP errors carry a status code and a detail message.
"""
from typing import Optional


class PExpError(Exception):
    exit_code = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class InvalidParameterError(PExpError, ValueError):
    """Bad generator parameters, bad p / s, bad shapes, too-deep J."""
    exit_code = 2


class InputError(PExpError):
    """Unreadable or malformed input file."""
    exit_code = 2


class EstimationError(PExpError):
    """Too few usable regression points, empty fit range, no jointly valid p."""
    exit_code = 3


class AdmissibilityError(EstimationError):
    """eta(p) <= -s*p for a requested (p, s)."""

    def __init__(self, p: float, s: float, eta: float, stderr: Optional[float] = None):
        self.p = p
        self.s = s
        self.eta = eta
        self.stderr = stderr
        detail = f"(p={p}, s={s}) not admissible: eta(p)={eta:.4g}"
        if stderr is not None:
            detail += f" +/- {stderr:.2g}"
        detail += f" <= -s*p={-s * p:.4g}"
        super().__init__(detail)

    def to_dict(self) -> dict:
        return {"p": self.p, "s": self.s, "eta": self.eta, "stderr": self.stderr}
