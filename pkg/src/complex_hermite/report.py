"""Residual reports produced by identity checks."""
import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional


def relative_error(lhs: complex, rhs: complex) -> float:
    return abs(lhs - rhs) / (1.0 + max(abs(lhs), abs(rhs)))


def _encode(value):
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, dict):
        return {k: _encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if hasattr(value, "item"):  # numpy scalar
        return _encode(value.item())
    return value


@dataclass
class IdentityReport:
    """Both sides of one identity at one parameter tuple, with residuals.

    ``rel_err = abs_err / (1 + max(|lhs|, |rhs|))`` and ``passed`` is
    ``rel_err <= tolerance``.  When evaluation raised a domain or
    convergence error, ``lhs``/``rhs`` are ``None`` and ``meta["error"]``
    holds the message.
    """

    identity_id: str
    params: Dict[str, Any]
    lhs: Optional[complex]
    rhs: Optional[complex]
    abs_err: float
    rel_err: float
    passed: bool
    meta: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def compare(cls, identity_id, params, lhs, rhs, tolerance, meta=None):
        lhs, rhs = complex(lhs), complex(rhs)
        abs_err = abs(lhs - rhs)
        rel = relative_error(lhs, rhs)
        meta = dict(meta or {})
        meta.setdefault("tolerance", tolerance)
        ok = bool(math.isfinite(rel) and rel <= tolerance)
        return cls(identity_id, dict(params), lhs, rhs, abs_err, rel, ok, meta)

    @classmethod
    def failure(cls, identity_id, params, error, meta=None):
        meta = dict(meta or {})
        meta["error"] = f"{type(error).__name__}: {error}"
        return cls(identity_id, dict(params), None, None, math.inf, math.inf, False, meta)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "identity_id": self.identity_id,
            "params": _encode(self.params),
            "lhs": _encode(self.lhs),
            "rhs": _encode(self.rhs),
            "abs_err": _encode(self.abs_err),
            "rel_err": _encode(self.rel_err),
            "pass": self.passed,
            "meta": _encode(self.meta),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False, allow_nan=False)
