import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Optional, Union

Number = Union[Fraction, float, int]


def _json_number(value: Optional[Number]):
    if value is None:
        return None
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    if isinstance(value, int):
        return value
    return float(value)


@dataclass
class RunReport:
    """One simulated run: scores, ratio, additive slack and advice bits actually read."""
    problem: str
    n: int
    algorithm: str
    params: Dict[str, Any]
    alg_score: Number
    opt_score: Number
    ratio: Number
    additive_alpha: Number
    bits_read: int
    advice_bound: float
    feasible: bool = True
    runtime_ms: float = 0.0
    run_id: str = ""
    tape_hex: str = ""
    error: Optional[str] = None
    extra: Dict[str, Any] = field(default_factory=dict)

    @property
    def ratio_value(self) -> float:
        return math.inf if isinstance(self.ratio, float) and math.isinf(self.ratio) else float(self.ratio)

    def to_dict(self, include_timing: bool = True) -> dict:
        data = {
            "run_id": self.run_id,
            "problem": self.problem,
            "n": self.n,
            "algorithm": self.algorithm,
            "params": {k: _json_value(v) for k, v in sorted(self.params.items())},
            "feasible": self.feasible,
            "alg_score": "inf" if not self.feasible else _json_number(self.alg_score),
            "opt_score": _json_number(self.opt_score),
            "ratio": _json_number(self.ratio),
            "additive_alpha": _json_number(self.additive_alpha),
            "bits_read": self.bits_read,
            "advice_bound": _json_number(self.advice_bound),
            "tape_hex": self.tape_hex,
        }
        if self.extra:
            data["extra"] = {k: _json_value(v) for k, v in sorted(self.extra.items())}
        if self.error is not None:
            data["error"] = self.error
        if include_timing:
            data["runtime_ms"] = self.runtime_ms
        return data

    @staticmethod
    def failed(problem: str, n: int, algorithm: str, params: Dict[str, Any], error: str, run_id: str = "") -> "RunReport":
        return RunReport(
            problem=problem,
            n=n,
            algorithm=algorithm,
            params=params,
            alg_score=math.inf,
            opt_score=0,
            ratio=math.inf,
            additive_alpha=0,
            bits_read=0,
            advice_bound=0.0,
            feasible=False,
            run_id=run_id,
            error=error
        )


def _json_value(value: Any):
    if isinstance(value, (Fraction, float)):
        return _json_number(value)
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    if hasattr(value, "value") and isinstance(getattr(value, "value"), str):
        return value.value
    return value


def additive_slack(minimize: bool, alg: Number, opt: Number, bound: Number) -> Number:
    """Smallest alpha >= 0 with ALG <= bound*OPT + alpha (Min) or OPT <= bound*ALG + alpha (Max)."""
    if isinstance(alg, float) and math.isinf(alg):
        return math.inf
    if minimize:
        slack = Fraction(alg) - Fraction(bound) * Fraction(opt)
    else:
        slack = Fraction(opt) - Fraction(bound) * Fraction(alg)
    return max(Fraction(0), slack)
