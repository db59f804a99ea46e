"""
Report and configuration models shared by the checks and the CLI.
"""
import re
from fractions import Fraction
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from src import __version__
from src.config import (
    DEFAULT_MU_GRID,
    DEFAULT_N_MAX,
    DEFAULT_PARALLELISM,
    DEFAULT_QUAD_PRECISION,
    DEFAULT_ROOT_DIGITS,
    DEFAULT_SERIES_ORDER,
)

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")

MU_LOWER_BOUND = Fraction(-1, 2)


class VerificationError(AssertionError):
    """An identity that should hold exactly did not; the message is the witness."""


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or an integer; decimals and floats are rejected."""
    text = str(text).strip()
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"Expected an exact rational like '1/3' or '-2', got '{text}'")
    value = Fraction(text)
    return value


def parse_mu(text: str) -> Fraction:
    mu = parse_rational(text)
    if mu <= MU_LOWER_BOUND:
        raise ValueError(f"mu must be greater than -1/2, got {mu}")
    return mu


def parse_mu_list(text: str) -> List[Fraction]:
    items = [item for item in str(text).split(",") if item.strip()]
    if not items:
        raise ValueError("Empty mu list")
    return [parse_mu(item) for item in items]


def render_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def render_params(**params) -> Dict[str, str]:
    out = {}
    for key, value in params.items():
        if isinstance(value, Fraction):
            out[key] = render_rational(value)
        elif isinstance(value, (list, tuple)):
            out[key] = ",".join(render_rational(v) if isinstance(v, Fraction) else str(v) for v in value)
        else:
            out[key] = str(value)
    return out


class CheckRecord(BaseModel):
    suite: str
    identity: str
    params: Dict[str, str] = Field(default_factory=dict)
    passed: bool
    witness: Optional[str] = None
    informational: bool = False
    skipped: bool = False


def _is_zero(difference) -> bool:
    if hasattr(difference, "is_zero"):
        return difference.is_zero()
    return difference == 0


def check_zero(suite: str, identity: str, difference, **params) -> CheckRecord:
    """Record that passes iff ``difference`` vanishes; otherwise it becomes the witness."""
    passed = _is_zero(difference)
    return CheckRecord(
        suite=suite,
        identity=identity,
        params=render_params(**params),
        passed=passed,
        witness=None if passed else f"nonzero difference: {difference}",
    )


def check_true(suite: str, identity: str, ok: bool, witness: str = "", **params) -> CheckRecord:
    return CheckRecord(
        suite=suite,
        identity=identity,
        params=render_params(**params),
        passed=bool(ok),
        witness=None if ok else (witness or "condition failed"),
    )


def measured(suite: str, identity: str, holds: bool, note: str, **params) -> CheckRecord:
    """Informational record: counted in the report but never fails a run."""
    return CheckRecord(
        suite=suite,
        identity=identity,
        params=render_params(**params),
        passed=bool(holds),
        witness=note,
        informational=True,
    )


def skipped(suite: str, identity: str, reason: str, **params) -> CheckRecord:
    return CheckRecord(
        suite=suite,
        identity=identity,
        params=render_params(**params),
        passed=True,
        witness=reason,
        skipped=True,
    )


class RunConfig(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    n_max: int = Field(default=DEFAULT_N_MAX, ge=0)
    mu_list: List[Fraction] = Field(default_factory=lambda: list(DEFAULT_MU_GRID))
    series_order: int = Field(default=DEFAULT_SERIES_ORDER, ge=1)
    root_digits: int = Field(default=DEFAULT_ROOT_DIGITS, ge=1)
    quad_precision_bits: int = Field(default=DEFAULT_QUAD_PRECISION, ge=128)
    parallelism: int = Field(default=DEFAULT_PARALLELISM, ge=1)
    output_format: str = "human"

    @field_validator("mu_list", mode="before")
    @classmethod
    def _parse_mu_list(cls, value):
        if isinstance(value, str):
            return parse_mu_list(value)
        return [v if isinstance(v, Fraction) else parse_mu(v) for v in value]

    @field_validator("mu_list")
    @classmethod
    def _check_mu_bound(cls, value):
        for mu in value:
            if mu <= MU_LOWER_BOUND:
                raise ValueError(f"mu must be greater than -1/2, got {mu}")
        return value

    @field_validator("output_format")
    @classmethod
    def _check_format(cls, value):
        value = value.lower()
        if value not in ("json", "csv", "human"):
            raise ValueError(f"Unknown output format '{value}'")
        return value

    def echo(self) -> Dict[str, Any]:
        return {
            "n_max": self.n_max,
            "mu_list": [render_rational(mu) for mu in self.mu_list],
            "series_order": self.series_order,
            "root_digits": self.root_digits,
            "quad_precision_bits": self.quad_precision_bits,
            "parallelism": self.parallelism,
            "output_format": self.output_format,
        }


class ReportSummary(BaseModel):
    total: int = 0
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    informational: int = 0


class VerificationReport(BaseModel):
    suite: str
    version: str = __version__
    config: Dict[str, Any] = Field(default_factory=dict)
    records: List[CheckRecord] = Field(default_factory=list)
    summary: ReportSummary = Field(default_factory=ReportSummary)
    wall_clock_seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.summary.failed == 0

    def failures(self) -> List[CheckRecord]:
        return [r for r in self.records if not r.passed and not r.informational]

    def summarize(self) -> "VerificationReport":
        summary = ReportSummary(total=len(self.records))
        for record in self.records:
            if record.informational:
                summary.informational += 1
            elif record.skipped:
                summary.skipped += 1
            elif record.passed:
                summary.passed += 1
            else:
                summary.failed += 1
        self.summary = summary
        return self


class ZerosRecord(BaseModel):
    index: int
    mu: str
    degree: int
    certified: bool
    squarefree: bool
    real_root_count: int
    symmetric: bool
    digits: int
    zeros_t: List[str]
    zeros_s: List[str]


class PolyRecord(BaseModel):
    coefficients: List[str]
    rendered: str


class TransformRecord(BaseModel):
    index: int
    mu: str
    constant: str
    two_power_offset: int
    gamma_shift: int
    rendered: str
    phat: PolyRecord
    pscaled: PolyRecord
