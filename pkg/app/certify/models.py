from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from sympy import isprime

CERTIFICATE_VERSION = 1

CertificateKind = Literal["genus4", "genus5", "genus6", "genus5_pair", "genus6_pair"]

# parameter order per kind; serialized documents keep this order
PARAM_ORDER: Dict[str, List[str]] = {
    "genus4": ["s", "t"],
    "genus5": ["s", "t", "j1", "j2"],
    "genus6": ["s3", "t3", "j1", "j2"],
    "genus5_pair": ["lambda1", "lambda2", "lambda3", "lambda2p", "lambda3p"],
    "genus6_pair": ["lambda1", "lambda2", "lambda3", "lambda1p", "lambda2p", "lambda3p"],
}

REQUIRED_WITNESS: Dict[str, List[str]] = {
    "genus4": ["lambda1", "lambda3", "lambda4"],
    "genus5": ["e3_lambda"],
    "genus6": ["j3", "alpha1", "alpha2"],
    "genus5_pair": [],
    "genus6_pair": [],
}

OPTIONAL_WITNESS: Dict[str, List[str]] = {
    "genus4": [],
    "genus5": [],
    "genus6": ["s", "t"],
    "genus5_pair": ["e3_lambda"],
    "genus6_pair": [],
}


class Certificate(BaseModel):
    """Self-contained claim that a Howe-type curve is superspecial"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    version: int = CERTIFICATE_VERSION
    kind: CertificateKind
    p: int
    minpoly: List[int] = Field(min_length=3, max_length=3)
    params: Dict[str, List[int]]
    witness: Dict[str, List[int]] = Field(default_factory=dict)

    @field_validator("version")
    @classmethod
    def known_version(cls, value: int) -> int:
        if value != CERTIFICATE_VERSION:
            raise ValueError(f"unsupported certificate version {value}, expected {CERTIFICATE_VERSION}")
        return value

    @field_validator("p")
    @classmethod
    def prime_above_five(cls, value: int) -> int:
        if value <= 5 or not isprime(value):
            raise ValueError(f"p={value} is not a prime > 5")
        return value

    @model_validator(mode="after")
    def check_layout(self) -> "Certificate":
        p = self.p
        if self.minpoly[2] != 1 or any(not 0 <= c < p for c in self.minpoly):
            raise ValueError(f"minpoly {self.minpoly} must be [a0, a1, 1] reduced mod p")

        expected = PARAM_ORDER[self.kind]
        if list(self.params) != expected:
            raise ValueError(f"{self.kind} params must be {expected}, got {list(self.params)}")

        required = REQUIRED_WITNESS[self.kind]
        allowed = set(required) | set(OPTIONAL_WITNESS[self.kind])
        missing = [k for k in required if k not in self.witness]
        extra = [k for k in self.witness if k not in allowed]
        if missing or extra:
            raise ValueError(f"{self.kind} witness mismatch: missing {missing}, unexpected {extra}")

        for block in (self.params, self.witness):
            for name, value in block.items():
                if len(value) != 2 or any(not 0 <= c < p for c in value):
                    raise ValueError(f"{name}={value} is not a pair of residues mod {p}")
        return self


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class VerificationReport(BaseModel):
    kind: str
    p: int
    passed: bool = True
    checks: List[CheckResult] = Field(default_factory=list)
    root: Optional[str] = None
    label: Optional[str] = None

    def add(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(CheckResult(name=name, passed=passed, detail=detail))
        if not passed:
            self.passed = False
        return passed

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]
