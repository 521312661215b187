from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from arith import gcd, is_prime, kronecker


class QuadraticForm(BaseModel):
    """Primitive positive-definite binary quadratic form a*x^2 + b*x*y + c*y^2."""

    model_config = ConfigDict(frozen=True, json_schema_extra={"example": {"a": 11, "b": 8, "c": 11}})

    a: int = Field(..., gt=0, description="Coefficient of x^2")
    b: int = Field(..., description="Coefficient of xy")
    c: int = Field(..., description="Coefficient of y^2")

    @model_validator(mode="after")
    def _check_form(self) -> "QuadraticForm":
        if self.discriminant >= 0:
            raise ValueError(f"{self} is not positive definite")
        if gcd(gcd(self.a, self.b), self.c) != 1:
            raise ValueError(f"{self} is not primitive")
        return self

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def is_reduced(self) -> bool:
        """|b| <= a <= c, with b >= 0 whenever |b| = a or a = c."""
        if not abs(self.b) <= self.a <= self.c:
            return False
        if abs(self.b) == self.a or self.a == self.c:
            return self.b >= 0
        return True

    def __str__(self) -> str:
        return f"[{self.a},{self.b},{self.c}]"


class ClassGroupReport(BaseModel):
    """Reduced forms of discriminant -4D with the class number and the elementary-2 verdict."""

    model_config = ConfigDict(frozen=True)

    discriminant: int = Field(..., lt=0)
    forms: List[QuadraticForm]
    class_number: int = Field(..., gt=0)
    is_elementary_two: bool
    two_rank: Optional[int] = Field(None, ge=0)

    @model_validator(mode="after")
    def _check_report(self) -> "ClassGroupReport":
        if self.class_number != len(self.forms):
            raise ValueError("class_number must equal the number of forms")
        if len(set(self.forms)) != len(self.forms):
            raise ValueError("forms must be pairwise distinct")
        for f in self.forms:
            if not f.is_reduced or f.discriminant != self.discriminant:
                raise ValueError(f"{f} is not a reduced form of discriminant {self.discriminant}")
        if self.is_elementary_two:
            h = self.class_number
            if h & (h - 1) or self.two_rank != h.bit_length() - 1:
                raise ValueError("an elementary 2-group needs h = 2^two_rank")
        elif self.two_rank is not None:
            raise ValueError("two_rank is only present for elementary 2-groups")
        return self

    @computed_field
    @property
    def display_forms(self) -> List[QuadraticForm]:
        """One representative per class with b >= 0, as class lists are usually printed."""
        return [f for f in self.forms if f.b >= 0]


class ReasonCode(str, Enum):
    NOT_SQUAREFREE = "not_squarefree"
    WRONG_RESIDUE = "wrong_residue_mod_4"
    NOT_ELEMENTARY_TWO = "class_group_not_elementary_two"

    def __str__(self) -> str:
        return self.value


class Applicability(BaseModel):
    model_config = ConfigDict(frozen=True)

    D: int = Field(..., gt=0)
    applicable: bool
    reasons: List[ReasonCode] = Field(default_factory=list)


class GroupElement(BaseModel):
    """
    Reduced element (a + b*sqrt(-D)) / c of G_D(Q).

    The norm relation a^2 + D*b^2 = c^2 and gcd(a, b) = 1 always hold, which
    makes the representation unique; the identity is (1, 0, 1).
    """

    model_config = ConfigDict(frozen=True, json_schema_extra={"example": {"D": 105, "a": -73, "b": 12, "c": 143}})

    D: int = Field(..., gt=0)
    a: int
    b: int
    c: int = Field(..., ge=1, description="Denominator")

    @model_validator(mode="after")
    def _check_element(self) -> "GroupElement":
        if self.a * self.a + self.D * self.b * self.b != self.c * self.c:
            raise ValueError(f"norm relation fails: {self.a}^2 + {self.D}*{self.b}^2 != {self.c}^2")
        if gcd(self.a, self.b) != 1:
            raise ValueError(f"({self.a}, {self.b}) is not reduced")
        return self

    def __str__(self) -> str:
        return f"({self.a}{self.b:+d}*sqrt(-{self.D}))/{self.c}"


class Triple(BaseModel):
    """Normalized positive solution (a, b, c) of x^2 + D*y^2 = z^2."""

    model_config = ConfigDict(frozen=True, json_schema_extra={"example": {"D": 105, "a": 73, "b": 12, "c": 143}})

    D: int = Field(..., gt=0)
    a: int = Field(..., gt=0)
    b: int = Field(..., gt=0)
    c: int = Field(..., gt=0)

    @model_validator(mode="after")
    def _check_triple(self) -> "Triple":
        if self.a * self.a + self.D * self.b * self.b != self.c * self.c:
            raise ValueError(f"({self.a}, {self.b}, {self.c}) does not solve x^2 + {self.D}y^2 = z^2")
        if gcd(gcd(self.a, self.b), self.c) != 1:
            raise ValueError(f"({self.a}, {self.b}, {self.c}) is not primitive")
        if self.D == 1 and self.a > self.b:
            raise ValueError("for D = 1 a normalized triple has a <= b")
        return self

    def __str__(self) -> str:
        return f"({self.a}, {self.b}, {self.c})"


class ZetaGenerator(BaseModel):
    """The generator zeta_p = (x0 + y0*sqrt(-D)) / p with x0, y0 > 0."""

    model_config = ConfigDict(frozen=True)

    D: int = Field(..., gt=0)
    p: int = Field(..., gt=2)
    element: GroupElement

    @model_validator(mode="after")
    def _check_generator(self) -> "ZetaGenerator":
        if not is_prime(self.p) or kronecker(-self.D, self.p) != 1:
            raise ValueError(f"{self.p} is not an odd prime with (-{self.D}/p) = 1")
        e = self.element
        if e.D != self.D or e.c != self.p or e.a <= 0 or e.b <= 0:
            raise ValueError(f"{e} is not a positive element with denominator {self.p}")
        return self


class ZetaPower(BaseModel):
    """One factor zeta_p^e of a factorization; e is never zero."""

    model_config = ConfigDict(frozen=True)

    p: int = Field(..., gt=2)
    e: int

    @model_validator(mode="after")
    def _check_power(self) -> "ZetaPower":
        if self.e == 0:
            raise ValueError("zero exponents are omitted")
        return self


class FactorizationResult(BaseModel):
    """
    z = sign * (i if unit_i) * prod(zeta_p^e).

    unit_i can only be set for D = 1, where the units are {1, i, -1, -i}.
    """

    model_config = ConfigDict(frozen=True)

    D: int = Field(..., gt=0)
    sign: int
    unit_i: bool = False
    factors: List[ZetaPower] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_result(self) -> "FactorizationResult":
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.unit_i and self.D != 1:
            raise ValueError("the unit i only exists for D = 1")
        primes = [f.p for f in self.factors]
        if primes != sorted(set(primes)):
            raise ValueError("factors must be strictly ascending by prime")
        return self

    @property
    def denominator(self) -> int:
        """prod p^|e|, the denominator the factored element must have."""
        result = 1
        for f in self.factors:
            result *= f.p ** abs(f.e)
        return result


class NormalizedSolution(BaseModel):
    """A normalized triple with its positive element and two readings of its factorization."""

    model_config = ConfigDict(frozen=True)

    triple: Triple
    element: GroupElement = Field(..., description="(a + b*sqrt(-D))/c with a, b > 0")
    representative: FactorizationResult = Field(..., description="Factorization of the positive element")
    coset: FactorizationResult = Field(..., description="The sign-vector product with the smallest prime's exponent positive")


class SweepMismatch(BaseModel):
    c: int
    expected_count: int
    enumerated: List[Triple]
    oracle: List[Triple]


class SweepReport(BaseModel):
    D: int = Field(..., gt=0)
    c_max: int
    checked: int = 0
    nonempty: int = 0
    mismatches: List[SweepMismatch] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


# ---------------------------------------------------------------------------
# Command reports
# ---------------------------------------------------------------------------

class GeneratorRow(BaseModel):
    p: int
    symbol: int
    a: Optional[int] = None
    b: Optional[int] = None
    applicable: bool


class GeneratorTable(BaseModel):
    D: int
    rows: List[GeneratorRow]
    warning: Optional[str] = None


class SolutionRecord(BaseModel):
    """One solve record: the triple, its element and the factorization of that element."""

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "a": 73,
                "b": 12,
                "c": 143,
                "element": "(73+12*sqrt(-105))/143",
                "sign": -1,
                "unit_i": False,
                "exponents": [{"p": 11, "e": -1}, {"p": 13, "e": -1}],
            }
        }
    )

    a: int
    b: int
    c: int
    element: str
    sign: int
    unit_i: bool = False
    exponents: List[ZetaPower]


class ProductRow(BaseModel):
    """prod zeta_p^e for one sign vector, with its value (a + b*sqrt(-D))/c."""

    a: int
    b: int
    exponents: List[ZetaPower]


class SolveReport(BaseModel):
    D: int
    c: int
    expected_count: int
    distinct_primes: int
    records: List[SolutionRecord]
    products: List[ProductRow]
    warning: Optional[str] = None


class FactorReport(BaseModel):
    D: int
    a: int
    b: int
    c: int
    element: str
    sign: int
    unit_i: bool = False
    exponents: List[ZetaPower]
    warning: Optional[str] = None


class ConvenientRow(BaseModel):
    D: int
    squarefree: bool
    residue_ok: bool
    elementary_two: bool
    class_number: int
    applicable: bool


class ConvenientReport(BaseModel):
    max: int
    rows: List[ConvenientRow]
    applicable: List[int]
    flagged: List[int] = Field(default_factory=list, description="Listed convenient D failing the applicability filter")
    unlisted: List[int] = Field(default_factory=list, description="Applicable D missing from the known list")


class CheckResult(BaseModel):
    check: str
    ok: bool
    detail: str = ""


class VerificationReport(BaseModel):
    checks: List[CheckResult]
    tables_verified: int
    tables_total: int

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


class OutputFormat(str, Enum):
    JSON = "json"
    MARKDOWN = "markdown"
    CSV = "csv"


class OutputDocument(BaseModel):
    format: OutputFormat
    body: str


# ---------------------------------------------------------------------------
# Generator cache documents
# ---------------------------------------------------------------------------

class GeneratorCacheEntry(BaseModel):
    """Advisory cached generator; revalidated before use."""

    model_config = ConfigDict(frozen=True, json_schema_extra={"example": {"D": 105, "p": 11, "a": 4, "b": 1}})

    D: int
    p: int
    a: int
    b: int


class GeneratorCacheDocument(BaseModel):
    entries: List[GeneratorCacheEntry] = Field(default_factory=list)


# ---------------------------------------------------------------------------
# Golden data for verify-paper
# ---------------------------------------------------------------------------

class GoldenProduct(BaseModel):
    """prod zeta_p^e over the table's primes equals (a + b*sqrt(-D))/c."""

    exponents: List[int]
    a: int
    b: int


class GoldenBijection(BaseModel):
    """sign * prod zeta_p^e is the positive element of the triple (a, b, c)."""

    sign: int
    exponents: List[int]
    a: int
    b: int


class GoldenTable(BaseModel):
    name: str
    D: int
    c: int
    primes: List[int]
    expected_count: int
    solutions: List[List[int]]
    products: List[GoldenProduct]
    bijection: List[GoldenBijection]
