"""
Reduced binary quadratic forms of negative discriminant and the class group C(-4D).

The group structure verdict never composes forms: a reduced form's class has
order <= 2 exactly when b = 0, a = b or a = c, and a finite abelian group whose
elements all have order <= 2 is Z2^k with 2^k = h.
"""
import logging
from functools import lru_cache
from typing import List

from arith import gcd, integer_sqrt, is_squarefree
from exceptions import UsageError
from schemas import Applicability, ClassGroupReport, QuadraticForm, ReasonCode

logger = logging.getLogger(__name__)


def discriminant(f: QuadraticForm) -> int:
    return f.discriminant


def is_reduced(f: QuadraticForm) -> bool:
    return f.is_reduced


def reduce_form(f: QuadraticForm) -> QuadraticForm:
    """Return the reduced representative of the class of f."""
    a, b, c = f.a, f.b, f.c

    # normalize so that -a < b <= a
    r = (a - b) // (2 * a)
    a, b, c = a, b + 2 * r * a, a * r * r + b * r + c

    while not (a < c or (a == c and b >= 0)):
        s = (c + b) // (2 * c)
        a, b, c = c, -b + 2 * s * c, c * s * s - b * s + a

    return QuadraticForm(a=a, b=b, c=c)


def enumerate_reduced_forms(disc: int) -> List[QuadraticForm]:
    """
    All reduced primitive positive-definite forms of discriminant disc.

    Ordered by ascending a, then ascending b, so both [a,-b,c] and [a,b,c]
    appear (in that order) when 0 < b < a < c.
    """
    if disc >= 0 or disc % 4 not in (0, 1):
        raise UsageError(f"{disc} is not a negative discriminant (must be 0 or 1 mod 4)")

    forms: List[QuadraticForm] = []
    b = disc % 2
    b_limit = integer_sqrt(-disc // 3)
    while b <= b_limit:
        ac = (b * b - disc) // 4
        a = max(b, 1)
        while a * a <= ac:
            if ac % a == 0:
                c = ac // a
                if gcd(gcd(a, b), c) == 1:
                    forms.append(QuadraticForm(a=a, b=b, c=c))
                    if 0 < b < a < c:
                        forms.append(QuadraticForm(a=a, b=-b, c=c))
            a += 1
        b += 2

    forms.sort(key=lambda f: (f.a, f.b))
    return forms


def order_at_most_two(f: QuadraticForm) -> bool:
    if not f.is_reduced:
        raise UsageError(f"{f} is not reduced; the order test only applies to reduced forms")
    return f.b == 0 or f.a == f.b or f.a == f.c


@lru_cache(maxsize=4096)
def class_group_report(D: int) -> ClassGroupReport:
    if D < 1:
        raise UsageError(f"D must be a positive integer, got {D}")

    forms = enumerate_reduced_forms(-4 * D)
    elementary = all(order_at_most_two(f) for f in forms)
    h = len(forms)
    report = ClassGroupReport(
        discriminant=-4 * D,
        forms=forms,
        class_number=h,
        is_elementary_two=elementary,
        two_rank=h.bit_length() - 1 if elementary else None,
    )
    logger.debug(f"C({-4 * D}): h={h}, elementary two={elementary}")
    return report


def display_forms(report: ClassGroupReport) -> List[QuadraticForm]:
    return report.display_forms


def group_structure(report: ClassGroupReport) -> str:
    if report.is_elementary_two:
        return f"Z2^{report.two_rank}"
    return f"non-elementary (h = {report.class_number})"


@lru_cache(maxsize=4096)
def is_theorem_applicable(D: int) -> Applicability:
    """
    D = 1 or 2 (mod 4), squarefree, and C(-4D) elementary abelian 2.

    D = 1 passes; every failed condition is listed in the reasons.
    """
    if D < 1:
        raise UsageError(f"D must be a positive integer, got {D}")

    reasons = []
    if not is_squarefree(D):
        reasons.append(ReasonCode.NOT_SQUAREFREE)
    if D % 4 not in (1, 2):
        reasons.append(ReasonCode.WRONG_RESIDUE)
    if not class_group_report(D).is_elementary_two:
        reasons.append(ReasonCode.NOT_ELEMENTARY_TWO)
    return Applicability(D=D, applicable=not reasons, reasons=reasons)
