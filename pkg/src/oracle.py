"""
Brute-force solutions of x^2 + D*y^2 = z^2, kept independent of the group code.

brute_force_solutions uses nothing but exact-integer scanning; sweep_verify
compares it against the group-theoretic enumeration.
"""
import logging
from typing import List

from arith import gcd, integer_sqrt, is_perfect_square
from conic import count_normalized, enumerate_normalized
from exceptions import UsageError
from schemas import SweepMismatch, SweepReport, Triple

logger = logging.getLogger(__name__)


def brute_force_solutions(D: int, c: int) -> List[Triple]:
    """
    Every (a, b, c) with a, b >= 1, a^2 + D*b^2 = c^2 and gcd(a, b, c) = 1.

    Scans b up to isqrt((c^2 - 1) / D), which leaves out the b = 0 points.
    For D = 1 each unordered pair appears once, with a <= b.
    """
    if D < 1 or c < 1:
        raise UsageError(f"brute_force_solutions needs D >= 1 and c >= 1, got D={D}, c={c}")

    solutions = []
    target = c * c
    for b in range(1, integer_sqrt((target - 1) // D) + 1):
        a = is_perfect_square(target - D * b * b)
        if not a:
            continue
        if gcd(gcd(a, b), c) != 1:
            continue
        if D == 1 and a > b:
            continue
        solutions.append(Triple(D=D, a=a, b=b, c=c))

    solutions.sort(key=lambda t: t.a)
    return solutions


def sweep_verify(D: int, c_max: int, unverified: bool = False) -> SweepReport:
    """Compare enumeration, count law and oracle for every c in 2..c_max."""
    if c_max < 1:
        raise UsageError(f"c_max must be positive, got {c_max}")

    report = SweepReport(D=D, c_max=c_max)
    for c in range(2, c_max + 1):
        oracle = brute_force_solutions(D, c)
        enumerated = [s.triple for s in enumerate_normalized(D, c, unverified=unverified)]
        expected = count_normalized(D, c, unverified=unverified)

        report.checked += 1
        if oracle:
            report.nonempty += 1
        if set(enumerated) != set(oracle) or len(enumerated) != expected or len(oracle) != expected:
            logger.error(f"Sweep mismatch for D={D}, c={c}: enumerated={enumerated}, oracle={oracle}, expected={expected}")
            report.mismatches.append(
                SweepMismatch(c=c, expected_count=expected, enumerated=enumerated, oracle=oracle)
            )

    logger.info(f"Sweep D={D} up to {c_max}: {report.checked} checked, {report.nonempty} nonempty, {len(report.mismatches)} mismatches")
    return report
