import logging
from typing import List, Optional

from pydantic import ValidationError

import paper_data
from arith import factorize, is_prime, kronecker
from cache import GeneratorCache
from conic import (
    count_normalized,
    enumerate_normalized,
    factor_element,
    multiply,
    sign_vector_products,
    splits,
    to_triple,
    zeta,
)
from exceptions import DataError, InapplicableDiscriminantError, UsageError
from oracle import sweep_verify
from quadform import class_group_report, is_theorem_applicable
from render import format_element
from schemas import (
    CheckResult,
    ClassGroupReport,
    ConvenientReport,
    ConvenientRow,
    FactorReport,
    GeneratorRow,
    GeneratorTable,
    GoldenTable,
    GroupElement,
    ProductRow,
    SolutionRecord,
    SolveReport,
    SweepReport,
    VerificationReport,
    ZetaGenerator,
)

logger = logging.getLogger(__name__)


class ConicService:
    """Assembles command reports: applicability gate, cached generators, golden-data checks."""

    def __init__(self, cache: Optional[GeneratorCache] = None):
        self.cache = cache

    def gate(self, D: int, unverified: bool = False) -> Optional[str]:
        """
        Refuse inapplicable D unless overridden.

        Args:
            D: Coefficient of the conic
            unverified: Accept D outside the applicability filter

        Returns:
            The warning attached to the report when the override was needed, else None
        """
        if D < 1:
            raise UsageError(f"D must be a positive integer, got {D}")
        verdict = is_theorem_applicable(D)
        if verdict.applicable:
            return None
        if not unverified:
            raise InapplicableDiscriminantError(D, verdict.reasons)
        codes = ", ".join(str(r) for r in verdict.reasons)
        warning = f"D={D} is outside the theorem hypotheses ({codes}); results are unverified"
        logger.warning(warning)
        return warning

    def generator(self, D: int, p: int) -> ZetaGenerator:
        """
        Get zeta_p with the cache-aside pattern.

        Callers have already passed the gate.

        Args:
            D: Coefficient of the conic
            p: Split odd prime

        Returns:
            The generator, from the cache when present, else computed and stored
        """
        if self.cache is not None:
            hit = self.cache.get(D, p)
            if hit:
                a, b = hit
                return ZetaGenerator(D=D, p=p, element=GroupElement(D=D, a=a, b=b, c=p))

        generator = zeta(D, p, unverified=True)
        if self.cache is not None:
            self.cache.put(D, p, generator.element.a, generator.element.b)
        return generator

    def flush(self) -> None:
        if self.cache is not None:
            self.cache.flush()

    def classgroup(self, D: int) -> ClassGroupReport:
        logger.info(f"Computing class group C({-4 * D})")
        return class_group_report(D)

    def generators(
        self,
        D: int,
        primes: Optional[List[int]] = None,
        bound: Optional[int] = None,
        unverified: bool = False,
    ) -> GeneratorTable:
        """
        One row per requested prime, or per split prime up to `bound`.

        Requested primes whose symbol is not 1 get a row marked inapplicable.
        """
        if primes is None and bound is None:
            raise UsageError("give either a prime list or a bound")
        if primes is not None and bound is not None:
            raise UsageError("give a prime list or a bound, not both")
        warning = self.gate(D, unverified)

        if primes is not None:
            if not primes:
                raise UsageError("the prime list is empty")
            for p in primes:
                if p < 2 or not is_prime(p):
                    raise UsageError(f"{p} in the prime list is not a prime")
            selected = list(primes)
        else:
            if bound < 2:
                raise UsageError(f"the bound must be at least 2, got {bound}")
            selected = [p for p in range(3, bound + 1) if splits(D, p)]

        rows = []
        for p in selected:
            symbol = kronecker(-D, p)
            if splits(D, p):
                element = self.generator(D, p).element
                rows.append(GeneratorRow(p=p, symbol=symbol, a=element.a, b=element.b, applicable=True))
            else:
                rows.append(GeneratorRow(p=p, symbol=symbol, applicable=False))
        logger.info(f"Generator table for D={D}: {len(rows)} rows")
        return GeneratorTable(D=D, rows=rows, warning=warning)

    def solve(self, D: int, c: int, unverified: bool = False) -> SolveReport:
        """
        Enumerate and factor the normalized solutions with z = c.

        Args:
            D: Coefficient of the conic
            c: Denominator, greater than 1
            unverified: Run for D outside the applicability filter

        Returns:
            Records sorted by a, the 2^k sign-vector products and the expected count
        """
        if c <= 1:
            raise UsageError(f"c must exceed 1, got {c}")
        warning = self.gate(D, unverified)

        solutions = enumerate_normalized(D, c, unverified=True, generators=self.generator)
        records = [
            SolutionRecord(
                a=s.triple.a,
                b=s.triple.b,
                c=s.triple.c,
                element=format_element(D, s.element.a, s.element.b, s.element.c),
                sign=s.representative.sign,
                unit_i=s.representative.unit_i,
                exponents=s.representative.factors,
            )
            for s in solutions
        ]
        products = [
            ProductRow(a=z.a, b=z.b, exponents=exponents)
            for exponents, z in sign_vector_products(D, c, unverified=True, generators=self.generator)
        ]
        report = SolveReport(
            D=D,
            c=c,
            expected_count=count_normalized(D, c, unverified=True),
            distinct_primes=len(factorize(c).factors),
            records=records,
            products=products,
            warning=warning,
        )
        logger.info(f"Solved x^2 + {D}y^2 = z^2 with z = {c}: {len(records)} normalized solutions")
        return report

    def factor(self, D: int, a: int, b: int, c: int, unverified: bool = False) -> FactorReport:
        """
        Factor (a + b*sqrt(-D))/c into a sign and powers of zeta_p.

        Raises:
            DataError: (a, b, c) is not a reduced point of the conic
        """
        if c < 1:
            raise UsageError(f"c must be positive, got {c}")
        warning = self.gate(D, unverified)
        try:
            z = GroupElement(D=D, a=a, b=b, c=c)
        except ValidationError as e:
            raise DataError(f"({a}, {b}, {c}) is not a reduced point of x^2 + {D}y^2 = z^2: {e.errors()[0]['msg']}")

        result = factor_element(z, unverified=True, generators=self.generator)
        return FactorReport(
            D=D,
            a=a,
            b=b,
            c=c,
            element=format_element(D, a, b, c),
            sign=result.sign,
            unit_i=result.unit_i,
            exponents=result.factors,
            warning=warning,
        )

    def convenient(self, max_D: int) -> ConvenientReport:
        """
        Sweep D = 1..max_D through the applicability filter.

        Args:
            max_D: Largest D to test

        Returns:
            One row per D, plus the applicable values and their differences from the known list
        """
        if max_D < 1:
            raise UsageError(f"max must be positive, got {max_D}")

        rows = []
        for D in range(1, max_D + 1):
            verdict = is_theorem_applicable(D)
            report = class_group_report(D)
            reasons = {str(r) for r in verdict.reasons}
            rows.append(
                ConvenientRow(
                    D=D,
                    squarefree="not_squarefree" not in reasons,
                    residue_ok="wrong_residue_mod_4" not in reasons,
                    elementary_two=report.is_elementary_two,
                    class_number=report.class_number,
                    applicable=verdict.applicable,
                )
            )

        applicable = [r.D for r in rows if r.applicable]
        listed = [d for d in paper_data.KNOWN_CONVENIENT_D if d <= max_D]
        flagged = [d for d in listed if d not in applicable]
        unlisted = [d for d in applicable if d not in paper_data.KNOWN_CONVENIENT_D]
        for d in flagged:
            logger.warning(f"D={d} is listed as convenient but fails the applicability filter")
        logger.info(f"Convenient sweep up to {max_D}: {len(applicable)} applicable")
        return ConvenientReport(max=max_D, rows=rows, applicable=applicable, flagged=flagged, unlisted=unlisted)

    def oracle(self, D: int, c_max: int, unverified: bool = False) -> SweepReport:
        """Compare enumeration with brute force for every c up to c_max."""
        self.gate(D, unverified)
        return sweep_verify(D, c_max, unverified=True)

    def verify_paper(self) -> VerificationReport:
        """Regenerate the D = 105 class list, generators and tables and diff them against the golden data."""
        D = paper_data.PAPER_D
        checks = [self._check_forms(D), self._check_generators(D)]

        tables = paper_data.PAPER_TABLES
        verified = 0
        for table in tables:
            result = self._check_table(table)
            if result.ok:
                verified += 1
            checks.append(result)

        checks.extend(self._check_pythagorean())
        for check in checks:
            if not check.ok:
                logger.error(f"Verification mismatch in {check.check}: {check.detail}")
        return VerificationReport(checks=checks, tables_verified=verified, tables_total=len(tables))

    def _check_forms(self, D: int) -> CheckResult:
        report = class_group_report(D)
        actual = {(f.a, f.b, f.c) for f in report.forms}
        expected = set(paper_data.PAPER_FORMS)
        problems = []
        if actual != expected:
            problems.append(f"missing {sorted(expected - actual)}, unexpected {sorted(actual - expected)}")
        if report.class_number != len(expected):
            problems.append(f"h = {report.class_number}, expected {len(expected)}")
        if not report.is_elementary_two or report.two_rank != 3:
            problems.append(f"structure {report.two_rank}, expected Z2^3")
        detail = "; ".join(problems) or f"h = {report.class_number}, Z2^{report.two_rank}"
        return CheckResult(check=f"class group C({-4 * D})", ok=not problems, detail=detail)

    def _check_generators(self, D: int) -> CheckResult:
        problems = []
        for p, expected in sorted(paper_data.PAPER_GENERATORS.items()):
            element = self.generator(D, p).element
            if (element.a, element.b) != expected:
                problems.append(f"zeta_{p} = ({element.a}, {element.b}), expected {expected}")
        names = ", ".join(f"zeta_{p}" for p in sorted(paper_data.PAPER_GENERATORS))
        return CheckResult(check="generators", ok=not problems, detail="; ".join(problems) or names)

    def _check_table(self, table: GoldenTable) -> CheckResult:
        D, c = table.D, table.c
        problems = []

        count = count_normalized(D, c, unverified=True)
        if count != table.expected_count:
            problems.append(f"count {count}, expected {table.expected_count}")

        solutions = enumerate_normalized(D, c, unverified=True, generators=self.generator)
        actual = {(s.triple.a, s.triple.b) for s in solutions}
        expected = {tuple(s) for s in table.solutions}
        if actual != expected:
            problems.append(f"solutions {sorted(actual)}, expected {sorted(expected)}")

        products = [
            ([f.e for f in exponents], z.a, z.b)
            for exponents, z in sign_vector_products(D, c, unverified=True, generators=self.generator)
        ]
        golden_products = [(g.exponents, g.a, g.b) for g in table.products]
        if products != golden_products:
            problems.append(f"products {products}, expected {golden_products}")

        by_triple = {(s.triple.a, s.triple.b): s.representative for s in solutions}
        for row in table.bijection:
            representative = by_triple.get((row.a, row.b))
            if representative is None:
                problems.append(f"no solution ({row.a}, {row.b}, {c}) for the bijection row")
                continue
            got = (representative.sign, [f.e for f in representative.factors])
            if got != (row.sign, row.exponents):
                problems.append(f"({row.a}, {row.b}, {c}) factors as {got}, expected {(row.sign, row.exponents)}")

        detail = "; ".join(problems) or f"c = {c}: {len(solutions)} solutions, {len(products)} products"
        return CheckResult(check=table.name, ok=not problems, detail=detail)

    def _check_pythagorean(self) -> List[CheckResult]:
        results = []
        for name, factors, expected in paper_data.PYTHAGOREAN_CHECKS:
            z = GroupElement(D=1, a=1, b=0, c=1)
            for a, b, c in factors:
                z = multiply(z, GroupElement(D=1, a=a, b=b, c=c))
            t = to_triple(z)
            got = (t.a, t.b, t.c)
            ok = got == tuple(expected)
            detail = f"{format_element(1, z.a, z.b, z.c)} -> {got}"
            if not ok:
                detail += f", expected {tuple(expected)}"
            results.append(CheckResult(check=f"D = 1: {name}", ok=ok, detail=detail))
        return results


# Create a global service instance
conic_service = ConicService()
