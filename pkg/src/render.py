"""
Rendering of command reports as JSON, markdown or CSV documents.

Plain mode is pure ASCII ("sqrt(-105)", "zeta11^-1"); unicode mode prints
"√−105" and "ζ₁₁⁻¹". JSON always carries the ASCII element strings so the
structured fields, not the display mode, determine every other rendering.
"""
import json
from typing import Iterable, List, Sequence

import pandas as pd

from arith import factorize
from quadform import group_structure, order_at_most_two
from schemas import (
    ClassGroupReport,
    ConvenientReport,
    FactorReport,
    GeneratorTable,
    OutputDocument,
    OutputFormat,
    SolveReport,
    SweepReport,
    VerificationReport,
    ZetaPower,
)

_SUBSCRIPT = str.maketrans("0123456789-", "₀₁₂₃₄₅₆₇₈₉₋")
_SUPERSCRIPT = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


def format_element(D: int, a: int, b: int, c: int, unicode: bool = False) -> str:
    """(a + b*sqrt(-D)) / c, e.g. "(73+12*sqrt(-105))/143"."""
    if b == 0:
        numerator = str(a)
    else:
        radical = f"√−{D}" if unicode else f"sqrt(-{D})"
        times = "" if unicode else "*"
        magnitude = radical if abs(b) == 1 else f"{abs(b)}{times}{radical}"
        if a == 0:
            numerator = f"-{magnitude}" if b < 0 else magnitude
        else:
            numerator = f"{a}{'+' if b > 0 else '-'}{magnitude}"
    if c == 1:
        return numerator
    return f"({numerator})/{c}"


def format_product(sign: int, unit_i: bool, exponents: Sequence[ZetaPower], unicode: bool = False) -> str:
    """sign * (i) * prod zeta_p^e, e.g. "-zeta11^-1*zeta13^-1"."""
    if unicode:
        terms = [f"ζ{str(f.p).translate(_SUBSCRIPT)}" + ("" if f.e == 1 else str(f.e).translate(_SUPERSCRIPT)) for f in exponents]
        body = "".join(terms)
        minus, unit = "−", "i"
        if unit_i and body:
            unit += "·"
    else:
        terms = [f"zeta{f.p}" + ("" if f.e == 1 else f"^{f.e}") for f in exponents]
        body = "*".join(terms)
        minus, unit = "-", "i"
        if unit_i and body:
            unit += "*"

    text = (unit if unit_i else "") + body
    if not text:
        text = "1"
    return (minus + text) if sign < 0 else text


def format_number(n: int, unicode: bool = False) -> str:
    """n with its prime factorization, e.g. "143 = 11*13"."""
    factors = factorize(n).factors
    if len(factors) == 1 and factors[0][1] == 1 or n == 1:
        return str(n)
    if unicode:
        parts = [str(p) + ("" if e == 1 else str(e).translate(_SUPERSCRIPT)) for p, e in factors]
        return f"{n} = " + "·".join(parts)
    parts = [str(p) + ("" if e == 1 else f"^{e}") for p, e in factors]
    return f"{n} = " + "*".join(parts)


def _frame(headers: Sequence[str], rows: Iterable[Sequence[object]]) -> pd.DataFrame:
    return pd.DataFrame([list(row) for row in rows], columns=list(headers), dtype=object)


def _markdown_table(headers: Sequence[str], rows: Iterable[Sequence[object]]) -> List[str]:
    # cells are printed verbatim; "2" and "-1" must not be reformatted as numbers
    return _frame(headers, rows).to_markdown(index=False, disable_numparse=True).splitlines()


def _csv(headers: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    return _frame(headers, rows).to_csv(index=False, lineterminator="\n")


def _exponent_text(exponents: Sequence[ZetaPower]) -> str:
    return ";".join(f"{f.p}:{f.e}" for f in exponents)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _document(fmt: OutputFormat, body: str) -> OutputDocument:
    if not body.endswith("\n"):
        body += "\n"
    return OutputDocument(format=fmt, body=body)


def render_classgroup(report: ClassGroupReport, fmt: OutputFormat, unicode: bool = False) -> OutputDocument:
    structure = group_structure(report)
    if fmt == OutputFormat.JSON:
        data = report.model_dump(mode="json")
        data["structure"] = structure
        return _document(fmt, json.dumps(data, indent=2))

    rows = [(f.a, f.b, f.c, _yes(order_at_most_two(f))) for f in report.forms]
    if fmt == OutputFormat.CSV:
        return _document(fmt, _csv(["a", "b", "c", "order_at_most_two"], rows))

    if unicode and report.is_elementary_two:
        structure = "ℤ₂" + ("" if report.two_rank == 1 else str(report.two_rank).translate(_SUPERSCRIPT))
    lines = [f"## Class group C({report.discriminant})", ""]
    lines += _markdown_table(["a", "b", "c", "order <= 2"], rows)
    lines += [
        "",
        f"class number h = {report.class_number}",
        f"elementary abelian 2-group: {_yes(report.is_elementary_two)}",
        f"structure: {structure}",
    ]
    if len(report.display_forms) != len(report.forms):
        lines.append("representatives with b >= 0: " + ", ".join(str(f) for f in report.display_forms))
    return _document(fmt, "\n".join(lines))


def render_generators(table: GeneratorTable, fmt: OutputFormat, unicode: bool = False) -> OutputDocument:
    if fmt == OutputFormat.JSON:
        return _document(fmt, table.model_dump_json(indent=2))

    if fmt == OutputFormat.CSV:
        rows = [(r.p, r.symbol, "" if r.a is None else r.a, "" if r.b is None else r.b, str(r.applicable).lower()) for r in table.rows]
        return _document(fmt, _csv(["p", "symbol", "a", "b", "applicable"], rows))

    rows = []
    for r in table.rows:
        if r.applicable:
            name = format_product(1, False, [ZetaPower(p=r.p, e=1)], unicode)
            rows.append((r.p, r.symbol, r.a, r.b, f"{name} = {format_element(table.D, r.a, r.b, r.p, unicode)}"))
        else:
            rows.append((r.p, r.symbol, "-", "-", f"inapplicable (symbol = {r.symbol})"))
    lines = []
    if table.warning:
        lines += [f"> warning: {table.warning}", ""]
    lines += [f"## Generators for D = {table.D}", ""]
    lines += _markdown_table(["p", f"(-{table.D}/p)", "a", "b", "generator"], rows)
    return _document(fmt, "\n".join(lines))


def render_solve(report: SolveReport, fmt: OutputFormat, unicode: bool = False) -> OutputDocument:
    if fmt == OutputFormat.JSON:
        return _document(fmt, report.model_dump_json(indent=2))

    if fmt == OutputFormat.CSV:
        rows = [(r.a, r.b, r.c, r.element, r.sign, str(r.unit_i).lower(), _exponent_text(r.exponents)) for r in report.records]
        return _document(fmt, _csv(["a", "b", "c", "element", "sign", "unit_i", "exponents"], rows))

    D, c = report.D, report.c
    arrow = "↦" if unicode else "->"
    if report.expected_count:
        expected = f"2^{report.distinct_primes - 1} = {report.expected_count}"
    else:
        expected = "0"
    triples = ", ".join(f"({r.a}, {r.b}, {r.c})" for r in report.records) or "none"
    elements = ", ".join(format_element(D, r.a, r.b, r.c, unicode) for r in report.records) or "none"
    products = "<br>".join(
        f"{format_element(D, p.a, p.b, c, unicode)} = {format_product(1, False, p.exponents, unicode)}"
        for p in report.products
    ) or "none"
    bijection = "<br>".join(
        f"{format_product(r.sign, r.unit_i, r.exponents, unicode)} {arrow} ({r.a}, {r.b}, {r.c})"
        for r in report.records
    ) or "none"

    if unicode:
        title = f"## x² + {D}y² = z² with z = {format_number(c, unicode)}"
        group, quotient = "G_D(ℚ)", "T₂/Γ"
    else:
        title = f"## x^2 + {D}y^2 = z^2 with z = {format_number(c)}"
        group, quotient = "G_D(Q)", "T2/Gamma"

    lines = []
    if report.warning:
        lines += [f"> warning: {report.warning}", ""]
    lines += [title, ""]
    lines += _markdown_table(
        ["Quantity", "Value"],
        [
            ("Expected number of solutions", expected),
            ("Actual solutions", triples),
            (f"Solutions as elements of {group}", elements),
            ("Factorization of elements", products),
            (f"Bijection between {quotient} and normalized solutions", bijection),
        ],
    )
    return _document(fmt, "\n".join(lines))


def render_factor(report: FactorReport, fmt: OutputFormat, unicode: bool = False) -> OutputDocument:
    if fmt == OutputFormat.JSON:
        return _document(fmt, report.model_dump_json(indent=2))

    if fmt == OutputFormat.CSV:
        row = (report.sign, str(report.unit_i).lower(), _exponent_text(report.exponents))
        return _document(fmt, _csv(["sign", "unit_i", "exponents"], [row]))

    element = format_element(report.D, report.a, report.b, report.c, unicode)
    product = format_product(report.sign, report.unit_i, report.exponents, unicode)
    lines = []
    if report.warning:
        lines += [f"> warning: {report.warning}", ""]
    lines += [f"## Factorization in G_{report.D}", "", f"{element} = {product}"]
    if report.exponents:
        lines += [""] + _markdown_table(["p", "exponent"], [(f.p, f.e) for f in report.exponents])
    return _document(fmt, "\n".join(lines))


def render_convenient(report: ConvenientReport, fmt: OutputFormat) -> OutputDocument:
    if fmt == OutputFormat.JSON:
        return _document(fmt, report.model_dump_json(indent=2))

    rows = [
        (r.D, str(r.squarefree).lower(), str(r.residue_ok).lower(), str(r.elementary_two).lower(), r.class_number, str(r.applicable).lower())
        for r in report.rows
    ]
    if fmt == OutputFormat.CSV:
        return _document(fmt, _csv(["D", "squarefree", "residue_ok", "elementary_two", "class_number", "applicable"], rows))

    lines = [f"## Convenient D up to {report.max}", ""]
    lines += _markdown_table(["D", "squarefree", "D mod 4 in {1,2}", "C(-4D) elementary 2", "h", "applicable"], rows)
    lines += ["", f"applicable ({len(report.applicable)}): " + ", ".join(str(d) for d in report.applicable)]
    for d in report.flagged:
        lines.append(f"flagged: {d} is listed as convenient but fails the squarefree / residue filter")
    for d in report.unlisted:
        lines.append(f"unlisted: {d} passes the filter but is missing from the known list")
    return _document(fmt, "\n".join(lines))


def render_sweep(report: SweepReport, fmt: OutputFormat) -> OutputDocument:
    if fmt == OutputFormat.JSON:
        return _document(fmt, report.model_dump_json(indent=2))

    if fmt == OutputFormat.CSV:
        row = (report.D, report.c_max, report.checked, report.nonempty, len(report.mismatches))
        return _document(fmt, _csv(["D", "c_max", "checked", "nonempty", "mismatches"], [row]))

    lines = [
        f"## Oracle sweep for D = {report.D}, c <= {report.c_max}",
        "",
        f"checked: {report.checked}",
        f"nonempty: {report.nonempty}",
        f"mismatches: {len(report.mismatches)}",
    ]
    for m in report.mismatches:
        enumerated = ", ".join(str(t) for t in m.enumerated) or "none"
        oracle = ", ".join(str(t) for t in m.oracle) or "none"
        lines.append(f"- c = {m.c}: expected {m.expected_count}; enumerated {enumerated}; oracle {oracle}")
    return _document(fmt, "\n".join(lines))


def render_verification(report: VerificationReport, fmt: OutputFormat) -> OutputDocument:
    if fmt == OutputFormat.JSON:
        return _document(fmt, report.model_dump_json(indent=2))

    rows = [(c.check, "ok" if c.ok else "MISMATCH", c.detail) for c in report.checks]
    if fmt == OutputFormat.CSV:
        return _document(fmt, _csv(["check", "status", "detail"], rows))

    lines = ["## Verification of the D = 105 tables", ""]
    lines += _markdown_table(["check", "status", "detail"], rows)
    lines += ["", f"{report.tables_verified}/{report.tables_total} tables verified"]
    return _document(fmt, "\n".join(lines))
