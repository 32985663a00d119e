import abc
import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple, Union

from colorama import Fore, Style

from .numeric_core import format_rational
from .polynomial import DensePoly, coefficient_strings, render
from .report import CheckReport

Value = Union[DensePoly, Fraction, int, float, str, Sequence[str]]
Field = Tuple[str, Value]


@dataclass
class TableData:
    title: str
    meta: Dict[str, str]
    headers: Tuple[str, ...]
    rows: List[Tuple[str, ...]]


def format_params(report: CheckReport) -> str:
    return " ".join(
        f"{name}={format_rational(value)}" for name, value in report.parameters.items()
    )


def _text(value: Value) -> str:
    if isinstance(value, DensePoly):
        return render(value)
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return format_rational(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, str):
        return value
    return ", ".join(value)


def _json_value(value: Value) -> Any:
    if isinstance(value, DensePoly):
        return coefficient_strings(value)
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return format_rational(value)
    if isinstance(value, (float, str)):
        return value
    return list(value)


def _dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":"))


class Formatter(abc.ABC):
    # CSV output keeps stdout a single table, so its summary goes to stderr
    summary_to_stderr = False

    @abc.abstractmethod
    def report(self, report: CheckReport) -> str:
        """One line per check."""
        ...

    @abc.abstractmethod
    def summary(self, passed: int, total: int) -> str:
        ...

    @abc.abstractmethod
    def solution(self, fields: Sequence[Field]) -> str:
        """Named values, in order; polynomials may be rendered or listed."""
        ...

    @abc.abstractmethod
    def table(self, data: TableData) -> str:
        ...


@dataclass
class PlainFormatter(Formatter):
    def status(self, passed: bool) -> str:
        return "PASS" if passed else "FAIL"

    def report(self, report: CheckReport) -> str:
        return (
            f"{self.status(report.passed)} {report.identity_name}"
            f" {format_params(report)}"
            f" residual={report.residual} [{report.method}]"
        )

    def summary(self, passed: int, total: int) -> str:
        return f"passed {passed}/{total}"

    def solution(self, fields: Sequence[Field]) -> str:
        return "\n".join(f"{name} = {_text(value)}" for name, value in fields)

    def heading(self, text: str) -> str:
        return text

    def table(self, data: TableData) -> str:
        rows = [data.headers] + data.rows
        width = max(len(cell) for row in rows for cell in row) + 2
        lines = [self.heading(data.title)]
        for row in rows:
            lines.append("".join(cell.ljust(width) for cell in row).rstrip())
        return "\n".join(lines)


@dataclass
class AnsiFormatter(PlainFormatter):
    def status(self, passed: bool) -> str:
        if passed:
            return f"{Fore.GREEN}PASS{Fore.RESET}"
        return f"{Style.BRIGHT}{Fore.RED}FAIL{Fore.RESET}{Style.NORMAL}"

    def heading(self, text: str) -> str:
        return f"{Style.BRIGHT}{text}{Style.NORMAL}"


@dataclass
class JsonFormatter(Formatter):
    def report(self, report: CheckReport) -> str:
        return _dumps(report.to_json_dict())

    def summary(self, passed: int, total: int) -> str:
        return _dumps({"summary": {"passed": passed, "total": total}})

    def solution(self, fields: Sequence[Field]) -> str:
        return _dumps({name: _json_value(value) for name, value in fields})

    def table(self, data: TableData) -> str:
        output: Dict[str, Any] = dict(data.meta)
        output["rows"] = [dict(zip(data.headers, row)) for row in data.rows]
        return _dumps(output)


@dataclass
class CsvFormatter(Formatter):
    summary_to_stderr = True
    header_written: bool = field(default=False)

    @staticmethod
    def _rows(rows: Sequence[Sequence[str]]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerows(rows)
        return buffer.getvalue().rstrip("\n")

    def report(self, report: CheckReport) -> str:
        rows: List[Sequence[str]] = []
        if not self.header_written:
            rows.append(("identity", "params", "passed", "residual", "method"))
            self.header_written = True
        params = ";".join(
            f"{k}={format_rational(v)}" for k, v in report.parameters.items()
        )
        rows.append(
            (
                report.identity_name,
                params,
                str(report.passed).lower(),
                report.residual,
                report.method,
            )
        )
        return self._rows(rows)

    def summary(self, passed: int, total: int) -> str:
        return f"passed {passed}/{total}"

    def solution(self, fields: Sequence[Field]) -> str:
        rows: List[Sequence[str]] = [("field", "index", "value")]
        for name, value in fields:
            if isinstance(value, DensePoly):
                coeffs = coefficient_strings(value)
                rows.extend((name, str(k), c) for k, c in enumerate(coeffs))
            elif isinstance(value, (list, tuple)):
                rows.extend((name, str(k), c) for k, c in enumerate(value))
            else:
                rows.append((name, "", _text(value)))
        return self._rows(rows)

    def table(self, data: TableData) -> str:
        return self._rows([data.headers] + data.rows)


FORMATS = ("human", "json", "csv")


def create_formatter(name: str, color: bool) -> Formatter:
    if name == "json":
        return JsonFormatter()
    if name == "csv":
        return CsvFormatter()
    return AnsiFormatter() if color else PlainFormatter()
