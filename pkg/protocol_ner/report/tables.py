"""
Protocol NER - Text Tables

Human-readable renderings of the JSON reports. Colour is only added when
the caller asks for it (the CLI does so for terminals).
"""

from typing import Any, Dict, List, Mapping, Optional, Sequence

from colorama import Fore, Style

from ..corpus.stats import StatsReport
from ..eval.confusion import ConfusionTable
from ..eval.scoring import ScoreReport, summary_rows


def _table(header: Sequence[str], rows: Sequence[Sequence[Any]], color: bool = False) -> str:
    cells = [[str(c) for c in header]] + [[_cell(c) for c in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]

    def line(row: List[str]) -> str:
        first = row[0].ljust(widths[0])
        rest = [cell.rjust(width) for cell, width in zip(row[1:], widths[1:])]
        return "  ".join([first] + rest).rstrip()

    head = line(cells[0])
    if color:
        head = f"{Style.BRIGHT}{head}{Style.RESET_ALL}"
    rule = "-" * len(line(cells[0]))
    return "\n".join([head, rule] + [line(row) for row in cells[1:]]) + "\n"


def _cell(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.4f}"
    return str(value)


def render_scores(reports: Mapping[str, ScoreReport], color: bool = False) -> str:
    """One block per criterion: per-label rows, micro and macro."""
    blocks = []
    for name, report in reports.items():
        rows = [
            [label, s.tp, s.predicted, s.gold, s.precision, s.recall, s.f1]
            for label, s in summary_rows(report)
        ]
        rows.append(["macro", "", "", "", report.macro_precision, report.macro_recall, report.macro_f1])
        title = f"[{name}]"
        if color:
            title = f"{Fore.CYAN}{title}{Style.RESET_ALL}"
        blocks.append(title + "\n" + _table(["label", "tp", "pred", "gold", "P", "R", "F1"], rows, color))
    return "\n".join(blocks)


def render_confusions(table: ConfusionTable, k: Optional[int] = 10, color: bool = False) -> str:
    rows = [list(row) for row in table.top(k)]
    return _table(["P_Label", "T_Label", "Count"], rows, color)


def render_stats(report: StatsReport, color: bool = False) -> str:
    rows: List[List[Any]] = [
        ["protocols", report.protocols],
        ["sentences", report.sentences],
        ["tokens", report.tokens],
        ["vocabulary", report.vocabulary],
    ]
    if report.oov is not None:
        rows += [
            ["reference vocabulary", report.reference_vocabulary],
            ["in reference", report.in_reference],
            ["OOV types", report.oov],
            ["OOV tokens", report.oov_tokens],
        ]
    text = _table(["statistic", "value"], rows, color)
    entity_rows = [
        [label, report.entity_counts.get(label, 0), report.token_counts.get(label, 0)]
        for label in sorted(set(report.entity_counts) | (set(report.token_counts) - {"O"}))
    ]
    if entity_rows:
        text += "\n" + _table(["entity type", "mentions", "tokens"], entity_rows, color)
    return text


def render_pipeline(report: Dict[str, Any], criterion: str = "exact", color: bool = False) -> str:
    """Micro-F1 per ensemble size and method, then the individual models."""
    methods: List[str] = []
    for row in report["rows"]:
        for name in row["methods"]:
            if name not in methods:
                methods.append(name)
    summary = report["individual_summary"][criterion]
    rows = [
        [row["n"]] + [row["methods"][m][criterion]["f1"] if m in row["methods"] else "" for m in methods]
        for row in report["rows"]
    ]
    text = _table(["n"] + methods, rows, color)
    text += (
        f"\nindividual models ({criterion}): mean {summary['mean']:.4f}, "
        f"min {summary['min']:.4f}, max {summary['max']:.4f}\n"
    )
    return text
