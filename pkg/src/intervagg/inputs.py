"""Reading weight files: whitespace/line lists and (label, weight) CSV."""
from __future__ import annotations

import csv
import io
import sys
from dataclasses import dataclass

from .core import EPS_SUM, ProbabilityVector, validate_distribution
from .errors import EmptyInput, InputError


class ParseError(InputError):
    def __init__(self, line, token, source="<input>"):
        self.line = line
        self.token = token
        super().__init__(f"{source}:{line}: cannot parse weight {token!r}")


@dataclass
class InputSpec:
    path: str = "-"
    format: str = "lines"
    counts: bool = False
    normalize: bool = False
    eps_sum: float = EPS_SUM

    @property
    def mode(self) -> str:
        return "renormalize" if (self.counts or self.normalize) else "strict"


@dataclass
class LoadedInput:
    p: ProbabilityVector
    labels: list[str] | None
    raw_sum: float


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def parse_lines(text, source="<input>"):
    """Weights separated by whitespace or newlines; ``#`` starts a comment."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0]
        for tok in line.split():
            try:
                out.append(float(tok))
            except ValueError:
                raise ParseError(lineno, tok, source) from None
    return out


def parse_csv(text, source="<input>"):
    """One column of weights, or ``label,weight`` rows. A non-numeric first row is a header."""
    weights, labels = [], []
    rows = [(i, r) for i, r in enumerate(csv.reader(io.StringIO(text)), 1)
            if r and any(c.strip() for c in r) and not r[0].lstrip().startswith("#")]
    for k, (lineno, row) in enumerate(rows):
        row = [c.strip() for c in row]
        if len(row) > 2:
            raise ParseError(lineno, ",".join(row), source)
        tok = row[-1]
        try:
            w = float(tok)
        except ValueError:
            if k == 0:
                continue
            raise ParseError(lineno, tok, source) from None
        weights.append(w)
        labels.append(row[0] if len(row) == 2 else None)
    has_labels = any(lab is not None for lab in labels)
    if has_labels:
        labels = [lab if lab is not None else str(i + 1) for i, lab in enumerate(labels)]
    return weights, (labels if has_labels else None)


def load_input(spec: InputSpec, text: str | None = None) -> LoadedInput:
    if text is None:
        text = _read_text(spec.path)
    source = "<stdin>" if spec.path == "-" else spec.path
    if spec.format == "csv":
        weights, labels = parse_csv(text, source)
    elif spec.format == "lines":
        weights, labels = parse_lines(text, source), None
    else:
        raise ValueError(f"unknown input format {spec.format!r}")
    if not weights:
        raise EmptyInput()
    p = validate_distribution(weights, spec.mode, spec.eps_sum)
    return LoadedInput(p, labels, float(sum(weights)))
