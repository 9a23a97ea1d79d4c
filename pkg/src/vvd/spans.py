"""Source positions shared by the Java front end and the XML readers."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class Span:
    """Inclusive 1-based region of one source file.

    Ordering is lexicographic on (file, start, end), which is the order
    findings are reported in.
    """

    file: str
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def __post_init__(self) -> None:
        if min(self.start_line, self.start_col, self.end_line, self.end_col) < 1:
            raise ValueError(f"span positions must be >= 1: {self}")
        if (self.start_line, self.start_col) > (self.end_line, self.end_col):
            raise ValueError(f"span start after end: {self}")

    @classmethod
    def point(cls, file: str, line: int, col: int) -> "Span":
        return cls(file, line, col, line, col)

    def slice(self, source: str) -> str:
        """Return the text this span covers in ``source`` (for tests/tools)."""
        lines = source.splitlines()
        if self.start_line == self.end_line:
            return lines[self.start_line - 1][self.start_col - 1 : self.end_col]
        parts = [lines[self.start_line - 1][self.start_col - 1 :]]
        parts.extend(lines[self.start_line : self.end_line - 1])
        parts.append(lines[self.end_line - 1][: self.end_col])
        return "\n".join(parts)
