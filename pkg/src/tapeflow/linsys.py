"""Exact-rational equality systems  U x = b,  x >= 0.

Variables are named (names double as the dump format); rows are sparse
maps from variable index to rational coefficient.  Feasibility is
decided elsewhere; this module owns construction, certificate checking
and the text dump.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .rational import ONE, ZERO, Q, rat, rat_str


class MalformedCertificateError(ValueError):
    pass


@dataclass
class LinearSystem:
    names: list[str] = field(default_factory=list)
    index: dict[str, int] = field(default_factory=dict)
    rows: list[dict[int, object]] = field(default_factory=list)
    rhs: list[object] = field(default_factory=list)
    row_labels: list[str] = field(default_factory=list)

    def var(self, name: str) -> int:
        """Declare (or look up) a nonnegative variable by name."""
        idx = self.index.get(name)
        if idx is None:
            idx = len(self.names)
            self.index[name] = idx
            self.names.append(name)
        return idx

    def has_var(self, name: str) -> bool:
        return name in self.index

    def add_eq(self, coeffs: dict[int, object], rhs, label: str = "") -> None:
        self.rows.append({i: rat(c) for i, c in coeffs.items() if rat(c) != ZERO})
        self.rhs.append(rat(rhs))
        self.row_labels.append(label)

    def add_named_eq(self, terms: list[tuple[object, str]], rhs, label: str = "") -> None:
        """terms: list of (coefficient, variable-name); rhs constant."""
        coeffs: dict[int, object] = {}
        for c, name in terms:
            i = self.var(name)
            coeffs[i] = coeffs.get(i, ZERO) + rat(c)
        self.add_eq(coeffs, rhs, label)

    @property
    def n_vars(self) -> int:
        return len(self.names)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def residuals(self, assignment: dict[str, object]) -> list:
        missing = [n for n in self.names if n not in assignment]
        if missing:
            raise MalformedCertificateError(f"assignment misses {len(missing)} variables, e.g. {missing[0]!r}")
        values = [rat(assignment[n]) for n in self.names]
        out = []
        for row, b in zip(self.rows, self.rhs):
            acc = ZERO
            for i, c in row.items():
                acc += c * values[i]
            out.append(acc - b)
        return out

    def dump(self) -> str:
        """Text interchange dump: '=' rows with rationals as p or p/q."""
        lines = [f"\\ equality system: {self.n_rows} rows, {self.n_vars} nonnegative variables"]
        lines.append("subject_to")
        for k, (row, b) in enumerate(zip(self.rows, self.rhs)):
            terms = []
            for i in sorted(row):
                c = row[i]
                terms.append(f"{'+' if c >= ZERO else '-'} {rat_str(abs(c))} {self.names[i]}")
            body = " ".join(terms) if terms else "0"
            label = self.row_labels[k] or f"r{k}"
            lines.append(f" {label}: {body} = {rat_str(b)}")
        lines.append("bounds")
        for n in self.names:
            lines.append(f" {n} >= 0")
        lines.append("end")
        return "\n".join(lines) + "\n"


def verify_assignment(system: LinearSystem, assignment: dict[str, object]) -> bool:
    """Exact check: every equation holds with zero residual and every
    value is nonnegative.  Missing variables raise."""
    for name in system.names:
        if name not in assignment:
            raise MalformedCertificateError(f"missing variable {name!r}")
        if rat(assignment[name]) < ZERO:
            return False
    return all(r == ZERO for r in system.residuals(assignment))
