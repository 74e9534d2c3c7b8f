"""Nondeterministic single-tape Turing machine model.

A machine is the usual 7-tuple: states, tape alphabet, blank, input
alphabet, transition relation, start state, accepting states.  Tape
cells are numbered so that the cell holding the leftmost input symbol
is cell 1; the cell to its left is cell 0, and so on (indices may be
negative).  Configurations store the tape sparsely with the blank as
the default symbol.

The on-disk machine format is line oriented and whitespace tokenized:

    states: qs q0 qc qa
    tape_alphabet: 0 1 _
    blank: _
    input_alphabet: 0 1
    start: qs
    accept: qa
    delta:
    qs 0 -> q0 0 R
    ...

Lines starting with '#' and blank lines are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

MOVES = ("L", "R", "S")

MOVE_OFFSET = {"L": -1, "R": 1, "S": 0}


class MachineError(ValueError):
    """Base class for machine description problems."""


class MachineSyntaxError(MachineError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class MachineSemanticError(MachineError):
    def __init__(self, token: str, message: str):
        super().__init__(f"{message}: {token!r}")
        self.token = token


# A transition ((q, s), (q', s', m)) stored flat as (q, s, q', s', m).
Transition = tuple[str, str, str, str, str]


@dataclass(frozen=True)
class MachineSpec:
    """The 7-tuple defining the machine under analysis."""

    states: frozenset[str]
    tape_alphabet: frozenset[str]
    blank: str
    input_alphabet: frozenset[str]
    delta: tuple[Transition, ...]
    start: str
    accepting: frozenset[str]

    # (q, s) -> transitions applicable there, in file order
    table: dict[str, dict[str, tuple[Transition, ...]]] = field(
        compare=False, hash=False, default_factory=dict
    )

    def __post_init__(self):
        # delta is a set; drop exact duplicates, keeping first-seen order
        deduped = tuple(dict.fromkeys(self.delta))
        if deduped != self.delta:
            object.__setattr__(self, "delta", deduped)
        if not self.input_alphabet <= self.tape_alphabet:
            raise MachineSemanticError(
                ",".join(sorted(self.input_alphabet - self.tape_alphabet)),
                "input symbol not in tape alphabet",
            )
        if self.blank not in self.tape_alphabet:
            raise MachineSemanticError(self.blank, "blank not in tape alphabet")
        if self.blank in self.input_alphabet:
            raise MachineSemanticError(self.blank, "blank may not be an input symbol")
        if self.start not in self.states:
            raise MachineSemanticError(self.start, "undeclared start state")
        if not self.accepting <= self.states:
            raise MachineSemanticError(
                ",".join(sorted(self.accepting - self.states)), "undeclared accepting state"
            )
        if not self.delta:
            raise MachineSemanticError("delta", "at least one transition is required")
        for q, s, q2, s2, m in self.delta:
            for state in (q, q2):
                if state not in self.states:
                    raise MachineSemanticError(state, "transition uses undeclared state")
            for sym in (s, s2):
                if sym not in self.tape_alphabet:
                    raise MachineSemanticError(sym, "transition uses undeclared symbol")
            if m not in MOVES:
                raise MachineSemanticError(m, "bad move")
        table: dict[str, dict[str, tuple[Transition, ...]]] = {}
        for tr in self.delta:
            q, s = tr[0], tr[1]
            per_state = table.setdefault(q, {})
            per_state[s] = per_state.get(s, ()) + (tr,)
        object.__setattr__(self, "table", table)

    def transitions_at(self, state: str, symbol: str) -> tuple[Transition, ...]:
        return self.table.get(state, {}).get(symbol, ())

    def read_symbols(self, state: str) -> tuple[str, ...]:
        """Symbols for which the given state has at least one transition."""
        return tuple(sorted(self.table.get(state, {})))


@dataclass(frozen=True)
class Configuration:
    """State + sparse tape + head position.  Immutable and hashable."""

    state: str
    tape: tuple[tuple[int, str], ...]  # sorted (cell, symbol) pairs, no blanks stored
    head: int

    def symbol_at(self, cell: int, blank: str) -> str:
        for c, s in self.tape:
            if c == cell:
                return s
        return blank

    def tape_dict(self) -> dict[int, str]:
        return dict(self.tape)


def tape_symbol(x: str, cell: int, blank: str) -> str:
    """Initial tape content of the given cell for input word x."""
    if 1 <= cell <= len(x):
        return x[cell - 1]
    return blank


def initial_configuration(machine: MachineSpec, x: str) -> Configuration:
    for ch in x:
        if ch not in machine.input_alphabet:
            raise MachineSemanticError(ch, "input symbol not in input alphabet")
    cells = tuple((i + 1, ch) for i, ch in enumerate(x))
    return Configuration(state=machine.start, tape=cells, head=1)


def step(machine: MachineSpec, conf: Configuration) -> tuple[Configuration, ...]:
    """All successor configurations (empty tuple when the machine halts)."""
    read = conf.symbol_at(conf.head, machine.blank)
    out = []
    for _, _, q2, s2, m in machine.transitions_at(conf.state, read):
        tape = dict(conf.tape)
        if s2 == machine.blank:
            tape.pop(conf.head, None)
        else:
            tape[conf.head] = s2
        out.append(
            Configuration(
                state=q2,
                tape=tuple(sorted(tape.items())),
                head=conf.head + MOVE_OFFSET[m],
            )
        )
    return tuple(out)


def sigma(machine: MachineSpec) -> int:
    """Max over states of the number of distinct readable symbols."""
    if not machine.table:
        return 0
    return max(len(per_state) for per_state in machine.table.values())


def _tokens(line: str) -> list[str]:
    return line.split()


def parse_machine(text: str) -> MachineSpec:
    """Parse a machine description document; see the module docstring."""
    lines: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        lines.append((lineno, stripped))

    it: Iterator[tuple[int, str]] = iter(lines)

    def expect(keyword: str, min_args: int) -> tuple[int, list[str]]:
        try:
            lineno, line = next(it)
        except StopIteration:
            raise MachineSyntaxError(0, f"missing '{keyword}:' line") from None
        toks = _tokens(line)
        if not toks or toks[0] != keyword + ":":
            raise MachineSyntaxError(lineno, f"expected '{keyword}:', got {toks[0] if toks else ''!r}")
        args = toks[1:]
        if len(args) < min_args:
            raise MachineSyntaxError(lineno, f"'{keyword}:' needs at least {min_args} token(s)")
        return lineno, args

    _, states = expect("states", 1)
    _, tape_alphabet = expect("tape_alphabet", 1)
    blank_line, blanks = expect("blank", 1)
    if len(blanks) != 1:
        raise MachineSyntaxError(blank_line, "'blank:' takes exactly one symbol")
    _, input_alphabet = expect("input_alphabet", 1)
    start_line, starts = expect("start", 1)
    if len(starts) != 1:
        raise MachineSyntaxError(start_line, "'start:' takes exactly one state")
    _, accepting = expect("accept", 0)
    expect("delta", 0)

    delta: list[Transition] = []
    for lineno, line in it:
        toks = _tokens(line)
        if len(toks) != 6 or toks[2] != "->":
            raise MachineSyntaxError(lineno, "transition must be 'q s -> q2 s2 M'")
        q, s, _, q2, s2, m = toks
        if m not in MOVES:
            raise MachineSyntaxError(lineno, f"move must be one of L R S, got {m!r}")
        delta.append((q, s, q2, s2, m))

    return MachineSpec(
        states=frozenset(states),
        tape_alphabet=frozenset(tape_alphabet),
        blank=blanks[0],
        input_alphabet=frozenset(input_alphabet),
        delta=tuple(delta),
        start=starts[0],
        accepting=frozenset(accepting),
    )


def format_machine(machine: MachineSpec) -> str:
    """Render a MachineSpec back into the file format (round-trippable)."""
    out = [
        "states: " + " ".join(sorted(machine.states)),
        "tape_alphabet: " + " ".join(sorted(machine.tape_alphabet)),
        "blank: " + machine.blank,
        "input_alphabet: " + " ".join(sorted(machine.input_alphabet)),
        "start: " + machine.start,
        "accept: " + " ".join(sorted(machine.accepting)),
        "delta:",
    ]
    for q, s, q2, s2, m in machine.delta:
        out.append(f"{q} {s} -> {q2} {s2} {m}")
    return "\n".join(out) + "\n"
