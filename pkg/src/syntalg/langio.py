"""Text format for automata and JSON serialization helpers.

Automaton files:

    # comment
    alphabet: a b
    states: 2
    initial: 0
    finals: 0 1
    0 a 1
    1 a 0

Header lines may appear in any order but each at most once; `initial:` is
optional (omitted = no initial state); `finals:` may list nothing.  Each
remaining line is one transition `source symbol target`, at most one per
(source, symbol) pair.  State ids run from 0 to states-1.
"""

from __future__ import annotations

import json

from .dfa import Dfa
from .fields import format_scalar

SCHEMA_VERSION = 1


class FormatError(ValueError):
    pass


def parse_dfa(text: str) -> Dfa:
    alphabet = None
    n = None
    initial = None
    initial_seen = False
    finals = None
    transitions = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("alphabet:"):
            if alphabet is not None:
                raise FormatError(f"line {lineno}: duplicate alphabet line")
            alphabet = tuple(line[len("alphabet:"):].split())
            if not alphabet:
                raise FormatError(f"line {lineno}: empty alphabet")
            continue
        if line.startswith("states:"):
            if n is not None:
                raise FormatError(f"line {lineno}: duplicate states line")
            body = line[len("states:"):].strip()
            if not body.isdigit():
                raise FormatError(f"line {lineno}: bad state count {body!r}")
            n = int(body)
            continue
        if line.startswith("initial:"):
            if initial_seen:
                raise FormatError(f"line {lineno}: duplicate initial line")
            initial_seen = True
            body = line[len("initial:"):].strip()
            if not body.isdigit():
                raise FormatError(f"line {lineno}: bad initial state {body!r}")
            initial = int(body)
            continue
        if line.startswith("finals:"):
            if finals is not None:
                raise FormatError(f"line {lineno}: duplicate finals line")
            body = line[len("finals:"):].split()
            if not all(tok.isdigit() for tok in body):
                raise FormatError(f"line {lineno}: bad final state list")
            finals = frozenset(int(tok) for tok in body)
            continue
        parts = line.split()
        if len(parts) != 3:
            raise FormatError(f"line {lineno}: expected 'source symbol target'")
        src, sym, dst = parts
        if not (src.isdigit() and dst.isdigit()):
            raise FormatError(f"line {lineno}: state ids must be integers")
        transitions.append((lineno, int(src), sym, int(dst)))
    if alphabet is None:
        raise FormatError("missing alphabet line")
    if n is None:
        raise FormatError("missing states line")
    if len(set(alphabet)) != len(alphabet):
        raise FormatError("duplicate alphabet symbol")
    if finals is None:
        finals = frozenset()
    delta = {}
    for lineno, src, sym, dst in transitions:
        if sym not in alphabet:
            raise FormatError(f"line {lineno}: symbol {sym!r} not in alphabet")
        if not (0 <= src < n and 0 <= dst < n):
            raise FormatError(f"line {lineno}: state id out of range")
        if (src, sym) in delta:
            raise FormatError(f"line {lineno}: duplicate transition on ({src}, {sym})")
        delta[(src, sym)] = dst
    if initial is not None and not 0 <= initial < n:
        raise FormatError("initial state out of range")
    if any(not 0 <= f < n for f in finals):
        raise FormatError("final state out of range")
    return Dfa(alphabet, n, initial, finals, delta)


def read_dfa(path: str) -> Dfa:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_dfa(handle.read())


def format_dfa(dfa: Dfa) -> str:
    """Canonical text form: header, then transitions sorted by source state
    and alphabet position.  parse_dfa(format_dfa(d)) reproduces d."""
    lines = [f"alphabet: {' '.join(dfa.alphabet)}", f"states: {dfa.n}"]
    if dfa.initial is not None:
        lines.append(f"initial: {dfa.initial}")
    lines.append("finals: " + " ".join(str(q) for q in sorted(dfa.finals)))
    pos = {a: i for i, a in enumerate(dfa.alphabet)}
    for (p, a), q in sorted(dfa.delta.items(), key=lambda kv: (kv[0][0], pos[kv[0][1]])):
        lines.append(f"{p} {a} {q}")
    return "\n".join(lines) + "\n"


def write_dfa(path: str, dfa: Dfa) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(format_dfa(dfa))


def dfa_to_json(dfa: Dfa) -> dict:
    return {
        "alphabet": list(dfa.alphabet),
        "states": dfa.n,
        "initial": dfa.initial,
        "finals": sorted(dfa.finals),
        "transitions": [[p, a, q] for (p, a), q in
                        sorted(dfa.delta.items(), key=lambda kv: (kv[0][0], kv[0][1]))],
    }


def matrix_to_json(m) -> list:
    return [[format_scalar(x) for x in row] for row in m.rows]


def vector_to_json(v) -> list:
    return [format_scalar(x) for x in v]


def dump_report(report: dict) -> str:
    """Deterministic JSON: insertion order preserved, two-space indent."""
    return json.dumps(report, indent=2, ensure_ascii=True)
