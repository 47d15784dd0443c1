"""Deterministic automata with partial transitions, and the constructions on
them: compilation from rational expressions, minimization, boolean
combinations, residuals, reversal by accessible subset construction.

A Dfa may have no initial state only in the degenerate zero-state form, which
is the minimal automaton of the empty set.  The minimal automaton of a
nonempty language is trim and partial: no sink is materialized, undefined
transitions mean the word leads to the empty residual.
"""

from __future__ import annotations

from dataclasses import dataclass

from .regexes import (Concat, Letter, One, Regex, Star, Union, Zero,
                      letters_of, parse_regex)


@dataclass
class Dfa:
    alphabet: tuple
    n: int
    initial: int | None
    finals: frozenset
    delta: dict  # (state, symbol) -> state

    def __post_init__(self):
        self.alphabet = tuple(self.alphabet)
        self.finals = frozenset(self.finals)

    def validate(self):
        seen = set()
        for (p, a), q in self.delta.items():
            if not (0 <= p < self.n and 0 <= q < self.n):
                raise ValueError(f"transition {p} {a} {q} out of range")
            if a not in self.alphabet:
                raise ValueError(f"symbol {a!r} not in alphabet")
            if (p, a) in seen:
                raise ValueError(f"duplicate transition on ({p}, {a})")
            seen.add((p, a))
        if self.initial is not None and not 0 <= self.initial < self.n:
            raise ValueError("initial state out of range")
        if any(not 0 <= f < self.n for f in self.finals):
            raise ValueError("final state out of range")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("duplicate alphabet symbol")
        return self

    def step(self, q: int, a: str):
        return self.delta.get((q, a))

    def run(self, q: int, word: str):
        for a in word:
            if q is None:
                return None
            q = self.delta.get((q, a))
        return q

    def accepts(self, word: str) -> bool:
        if self.initial is None:
            return False
        q = self.run(self.initial, word)
        return q is not None and q in self.finals

    def is_total(self) -> bool:
        return all((q, a) in self.delta for q in range(self.n) for a in self.alphabet)


@dataclass
class Nfa:
    alphabet: tuple
    n: int
    initials: frozenset
    finals: frozenset
    edges: frozenset  # (p, symbol, q)


def empty_dfa(alphabet) -> Dfa:
    return Dfa(tuple(alphabet), 0, None, frozenset(), {})


def glushkov(node: Regex, alphabet) -> Nfa:
    """Position automaton: one state per letter occurrence plus a start state."""
    symbols = []  # symbol of position p is symbols[p-1]
    follow = {}

    def walk(n):
        if isinstance(n, Zero):
            return False, frozenset(), frozenset()
        if isinstance(n, One):
            return True, frozenset(), frozenset()
        if isinstance(n, Letter):
            symbols.append(n.symbol)
            p = len(symbols)
            follow.setdefault(p, set())
            return False, frozenset([p]), frozenset([p])
        if isinstance(n, Star):
            nullable, first, last = walk(n.child)
            for p in last:
                follow[p] |= first
            return True, first, last
        if isinstance(n, Concat):
            nl, fl, ll = walk(n.left)
            nr, fr, lr = walk(n.right)
            for p in ll:
                follow[p] |= fr
            return (nl and nr,
                    fl | fr if nl else fl,
                    lr | ll if nr else lr)
        if isinstance(n, Union):
            nl, fl, ll = walk(n.left)
            nr, fr, lr = walk(n.right)
            return nl or nr, fl | fr, ll | lr
        raise TypeError(f"not a regex node: {n!r}")

    nullable, first, last = walk(node)
    edges = set()
    for p in first:
        edges.add((0, symbols[p - 1], p))
    for p, targets in follow.items():
        for q in targets:
            edges.add((p, symbols[q - 1], q))
    finals = set(last)
    if nullable:
        finals.add(0)
    return Nfa(tuple(alphabet), len(symbols) + 1, frozenset([0]),
               frozenset(finals), frozenset(edges))


def determinize(nfa: Nfa):
    """Accessible subset construction.  Returns (dfa, subsets) where
    subsets[i] is the set of NFA states behind DFA state i.  Transitions to
    the empty subset are simply absent (partial DFA)."""
    if not nfa.initials:
        return empty_dfa(nfa.alphabet), []
    by_source = {}
    for p, a, q in nfa.edges:
        by_source.setdefault((p, a), set()).add(q)
    start = frozenset(nfa.initials)
    subsets = [start]
    index = {start: 0}
    delta = {}
    pos = 0
    while pos < len(subsets):
        current = subsets[pos]
        i = pos
        pos += 1
        for a in nfa.alphabet:
            target = set()
            for p in current:
                target |= by_source.get((p, a), set())
            if not target:
                continue
            target = frozenset(target)
            if target not in index:
                index[target] = len(subsets)
                subsets.append(target)
            delta[(i, a)] = index[target]
    finals = frozenset(i for i, s in enumerate(subsets) if s & nfa.finals)
    return Dfa(nfa.alphabet, len(subsets), 0, finals, delta), subsets


def compile_regex(source, alphabet=None) -> Dfa:
    """Minimal DFA of a rational expression (text or syntax tree).

    The position automaton is determinized by accessible subsets, then
    minimized, so `compile_regex("(aa)*")` is the familiar two-state cycle.
    """
    if isinstance(source, str):
        node = parse_regex(source, alphabet)
    else:
        node = source
    if alphabet is None:
        alphabet = tuple(sorted(letters_of(node)))
    else:
        alphabet = tuple(alphabet)
        extra = letters_of(node) - set(alphabet)
        if extra:
            raise ValueError(f"letters {sorted(extra)} not in alphabet")
    dfa, _ = determinize(glushkov(node, alphabet))
    return minimize(dfa)


def _accessible(dfa: Dfa):
    if dfa.initial is None:
        return set()
    seen = {dfa.initial}
    queue = [dfa.initial]
    while queue:
        q = queue.pop()
        for a in dfa.alphabet:
            t = dfa.delta.get((q, a))
            if t is not None and t not in seen:
                seen.add(t)
                queue.append(t)
    return seen


def _coaccessible(dfa: Dfa):
    reverse = {}
    for (p, a), q in dfa.delta.items():
        reverse.setdefault(q, set()).add(p)
    seen = set(dfa.finals)
    queue = list(dfa.finals)
    while queue:
        q = queue.pop()
        for p in reverse.get(q, ()):
            if p not in seen:
                seen.add(p)
                queue.append(p)
    return seen


def trim(dfa: Dfa) -> Dfa:
    """Restrict to states both accessible and coaccessible."""
    keep = _accessible(dfa) & _coaccessible(dfa)
    if dfa.initial is None or dfa.initial not in keep:
        return empty_dfa(dfa.alphabet)
    order = sorted(keep)
    renum = {q: i for i, q in enumerate(order)}
    delta = {(renum[p], a): renum[q] for (p, a), q in dfa.delta.items()
             if p in keep and q in keep}
    return Dfa(dfa.alphabet, len(order), renum[dfa.initial],
               frozenset(renum[q] for q in dfa.finals if q in keep), delta)


def complete(dfa: Dfa) -> Dfa:
    """Total automaton: add a sink if any transition is missing.  A DFA with
    no initial state becomes the one-state sink automaton."""
    if dfa.initial is None:
        delta = {(0, a): 0 for a in dfa.alphabet}
        return Dfa(dfa.alphabet, 1, 0, frozenset(), delta)
    if dfa.is_total():
        return dfa
    sink = dfa.n
    delta = dict(dfa.delta)
    for q in range(dfa.n + 1):
        for a in dfa.alphabet:
            delta.setdefault((q, a), sink)
    return Dfa(dfa.alphabet, dfa.n + 1, dfa.initial, dfa.finals, delta)


def canonical(dfa: Dfa) -> Dfa:
    """Renumber states by breadth-first discovery from the initial state, in
    alphabet order; drops unreachable states; sorts the alphabet.  Two
    isomorphic reachable DFAs have identical canonical forms."""
    alphabet = tuple(sorted(dfa.alphabet))
    if dfa.initial is None:
        return empty_dfa(alphabet)
    order = [dfa.initial]
    renum = {dfa.initial: 0}
    i = 0
    while i < len(order):
        q = order[i]
        i += 1
        for a in alphabet:
            t = dfa.delta.get((q, a))
            if t is not None and t not in renum:
                renum[t] = len(order)
                order.append(t)
    delta = {(renum[p], a): renum[q] for (p, a), q in dfa.delta.items()
             if p in renum and q in renum}
    finals = frozenset(renum[q] for q in dfa.finals if q in renum)
    return Dfa(alphabet, len(order), 0, finals, delta)


def minimize(dfa: Dfa) -> Dfa:
    """Minimal partial DFA of the language: trim, refine over the completed
    automaton, drop the sink class, renumber canonically.  The empty language
    yields the zero-state automaton."""
    t = trim(dfa)
    if t.n == 0:
        return empty_dfa(tuple(sorted(dfa.alphabet)))
    total = complete(t)
    sink = total.n - 1 if total.n > t.n else None
    cls = [1 if q in total.finals else 0 for q in range(total.n)]
    while True:
        signatures = {}
        new_cls = []
        for q in range(total.n):
            sig = (cls[q], tuple(cls[total.delta[(q, a)]] for a in total.alphabet))
            if sig not in signatures:
                signatures[sig] = len(signatures)
            new_cls.append(signatures[sig])
        if new_cls == cls:
            break
        cls = new_cls
    sink_cls = cls[sink] if sink is not None else None
    delta = {}
    finals = set()
    for q in range(t.n):
        if q in t.finals:
            finals.add(cls[q])
        for a in t.alphabet:
            target = total.delta[(q, a)]
            if cls[target] != sink_cls:
                delta[(cls[q], a)] = cls[target]
    quotient = Dfa(t.alphabet, max(cls) + 1, cls[t.initial], frozenset(finals), delta)
    return canonical(quotient)  # canonical drops the (unreachable) sink class


def boolean_combine(op: str, a: Dfa, b: Dfa | None = None) -> Dfa:
    """Boolean combination over a shared alphabet; result is minimized.
    op is one of intersection, union, difference, complement (complement is
    taken within A* for the automaton's own alphabet)."""
    if op == "complement":
        if b is not None:
            raise ValueError("complement takes a single automaton")
        total = complete(a)
        return minimize(Dfa(total.alphabet, total.n, total.initial,
                            frozenset(range(total.n)) - total.finals, total.delta))
    if b is None:
        raise ValueError(f"{op} needs two automata")
    if set(a.alphabet) != set(b.alphabet):
        raise ValueError("alphabet mismatch")
    ta, tb = complete(a), complete(b)
    alphabet = tuple(sorted(ta.alphabet))
    pairs = [(ta.initial, tb.initial)]
    index = {pairs[0]: 0}
    delta = {}
    i = 0
    while i < len(pairs):
        p, q = pairs[i]
        for sym in alphabet:
            t = (ta.delta[(p, sym)], tb.delta[(q, sym)])
            if t not in index:
                index[t] = len(pairs)
                pairs.append(t)
            delta[(i, sym)] = index[t]
        i += 1
    if op == "intersection":
        keep = lambda p, q: p in ta.finals and q in tb.finals
    elif op == "union":
        keep = lambda p, q: p in ta.finals or q in tb.finals
    elif op == "difference":
        keep = lambda p, q: p in ta.finals and q not in tb.finals
    else:
        raise ValueError(f"unknown operation {op!r}")
    finals = frozenset(i for i, (p, q) in enumerate(pairs) if keep(p, q))
    return minimize(Dfa(alphabet, len(pairs), 0, finals, delta))


def complement(a: Dfa) -> Dfa:
    return boolean_combine("complement", a)


def intersection(a: Dfa, b: Dfa) -> Dfa:
    return boolean_combine("intersection", a, b)


def union(a: Dfa, b: Dfa) -> Dfa:
    return boolean_combine("union", a, b)


def difference(a: Dfa, b: Dfa) -> Dfa:
    return boolean_combine("difference", a, b)


def is_empty_language(dfa: Dfa) -> bool:
    return trim(dfa).n == 0


def residual(dfa: Dfa, word: str, side: str = "left") -> Dfa:
    """Left residual w^-1 X or right residual X w^-1, minimized."""
    if side == "left":
        m = minimize(dfa)
        if m.initial is None:
            return m
        q = m.run(m.initial, word)
        if q is None:
            return empty_dfa(m.alphabet)
        return minimize(Dfa(m.alphabet, m.n, q, m.finals, m.delta))
    if side == "right":
        m = minimize(dfa)
        if m.initial is None:
            return m
        rev = accessible_reversal(m)
        res = residual(rev, word[::-1], "left")
        if res.initial is None:
            return empty_dfa(m.alphabet)
        return accessible_reversal(res)
    raise ValueError(f"side must be left or right, got {side!r}")


def reverse_nfa(dfa: Dfa) -> Nfa:
    edges = frozenset((q, a, p) for (p, a), q in dfa.delta.items())
    initials = frozenset(dfa.finals)
    finals = frozenset([dfa.initial]) if dfa.initial is not None else frozenset()
    return Nfa(dfa.alphabet, dfa.n, initials, finals, edges)


def accessible_reversal_subsets(dfa: Dfa):
    """Minimal automaton of the reversal of a trim DFA, with the state
    labels: state i of the result is the set subsets[i] of source states
    (the sets w^-1 T).  Input must be trim with an initial state."""
    if dfa.initial is None or dfa.n == 0:
        raise ValueError("reversal needs an automaton with an initial state")
    t = trim(dfa)
    if t.n != dfa.n:
        raise ValueError("reversal needs a trim automaton")
    rev, subsets = determinize(reverse_nfa(dfa))
    return canonical_with_subsets(rev, subsets)


def canonical_with_subsets(dfa: Dfa, subsets):
    """Canonical renumbering keeping subset labels aligned."""
    alphabet = tuple(sorted(dfa.alphabet))
    if dfa.initial is None:
        return empty_dfa(alphabet), []
    order = [dfa.initial]
    renum = {dfa.initial: 0}
    i = 0
    while i < len(order):
        q = order[i]
        i += 1
        for a in alphabet:
            t = dfa.delta.get((q, a))
            if t is not None and t not in renum:
                renum[t] = len(order)
                order.append(t)
    delta = {(renum[p], a): renum[q] for (p, a), q in dfa.delta.items()
             if p in renum and q in renum}
    finals = frozenset(renum[q] for q in dfa.finals if q in renum)
    out = Dfa(alphabet, len(order), 0, finals, delta)
    return out, [subsets[q] for q in order]


def accessible_reversal(dfa: Dfa) -> Dfa:
    return accessible_reversal_subsets(dfa)[0]


def is_strongly_connected(dfa: Dfa) -> bool:
    """True iff every state is reachable from every state along transitions."""
    if dfa.n == 0:
        raise ValueError("empty automaton")
    forward = {}
    backward = {}
    for (p, _), q in dfa.delta.items():
        forward.setdefault(p, set()).add(q)
        backward.setdefault(q, set()).add(p)

    def closure(adj):
        seen = {0}
        queue = [0]
        while queue:
            q = queue.pop()
            for t in adj.get(q, ()):
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
        return seen

    return len(closure(forward)) == dfa.n and len(closure(backward)) == dfa.n


def equivalent(a: Dfa, b: Dfa) -> bool:
    """Language equality via identity of canonical minimal automata."""
    if set(a.alphabet) != set(b.alphabet):
        raise ValueError("alphabet mismatch")
    ma, mb = minimize(a), minimize(b)
    return (ma.n, ma.initial, ma.finals, ma.delta) == (mb.n, mb.initial, mb.finals, mb.delta)
