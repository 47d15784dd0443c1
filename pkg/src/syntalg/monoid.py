"""Transition monoids of partial deterministic automata.

Elements are partial maps on states acting on the right: the product t*u is
"apply t, then u".  The monoid is closed by breadth-first products over the
generators, so each element keeps the first (hence shortest) word that
produces it.  Green's relations are computed as strongly connected components
of the two Cayley graphs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dfa import Dfa, is_strongly_connected, minimize

DEFAULT_CAP = 10 ** 6


class MonoidCapExceeded(RuntimeError):
    pass


class EmptyLanguageError(ValueError):
    pass


@dataclass(frozen=True)
class Transformation:
    """Partial map on {0..n-1}; None marks an undefined image."""

    mapping: tuple

    def __mul__(self, other: "Transformation") -> "Transformation":
        om = other.mapping
        return Transformation(tuple(om[x] if x is not None else None
                                    for x in self.mapping))

    def __call__(self, q):
        return self.mapping[q] if q is not None else None

    @property
    def rank(self) -> int:
        return len({x for x in self.mapping if x is not None})

    def image(self):
        return frozenset(x for x in self.mapping if x is not None)

    def is_zero(self) -> bool:
        return all(x is None for x in self.mapping)

    @staticmethod
    def identity(n: int) -> "Transformation":
        return Transformation(tuple(range(n)))

    @staticmethod
    def empty(n: int) -> "Transformation":
        return Transformation((None,) * n)

    @staticmethod
    def of_letter(dfa: Dfa, a: str) -> "Transformation":
        return Transformation(tuple(dfa.delta.get((q, a)) for q in range(dfa.n)))


class FiniteMonoid:
    """Transition monoid with representative words.  Element 0 is the
    identity; gens maps each alphabet symbol to its element index."""

    def __init__(self, n_states, alphabet, elements, gens, words):
        self.n_states = n_states
        self.alphabet = tuple(alphabet)
        self.elements = elements
        self.index = {t: i for i, t in enumerate(elements)}
        self.gens = gens
        self.words = words

    def __len__(self):
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self.index[self.elements[i] * self.elements[j]]

    def element_of_word(self, word: str) -> int:
        i = 0
        for a in word:
            i = self.mul(i, self.gens[a])
        return i

    def idempotents(self):
        return [i for i in range(len(self.elements)) if self.mul(i, i) == i]

    def zero_index(self):
        """Absorbing element distinct from the identity, if present."""
        if len(self.elements) == 1:
            return None
        gen_ids = [self.gens[a] for a in self.alphabet]
        for i in range(1, len(self.elements)):
            if all(self.mul(i, g) == i and self.mul(g, i) == i for g in gen_ids):
                return i
        return None

    def omega(self, i: int) -> int:
        """The unique idempotent power of element i."""
        seen = {}
        powers = [None, i]
        x = i
        k = 1
        while x not in seen:
            seen[x] = k
            x = self.mul(x, i)
            k += 1
            powers.append(x)
        start = seen[x]       # m^k == m^start: cycle begins at start
        cycle = k - start
        t = cycle * ((start + cycle - 1) // cycle)
        e = powers[t]
        assert self.mul(e, e) == e
        return e


def transition_monoid(dfa: Dfa, cap: int = DEFAULT_CAP) -> FiniteMonoid:
    """Closure of the letter actions under product, breadth-first, with the
    shortest generating word recorded per element."""
    if dfa.n == 0:
        raise EmptyLanguageError("empty automaton has no transition monoid")
    gens = {a: Transformation.of_letter(dfa, a) for a in dfa.alphabet}
    ident = Transformation.identity(dfa.n)
    elements = [ident]
    words = [""]
    index = {ident: 0}
    pos = 0
    while pos < len(elements):
        current = elements[pos]
        for a in dfa.alphabet:
            t = current * gens[a]
            if t not in index:
                if len(elements) >= cap:
                    raise MonoidCapExceeded(f"transition monoid exceeds cap {cap}")
                index[t] = len(elements)
                elements.append(t)
                words.append(words[pos] + a)
        pos += 1
    gen_ids = {a: index[gens[a]] for a in dfa.alphabet}
    return FiniteMonoid(dfa.n, dfa.alphabet, elements, gen_ids, words)


def syntactic_monoid(dfa: Dfa, cap: int = DEFAULT_CAP):
    """(transition monoid of the minimal automaton, accepting element set P).

    The language is recognized as the inverse image of P; errors on the
    empty language (zero-state minimal automaton)."""
    m = minimize(dfa)
    if m.n == 0:
        raise EmptyLanguageError("the empty language has no syntactic monoid here")
    monoid = transition_monoid(m, cap)
    accepting = frozenset(i for i, t in enumerate(monoid.elements)
                          if t.mapping[m.initial] in m.finals)
    return monoid, accepting


def _sccs(n: int, succ) -> list:
    """Iterative Tarjan; returns component id per node, ids in discovery order."""
    index = [None] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [None] * n
    stack = []
    counter = [0]
    ncomp = [0]
    for root in range(n):
        if index[root] is not None:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] is None:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp[0]
                    if w == v:
                        break
                ncomp[0] += 1
    return comp


@dataclass
class GreenData:
    r_class: list
    l_class: list
    h_class: list
    d_class: list
    idempotents: frozenset
    zero: int | None

    def classes(self, kind: str):
        ids = {"R": self.r_class, "L": self.l_class,
               "H": self.h_class, "D": self.d_class}[kind]
        out = {}
        for i, c in enumerate(ids):
            out.setdefault(c, []).append(i)
        return out


def green_relations(m: FiniteMonoid) -> GreenData:
    n = len(m.elements)
    gen_ids = [m.gens[a] for a in m.alphabet]
    right = [[m.mul(i, g) for g in gen_ids] for i in range(n)]
    left = [[m.mul(g, i) for g in gen_ids] for i in range(n)]
    r_class = _sccs(n, lambda v: right[v])
    l_class = _sccs(n, lambda v: left[v])
    h_pairs = {}
    h_class = []
    for i in range(n):
        key = (r_class[i], l_class[i])
        if key not in h_pairs:
            h_pairs[key] = len(h_pairs)
        h_class.append(h_pairs[key])
    # D is the join of R and L: union-find over elements
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    for ids in (r_class, l_class):
        first = {}
        for i, c in enumerate(ids):
            if c in first:
                union(first[c], i)
            else:
                first[c] = i
    d_ids = {}
    d_class = []
    for i in range(n):
        root = find(i)
        if root not in d_ids:
            d_ids[root] = len(d_ids)
        d_class.append(d_ids[root])
    idem = frozenset(m.idempotents())
    return GreenData(r_class, l_class, h_class, d_class, idem, m.zero_index())


@dataclass
class IdealReport:
    """Egg-box of the minimal (or 0-minimal) ideal: representative-rank
    elements arranged R-classes x L-classes, each cell an H-class."""

    min_rank: int
    elements: list
    has_zero: bool
    rows: list            # rows[r][c] = sorted element ids of the H-class cell
    cell_words: list      # parallel representative words (shortest per cell)
    single_regular_dclass: bool
    group_or_null: list   # per element of the ideal: True if m^2 != 0 or H(m) group
    violation: str | None


def minimal_ideal(m: FiniteMonoid, green: GreenData) -> IdealReport:
    zero = green.zero
    ranks = [t.rank for t in m.elements]
    candidates = [i for i in range(len(m.elements)) if i != zero]
    min_rank = min(ranks[i] for i in candidates)
    ideal = [i for i in candidates if ranks[i] == min_rank]
    violation = None
    d_ids = {green.d_class[i] for i in ideal}
    if len(d_ids) != 1:
        violation = f"minimal-rank elements span {len(d_ids)} D-classes"
    regular = any(i in green.idempotents for i in ideal)
    if not regular and violation is None:
        violation = "minimal D-class contains no idempotent"
    # egg-box: group by (R, L)
    r_ids = []
    l_ids = []
    for i in ideal:
        if green.r_class[i] not in r_ids:
            r_ids.append(green.r_class[i])
        if green.l_class[i] not in l_ids:
            l_ids.append(green.l_class[i])
    rows = [[[] for _ in l_ids] for _ in r_ids]
    for i in ideal:
        rows[r_ids.index(green.r_class[i])][l_ids.index(green.l_class[i])].append(i)
    rows = [[sorted(cell) for cell in row] for row in rows]
    cell_words = [[min((m.words[i] for i in cell), key=lambda w: (len(w), w))
                   if cell else None for cell in row] for row in rows]
    group_or_null = []
    for i in ideal:
        sq = m.mul(i, i)
        if zero is not None and sq == zero:
            group_or_null.append(True)
        else:
            h = green.h_class[i]
            has_idem = any(green.h_class[j] == h for j in green.idempotents)
            group_or_null.append(has_idem)
    if violation is None and not all(group_or_null):
        violation = "an ideal element has neither null square nor group H-class"
    return IdealReport(min_rank, ideal, zero is not None, rows, cell_words,
                       violation is None, group_or_null, violation)


@dataclass
class SuschkevitchResult:
    monoid: FiniteMonoid
    e: int
    e_word: str
    group: list        # element ids of eMe minus zero
    group_words: list


def suschkevitch_idempotent(dfa: Dfa, cap: int = DEFAULT_CAP) -> SuschkevitchResult:
    """Idempotent e in the minimal ideal with i.e = i and e^-1 T = T, plus the
    group eMe minus zero.  Follows the constructive existence proof: take a
    minimal-rank element, extend on the right to cover the initial state,
    multiply on the left to stabilize the final set, then take the idempotent
    power.  Errors when no candidate works (non-birecurrent input)."""
    m = minimize(dfa)
    if m.n == 0:
        raise EmptyLanguageError("empty language")
    monoid = transition_monoid(m, cap)
    green = green_relations(monoid)
    zero = green.zero
    if zero is not None and is_strongly_connected(m):
        # for a strongly connected automaton the only absorbing element is
        # the empty map
        assert monoid.elements[zero].is_zero()
    ideal = minimal_ideal(monoid, green)
    i0 = m.initial
    finals = frozenset(m.finals)
    size = len(monoid.elements)

    def fixes_finals(t: Transformation) -> bool:
        return frozenset(q for q in range(m.n) if t.mapping[q] in finals) == finals

    for w in ideal.elements:
        for u in range(size):
            wp = monoid.mul(w, u)
            if wp == zero:
                continue
            if i0 not in monoid.elements[wp].image():
                continue
            for v in range(size):
                s = monoid.mul(v, wp)
                if s == zero:
                    continue
                if not fixes_finals(monoid.elements[s]):
                    continue
                e = monoid.omega(s)
                te = monoid.elements[e]
                if e == zero or te.mapping[i0] != i0 or not fixes_finals(te):
                    continue
                group = sorted({monoid.mul(monoid.mul(e, x), e) for x in range(size)}
                               - ({zero} if zero is not None else set()))
                if _is_group(monoid, e, group):
                    return SuschkevitchResult(monoid, e, monoid.words[e], group,
                                              [monoid.words[g] for g in group])
    raise ValueError("no Suschkevitch idempotent found; "
                     "input does not look like the minimal automaton of a birecurrent set")


def _is_group(m: FiniteMonoid, e: int, elements: list) -> bool:
    elems = set(elements)
    if e not in elems:
        return False
    for g in elems:
        if m.mul(g, e) != g or m.mul(e, g) != g:
            return False
        if not any(m.mul(g, h) == e and m.mul(h, g) == e for h in elems):
            return False
        if any(m.mul(g, h) not in elems for h in elems):
            return False
    return True
