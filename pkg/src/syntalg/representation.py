"""Linear representations of characteristic series of rational languages.

A representation is a triple (initial row vector, one matrix per letter,
final column vector); the series value on a word is init * mats(word) * fin.
The representation read off a partial DFA has 0/1 matrices.  Two-sided
reduction (backward, then forward) shrinks it to the syntactic one, whose
dimension is the rank of the infinite membership (Hankel) matrix; the basis
is the first linearly independent family in breadth-first word order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dfa import Dfa, minimize
from .linalg import Matrix, mat_vec, solve, vec_mat
from .monoid import (DEFAULT_CAP, EmptyLanguageError, FiniteMonoid,
                     transition_monoid)


@dataclass
class LinRep:
    field: object
    dim: int
    init: tuple
    mats: dict          # symbol -> Matrix (dim x dim)
    fin: tuple

    @property
    def alphabet(self):
        return tuple(self.mats.keys())

    def matrix_of_word(self, word: str) -> Matrix:
        m = Matrix.identity(self.field, self.dim)
        for a in word:
            m = m * self.mats[a]
        return m

    def evaluate(self, word: str):
        v = self.init
        for a in word:
            v = vec_mat(v, self.mats[a])
        return sum((x * y for x, y in zip(v, self.fin) if x), self.field.zero)

    def trace_of(self, word: str):
        return self.matrix_of_word(word).trace()


def rep_from_dfa(dfa: Dfa, field) -> LinRep:
    """0/1 representation of the characteristic series of the DFA's language."""
    if dfa.initial is None or dfa.n == 0:
        raise EmptyLanguageError("representation needs an automaton with an initial state")
    zero, one = field.zero, field.one
    mats = {}
    for a in dfa.alphabet:
        rows = [[zero] * dfa.n for _ in range(dfa.n)]
        for p in range(dfa.n):
            q = dfa.delta.get((p, a))
            if q is not None:
                rows[p][q] = one
        mats[a] = Matrix(field, rows)
    init = tuple(one if q == dfa.initial else zero for q in range(dfa.n))
    fin = tuple(one if q in dfa.finals else zero for q in range(dfa.n))
    return LinRep(field, dfa.n, init, mats, fin)


def _echelon_insert(field, basis, vector):
    """Reduce vector against echelon basis; if independent, insert its
    normalized form and return True."""
    zero = field.zero
    v = list(vector)
    for b in basis:
        p = next(j for j, x in enumerate(b) if x != zero)
        if v[p] != zero:
            f = v[p]
            v = [x - f * y for x, y in zip(v, b)]
    if all(x == zero for x in v):
        return False
    p = next(j for j, x in enumerate(v) if x != zero)
    inv = field.one / v[p]
    basis.append([x * inv for x in v])
    return True


def _spin_vectors(field, seeds, symbols, step, prepend=False):
    """Breadth-first closure of a family of vectors under per-symbol maps.

    Returns (vectors, words): the first linearly independent vectors in word
    order together with the words producing them.  With prepend=True the
    symbol extends the word on the left (closure under left multiplication).
    """
    echelon = []
    vectors = []
    words = []
    queue = []
    for v, w in seeds:
        if _echelon_insert(field, echelon, v):
            vectors.append(tuple(v))
            words.append(w)
            queue.append((tuple(v), w))
    pos = 0
    while pos < len(queue):
        v, w = queue[pos]
        pos += 1
        for a in symbols:
            nv = step(a, v)
            nw = a + w if prepend else w + a
            if _echelon_insert(field, echelon, nv):
                vectors.append(tuple(nv))
                words.append(nw)
                queue.append((tuple(nv), nw))
    return vectors, words


def reduce_to_minimal(rep: LinRep):
    """Two-sided reduction to the minimal representation of the same series.

    Backward first: restrict to the span of mats(word) * fin, acting on
    column vectors.  Then forward: restrict to the span of init * mats(word).
    Returns (minimal LinRep, basis words of the forward stage).
    """
    field = rep.field
    symbols = tuple(rep.mats.keys())

    # backward: columns mats(w) * fin, closed under left multiplication
    cols, _ = _spin_vectors(field, [(rep.fin, "")], symbols,
                            lambda a, v: mat_vec(rep.mats[a], v), prepend=True)
    d1 = len(cols)
    if d1 == 0:
        empty = LinRep(field, 0, (), {a: Matrix(field, []) for a in symbols}, ())
        return empty, []
    cmat = Matrix(field, list(zip(*cols)))  # n x d1, columns are the basis
    mid_mats = {}
    for a in symbols:
        new_cols = [solve(cmat, mat_vec(rep.mats[a], c)) for c in cols]
        assert all(c is not None for c in new_cols)
        mid_mats[a] = Matrix(field, list(zip(*new_cols)))
    mid_init = vec_mat(rep.init, cmat)
    mid_fin = solve(cmat, rep.fin)
    assert mid_fin is not None

    # forward: rows init * mats(w), closed under right multiplication
    rows, words = _spin_vectors(field, [(mid_init, "")], symbols,
                                lambda a, v: vec_mat(v, mid_mats[a]))
    d2 = len(rows)
    if d2 == 0:
        empty = LinRep(field, 0, (), {a: Matrix(field, []) for a in symbols}, ())
        return empty, []
    rmat = Matrix(field, rows)          # d2 x d1
    rt = rmat.transpose()
    out_mats = {}
    for a in symbols:
        out_rows = [solve(rt, vec_mat(r, mid_mats[a])) for r in rows]
        assert all(r is not None for r in out_rows)
        out_mats[a] = Matrix(field, out_rows)
    out_init = solve(rt, mid_init)
    assert out_init is not None
    out_fin = mat_vec(rmat, mid_fin)
    return LinRep(field, d2, out_init, out_mats, out_fin), words


@dataclass
class SyntacticRep:
    """Minimal representation of the language's characteristic series, with
    the syntactic monoid it mirrors."""

    rep: LinRep
    basis_words: list
    monoid: FiniteMonoid | None
    accepting: frozenset | None
    minimal_dfa: Dfa | None

    @property
    def dim(self) -> int:
        return self.rep.dim


def syntactic_rep(dfa: Dfa, field, cap: int = DEFAULT_CAP) -> SyntacticRep:
    """Full pipeline: minimize, transition monoid, reduce the 0/1
    representation of the minimal automaton."""
    m = minimize(dfa)
    if m.n == 0:
        raise EmptyLanguageError("the empty language has no syntactic representation here")
    monoid = transition_monoid(m, cap)
    accepting = frozenset(i for i, t in enumerate(monoid.elements)
                          if t.mapping[m.initial] in m.finals)
    rep, words = reduce_to_minimal(rep_from_dfa(m, field))
    return SyntacticRep(rep, words, monoid, accepting, m)


@dataclass
class MatrixMonoid:
    elements: list      # Matrix values
    words: list
    index: dict
    gens: dict


def matrix_monoid(srep: SyntacticRep, cap: int = DEFAULT_CAP) -> MatrixMonoid:
    """Closure of the representation matrices under product.  The closure is
    finite and in bijection with the syntactic monoid; size or table
    disagreement raises (it would mean an implementation bug)."""
    rep = srep.rep
    field = rep.field
    ident = Matrix.identity(field, rep.dim)
    elements = [ident]
    words = [""]
    index = {ident: 0}
    bound = len(srep.monoid.elements) if srep.monoid is not None else cap
    pos = 0
    while pos < len(elements):
        current = elements[pos]
        for a in rep.mats:
            m = current * rep.mats[a]
            if m not in index:
                if len(elements) >= bound:
                    raise RuntimeError("matrix monoid larger than the syntactic monoid")
                index[m] = len(elements)
                elements.append(m)
                words.append(words[pos] + a)
        pos += 1
    if srep.monoid is not None:
        monoid = srep.monoid
        if len(elements) != len(monoid.elements):
            raise RuntimeError("matrix monoid size does not match the syntactic monoid")
        # the map word -> matrix must match the monoid's structure
        for i, w in enumerate(monoid.words):
            m = rep.matrix_of_word(w)
            if index.get(m) is None:
                raise RuntimeError("monoid representative missing from matrix closure")
        for a, g in monoid.gens.items():
            for i in range(len(monoid.elements)):
                lhs = rep.matrix_of_word(monoid.words[i]) * rep.mats[a]
                rhs = rep.matrix_of_word(monoid.words[monoid.mul(i, g)])
                if lhs != rhs:
                    raise RuntimeError("matrix monoid table disagrees with the syntactic monoid")
    gens = {a: index[rep.mats[a]] for a in rep.mats}
    return MatrixMonoid(elements, words, index, gens)


def reversal_rep(rep: LinRep) -> LinRep:
    """Representation of the reversed series: transpose everything and swap
    the boundary vectors."""
    mats = {a: m.transpose() for a, m in rep.mats.items()}
    return LinRep(rep.field, rep.dim, tuple(rep.fin), mats, tuple(rep.init))
