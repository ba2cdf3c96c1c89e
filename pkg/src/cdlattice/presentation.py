"""Finite presentations and their realization by coset enumeration.

File format (``.pres``), one directive per line::

    # comment until end of line
    gens <k>
    rel <w1>,<w2>,...

``gens`` must come first and appear once. Each ``rel`` line gives one
relator as comma-separated nonzero integers: ``i`` stands for generator
``g_i`` (1-based) and ``-i`` for its inverse, so ``rel 1,1,1,-2`` is the
relator ``g1^3 g2^-1``. Whitespace around tokens is ignored. At least one
``rel`` line is required.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .group import GroupTable

log = logging.getLogger(__name__)

Word = tuple[int, ...]


class PresentationError(ValueError):
    pass


class BoundExceeded(RuntimeError):
    """Coset enumeration needed more cosets than allowed."""


@dataclass(frozen=True)
class Presentation:
    ngens: int
    relators: tuple[Word, ...]
    name: str = ""

    def __post_init__(self):
        if self.ngens < 1:
            raise PresentationError("a presentation needs at least one generator")
        if not self.relators:
            raise PresentationError("a presentation needs at least one relator")
        for rel in self.relators:
            if not rel:
                raise PresentationError("empty relator")
            for letter in rel:
                if letter == 0 or abs(letter) > self.ngens:
                    raise PresentationError(f"letter {letter} does not name one of {self.ngens} generators")

    def to_text(self) -> str:
        lines = [f"gens {self.ngens}"]
        lines += ["rel " + ",".join(map(str, rel)) for rel in self.relators]
        return "\n".join(lines) + "\n"


def parse_presentation(text: str, name: str = "") -> Presentation:
    ngens = None
    rels: list[Word] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "gens":
            if ngens is not None:
                raise PresentationError(f"line {lineno}: duplicate 'gens'")
            try:
                ngens = int(rest)
            except ValueError:
                raise PresentationError(f"line {lineno}: bad generator count {rest!r}") from None
        elif head == "rel":
            if ngens is None:
                raise PresentationError(f"line {lineno}: 'rel' before 'gens'")
            try:
                word = tuple(int(tok) for tok in rest.split(","))
            except ValueError:
                raise PresentationError(f"line {lineno}: bad relator {rest!r}") from None
            rels.append(word)
        else:
            raise PresentationError(f"line {lineno}: unknown directive {head!r}")
    if ngens is None:
        raise PresentationError("missing 'gens' line")
    return Presentation(ngens, tuple(rels), name)


def load_presentation(path: str | Path) -> Presentation:
    """Read a ``.pres`` file; bare names also resolve against the bundled data."""
    p = Path(path)
    if not p.exists():
        bundled = resources.files("cdlattice") / "presentations" / p.name
        if not bundled.is_file():
            raise FileNotFoundError(path)
        return parse_presentation(bundled.read_text(), p.stem)
    return parse_presentation(p.read_text(), p.stem)


def bundled_presentation(stem: str) -> Presentation:
    text = (resources.files("cdlattice") / "presentations" / f"{stem}.pres").read_text()
    return parse_presentation(text, stem)


# ---- word helpers ----------------------------------------------------------------

def inverse_word(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def free_reduce(w: Iterable[int]) -> Word:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(w: Sequence[int]) -> Word:
    w = list(free_reduce(w))
    while len(w) > 1 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def commutator_word(x: Sequence[int], y: Sequence[int]) -> Word:
    """``[x, y] = x^-1 y^-1 x y``."""
    return free_reduce(inverse_word(x) + inverse_word(y) + tuple(x) + tuple(y))


# ---- coset enumeration -------------------------------------------------------------

def _col(letter: int) -> int:
    # generator i (1-based) -> column 2(i-1); its inverse -> 2(i-1)+1
    return 2 * (abs(letter) - 1) + (letter < 0)


class CosetTable:
    """Felsch-style coset enumeration over the trivial subgroup.

    Cosets are defined strictly in order of first undefined table entry,
    every definition is followed by processing the deduction stack against
    all cyclic conjugates of the relators, and coincidences are collapsed
    in place with a union-find forest.
    """

    def __init__(self, pres: Presentation, max_cosets: int):
        self.ncols = 2 * pres.ngens
        self.max_cosets = max_cosets
        self.table: list[list[int]] = [[-1] * self.ncols]
        self.parent = [0]
        conjs: set[tuple[int, ...]] = set()
        for rel in pres.relators:
            rel = cyclic_reduce(rel)
            if not rel:
                continue
            cols = tuple(_col(x) for x in rel)
            inv = tuple(c ^ 1 for c in reversed(cols))
            for w in (cols, inv):
                for i in range(len(w)):
                    conjs.add(w[i:] + w[:i])
        self.by_first: list[list[tuple[int, ...]]] = [[] for _ in range(self.ncols)]
        for w in sorted(conjs):
            self.by_first[w[0]].append(w)
        self.deductions: list[tuple[int, int]] = []
        self.live = 1
        self.defined = 1

    def rep(self, c: int) -> int:
        parent = self.parent
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def _define(self, coset: int, col: int) -> None:
        if self.live >= self.max_cosets:
            raise BoundExceeded(f"coset enumeration exceeded {self.max_cosets} live cosets")
        new = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(new)
        self.table[coset][col] = new
        self.table[new][col ^ 1] = coset
        self.live += 1
        self.defined += 1
        self.deductions.append((coset, col))

    def _scan(self, start: int, w: tuple[int, ...]) -> None:
        table = self.table
        f = start
        i = 0
        n = len(w)
        while i < n:
            nxt = table[f][w[i]]
            if nxt < 0:
                break
            f = nxt
            i += 1
        else:
            if f != start:
                self._coincidence(f, start)
            return
        b = start
        j = n - 1
        while j > i:
            nxt = table[b][w[j] ^ 1]
            if nxt < 0:
                return
            b = nxt
            j -= 1
        # exactly one gap: w[i] takes f to b
        c = w[i]
        other = table[b][c ^ 1]
        if other >= 0:
            if other != f:
                self._coincidence(other, f)
            return
        table[f][c] = b
        table[b][c ^ 1] = f
        self.deductions.append((f, c))

    def _process_deductions(self) -> None:
        table = self.table
        parent = self.parent
        while self.deductions:
            coset, col = self.deductions.pop()
            if parent[coset] != coset:
                continue
            for w in self.by_first[col]:
                self._scan(coset, w)
                if parent[coset] != coset:
                    break
            target = table[coset][col]
            if target < 0 or parent[target] != target:
                continue
            for w in self.by_first[col ^ 1]:
                self._scan(target, w)
                if parent[target] != target:
                    break

    def _merge(self, a: int, b: int, queue: list[int]) -> None:
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        self.parent[b] = a
        self.live -= 1
        queue.append(b)

    def _coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self._merge(a, b, queue)
        table = self.table
        qi = 0
        while qi < len(queue):
            dead = queue[qi]
            qi += 1
            row = table[dead]
            for col in range(self.ncols):
                d = row[col]
                if d < 0:
                    continue
                if table[d][col ^ 1] == dead:
                    table[d][col ^ 1] = -1
                mu = self.rep(dead)
                nu = self.rep(d)
                if table[mu][col] >= 0:
                    self._merge(nu, table[mu][col], queue)
                elif table[nu][col ^ 1] >= 0:
                    self._merge(mu, table[nu][col ^ 1], queue)
                else:
                    table[mu][col] = nu
                    table[nu][col ^ 1] = mu
                    self.deductions.append((mu, col))

    def run(self) -> None:
        coset = 0
        while coset < len(self.table):
            if self.parent[coset] == coset:
                for col in range(self.ncols):
                    if self.parent[coset] != coset:
                        break
                    if self.table[coset][col] < 0:
                        self._define(coset, col)
                        self._process_deductions()
            coset += 1
            if coset % 5000 == 0:
                log.debug("coset %d: live=%d defined=%d", coset, self.live, self.defined)

    def compact(self) -> np.ndarray:
        """Live cosets renumbered in breadth-first order from coset 0."""
        order = [0]
        index = {0: 0}
        for c in order:
            for col in range(self.ncols):
                d = self.rep(self.table[c][col])
                if d not in index:
                    index[d] = len(order)
                    order.append(d)
        out = np.empty((len(order), self.ncols), dtype=np.int64)
        for new, old in enumerate(order):
            out[new] = [index[self.rep(x)] for x in self.table[old]]
        return out


def enumerate_cosets(pres: Presentation, max_cosets: int) -> np.ndarray:
    """Complete coset table of the trivial subgroup; shape ``(index, 2*ngens)``."""
    ct = CosetTable(pres, max_cosets)
    ct.run()
    log.info("coset enumeration %s: index %d, %d cosets defined", pres.name, ct.live, ct.defined)
    return ct.compact()


def realize_presentation(pres: Presentation, order_bound: int,
                         max_cosets: int | None = None,
                         check_associativity: bool | None = None) -> GroupTable:
    """Regular representation of a finite presentation as a :class:`GroupTable`.

    ``max_cosets`` caps the number of live cosets during enumeration
    (default ``4 * order_bound``); a group larger than ``order_bound``
    raises :class:`BoundExceeded`. Element 0 is the empty word, and the
    rest follow in breadth-first order over the generator columns
    ``g1, g1^-1, g2, ...``. ``gen_elements`` lists the element index of
    each generator.
    """
    if max_cosets is None:
        max_cosets = 4 * order_bound
    table = enumerate_cosets(pres, max_cosets)
    n = table.shape[0]
    if n > order_bound:
        raise BoundExceeded(f"presented group has order {n} > bound {order_bound}")
    # element j = coset reached from 0 by a word w_j; i * j = coset i . w_j
    parent = np.full(n, -1)
    via = np.full(n, -1)
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    bfs = [0]
    for c in bfs:
        for col in range(table.shape[1]):
            d = int(table[c, col])
            if not seen[d]:
                seen[d] = True
                parent[d] = c
                via[d] = col
                bfs.append(d)
    dtype = np.int16 if n <= np.iinfo(np.int16).max else np.int32
    mul = np.empty((n, n), dtype=dtype)
    mul[:, 0] = np.arange(n)
    for j in bfs[1:]:
        mul[:, j] = table[mul[:, parent[j]], via[j]]
    gens = tuple(int(table[0, 2 * i]) for i in range(pres.ngens))
    g = GroupTable(mul, name=pres.name, check_associativity=check_associativity,
                   gen_elements=gens)
    for rel in pres.relators:
        if g.word_value(rel, gens) != 0:
            raise AssertionError(f"relator {rel} does not evaluate to the identity")
    return g
