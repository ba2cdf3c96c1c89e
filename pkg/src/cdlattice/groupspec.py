"""A small text language naming the groups this package can build.

Grammar (whitespace is not allowed)::

    spec     := family ":" body
    dic:<n>                       dicyclic group of order 4n
    ab:<factors>                  Z_f1 x Z_f2 x ...
    gdic:<factors>[,t=<index>]    generalized dicyclic over A = ab:<factors>;
                                  t defaults to the first involution of A
    sdp:<factors>;<images>;<k>    A x| Z_k, the generator acting by e_i -> images[i]
    xsp:<p>,<n>,<kind>            extraspecial of order p^n, kind d|q (p = 2) or p|p2
    dih:<m> | sdih:<order> | quat:<order> | heis:<p>
    fp:<path>                     finite presentation file (bare names resolve
                                  against the bundled presentations)
    prod:<operand>*<operand>      direct product; an operand is a spec or a
                                  parenthesised spec "(...)"

``<factors>`` and ``<images>`` are comma-separated non-negative integers.
:func:`parse_spec` and :meth:`GroupSpec.canonical` are inverse to each
other on canonical strings.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from . import constructors as C
from .group import GroupTable
from .presentation import Presentation, load_presentation, realize_presentation

FAMILIES = ("dic", "ab", "gdic", "sdp", "xsp", "dih", "sdih", "quat", "heis", "fp", "prod")
_STOP = "*)"


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.message, self.text, self.pos = message, text, pos
        super().__init__(f"{message} at position {pos} in {text!r}")


@dataclass(frozen=True)
class GroupSpec:
    """Parsed group description: a family tag with its parameters.

    ``params`` per family: ``dic (n,)``, ``ab (factors,)``, ``gdic (factors, t|None)``,
    ``sdp (factors, images, k)``, ``xsp (p, n, kind)``, ``fp (path,)``,
    ``dih (m,)``, ``sdih (order,)``, ``quat (order,)``, ``heis (p,)``,
    ``prod (left, right)``.
    """

    family: str
    params: tuple

    def canonical(self) -> str:
        f, p = self.family, self.params
        ints = lambda xs: ",".join(map(str, xs))  # noqa: E731
        if f == "ab":
            return f"ab:{ints(p[0])}"
        if f == "gdic":
            return f"gdic:{ints(p[0])}" + ("" if p[1] is None else f",t={p[1]}")
        if f == "sdp":
            return f"sdp:{ints(p[0])};{ints(p[1])};{p[2]}"
        if f == "xsp":
            return f"xsp:{p[0]},{p[1]},{p[2]}"
        if f == "prod":
            left, right = (s.canonical() for s in p)
            wrap = lambda s, spec: f"({s})" if spec.family == "prod" else s  # noqa: E731
            return f"prod:{wrap(left, p[0])}*{wrap(right, p[1])}"
        return f"{f}:{p[0]}"

    __str__ = canonical

    def expected_order(self) -> int | None:
        """Group order known without building (``None`` for presentations)."""
        f, p = self.family, self.params
        prod = lambda xs: _product(xs)  # noqa: E731
        if f == "dic":
            return 4 * p[0]
        if f == "ab":
            return prod(p[0])
        if f == "gdic":
            return 2 * prod(p[0])
        if f == "sdp":
            return prod(p[0]) * p[2]
        if f == "xsp":
            return p[0] ** p[1]
        if f == "dih":
            return 2 * p[0]
        if f in ("sdih", "quat"):
            return p[0]
        if f == "heis":
            return p[0] ** 3
        if f == "prod":
            a, b = (s.expected_order() for s in p)
            return None if a is None or b is None else a * b
        return None


def _product(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str, pos: int | None = None) -> ParseError:
        return ParseError(msg, self.text, self.pos if pos is None else pos)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise self.error(f"expected {ch!r}, found {found}")
        self.pos += 1

    def integer(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an integer")
        return int(self.text[start:self.pos])

    def int_list(self, stop_on_t: bool = False) -> tuple[int, ...]:
        out = [self.integer()]
        while self.peek() == ",":
            if stop_on_t and self.text.startswith(",t=", self.pos):
                break
            self.pos += 1
            out.append(self.integer())
        return tuple(out)

    def word(self) -> str:
        start = self.pos
        while self.peek().isalnum():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected a name")
        return self.text[start:self.pos]

    def spec(self) -> GroupSpec:
        start = self.pos
        fam = self.word()
        if fam not in FAMILIES:
            raise self.error(f"unknown family {fam!r} (expected one of {', '.join(FAMILIES)})", start)
        self.expect(":")
        if fam in ("dic", "dih", "sdih", "quat", "heis"):
            at = self.pos
            n = self.integer()
            if n < 1:
                raise self.error("parameter must be positive", at)
            return GroupSpec(fam, (n,))
        if fam == "ab":
            return GroupSpec(fam, (self.factors(),))
        if fam == "gdic":
            factors = self.factors(stop_on_t=True)
            t = None
            if self.text.startswith(",t=", self.pos):
                self.pos += 3
                t = self.integer()
            return GroupSpec(fam, (factors, t))
        if fam == "sdp":
            factors = self.factors()
            self.expect(";")
            images = self.int_list()
            self.expect(";")
            at = self.pos
            k = self.integer()
            if k < 1:
                raise self.error("k must be positive", at)
            return GroupSpec(fam, (factors, images, k))
        if fam == "xsp":
            p = self.integer()
            self.expect(",")
            n = self.integer()
            self.expect(",")
            return GroupSpec(fam, (p, n, self.word()))
        if fam == "fp":
            begin = self.pos
            while self.peek() and self.peek() not in _STOP:
                self.pos += 1
            if begin == self.pos:
                raise self.error("expected a presentation path")
            return GroupSpec(fam, (self.text[begin:self.pos],))
        left = self.operand()
        self.expect("*")
        right = self.operand()
        return GroupSpec("prod", (left, right))

    def factors(self, stop_on_t: bool = False) -> tuple[int, ...]:
        at = self.pos
        fs = self.int_list(stop_on_t)
        if any(f < 2 for f in fs):
            raise self.error("invariant factors must be >= 2", at)
        return fs

    def operand(self) -> GroupSpec:
        if self.peek() == "(":
            self.pos += 1
            s = self.spec()
            self.expect(")")
            return s
        return self.spec()


def parse_spec(text: str) -> GroupSpec:
    p = _Parser(text.strip())
    s = p.spec()
    if p.pos != len(p.text):
        raise p.error(f"unexpected {p.peek()!r}")
    return s


def build_group(spec: GroupSpec | str, max_order: int = 20000) -> GroupTable:
    """Construct the group named by ``spec``, refusing orders above ``max_order``."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    known = spec.expected_order()
    if known is not None and known > max_order:
        raise C.GroupError(f"{spec} has order {known} > limit {max_order}")
    f, p = spec.family, spec.params
    name = spec.canonical()
    if f == "dic":
        g = C.dicyclic(p[0])
    elif f == "ab":
        g = C.abelian(p[0])
    elif f == "gdic":
        a = C.AbelianSpec(p[0])
        if p[1] is None:
            invs = a.involutions()
            if not invs:
                raise C.GroupError(f"{a.label()} has no involution")
            t = invs[0]
        else:
            t = p[1]
        g = C.generalized_dicyclic(a, t)
    elif f == "sdp":
        g = C.semidirect_by_automorphism(p[0], p[1], p[2])
    elif f == "xsp":
        g = C.extraspecial(p[0], p[1], p[2])
    elif f == "dih":
        g = C.dihedral(p[0])
    elif f == "sdih":
        g = C.semidihedral(p[0])
    elif f == "quat":
        g = C.generalized_quaternion(p[0])
    elif f == "heis":
        g = C.heisenberg(p[0])
    elif f == "fp":
        pres = load_presentation(Path(p[0]))
        pres = Presentation(pres.ngens, pres.relators, name)
        return realize_presentation(pres, max_order)
    else:
        left, right = (build_group(s, max_order) for s in p)
        if left.order * right.order > max_order:
            raise C.GroupError(f"{spec} has order {left.order * right.order} > limit {max_order}")
        return C.direct_product(left, right, name=name)
    return g.renamed(name)
