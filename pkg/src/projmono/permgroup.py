"""Permutation groups: Schreier-Sims, orbits, block systems, classification.

Points are ``0..n-1`` internally; text I/O uses 1-indexed cycle notation.
Products read left to right: ``p * q`` applies ``p`` first, then ``q``,
which matches concatenation of loops.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CycleParseError, NotTransitive, VerificationFailure


class Perm(tuple):
    """A permutation stored as its tuple of images."""

    def __new__(cls, images: Iterable[int]):
        self = super().__new__(cls, (int(i) for i in images))
        if sorted(self) != list(range(len(self))):
            raise ValueError(f"not a permutation: {tuple(self)}")
        return self

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], n: int) -> "Perm":
        img = list(range(n))
        for cyc in cycles:
            if not cyc:
                continue
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self)

    def __call__(self, i: int) -> int:
        return self[i]

    def __mul__(self, other: "Perm") -> "Perm":
        return Perm(other[i] for i in self)

    def __invert__(self) -> "Perm":
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return Perm(inv)

    inverse = __invert__

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self))

    def cycles(self, include_fixed: bool = False):
        seen, out = set(), []
        for i in range(len(self)):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self[j]
            if include_fixed or len(cyc) > 1:
                out.append(cyc)
        return out

    def cycle_type(self) -> tuple:
        """Cycle lengths including fixed points, largest first."""
        return tuple(sorted((len(c) for c in self.cycles(True)), reverse=True))

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def order(self) -> int:
        return math.lcm(*self.cycle_type()) if len(self) else 1

    def first_moved(self):
        return next((i for i, j in enumerate(self) if i != j), None)

    def __str__(self):
        return format_cycles(self)

    def __repr__(self):
        return f"Perm({format_cycles(self)!r}, n={len(self)})"


def format_cycles(p: Perm) -> str:
    """1-indexed cycle notation; the identity prints as ``()``."""
    cyc = p.cycles()
    if not cyc:
        return "()"
    return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cyc)


_TOKEN = re.compile(r"\s*(\(|\)|\d+|,)")


def parse_cycles(text: str, n: int | None = None) -> Perm:
    """Parse ``"(1 2 3)(4 5)"``; the degree defaults to the largest point."""
    cycles, current, pos = [], None, 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            where = len(text) - len(text[pos:].lstrip())
            raise CycleParseError(f"unexpected character {text[where]!r}", where)
        tok = m.group(1)
        where = m.start(1)
        if tok == "(":
            if current is not None:
                raise CycleParseError("nested '('", where)
            current = []
        elif tok == ")":
            if current is None:
                raise CycleParseError("unmatched ')'", where)
            cycles.append(current)
            current = None
        elif tok == ",":
            if current is None:
                raise CycleParseError("',' outside a cycle", where)
        else:
            if current is None:
                raise CycleParseError("point outside a cycle", where)
            v = int(tok)
            if v < 1:
                raise CycleParseError("points are 1-indexed", where)
            if v - 1 in current or any(v - 1 in c for c in cycles):
                raise CycleParseError(f"point {v} repeated", where)
            current.append(v - 1)
        pos = m.end()
    if current is not None:
        raise CycleParseError("unterminated cycle", len(text))
    top = max((max(c) + 1 for c in cycles if c), default=0)
    n = top if n is None else n
    if top > n:
        raise CycleParseError(f"point {top} exceeds degree {n}", 0)
    return Perm.from_cycles(cycles, n)


# ---------------------------------------------------------------- Schreier-Sims


def _orbit_transversal(point: int, gens, n: int) -> dict:
    trans = {point: Perm.identity(n)}
    queue = [point]
    for b in queue:
        for g in gens:
            c = g[b]
            if c not in trans:
                trans[c] = trans[b] * g
                queue.append(c)
    return trans


def _strip(g: Perm, base, transversals, start: int):
    for i in range(start, len(base)):
        beta = g[base[i]]
        if beta not in transversals[i]:
            return g, i
        g = g * ~transversals[i][beta]
    return g, len(base)


@dataclass(frozen=True)
class GroupClass:
    tag: str
    order: int
    block_systems: tuple = ()
    decomposable: bool = False

    @property
    def block_sizes(self):
        """Sorted block sizes of each minimal block system."""
        return [sorted(len(b) for b in system) for system in self.block_systems]


class PermutationGroup:
    """Group generated by permutations of ``0..n-1`` with a base and strong
    generating set built by deterministic Schreier-Sims."""

    def __init__(self, generators: Iterable[Perm], degree: int | None = None):
        gens = [g if isinstance(g, Perm) else Perm(g) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree required for the trivial group")
            degree = len(gens[0])
        if any(len(g) != degree for g in gens):
            raise ValueError("generators of different degrees")
        self.degree = degree
        self.generators = tuple(gens)
        self.base, self.strong_gens, self._trans = _schreier_sims(self.generators, degree)
        self._classification = None

    @property
    def order(self) -> int:
        return math.prod(len(t) for t in self._trans)

    @property
    def orbit_sizes(self):
        return [len(t) for t in self._trans]

    def contains(self, g: Perm) -> bool:
        h, j = _strip(g, self.base, self._trans, 0)
        return j == len(self.base) and h.is_identity()

    def orbits(self):
        parent = list(range(self.degree))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.generators:
            for i, j in enumerate(g):
                a, b = find(i), find(j)
                if a != b:
                    parent[a] = b
        groups = {}
        for i in range(self.degree):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def minimal_block(self, a: int, b: int):
        """Finest invariant partition with ``a`` and ``b`` in one class."""
        n = self.degree
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        parent[find(a)] = find(b)
        queue = [(a, b)]
        while queue:
            x, y = queue.pop()
            for g in self.generators:
                gx, gy = find(g[x]), find(g[y])
                if gx != gy:
                    parent[gx] = gy
                    queue.append((g[x], g[y]))
        classes = {}
        for i in range(n):
            classes.setdefault(find(i), []).append(i)
        return sorted(classes.values())

    def block_systems(self):
        """All minimal nontrivial block systems; empty iff primitive."""
        if not self.is_transitive():
            raise NotTransitive("block systems need a transitive group")
        n = self.degree
        found = {}
        for i in range(1, n):
            system = self.minimal_block(0, i)
            block0 = frozenset(next(c for c in system if 0 in c))
            if 1 < len(block0) < n:
                found[block0] = system
        minimal = [b for b in found if not any(o < b for o in found)]
        return [found[b] for b in sorted(minimal, key=lambda b: (len(b), sorted(b)))]

    def classify(self) -> GroupClass:
        if self._classification is None:
            self._classification = self._classify()
        return self._classification

    def _classify(self) -> GroupClass:
        n, order = self.degree, self.order
        if n == 1:
            return GroupClass("trivial", 1)
        if not self.is_transitive():
            return GroupClass("intransitive", order)
        blocks = tuple(tuple(tuple(b) for b in s) for s in self.block_systems())
        decomposable = bool(blocks)
        has_transposition = any(g.cycle_type()[0] == 2 and sum(1 for c in g.cycles()) == 1 for g in self.generators)
        if not decomposable and has_transposition and order != math.factorial(n):
            raise VerificationFailure("primitive group with a transposition is not symmetric", "jordan")
        if order == math.factorial(n):
            tag = "symmetric"
        elif order == math.factorial(n) // 2 and all(g.is_even() for g in self.generators):
            tag = "alternating"
        elif order == n and any(g.cycle_type() == (n,) for g in self.generators):
            tag = "cyclic"
        elif decomposable:
            tag = "imprimitive"
        else:
            tag = "primitive_other"
        return GroupClass(tag, order, blocks, decomposable)


def _schreier_sims(gens, n):
    strong = [g for g in gens if not g.is_identity()]
    base = []
    for g in strong:
        if all(g[b] == b for b in base):
            base.append(g.first_moved())

    def level_gens(i):
        return [s for s in strong if all(s[b] == b for b in base[:i])]

    trans = [None] * len(base)
    i = len(base) - 1
    while i >= 0:
        for j in range(i, len(base)):
            trans[j] = _orbit_transversal(base[j], level_gens(j), n)
        grew = False
        gens_i = level_gens(i)
        for beta, u in list(trans[i].items()):
            for s in gens_i:
                sch = u * s * ~trans[i][s[beta]]
                if sch.is_identity():
                    continue
                h, j = _strip(sch, base, trans, i + 1)
                if j < len(base) or not h.is_identity():
                    strong.append(h)
                    if j == len(base):
                        base.append(h.first_moved())
                        trans.append(None)
                    i = j
                    grew = True
                    break
            if grew:
                break
        if not grew:
            i -= 1
    for j in range(len(base)):
        trans[j] = _orbit_transversal(base[j], level_gens(j), n)
    return base, strong, trans


def schreier_sims(generators, degree: int | None = None) -> PermutationGroup:
    return PermutationGroup(generators, degree)


def is_transitive(G: PermutationGroup) -> bool:
    return G.is_transitive()


def block_systems(G: PermutationGroup):
    return G.block_systems()


def classify(G: PermutationGroup) -> GroupClass:
    return G.classify()


def enumerate_elements(generators, degree: int):
    """Every group element by breadth-first closure; small degrees only."""
    ident = Perm.identity(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in generators:
                h = g * s
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen


def group_from_cycles(texts: Sequence[str], degree: int | None = None) -> PermutationGroup:
    """Group generated by 1-indexed cycle strings; degree defaults to the
    largest point mentioned."""
    if degree is None:
        degree = max((int(x) for t in texts for x in re.findall(r"\d+", t)), default=1)
    return PermutationGroup([parse_cycles(t, degree) for t in texts], degree)
