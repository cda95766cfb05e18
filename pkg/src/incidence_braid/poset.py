"""Finite posets given by cover relations."""
from __future__ import annotations

from functools import cached_property
from itertools import permutations


class PosetError(ValueError):
    pass


class Poset:
    """A finite poset on string labels.

    ``leq`` is stored as a set of label pairs. Build with
    :meth:`from_cover_relations` or pass any generating relation.
    """

    def __init__(self, elements, relations=()):
        elements = list(elements)
        if len(set(elements)) != len(elements):
            raise PosetError("duplicate element labels")
        self.elements: tuple[str, ...] = tuple(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        up = {x: set() for x in elements}
        for a, b in relations:
            self._known(a)
            self._known(b)
            up[a].add(b)
        # reflexive-transitive closure
        closure = {}
        for x in elements:
            seen, stack = {x}, [x]
            while stack:
                for y in up[stack.pop()]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            closure[x] = seen
        for x in elements:
            for y in closure[x]:
                if y != x and x in closure[y]:
                    raise PosetError(f"cycle detected through {x} and {y}")
        self._up = {x: frozenset(s) for x, s in closure.items()}

    @classmethod
    def from_cover_relations(cls, elements, cover_pairs) -> Poset:
        for a, b in cover_pairs:
            if a == b:
                raise PosetError(f"cover pair ({a},{b}) is not irreflexive")
        return cls(elements, cover_pairs)

    def _known(self, x):
        if x not in self.index:
            raise PosetError(f"unknown element {x!r}")

    def leq(self, a, b) -> bool:
        self._known(a)
        self._known(b)
        return b in self._up[a]

    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    @cached_property
    def _intervals(self) -> dict[tuple[str, str], tuple[str, ...]]:
        return {(a, b): tuple(c for c in self.elements if c in self._up[a] and b in self._up[c])
                for a in self.elements for b in self.elements}

    def interval(self, a, b) -> list[str]:
        try:
            return list(self._intervals[a, b])
        except KeyError:
            self._known(a)
            self._known(b)
            raise

    @cached_property
    def covers(self) -> list[tuple[str, str]]:
        return [(a, b) for a in self.elements for b in self.elements
                if a != b and self.leq(a, b) and len(self.interval(a, b)) == 2]

    def is_cover(self, a, b) -> bool:
        return (a, b) in set(self.covers)

    @cached_property
    def _upper_covers(self) -> dict[str, list[str]]:
        out = {x: [] for x in self.elements}
        for a, b in self.covers:
            out[a].append(b)
        return out

    def maximal_chains(self, a, b) -> list[list[str]]:
        if not self.leq(a, b):
            raise PosetError(f"{a} is not below {b}")
        if a == b:
            return [[a]]
        return [[a] + rest for c in self._upper_covers[a] if self.leq(c, b)
                for rest in self.maximal_chains(c, b)]

    def height(self, a, b) -> int:
        return max(len(ch) for ch in self.maximal_chains(a, b)) - 1

    @cached_property
    def connected_components(self) -> list[frozenset[str]]:
        parent = {x: x for x in self.elements}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in self.elements:
            for b in self._up[a]:
                parent[find(a)] = find(b)
        groups: dict[str, list[str]] = {}
        for x in self.elements:
            groups.setdefault(find(x), []).append(x)
        return [frozenset(g) for g in groups.values()]

    def component_of(self, x) -> frozenset[str]:
        for comp in self.connected_components:
            if x in comp:
                return comp
        raise PosetError(f"unknown element {x!r}")

    def is_order_automorphism(self, f) -> bool:
        """True iff ``f`` (a dict or callable) is a bijection with a<=b iff f(a)<=f(b)."""
        get = f.get if isinstance(f, dict) else f
        try:
            image = [get(x) for x in self.elements]
        except Exception:
            return False
        if any(y not in self.index for y in image) or len(set(image)) != len(image):
            return False
        return all(self.leq(a, b) == self.leq(get(a), get(b))
                   for a in self.elements for b in self.elements)

    def automorphisms(self) -> list[dict[str, str]]:
        """All order automorphisms, identity first. Brute force, fine for tiny posets."""
        out = []
        for perm in permutations(self.elements):
            f = dict(zip(self.elements, perm))
            if self.is_order_automorphism(f):
                out.append(f)
        return out

    def pairs(self) -> list[tuple[str, str]]:
        """All (a, b) with a <= b, sorted by element index."""
        return [(a, b) for a in self.elements for b in self.elements if self.leq(a, b)]

    def __eq__(self, other):
        return (isinstance(other, Poset) and self.elements == other.elements
                and self._up == other._up)

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        cov = " ".join(f"{a}<{b}" for a, b in self.covers)
        return f"Poset({' '.join(self.elements)}; {cov})"


def chain(*labels: str) -> Poset:
    return Poset.from_cover_relations(labels, list(zip(labels, labels[1:])))


def antichain(*labels: str) -> Poset:
    return Poset(labels)


def vee() -> Poset:
    """x < y > z."""
    return Poset.from_cover_relations("xyz", [("x", "y"), ("z", "y")])
