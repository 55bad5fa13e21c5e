"""Finite colored sets and the maps between them."""

from __future__ import annotations

from types import MappingProxyType
from typing import Hashable, Iterable, Mapping


def id_key(x):
    """Total sort key over element ids (strings, ints and nested tuples)."""
    if isinstance(x, tuple):
        return (2, tuple(id_key(v) for v in x))
    if isinstance(x, int):
        return (0, x, "")
    return (1, 0, str(x))


def sorted_ids(ids: Iterable[Hashable]) -> list:
    return sorted(ids, key=id_key)


class ColorSet:
    """An ordered palette of distinct color names."""

    __slots__ = ("colors",)

    def __init__(self, colors: Iterable[str]):
        colors = tuple(colors)
        if not colors:
            raise ValueError("a color set must be nonempty")
        if len(set(colors)) != len(colors):
            raise ValueError(f"duplicate colors in {colors!r}")
        object.__setattr__(self, "colors", colors)

    def __setattr__(self, name, value):
        raise AttributeError("ColorSet is immutable")

    def __contains__(self, c) -> bool:
        return c in self.colors

    def __iter__(self):
        return iter(self.colors)

    def __len__(self) -> int:
        return len(self.colors)

    def __eq__(self, other) -> bool:
        return isinstance(other, ColorSet) and set(self.colors) == set(other.colors)

    def __hash__(self) -> int:
        return hash(frozenset(self.colors))

    def __repr__(self) -> str:
        return f"ColorSet({list(self.colors)!r})"

    def union(self, other: "ColorSet") -> "ColorSet":
        return ColorSet(self.colors + tuple(c for c in other.colors if c not in self.colors))


class ColoredSet:
    """A finite set together with a coloring of its elements.

    ``palette`` is optional; when present every color must belong to it.
    Element order is kept so that iteration is deterministic.
    """

    __slots__ = ("elements", "coloring", "palette")

    def __init__(self, coloring: Mapping | Iterable = (), palette: ColorSet | None = None):
        if isinstance(coloring, Mapping):
            pairs = list(coloring.items())
        else:
            pairs = list(coloring)
        elements = tuple(e for e, _ in pairs)
        if len(set(elements)) != len(elements):
            raise ValueError("duplicate element ids")
        cmap = dict(pairs)
        if palette is not None:
            bad = [c for c in cmap.values() if c not in palette]
            if bad:
                raise ValueError(f"colors {bad!r} not in {palette!r}")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "coloring", MappingProxyType(cmap))
        object.__setattr__(self, "palette", palette)

    def __setattr__(self, name, value):
        raise AttributeError("ColoredSet is immutable")

    def color(self, e) -> str:
        return self.coloring[e]

    def __contains__(self, e) -> bool:
        return e in self.coloring

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        # set equality: element order is presentation only
        return isinstance(other, ColoredSet) and dict(self.coloring) == dict(other.coloring)

    def __hash__(self) -> int:
        return hash(frozenset(self.coloring.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{e!r}:{c}" for e, c in self.coloring.items())
        return "{" + inner + "}"

    def of_color(self, *colors: str) -> list:
        return [e for e in self.elements if self.coloring[e] in colors]

    def count(self, color: str) -> int:
        return sum(1 for c in self.coloring.values() if c == color)

    def restrict(self, keep: Iterable) -> "ColoredSet":
        keep = set(keep)
        return ColoredSet([(e, c) for e, c in self.coloring.items() if e in keep], self.palette)

    def colors_used(self) -> set:
        return set(self.coloring.values())


class ColoredMap:
    """A total function between colored sets; not necessarily color-preserving."""

    __slots__ = ("domain", "codomain", "mapping")

    def __init__(self, domain: ColoredSet, codomain: ColoredSet, mapping: Mapping):
        missing = [e for e in domain if e not in mapping]
        if missing:
            raise ValueError(f"map not total: {missing!r} unmapped")
        outside = [v for v in mapping.values() if v not in codomain]
        if outside:
            raise ValueError(f"map leaves its codomain: {outside!r}")
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "codomain", codomain)
        object.__setattr__(self, "mapping", MappingProxyType({e: mapping[e] for e in domain}))

    def __setattr__(self, name, value):
        raise AttributeError("ColoredMap is immutable")

    def __call__(self, e):
        return self.mapping[e]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ColoredMap)
            and self.domain == other.domain
            and self.codomain == other.codomain
            and dict(self.mapping) == dict(other.mapping)
        )

    def __repr__(self) -> str:
        return f"ColoredMap({dict(self.mapping)!r})"

    @property
    def preserves_colors(self) -> bool:
        return all(self.codomain.color(v) == self.domain.color(e) for e, v in self.mapping.items())

    def then(self, other: "ColoredMap") -> "ColoredMap":
        """Composite ``other ∘ self``."""
        if self.codomain != other.domain:
            raise ValueError("maps are not composable")
        return ColoredMap(self.domain, other.codomain, {e: other(v) for e, v in self.mapping.items()})

    @classmethod
    def identity(cls, s: ColoredSet) -> "ColoredMap":
        return cls(s, s, {e: e for e in s})


def disjoint_union(a: ColoredSet, b: ColoredSet) -> ColoredSet:
    """Tagged disjoint union: elements become ``("L", e)`` and ``("R", e)``."""
    if a.palette is not None and b.palette is not None and a.palette != b.palette:
        raise ValueError(f"color-set mismatch: {a.palette!r} vs {b.palette!r}")
    pairs = [(("L", e), c) for e, c in a.coloring.items()]
    pairs += [(("R", e), c) for e, c in b.coloring.items()]
    return ColoredSet(pairs, a.palette or b.palette)


def is_colored_iso(m: ColoredMap) -> bool:
    """True iff ``m`` is a bijection and preserves colors."""
    values = list(m.mapping.values())
    if len(set(values)) != len(values) or len(values) != len(m.codomain):
        return False
    return m.preserves_colors
