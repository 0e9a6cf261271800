"""The augmented simplex category: ordinals ``n = {0,…,n-1}`` and monotone maps.

Maps are stored as explicit image tuples; generator words are a derived
view (:func:`factorize_generators`).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .errors import DomainMismatch, NotMonotone


@dataclass(frozen=True, order=True)
class DeltaMap:
    dom: int
    cod: int
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.dom < 0 or self.cod < 0:
            raise NotMonotone(self.dom, self.cod, detail="negative ordinal")
        if len(self.images) != self.dom:
            raise NotMonotone(self.images, detail=f"expected {self.dom} images")
        if any(not 0 <= i < self.cod for i in self.images):
            raise NotMonotone(self.images, detail=f"image outside 0..{self.cod - 1}")
        if any(a > b for a, b in zip(self.images, self.images[1:])):
            raise NotMonotone(self.images, detail="images must be nondecreasing")

    def __call__(self, i: int) -> int:
        return self.images[i]

    def is_surjective(self) -> bool:
        return set(self.images) == set(range(self.cod))

    def is_injective(self) -> bool:
        return len(set(self.images)) == self.dom

    def order_key(self) -> tuple:
        return (self.dom, self.cod, self.images)

    def fmt(self) -> str:
        return f"{self.dom}->{self.cod}[{''.join(map(str, self.images))}]"


def delta_map(dom: int, cod: int, images) -> DeltaMap:
    return DeltaMap(dom, cod, tuple(images))


def identity_delta(n: int) -> DeltaMap:
    return DeltaMap(n, n, tuple(range(n)))


def compose_delta(g: DeltaMap, f: DeltaMap) -> DeltaMap:
    """``g ∘ f``."""
    if f.cod != g.dom:
        raise DomainMismatch(f.fmt(), g.fmt())
    return DeltaMap(f.dom, g.cod, tuple(g.images[i] for i in f.images))


def ordinal_sum(f: DeltaMap, g: DeltaMap) -> DeltaMap:
    """``f + g``: the ``f`` block first, then ``g`` shifted past ``f.cod``."""
    return DeltaMap(f.dom + g.dom, f.cod + g.cod, f.images + tuple(i + f.cod for i in g.images))


def coface(n: int, i: int) -> DeltaMap:
    """The injection ``n → n+1`` that misses ``i``."""
    if not 0 <= i <= n:
        raise ValueError(f"coface index {i} out of range for {n}")
    return DeltaMap(n, n + 1, tuple(j if j < i else j + 1 for j in range(n)))


def codegeneracy(n: int, i: int) -> DeltaMap:
    """The surjection ``n+1 → n`` that hits ``i`` twice."""
    if not 0 <= i < n:
        raise ValueError(f"codegeneracy index {i} out of range for {n}")
    return DeltaMap(n + 1, n, tuple(j if j <= i else j - 1 for j in range(n + 1)))


def factorize_generators(f: DeltaMap) -> list[DeltaMap]:
    """Generators whose composite is ``f``, in order of application.

    Codegeneracies (the surjective part) come first, cofaces (the injective
    part) second; composing the list left to right recovers ``f``.
    """
    out: list[DeltaMap] = []
    img = list(f.images)
    p = 0
    while p < len(img) - 1:
        if img[p] == img[p + 1]:
            out.append(codegeneracy(len(img) - 1, p))
            del img[p + 1]
        else:
            p += 1
    k = len(img)
    for c in sorted(set(range(f.cod)) - set(img)):
        out.append(coface(k, c))
        k += 1
    return out


def recompose(gens: list[DeltaMap], n: int) -> DeltaMap:
    acc = identity_delta(n)
    for g in gens:
        acc = compose_delta(g, acc)
    return acc


def enumerate_hom(m: int, n: int) -> tuple[DeltaMap, ...]:
    """All monotone maps ``m → n`` in lexicographic order."""
    return tuple(DeltaMap(m, n, c) for c in combinations_with_replacement(range(n), m))


__all__ = [
    "DeltaMap",
    "codegeneracy",
    "coface",
    "compose_delta",
    "delta_map",
    "enumerate_hom",
    "factorize_generators",
    "identity_delta",
    "ordinal_sum",
    "recompose",
]
