"""Holomorph of a finite group as a permutation group on the group itself.

For a group N of order n acting on its own elements 0..n-1 (identity at 0),
the holomorph is generated by left translations and automorphisms.  Every
element x factors uniquely as x = translation(x(0)) followed by an
automorphism, so the element set is built by direct products rather than
closure; consistency of the factorization is spot-checked at build time.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .catalog import CayleyGroup, automorphism_group, regular_representation
from .errors import ConsistencyError
from .perm import Perm, PermGroup, compose, inverse
from .table import DEFAULT_TABLE_BUDGET, GroupTable, table_from_permgroup

_SPOT_CHECKS = 100


class HolomorphContext:
    """A group, its translation images, automorphisms, and their join."""

    def __init__(self, group: CayleyGroup):
        self.group = group
        self.n = group.order
        self.degree = group.order
        self.left = regular_representation(group, "left")
        self.right = regular_representation(group, "right")
        self.aut = automorphism_group(group)
        lam_perms = self.left.sorted_elements
        aut_perms = self.aut.sorted_elements
        elems = set()
        for a in range(self.n):
            la = tuple(int(v) for v in group.table[a])
            for alpha in aut_perms:
                elems.add(compose(la, alpha))
        if len(elems) != self.n * self.aut.order:
            raise ConsistencyError(
                f"{group.name}: holomorph has {len(elems)} elements, "
                f"expected {self.n} * {self.aut.order}"
            )
        gens = list(self.left.generators) + list(self.aut.generators)
        self.hol = PermGroup(gens, self.n, _elements=frozenset(elems))
        self._verify()
        self._table: Optional[GroupTable] = None
        self._index: Optional[dict[Perm, int]] = None
        self._left_set = frozenset(lam_perms)
        self._right_set = frozenset(self.right.sorted_elements)

    def _verify(self) -> None:
        hol_set = self.hol.elements
        for p in self.right.sorted_elements:
            if p not in hol_set:
                raise ConsistencyError(f"{self.group.name}: right translation not in holomorph")
        stab = [p for p in hol_set if p[0] == 0]
        if frozenset(stab) != self.aut.elements:
            raise ConsistencyError(f"{self.group.name}: point stabilizer is not the automorphism group")
        rng = np.random.default_rng(20260819)
        auts = self.aut.sorted_elements
        t = self.group.table
        for _ in range(_SPOT_CHECKS):
            a, b = rng.integers(0, self.n, size=2)
            alpha = auts[rng.integers(0, len(auts))]
            beta = auts[rng.integers(0, len(auts))]
            x = compose(tuple(int(v) for v in t[a]), alpha)
            y = compose(tuple(int(v) for v in t[b]), beta)
            lhs = compose(x, y)
            c = int(t[a, alpha[b]])
            rhs = compose(tuple(int(v) for v in t[c]), compose(alpha, beta))
            if lhs != rhs:
                raise ConsistencyError(f"{self.group.name}: holomorph product law fails")

    # -- dense table ----------------------------------------------------------

    def table(self, table_budget: int = DEFAULT_TABLE_BUDGET) -> GroupTable:
        """Multiplication table of the holomorph over its sorted elements."""
        if self._table is None:
            # images of 0 and the generator points determine a holomorph element
            base = [0] + [g for g in self.group.distinguished_generators if g != 0]
            self._table = table_from_permgroup(self.hol.sorted_elements, table_budget, base=base)
        return self._table

    def index_of(self, p: Perm) -> int:
        if self._index is None:
            self._index = {q: i for i, q in enumerate(self.hol.sorted_elements)}
        return self._index[p]

    def indices_of(self, perms) -> np.ndarray:
        return np.array(sorted(self.index_of(p) for p in perms), dtype=np.int64)

    def left_translation_indices(self) -> np.ndarray:
        return self.indices_of(self.left.sorted_elements)

    def right_translation_indices(self) -> np.ndarray:
        return self.indices_of(self.right.sorted_elements)

    def stabilizer_indices(self) -> np.ndarray:
        return self.indices_of(self.aut.sorted_elements)

    # -- element operations ----------------------------------------------------

    def embed_element(self, a: int) -> Perm:
        """Left translation by group element a."""
        return tuple(int(v) for v in self.group.table[a])

    def project_to_stabilizer(self, x: Perm) -> Perm:
        """Automorphism part of x under the translation/stabilizer factorization."""
        return compose(inverse(self.embed_element(x[0])), x)

    def contains_right_translations(self, perms) -> bool:
        """True if every right translation lies in the given element set."""
        s = perms if isinstance(perms, (set, frozenset)) else frozenset(perms)
        return self._right_set <= s

    def __repr__(self) -> str:
        return f"HolomorphContext({self.group.name}, order={self.hol.order})"


def build_holomorph(group: CayleyGroup) -> HolomorphContext:
    return HolomorphContext(group)


def dot_action(x: Perm, a: int) -> int:
    """Evaluation action of a holomorph element on a group element index."""
    return x[a]


__all__ = ["HolomorphContext", "build_holomorph", "dot_action"]
