"""Catalog of all groups up to a small order, by Cayley-table search.

Tables are filled cell by cell. Each assignment is pushed through the
associativity law in all four positions a cell can occupy in
``(xy)z = x(yz)``, and symmetric labels are pruned with the least-number
heuristic: labels not yet mentioned by any non-identity cell are
interchangeable, so only the smallest of them is ever tried.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .errors import Unsupported
from .groups import FiniteGroup, are_isomorphic, build_from_table, sort_key

MAX_GENERATED_ORDER = 12


class _TableSearch:
    def __init__(self, n: int):
        self.n = n
        self.T = [[-1] * n for _ in range(n)]
        self.rowpos = [[-1] * n for _ in range(n)]  # rowpos[a][v] = b with T[a][b] = v
        self.colpos = [[-1] * n for _ in range(n)]  # colpos[b][v] = a with T[a][b] = v
        self.count = [0] * n
        self.trail: list[tuple[int, int]] = []
        for x in range(n):
            self._set(0, x, x, track=False)
            if x:
                self._set(x, 0, x, track=False)

    def _set(self, a, b, c, track=True):
        self.T[a][b] = c
        self.rowpos[a][c] = b
        self.colpos[b][c] = a
        if track:
            self.trail.append((a, b))
            if a and b:
                self.count[a] += 1
                self.count[b] += 1
                self.count[c] += 1

    def _undo_to(self, mark: int):
        T = self.T
        while len(self.trail) > mark:
            a, b = self.trail.pop()
            c = T[a][b]
            T[a][b] = -1
            self.rowpos[a][c] = -1
            self.colpos[b][c] = -1
            if a and b:
                self.count[a] -= 1
                self.count[b] -= 1
                self.count[c] -= 1

    def _assign(self, a, b, c, queue) -> bool:
        cur = self.T[a][b]
        if cur >= 0:
            return cur == c
        if self.rowpos[a][c] >= 0 or self.colpos[b][c] >= 0:
            return False
        self._set(a, b, c)
        queue.append((a, b))
        return True

    def _propagate(self, queue) -> bool:
        T, rowpos, colpos, n = self.T, self.rowpos, self.colpos, self.n
        while queue:
            a, b = queue.pop()
            c = T[a][b]
            # (a b) z = a (b z)
            for z in range(n):
                w = T[b][z]
                if w < 0:
                    continue
                lhs, rhs = T[c][z], T[a][w]
                if lhs >= 0:
                    if not self._assign(a, w, lhs, queue):
                        return False
                elif rhs >= 0:
                    if not self._assign(c, z, rhs, queue):
                        return False
            # (x a) b = x (a b)
            for x in range(n):
                u = T[x][a]
                if u < 0:
                    continue
                lhs, rhs = T[u][b], T[x][c]
                if lhs >= 0:
                    if not self._assign(x, c, lhs, queue):
                        return False
                elif rhs >= 0:
                    if not self._assign(u, b, rhs, queue):
                        return False
            # a = x y:  x (y b) = c
            for x in range(n):
                y = rowpos[x][a]
                if y < 0:
                    continue
                w = T[y][b]
                if w >= 0:
                    if not self._assign(x, w, c, queue):
                        return False
                else:
                    w = rowpos[x][c]
                    if w >= 0 and not self._assign(y, b, w, queue):
                        return False
            # b = y z:  (a y) z = c
            for z in range(n):
                y = colpos[z][b]
                if y < 0:
                    continue
                u = T[a][y]
                if u >= 0:
                    if not self._assign(u, z, c, queue):
                        return False
                else:
                    u = colpos[z][c]
                    if u >= 0 and not self._assign(a, y, u, queue):
                        return False
        return True

    def _candidates(self, i, j, touched, fresh):
        allowed = set(touched)
        allowed.update((i, j))
        for u in fresh:
            if u != i and u != j:
                allowed.add(u)
                break
        row, col = self.rowpos[i], self.colpos[j]
        return [v for v in sorted(allowed) if row[v] < 0 and col[v] < 0]

    def _choose(self):
        n, T = self.n, self.T
        touched = [x for x in range(n) if x == 0 or self.count[x] > 0]
        fresh = [x for x in range(n) if x != 0 and self.count[x] == 0]
        active = touched
        if all(T[i][j] >= 0 for i in touched for j in touched):
            if not fresh:
                return None
            active = touched + [fresh[0]]
        best = None
        for i in active:
            if i == 0:
                continue
            for j in active:
                if j == 0 or T[i][j] >= 0:
                    continue
                cands = self._candidates(i, j, touched, fresh)
                if best is None or len(cands) < len(best[2]):
                    best = (i, j, cands)
                    if len(cands) <= 1:
                        return best
        return best

    def run(self, found):
        choice = self._choose()
        if choice is None:
            found(self.T)
            return
        i, j, cands = choice
        for v in cands:
            mark = len(self.trail)
            queue: list[tuple[int, int]] = []
            if self._assign(i, j, v, queue) and self._propagate(queue):
                self.run(found)
            self._undo_to(mark)


def groups_of_order(n: int) -> list[FiniteGroup]:
    """One representative of each isomorphism class of order ``n``, sorted."""
    if n < 1:
        raise ValueError("order must be positive")
    if n > MAX_GENERATED_ORDER:
        raise Unsupported(f"table search supports orders up to {MAX_GENERATED_ORDER}, got {n}")
    reps: list[FiniteGroup] = []

    def found(T):
        G = build_from_table([row[:] for row in T])
        for R in reps:
            if are_isomorphic(G, R) is not None:
                return
        reps.append(G)

    _TableSearch(n).run(found)
    return sorted(reps, key=sort_key)


@dataclass
class Catalog:
    """Pairwise non-isomorphic groups covering every class of order <= bound."""

    bound: int
    groups: list[FiniteGroup] = field(default_factory=list)

    def __iter__(self):
        return iter(self.groups)

    def __len__(self) -> int:
        return len(self.groups)

    def upto(self, bound: int) -> Catalog:
        return Catalog(min(bound, self.bound), [G for G in self.groups if G.order <= bound])

    def counts(self) -> list[int]:
        return [sum(1 for G in self.groups if G.order == k) for k in range(1, self.bound + 1)]

    def by_label(self, label: str) -> FiniteGroup:
        for G in self.groups:
            if G.label == label:
                return G
        raise KeyError(label)


# Conventional names keyed by (order, order profile); unique for orders <= 12.
_KNOWN = {
    (4, (1, 2, 2, 2)): "C2xC2",
    (6, (1, 2, 2, 2, 3, 3)): "S3",
    (8, (1, 2, 2, 2, 2, 2, 2, 2)): "C2xC2xC2",
    (8, (1, 2, 2, 2, 2, 2, 4, 4)): "D4",
    (8, (1, 2, 2, 2, 4, 4, 4, 4)): "C4xC2",
    (8, (1, 2, 4, 4, 4, 4, 4, 4)): "Q8",
    (9, (1, 3, 3, 3, 3, 3, 3, 3, 3)): "C3xC3",
    (10, (1, 2, 2, 2, 2, 2, 5, 5, 5, 5)): "D5",
    (12, (1, 2, 2, 2, 2, 2, 2, 2, 3, 3, 6, 6)): "D6",
    (12, (1, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 3)): "A4",
    (12, (1, 2, 2, 2, 3, 3, 6, 6, 6, 6, 6, 6)): "C6xC2",
    (12, (1, 2, 3, 3, 4, 4, 4, 4, 4, 4, 6, 6)): "Dic3",
}


def _name(G: FiniteGroup, k: int) -> str:
    if max(G.element_orders) == G.order:
        return f"C{G.order}"
    return _KNOWN.get((G.order, G.order_profile), f"G{G.order}_{k}")


def build_catalog(N: int) -> Catalog:
    """Enumerate all groups of order <= N (N <= 12)."""
    if N < 1:
        raise ValueError("bound must be >= 1")
    if N > MAX_GENERATED_ORDER:
        raise Unsupported(f"catalog generation supports N <= {MAX_GENERATED_ORDER}; supply larger catalogs as files")
    groups = []
    for n in range(1, N + 1):
        for k, G in enumerate(groups_of_order(n), start=1):
            G.label = _name(G, k)
            groups.append(G)
    return Catalog(N, groups)


def catalog_to_json(cat: Catalog) -> dict:
    return {
        "bound": cat.bound,
        "groups": [{"name": G.label, "kind": "cayley", "table": G.table.tolist()} for G in cat.groups],
    }


def catalog_from_json(doc: dict) -> Catalog:
    groups = [build_from_table(g["table"], g.get("name")) for g in doc["groups"]]
    return Catalog(int(doc["bound"]), groups)


def default_catalog(N: int = MAX_GENERATED_ORDER) -> Catalog:
    """The shipped catalog (regenerate with ``galfree catalog``), cut to N."""
    if N > MAX_GENERATED_ORDER:
        raise Unsupported(f"shipped catalog covers N <= {MAX_GENERATED_ORDER}")
    text = resources.files("galfree.data").joinpath("catalog12.json").read_text()
    return catalog_from_json(json.loads(text)).upto(N)
