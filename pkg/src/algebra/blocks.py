"""Union-find over points, used for orbits and minimal block systems."""

from typing import Dict, Iterable, List


class UnionFind:
    def __init__(self, points: Iterable[int]):
        self.parent: Dict[int, int] = {x: x for x in points}
        self.rank: Dict[int, int] = {x: 0 for x in self.parent}

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        """Merge the classes of ``x`` and ``y``; False if they were already one."""
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x
        return True

    def classes(self) -> List[List[int]]:
        """Classes sorted by smallest member, members ascending."""
        groups: Dict[int, List[int]] = {}
        for x in sorted(self.parent):
            groups.setdefault(self.find(x), []).append(x)
        return sorted(groups.values(), key=lambda c: c[0])
