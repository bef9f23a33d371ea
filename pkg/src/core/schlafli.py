"""
27 條直線的組合結構

以 P^2 六點爆破的標準標記建構 Schläfli 圖（相交關係），並列舉 45 個三切面
（三角形）與 36 個雙六（double six）。
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, List, Tuple

import networkx as nx

from .errors import ConstructionError

logger = logging.getLogger(__name__)

INDICES = range(1, 7)


@dataclass(frozen=True, order=True)
class LineLabel:
    """直線標記：kind 為 E / L / C，indices 為 1..6 的下標"""
    kind: str
    indices: Tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.kind}{''.join(str(i) for i in self.indices)}"

    @classmethod
    def parse(cls, text: str) -> "LineLabel":
        text = text.strip().upper()
        kind, digits = text[0], text[1:]
        indices = tuple(int(ch) for ch in digits)
        label = cls(kind, indices)
        if label not in LABEL_INDEX:
            raise ValueError(f"無效的直線標記: {text}")
        return label


def _canonical_labels() -> Tuple[LineLabel, ...]:
    labels = [LineLabel("E", (i,)) for i in INDICES]
    labels += [LineLabel("L", pair) for pair in combinations(INDICES, 2)]
    labels += [LineLabel("C", (i,)) for i in INDICES]
    return tuple(labels)


LABELS: Tuple[LineLabel, ...] = _canonical_labels()
LABEL_INDEX: Dict[LineLabel, int] = {label: idx for idx, label in enumerate(LABELS)}


def E(i: int) -> int:
    return LABEL_INDEX[LineLabel("E", (i,))]


def L(i: int, j: int) -> int:
    return LABEL_INDEX[LineLabel("L", tuple(sorted((i, j))))]


def C(i: int) -> int:
    return LABEL_INDEX[LineLabel("C", (i,))]


def _meets(a: LineLabel, b: LineLabel) -> bool:
    if a == b:
        return False
    kinds = {a.kind, b.kind}
    if kinds == {"E"} or kinds == {"C"}:
        return False
    if kinds == {"E", "C"}:
        return a.indices != b.indices
    if kinds == {"L"}:
        return not set(a.indices) & set(b.indices)
    # E 或 C 與 L
    single, pair = (a, b) if a.kind != "L" else (b, a)
    return single.indices[0] in pair.indices


@dataclass(frozen=True)
class DoubleSix:
    """雙六：兩組互不相交的六條線，first[i] 與 second[j] 相交當且僅當 i ≠ j"""
    first: Tuple[int, ...]
    second: Tuple[int, ...]

    def lines(self) -> FrozenSet[int]:
        return frozenset(self.first) | frozenset(self.second)

    def key(self) -> FrozenSet[FrozenSet[int]]:
        return frozenset((frozenset(self.first), frozenset(self.second)))


class IncidenceGraph:
    """Schläfli 圖的包裝，頂點為 0..26 的標準索引"""

    def __init__(self, graph: nx.Graph):
        self.graph = graph
        self.adjacency: Tuple[FrozenSet[int], ...] = tuple(
            frozenset(graph.neighbors(v)) for v in range(len(LABELS))
        )

    def adjacent(self, a: int, b: int) -> bool:
        return b in self.adjacency[a]

    def neighbors(self, v: int) -> FrozenSet[int]:
        return self.adjacency[v]

    def srg_parameters(self) -> Tuple[int, int, int, int]:
        """回傳 (v, k, λ, μ)；若不是強正則圖則拋出 ConstructionError"""
        n = self.graph.number_of_nodes()
        degrees = {len(nbrs) for nbrs in self.adjacency}
        if len(degrees) != 1:
            raise ConstructionError(f"圖不是正則圖，度數集合 {sorted(degrees)}")
        lambdas, mus = set(), set()
        for a, b in combinations(range(n), 2):
            common = len(self.adjacency[a] & self.adjacency[b])
            (lambdas if self.adjacent(a, b) else mus).add(common)
        if len(lambdas) != 1 or len(mus) != 1:
            raise ConstructionError(f"共同鄰點數不一致: λ={sorted(lambdas)} μ={sorted(mus)}")
        return n, degrees.pop(), lambdas.pop(), mus.pop()


@lru_cache(maxsize=None)
def build_incidence() -> IncidenceGraph:
    """建構 27 條直線的相交圖，並驗證為 SRG(27, 10, 1, 5)"""
    graph = nx.Graph()
    graph.add_nodes_from(range(len(LABELS)))
    for a, b in combinations(range(len(LABELS)), 2):
        if _meets(LABELS[a], LABELS[b]):
            graph.add_edge(a, b)
    incidence = IncidenceGraph(graph)
    params = incidence.srg_parameters()
    if params != (27, 10, 1, 5):
        raise ConstructionError(f"相交圖參數錯誤: {params}")
    logger.info(f"相交圖建構完成：{graph.number_of_nodes()} 個頂點、{graph.number_of_edges()} 條邊")
    return incidence


@lru_cache(maxsize=None)
def enumerate_tritangents(incidence: IncidenceGraph) -> Tuple[Tuple[int, int, int], ...]:
    """列出所有三角形（三切面），依字典序排列"""
    triangles = sorted(
        tuple(sorted(clique))
        for clique in nx.enumerate_all_cliques(incidence.graph)
        if len(clique) == 3
    )
    if len(triangles) != 45:
        raise ConstructionError(f"三切面數量錯誤: {len(triangles)}")
    per_line = [0] * len(LABELS)
    for tri in triangles:
        for v in tri:
            per_line[v] += 1
    if set(per_line) != {5}:
        raise ConstructionError("每條線應恰好落在 5 個三切面上")
    for a, b in incidence.graph.edges():
        containing = sum(1 for tri in triangles if a in tri and b in tri)
        if containing != 1:
            raise ConstructionError(f"相交線對 {LABELS[a]},{LABELS[b]} 落在 {containing} 個三切面上")
    return tuple(triangles)


def _partner(incidence: IncidenceGraph, sixes: Tuple[int, ...]) -> Tuple[int, ...]:
    """找出與六條互斥線配對的另一組六條線；不存在時回傳空 tuple"""
    partner = []
    for i, a in enumerate(sixes):
        others = set(sixes[:i] + sixes[i + 1:])
        candidates = [
            v for v in range(len(LABELS))
            if v not in sixes
            and not incidence.adjacent(v, a)
            and all(incidence.adjacent(v, o) for o in others)
        ]
        if len(candidates) != 1:
            return ()
        partner.append(candidates[0])
    if any(incidence.adjacent(x, y) for x, y in combinations(partner, 2)):
        return ()
    return tuple(partner)


@lru_cache(maxsize=None)
def enumerate_double_sixes(incidence: IncidenceGraph) -> Tuple[DoubleSix, ...]:
    """列出全部 36 個雙六

    6 元獨立集即補圖中的 6-團；每個 6 元獨立集恰好有一組配對。
    """
    complement = nx.complement(incidence.graph)
    cocliques = sorted(
        tuple(sorted(clique)) for clique in nx.find_cliques(complement) if len(clique) == 6
    )
    found: Dict[FrozenSet[FrozenSet[int]], DoubleSix] = {}
    for six in cocliques:
        partner = _partner(incidence, six)
        if not partner:
            raise ConstructionError(f"獨立集 {[str(LABELS[v]) for v in six]} 沒有配對")
        # 以較小的一半作為 first，並保持 first[i] 與 second[i] 互斥的配對順序
        pairs = sorted(zip(six, partner))
        ds = DoubleSix(tuple(a for a, _ in pairs), tuple(b for _, b in pairs))
        if min(partner) < min(six):
            pairs = sorted(zip(partner, six))
            ds = DoubleSix(tuple(a for a, _ in pairs), tuple(b for _, b in pairs))
        found.setdefault(ds.key(), ds)
    result = tuple(sorted(found.values(), key=lambda d: (d.first, d.second)))
    if len(result) != 36:
        raise ConstructionError(f"雙六數量錯誤: {len(result)}")
    return result


def is_double_six(incidence: IncidenceGraph, first, second) -> bool:
    """檢查兩組六條線是否構成雙六"""
    first, second = tuple(first), tuple(second)
    if len(set(first)) != 6 or len(set(second)) != 6 or set(first) & set(second):
        return False
    if any(incidence.adjacent(x, y) for x, y in combinations(first, 2)):
        return False
    if any(incidence.adjacent(x, y) for x, y in combinations(second, 2)):
        return False
    return all(
        incidence.adjacent(a, b) == (i != j)
        for i, a in enumerate(first)
        for j, b in enumerate(second)
    )


def is_tritangent(incidence: IncidenceGraph, lines) -> bool:
    lines = tuple(lines)
    return len(set(lines)) == 3 and all(incidence.adjacent(a, b) for a, b in combinations(lines, 2))
