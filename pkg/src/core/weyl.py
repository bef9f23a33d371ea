"""
W(E6) 作為 Schläfli 圖的自同構群

建構流程：
1. 以 S6 下標重標與 E↔C 交換為種子生成 sympy PermutationGroup（雙六穩定子，階 1440）
2. 以 networkx 的 VF2 比對補上一個把 E1 送出該軌道的自同構，群階數達 51840
3. 完整列舉元素後，以共軛作用圖的連通分量切出 25 個共軛類，
   透過 Picard 格上的作用計算 V6 特徵多項式與虛擬循環型，並與參考資料逐列比對
"""

import logging
import random
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
import sympy
from networkx.algorithms.isomorphism import GraphMatcher
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components
from sympy.combinatorics import Permutation, PermutationGroup

from .errors import ConstructionError
from .poly import QPoly, charpoly_from_power_sums, cyclotomic_exponents, divisors, mobius
from .schlafli import (
    LABELS,
    DoubleSix,
    IncidenceGraph,
    LineLabel,
    build_incidence,
    enumerate_double_sixes,
    enumerate_tritangents,
)
from .tables import CLASS_RECORDS, GROUP_ORDER, ClassRecord

logger = logging.getLogger(__name__)

Perm = Tuple[int, ...]

N_LINES = len(LABELS)
IDENTITY: Perm = tuple(range(N_LINES))

ACTIONS = ("lines", "tritangents", "double_sixes")


# ---- 置換基本運算（元素以 array form 的 tuple 表示）----


def as_permutation(g: Sequence[int]) -> Permutation:
    return Permutation(list(g), size=len(g))


def compose(g: Perm, h: Perm) -> Perm:
    """先作用 h 再作用 g：(g∘h)[i] = g[h[i]]"""
    # sympy 的 p*q 是先 p 後 q
    return tuple((as_permutation(h) * as_permutation(g)).array_form)


def inverse(g: Perm) -> Perm:
    return tuple((~as_permutation(g)).array_form)


def power(g: Perm, k: int) -> Perm:
    return tuple((as_permutation(g) ** k).array_form)


def element_order(g: Perm) -> int:
    return int(as_permutation(g).order())


def relabel_permutation(sigma: Dict[int, int]) -> Perm:
    """由 {1..6} 的置換誘導的直線置換"""
    image = []
    for label in LABELS:
        moved = tuple(sigma[i] for i in label.indices)
        if label.kind == "L":
            moved = tuple(sorted(moved))
        image.append(LABELS.index(LineLabel(label.kind, moved)))
    return tuple(image)


def swap_permutation() -> Perm:
    """E(i) ↔ C(i)，L(i,j) 不動"""
    image = []
    for label in LABELS:
        kind = {"E": "C", "C": "E"}.get(label.kind, label.kind)
        image.append(LABELS.index(LineLabel(kind, label.indices)))
    return tuple(image)


def is_automorphism(g: Perm, incidence: IncidenceGraph) -> bool:
    return all(incidence.adjacent(g[a], g[b]) for a, b in incidence.graph.edges())


def find_automorphism(incidence: IncidenceGraph, source: int, target: int) -> Optional[Perm]:
    """以 VF2 比對找一個把 source 送到 target 的自同構"""
    first = incidence.graph.copy()
    second = incidence.graph.copy()
    nx.set_node_attributes(first, {source: True}, "pinned")
    nx.set_node_attributes(second, {target: True}, "pinned")
    matcher = GraphMatcher(
        first,
        second,
        node_match=lambda a, b: a.get("pinned", False) == b.get("pinned", False),
    )
    mapping = next(matcher.isomorphisms_iter(), None)
    if mapping is None:
        return None
    return tuple(mapping[v] for v in range(N_LINES))


def reduce_generators(generators: Sequence[Perm]) -> Tuple[Perm, ...]:
    """依序保留不在前面生成元所生成子群內的生成元，直到生成整個子群"""
    gens = [tuple(g) for g in generators if tuple(g) != IDENTITY]
    if not gens:
        return ()
    target = PermutationGroup([as_permutation(g) for g in gens]).order()
    chosen: List[Perm] = []
    current = PermutationGroup([as_permutation(IDENTITY)])
    for g in gens:
        if current.contains(as_permutation(g)):
            continue
        chosen.append(g)
        current = PermutationGroup([as_permutation(h) for h in chosen])
        if current.order() == target:
            break
    return tuple(chosen)


def enumerate_elements(generators: Sequence[Perm]) -> List[Perm]:
    """以 Dimino 演算法列舉子群元素（單位元在最前）"""
    if not generators:
        return [IDENTITY]
    group = PermutationGroup([as_permutation(g) for g in generators])
    return [tuple(af) for af in group.generate(method="dimino", af=True)]


# ---- 群 ----


@dataclass
class Group:
    """sympy 置換群加上完整列舉的元素（共軛類索引用）"""
    generators: Tuple[Perm, ...]
    permutation_group: PermutationGroup = field(repr=False)
    elements: List[Perm] = field(repr=False)
    index: Dict[Perm, int] = field(repr=False)

    @classmethod
    def from_generators(cls, generators: Sequence[Perm]) -> "Group":
        gens = tuple(tuple(g) for g in generators)
        permutation_group = PermutationGroup([as_permutation(g) for g in gens])
        elements = enumerate_elements(gens)
        if len(elements) != permutation_group.order():
            raise ConstructionError(f"列舉的元素數 {len(elements)} ≠ 群階數 {permutation_group.order()}")
        return cls(gens, permutation_group, elements, {g: i for i, g in enumerate(elements)})

    @property
    def order(self) -> int:
        return int(self.permutation_group.order())

    @property
    def identity(self) -> Perm:
        return IDENTITY

    def __contains__(self, g) -> bool:
        return tuple(g) in self.index

    def contains(self, g: Sequence[int]) -> bool:
        """以 Schreier-Sims 篩選判斷成員資格"""
        return len(g) == N_LINES and self.permutation_group.contains(as_permutation(g))

    def random_element(self, rng: random.Random) -> Perm:
        return self.elements[rng.randrange(len(self.elements))]

    def orbit(self, point: int) -> frozenset:
        return frozenset(self.permutation_group.orbit(point))


def automorphism_group(incidence: IncidenceGraph) -> Group:
    """建構相交圖的自同構群，階數必須為 51840"""
    transposition = relabel_permutation({1: 2, 2: 1, 3: 3, 4: 4, 5: 5, 6: 6})
    cycle = relabel_permutation({i: i % 6 + 1 for i in range(1, 7)})
    swap = swap_permutation()
    generators: List[Perm] = [transposition, cycle, swap]
    for g in generators:
        if not is_automorphism(g, incidence):
            raise ConstructionError("種子置換不保持相交關係")

    seeds = PermutationGroup([as_permutation(g) for g in generators])
    logger.info(f"種子生成的子群階數: {seeds.order()}")
    if seeds.order() != GROUP_ORDER:
        orbit = seeds.orbit(0)
        outside = min(v for v in range(N_LINES) if v not in orbit)
        logger.info(f"種子只生成 {seeds.order()} 階子群，以 VF2 補上 {LABELS[0]} -> {LABELS[outside]}")
        extra = find_automorphism(incidence, 0, outside)
        if extra is None:
            raise ConstructionError(f"找不到把 {LABELS[0]} 送到 {LABELS[outside]} 的自同構")
        generators.append(extra)

    if PermutationGroup([as_permutation(g) for g in generators]).order() != GROUP_ORDER:
        raise ConstructionError(f"自同構群階數不是 {GROUP_ORDER}")
    group = Group.from_generators(generators)
    logger.info(f"W(E6) 建構完成，階數 {group.order}，{len(generators)} 個生成元")
    return group


# ---- Picard 格 ----

FORM = np.diag([1, -1, -1, -1, -1, -1, -1]).astype(np.int64)
CANONICAL_CLASS = np.array([-3, 1, 1, 1, 1, 1, 1], dtype=np.int64)


def line_to_picard(label) -> np.ndarray:
    """E(i) -> e_i；L(i,j) -> e0 - e_i - e_j；C(i) -> 2e0 - Σ_{j≠i} e_j"""
    if isinstance(label, int):
        label = LABELS[label]
    v = np.zeros(7, dtype=np.int64)
    if label.kind == "E":
        v[label.indices[0]] = 1
    elif label.kind == "L":
        v[0] = 1
        for i in label.indices:
            v[i] = -1
    else:
        v[0] = 2
        for j in range(1, 7):
            if j != label.indices[0]:
                v[j] = -1
    return v


def pairing(u: np.ndarray, v: np.ndarray) -> int:
    return int(u @ FORM @ v)


LINE_VECTORS = np.stack([line_to_picard(i) for i in range(N_LINES)], axis=1)
_BASIS_LINES = (0, 1, 2, 3, 4, 5, 6)  # E1..E6, L12


def _basis_inverse() -> np.ndarray:
    basis = sympy.Matrix(LINE_VECTORS[:, list(_BASIS_LINES)].tolist())
    inv = basis.inv()
    if any(not entry.is_integer for entry in inv):
        raise ConstructionError("Picard 基底不是么模矩陣")
    return np.array(inv.tolist(), dtype=np.int64)


_BASIS_INV = _basis_inverse()


def element_matrix_on_picard(g: Perm, check: bool = True) -> np.ndarray:
    """g 在 Picard 格上的 7x7 整數矩陣"""
    images = LINE_VECTORS[:, [g[b] for b in _BASIS_LINES]]
    matrix = images @ _BASIS_INV
    if check:
        if not np.array_equal(matrix @ LINE_VECTORS, LINE_VECTORS[:, list(g)]):
            raise ConstructionError("置換沒有一致的線性延拓")
        if not np.array_equal(matrix.T @ FORM @ matrix, FORM):
            raise ConstructionError("矩陣不保持相交形式")
        if not np.array_equal(matrix @ CANONICAL_CLASS, CANONICAL_CLASS):
            raise ConstructionError("矩陣不固定典範類 K")
    return matrix


def trace_v6(g: Perm) -> int:
    return int(np.trace(element_matrix_on_picard(g))) - 1


def v6_power_sums(matrix: np.ndarray, count: int = 6) -> List[int]:
    sums = []
    current = np.eye(7, dtype=np.int64)
    for _ in range(count):
        current = current @ matrix
        sums.append(int(np.trace(current)) - 1)
    return sums


def element_char_poly(g: Perm) -> QPoly:
    return charpoly_from_power_sums(v6_power_sums(element_matrix_on_picard(g)), 6)


# ---- 虛擬循環型 ----


def cycle_type_from_charpoly(poly: QPoly) -> Tuple[Tuple[int, int], ...]:
    """把 V6 特徵多項式轉成虛擬循環型 ((d, i_d), ...)，省略 i_d = 0"""
    exponents = cyclotomic_exponents(poly)
    n = 1
    for m in exponents:
        n = lcm(n, m)
    result = []
    for d in divisors(n):
        value = sum(
            mobius(m // d) * exponents.get(m, 0)
            for m in divisors(n)
            if m % d == 0
        )
        if value:
            result.append((d, value))
    if sum(d * i for d, i in result) != 6:
        raise ConstructionError(f"虛擬循環型 {result} 的 Σ d·i_d ≠ 6")
    return tuple(result)


def format_cycle_type(cycle_type: Sequence[Tuple[int, int]]) -> str:
    """((1,-2),(2,4)) -> "(1^-2,2^4)" """
    parts = [str(d) if i == 1 else f"{d}^{i}" for d, i in cycle_type]
    return "(" + ",".join(parts) + ")"


# ---- 共軛類 ----


@dataclass
class ConjugacyClass:
    index: int
    name: str
    record: ClassRecord
    representative: Perm
    size: int
    order: int
    char_poly: QPoly
    trace_v6: int
    cycle_type: Tuple[Tuple[int, int], ...]
    power_map: Tuple[int, ...] = ()

    @property
    def parity(self) -> str:
        return "even" if self.char_poly.coefficient(0) == 1 else "odd"

    @property
    def is_even(self) -> bool:
        return self.parity == "even"

    def power_class(self, k: int) -> int:
        """g^k 所在類的索引（k 可超過元素階）"""
        k %= self.order
        if k == 0:
            return 0
        return self.power_map[k - 1]


def char_poly_v6(c: ConjugacyClass) -> QPoly:
    return c.char_poly


def virtual_cycle_type(c: ConjugacyClass) -> Tuple[Tuple[int, int], ...]:
    return c.cycle_type


def parity(c: ConjugacyClass) -> str:
    return c.parity


def _class_orbits(group: Group) -> List[List[int]]:
    """共軛作用下的軌道分割（元素索引）

    每個生成元 s 給出邊 x -> s x s^{-1}，共軛類即為這張圖的弱連通分量。
    """
    elements = np.array(group.elements, dtype=np.int64)
    n = len(elements)
    sources, targets = [], []
    for s in group.generators:
        s_arr = np.array(s, dtype=np.int64)
        s_inv = np.argsort(s_arr)
        conjugated = s_arr[elements[:, s_inv]]
        sources.append(np.arange(n))
        targets.append(np.fromiter((group.index[tuple(row)] for row in conjugated.tolist()), dtype=np.int64, count=n))
    rows = np.concatenate(sources)
    cols = np.concatenate(targets)
    graph = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    count, labels = connected_components(graph, directed=True, connection="weak")
    orbits = [np.flatnonzero(labels == k).tolist() for k in range(count)]
    orbits.sort(key=lambda members: members[0])
    return orbits


def conjugacy_classes(group: Group) -> Tuple[List[ConjugacyClass], np.ndarray]:
    """切出 25 個共軛類並依參考表排序

    Returns:
        (classes, class_of)，class_of[i] 為第 i 個群元素所在類的索引
    """
    orbits = _class_orbits(group)
    if len(orbits) != len(CLASS_RECORDS):
        raise ConstructionError(f"共軛類數量 {len(orbits)} ≠ {len(CLASS_RECORDS)}")

    records = {record.name: record for record in CLASS_RECORDS}
    found: Dict[str, Tuple[List[int], QPoly, Tuple[Tuple[int, int], ...]]] = {}
    polys = set()
    for members in orbits:
        rep = group.elements[members[0]]
        poly = element_char_poly(rep)
        if poly in polys:
            raise ConstructionError(f"兩個共軛類有相同的 V6 特徵多項式 {poly}")
        polys.add(poly)
        cycle_type = cycle_type_from_charpoly(poly)
        name = format_cycle_type(cycle_type)
        record = records.get(name)
        if record is None:
            raise ConstructionError(f"計算出的類 {name} 不在參考表中")
        if record.size != len(members) or record.order != element_order(rep):
            raise ConstructionError(
                f"類 {name} 的大小/階數 ({len(members)}, {element_order(rep)}) "
                f"與參考值 ({record.size}, {record.order}) 不符"
            )
        found[name] = (members, poly, cycle_type)

    classes: List[ConjugacyClass] = []
    class_of = np.empty(group.order, dtype=np.int16)
    for idx, record in enumerate(CLASS_RECORDS):
        members, poly, cycle_type = found[record.name]
        rep = group.elements[members[0]]
        class_of[members] = idx
        classes.append(ConjugacyClass(
            index=idx,
            name=record.name,
            record=record,
            representative=rep,
            size=len(members),
            order=record.order,
            char_poly=poly,
            trace_v6=trace_v6(rep),
            cycle_type=cycle_type,
        ))

    for c in classes:
        rep = as_permutation(c.representative)
        powers = [int(class_of[group.index[tuple((rep ** k).array_form)]]) for k in range(1, c.order + 1)]
        if powers[-1] != 0:
            raise ConstructionError(f"類 {c.name} 的 {c.order} 次方不是單位元")
        c.power_map = tuple(powers)
    logger.info(f"共軛類計算完成：{len(classes)} 類，偶類 {sum(c.is_even for c in classes)} 個")
    return classes, class_of


# ---- 作用與不動點 ----


def _apply_to_set(g: Perm, items) -> frozenset:
    return frozenset(g[i] for i in items)


def action_sets(incidence: IncidenceGraph, action: str):
    """作用集合：lines / tritangents / double_sixes（元素為直線索引的集合）"""
    action = action.replace("-", "_")
    if action == "lines":
        return tuple(frozenset((i,)) for i in range(N_LINES))
    if action == "tritangents":
        return tuple(frozenset(t) for t in enumerate_tritangents(incidence))
    if action == "double_sixes":
        return tuple(ds.key() for ds in enumerate_double_sixes(incidence))
    raise ValueError(f"未知的作用: {action}")


def _image(g: Perm, item):
    if item and isinstance(next(iter(item)), frozenset):
        return frozenset(_apply_to_set(g, half) for half in item)
    return _apply_to_set(g, item)


def count_fixed(g: Perm, sets) -> int:
    return sum(1 for item in sets if _image(g, item) == item)


class WeylContext:
    """群、共軛類與組合結構的共享快取；建構後不再變動"""

    def __init__(self, incidence: Optional[IncidenceGraph] = None):
        self.incidence = incidence or build_incidence()
        self.group = automorphism_group(self.incidence)
        self.classes, self.class_of_index = conjugacy_classes(self.group)
        self.tritangents = enumerate_tritangents(self.incidence)
        self.double_sixes: Tuple[DoubleSix, ...] = enumerate_double_sixes(self.incidence)
        self._by_poly = {c.char_poly: c for c in self.classes}
        self._by_name = {c.name: c for c in self.classes}
        self._fixed_cache: Dict[Tuple[int, str], int] = {}
        self._action_groups: Dict[str, PermutationGroup] = {}
        self._lock = threading.Lock()

    # ---- 查詢 ----

    def class_by_name(self, name: str) -> ConjugacyClass:
        key = name.replace(" ", "")
        if key not in self._by_name:
            raise KeyError(f"未知的共軛類: {name}")
        return self._by_name[key]

    def class_by_char_poly(self, poly: QPoly) -> Optional[ConjugacyClass]:
        return self._by_poly.get(poly)

    def class_of(self, g: Perm) -> ConjugacyClass:
        """以元素索引查表（g 必須在群內）"""
        idx = self.group.index.get(tuple(g))
        if idx is None:
            raise ValueError("置換不在 W(E6) 內")
        return self.classes[int(self.class_of_index[idx])]

    def identify_class(self, g: Perm) -> ConjugacyClass:
        """以 V6 特徵多項式辨識類"""
        if tuple(g) not in self.group:
            raise ValueError("置換不在 W(E6) 內")
        c = self._by_poly.get(element_char_poly(tuple(g)))
        if c is None:
            raise ConstructionError("特徵多項式不對應任何共軛類")
        return c

    # ---- 不動點 ----

    def fixed_points(self, c: ConjugacyClass, action: str) -> int:
        action = action.replace("-", "_")
        key = (c.index, action)
        with self._lock:
            if key not in self._fixed_cache:
                sets = action_sets(self.incidence, action)
                self._fixed_cache[key] = count_fixed(c.representative, sets)
            return self._fixed_cache[key]

    def subgroup_elements(self, generators: Sequence[Perm]) -> List[Perm]:
        for g in generators:
            if not self.group.contains(g):
                raise ValueError("生成元不在 W(E6) 內")
        return enumerate_elements([tuple(g) for g in generators])

    def subgroup_class_counts(self, generators: Sequence[Perm]) -> Tuple[int, ...]:
        """子群 H 在各共軛類中的元素個數 |H ∩ c|"""
        return _subgroup_class_counts(self, tuple(tuple(g) for g in generators))

    def coset_fixed_points(self, c: ConjugacyClass, generators: Sequence[Perm]) -> int:
        """c 的代表元在 W/H 左陪集上的不動點數 = (|W|/#c)·|H∩c|/|H|"""
        counts = self.subgroup_class_counts(generators)
        order = sum(counts)
        numerator = GROUP_ORDER * counts[c.index]
        if numerator % (c.size * order):
            raise ConstructionError("陪集不動點數不是整數")
        return numerator // (c.size * order)

    # ---- 穩定子 ----

    def action_group(self, action: str) -> PermutationGroup:
        """W 在 27 條直線與作用集合的不交併上的置換群

        直線作用直接回傳原群；其餘作用的點 27 + i 代表第 i 個三切面 / 雙六。
        """
        action = action.replace("-", "_")
        if action == "lines":
            return self.group.permutation_group
        with self._lock:
            if action not in self._action_groups:
                sets = action_sets(self.incidence, action)
                position = {item: i for i, item in enumerate(sets)}
                gens = []
                for g in self.group.generators:
                    induced = [N_LINES + position[_image(g, item)] for item in sets]
                    gens.append(Permutation(list(g) + induced))
                self._action_groups[action] = PermutationGroup(gens)
            return self._action_groups[action]

    def stabilizer_generators(self, action: str, item_index: int = 0) -> Tuple[Perm, ...]:
        """某個直線 / 三切面 / 雙六的穩定子生成元（限制回 27 條直線）"""
        action = action.replace("-", "_")
        if action not in ACTIONS:
            raise ValueError(f"未知的作用: {action}")
        point = item_index if action == "lines" else N_LINES + item_index
        stabilizer = self.action_group(action).stabilizer(point)
        gens = [tuple(p.array_form[:N_LINES]) for p in stabilizer.generators]
        reduced = reduce_generators(gens)
        logger.debug(f"{action} #{item_index} 的穩定子階數 {stabilizer.order()}，{len(reduced)} 個生成元")
        return reduced


@lru_cache(maxsize=64)
def _subgroup_class_counts(context: WeylContext, generators: Tuple[Perm, ...]) -> Tuple[int, ...]:
    if generators and PermutationGroup([as_permutation(g) for g in generators]).order() == GROUP_ORDER:
        return tuple(c.size for c in context.classes)
    counts = [0] * len(context.classes)
    for h in context.subgroup_elements(generators):
        counts[int(context.class_of_index[context.group.index[h]])] += 1
    return tuple(counts)


_context_instance: Optional[WeylContext] = None
_context_lock = threading.Lock()


def get_weyl_context() -> WeylContext:
    """取得 WeylContext 單例（第一次呼叫時建構群與共軛類）"""
    global _context_instance
    with _context_lock:
        if _context_instance is None:
            _context_instance = WeylContext()
    return _context_instance


def picard_lines_consistent() -> bool:
    """檢查 Picard 向量的配對與相交圖一致"""
    incidence = build_incidence()
    for a, b in combinations(range(N_LINES), 2):
        expected = 1 if incidence.adjacent(a, b) else 0
        if pairing(LINE_VECTORS[:, a], LINE_VECTORS[:, b]) != expected:
            return False
    return all(
        pairing(LINE_VECTORS[:, a], LINE_VECTORS[:, a]) == -1
        and pairing(LINE_VECTORS[:, a], CANONICAL_CLASS) == -1
        for a in range(N_LINES)
    )


def fixed_points(c: ConjugacyClass, action: str) -> int:
    return get_weyl_context().fixed_points(c, action)


def identify_class(g: Perm) -> ConjugacyClass:
    return get_weyl_context().identify_class(g)


def coset_fixed_points(c: ConjugacyClass, generators: Sequence[Perm]) -> int:
    return get_weyl_context().coset_fixed_points(c, generators)
