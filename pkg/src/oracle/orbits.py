"""
PGL(4, F_2) = GL(4, F_2) 在三次型上的軌道

兩個生成元（基本平移 x0 -> x0 + x1 與循環置換 x_i -> x_{i+1}）誘導的代換映射
在 2^20 個係數向量上構成一張有向圖，其弱連通分量即為軌道。
每個軌道以數值最小的係數向量作為代表。
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Set, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from ..core.errors import DataIntegrityError
from .cubic import (
    FULL_MASK,
    N_VARS,
    CubicForm,
    apply_matrix,
    apply_tables,
    substitution_matrix,
    substitution_tables,
)

logger = logging.getLogger(__name__)

GL4_ORDER = 20160
N_FORMS = 1 << 20

Matrix = Tuple[Tuple[int, ...], ...]

TRANSVECTION: Matrix = ((1, 1, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
CYCLE: Matrix = tuple(tuple(1 if j == (i + 1) % N_VARS else 0 for j in range(N_VARS)) for i in range(N_VARS))
GL4_GENERATORS: Tuple[Matrix, ...] = (TRANSVECTION, CYCLE)


def _to_rows(g: Matrix) -> Tuple[int, ...]:
    return tuple(sum(bit << j for j, bit in enumerate(row)) for row in g)


def _multiply_rows(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
    out = []
    for row in a:
        value = 0
        for j in range(N_VARS):
            if (row >> j) & 1:
                value ^= b[j]
        out.append(value)
    return tuple(out)


def matrix_group_order(generators: Sequence[Matrix] = GL4_GENERATORS) -> int:
    """生成元在 GL(4, F_2) 中生成的子群階數（廣度優先閉包）"""
    gens = [_to_rows(g) for g in generators]
    identity = tuple(1 << i for i in range(N_VARS))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = _multiply_rows(s, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


@dataclass
class OrbitTable:
    """非零三次型的軌道分割

    labels[bits] 為該型所在軌道的索引（0 號係數向量標為 -1），
    軌道依代表元由小到大編號。
    """
    labels: np.ndarray
    representatives: np.ndarray
    sizes: np.ndarray

    def __len__(self) -> int:
        return len(self.representatives)

    @property
    def total_forms(self) -> int:
        return int(self.sizes.sum())

    def orbit_index(self, form: CubicForm) -> int:
        return int(self.labels[form.bits])

    def representative(self, form: CubicForm) -> CubicForm:
        return CubicForm(int(self.representatives[self.orbit_index(form)]))

    def members(self, index: int) -> np.ndarray:
        return np.flatnonzero(self.labels == index)


def compute_orbits(generators: Sequence[Matrix] = GL4_GENERATORS) -> OrbitTable:
    """把 2^20 - 1 個非零三次型分成 GL(4, F_2) 軌道"""
    order = matrix_group_order(generators)
    if order != GL4_ORDER:
        raise DataIntegrityError(f"生成元只生成階數 {order} 的子群，應為 {GL4_ORDER}")

    nodes = np.arange(1, N_FORMS, dtype=np.int64)
    sources, targets = [], []
    for g in generators:
        tables = substitution_tables(substitution_matrix(g))
        sources.append(nodes)
        targets.append(apply_tables(tables, nodes))
    src = np.concatenate(sources)
    dst = np.concatenate(targets)
    graph = csr_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(N_FORMS, N_FORMS))
    count, raw_labels = connected_components(graph, directed=True, connection="weak")

    minimum = np.full(count, N_FORMS, dtype=np.int64)
    np.minimum.at(minimum, raw_labels[nodes], nodes)
    zero_component = raw_labels[0]
    valid = np.flatnonzero(np.arange(count) != zero_component)
    ranked = valid[np.argsort(minimum[valid])]
    relabel = np.full(count, -1, dtype=np.int64)
    relabel[ranked] = np.arange(len(ranked))
    labels = relabel[raw_labels].astype(np.int32)

    representatives = minimum[ranked]
    sizes = np.bincount(labels[nodes], minlength=len(ranked)).astype(np.int64)
    if int(sizes.sum()) != N_FORMS - 1:
        raise DataIntegrityError(f"軌道大小總和 {int(sizes.sum())} ≠ {N_FORMS - 1}")
    bad = [int(s) for s in sizes if GL4_ORDER % int(s)]
    if bad:
        raise DataIntegrityError(f"軌道大小 {bad[:5]} 不整除 {GL4_ORDER}")
    logger.info(f"軌道計算完成：{len(ranked)} 個 GL(4,F_2) 軌道，覆蓋 {int(sizes.sum())} 個三次型")
    return OrbitTable(labels=labels, representatives=representatives, sizes=sizes)


def orbit_of(form: CubicForm, generators: Sequence[Matrix] = GL4_GENERATORS) -> Set[int]:
    """單一三次型的軌道（直接廣度優先閉包）"""
    matrices = [substitution_matrix(g) for g in generators]
    seen = {form.bits}
    frontier: List[CubicForm] = [form]
    while frontier:
        nxt = []
        for f in frontier:
            for m in matrices:
                image = apply_matrix(m, f)
                if image.bits not in seen:
                    seen.add(image.bits)
                    nxt.append(image)
        frontier = nxt
    if not all(0 < b <= FULL_MASK for b in seen):
        raise DataIntegrityError("軌道中出現零型")
    return seen
