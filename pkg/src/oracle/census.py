"""
F_2 上光滑立方曲面的完整普查

流程：軌道分割 → 每個軌道代表元做光滑性、F_{2^k} 點數（k = 1..6）、有理直線計數
→ 由點數還原 Frobenius 共軛類 → 依類累加軌道大小，與公式比對。
代表元的檢查彼此獨立，可用 ProcessPoolExecutor 平行處理；結果依軌道順序合併。
"""

import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import repeat
from typing import Dict, List, Optional, Sequence, Tuple

import yaml

from ..core.counting import absolute_count
from ..core.errors import CensusMismatchError, InconsistentCountsError, UsageError
from ..core.poly import charpoly_from_power_sums
from ..core.weyl import ConjugacyClass, WeylContext, get_weyl_context
from .cubic import CubicForm, count_rational_lines, is_smooth, point_counts
from .orbits import GL4_ORDER, OrbitTable, compute_orbits

logger = logging.getLogger(__name__)

MAX_POINT_DEGREE = 6


def classify_frobenius(
    counts: Sequence[int],
    q: int = 2,
    context: Optional[WeylContext] = None,
) -> ConjugacyClass:
    """由 n_1..n_6 還原 Frobenius 共軛類

    p_k = (n_k - q^{2k} - 1)/q^k - 1 為 V6 上 Frob^k 的跡，以 Newton 恆等式
    得到特徵多項式後查表。
    """
    context = context or get_weyl_context()
    if len(counts) < MAX_POINT_DEGREE:
        raise InconsistentCountsError(f"需要 {MAX_POINT_DEGREE} 個點數，收到 {len(counts)}")
    power_sums = []
    for k, n in enumerate(counts[:MAX_POINT_DEGREE], start=1):
        numerator = n - q ** (2 * k) - 1
        if numerator % q ** k:
            raise InconsistentCountsError(f"n_{k} = {n} 不符合 q^{{2k}} + t q^k + 1 的形式")
        p = numerator // q ** k - 1
        if abs(p) > 6:
            raise InconsistentCountsError(f"p_{k} = {p} 超出 [-6, 6]")
        power_sums.append(p)
    try:
        poly = charpoly_from_power_sums(power_sums, 6)
    except ValueError as exc:
        raise InconsistentCountsError(f"冪和 {power_sums} 無法還原特徵多項式: {exc}") from exc
    c = context.class_by_char_poly(poly)
    if c is None:
        raise InconsistentCountsError(f"特徵多項式 {poly} 不對應任何共軛類")
    return c


def examine_form(bits: int, smooth_depth: int = 6) -> Tuple[bool, Tuple[int, ...], int]:
    """單一三次型的原始資料：(光滑, n_1..n_6, 有理直線數)；工作行程使用"""
    form = CubicForm(int(bits))
    if not is_smooth(form, smooth_depth):
        return False, (), 0
    return True, point_counts(form, MAX_POINT_DEGREE), count_rational_lines(form)


@dataclass
class OrbitResult:
    representative: int
    size: int
    smooth: bool
    counts: Tuple[int, ...] = ()
    rational_lines: int = 0
    class_name: Optional[str] = None

    @property
    def hex(self) -> str:
        return CubicForm(self.representative).to_hex()


@dataclass
class ClassTally:
    name: str
    expected: int
    observed: int = 0
    orbits: List[str] = field(default_factory=list)
    orbit_sizes: List[int] = field(default_factory=list)

    @property
    def matched(self) -> bool:
        return self.expected == self.observed


@dataclass
class CensusResult:
    q: int
    smooth_depth: int
    orbit_count: int
    total_forms: int
    smooth_forms: int
    expected_total: int
    tallies: List[ClassTally]
    orbits: List[OrbitResult]
    mismatches: List[str] = field(default_factory=list)
    sampled_members: int = 0

    @property
    def matched_classes(self) -> int:
        return sum(1 for t in self.tallies if t.matched)

    @property
    def passed(self) -> bool:
        return not self.mismatches and self.matched_classes == len(self.tallies)


def _examine_all(representatives: List[int], jobs: int, smooth_depth: int, progress_every: int):
    results = []
    started = time.time()
    if jobs <= 1:
        iterator = (examine_form(bits, smooth_depth) for bits in representatives)
        executor = None
    else:
        executor = ProcessPoolExecutor(max_workers=jobs)
        iterator = executor.map(examine_form, representatives, repeat(smooth_depth), chunksize=4)
    try:
        for i, result in enumerate(iterator, start=1):
            results.append(result)
            if progress_every and i % progress_every == 0:
                logger.info(f"普查進度 {i}/{len(representatives)}，已用 {time.time() - started:.1f} 秒")
    finally:
        if executor is not None:
            executor.shutdown()
    return results


def check_orbit_constancy(
    table: OrbitTable,
    orbits: Sequence[OrbitResult],
    samples: int,
    smooth_depth: int = 6,
    seed: int = 0,
    context: Optional[WeylContext] = None,
) -> List[str]:
    """抽樣非代表元，確認光滑性與分類在軌道上不變；回傳不一致的描述"""
    context = context or get_weyl_context()
    rng = random.Random(seed)
    problems = []
    candidates = [i for i, o in enumerate(orbits) if o.size > 1]
    for _ in range(samples if candidates else 0):
        index = rng.choice(candidates)
        members = table.members(index)
        bits = int(members[rng.randrange(len(members))])
        while bits == orbits[index].representative:
            bits = int(members[rng.randrange(len(members))])
        smooth, counts, lines = examine_form(bits, smooth_depth)
        name = classify_frobenius(counts, context=context).name if smooth else None
        if smooth != orbits[index].smooth or name != orbits[index].class_name:
            problems.append(
                f"軌道 {orbits[index].hex} 的成員 {CubicForm(bits).to_hex()} 分類為 {name}，"
                f"代表元為 {orbits[index].class_name}"
            )
    return problems


def census(
    q: int = 2,
    jobs: int = 1,
    smooth_depth: int = 6,
    progress_every: int = 50,
    member_samples: int = 0,
    context: Optional[WeylContext] = None,
    orbit_table: Optional[OrbitTable] = None,
    strict: bool = False,
) -> CensusResult:
    """F_2 上所有三次型的普查，並與 absolute_count(c, 2) 逐類比對"""
    if q != 2:
        raise UsageError(f"只支援 q = 2 的普查，收到 q = {q}")
    context = context or get_weyl_context()
    table = orbit_table or compute_orbits()
    representatives = [int(r) for r in table.representatives]
    logger.info(f"開始普查：{len(representatives)} 個軌道代表元，jobs={jobs}，smooth_depth={smooth_depth}")

    raw = _examine_all(representatives, jobs, smooth_depth, progress_every)
    tallies: Dict[str, ClassTally] = {
        c.name: ClassTally(c.name, absolute_count(c, q)) for c in context.classes
    }
    mismatches: List[str] = []
    orbits: List[OrbitResult] = []
    smooth_forms = 0
    for bits, size, (smooth, counts, lines) in zip(representatives, table.sizes, raw):
        result = OrbitResult(bits, int(size), smooth, tuple(counts), lines)
        if smooth:
            smooth_forms += int(size)
            try:
                c = classify_frobenius(counts, q, context)
            except InconsistentCountsError as exc:
                mismatches.append(f"軌道 {result.hex}: {exc}")
                orbits.append(result)
                continue
            result.class_name = c.name
            tally = tallies[c.name]
            tally.observed += int(size)
            tally.orbits.append(result.hex)
            tally.orbit_sizes.append(int(size))
            expected_lines = context.fixed_points(c, "lines")
            if lines != expected_lines:
                mismatches.append(
                    f"軌道 {result.hex}: 有理直線 {lines} 條，類 {c.name} 應固定 {expected_lines} 條"
                )
            logger.debug(f"軌道 {result.hex} (大小 {size}) -> {c.name}，n = {counts}")
        orbits.append(result)

    for tally in tallies.values():
        if not tally.matched:
            mismatches.append(
                f"類 {tally.name}: 普查 {tally.observed}，公式 {tally.expected}，軌道 {tally.orbits}"
            )

    sampled = 0
    if member_samples:
        problems = check_orbit_constancy(table, orbits, member_samples, smooth_depth, context=context)
        mismatches.extend(problems)
        sampled = member_samples

    result = CensusResult(
        q=q,
        smooth_depth=smooth_depth,
        orbit_count=len(representatives),
        total_forms=table.total_forms,
        smooth_forms=smooth_forms,
        expected_total=sum(t.expected for t in tallies.values()),
        tallies=[tallies[c.name] for c in context.classes],
        orbits=orbits,
        mismatches=mismatches,
        sampled_members=sampled,
    )
    status = "PASS" if result.passed else "FAIL"
    logger.info(
        f"普查完成 {status}：光滑三次型 {smooth_forms}（公式 {result.expected_total}），"
        f"{result.matched_classes}/{len(result.tallies)} 類一致"
    )
    if strict and not result.passed:
        raise CensusMismatchError("普查與公式不符", offending_orbits=mismatches)
    return result


def write_fixtures(result: CensusResult, path: str) -> int:
    """把光滑軌道代表元與分類寫成 YAML 夾具檔，回傳筆數"""
    entries = [
        {
            "form": orbit.hex,
            "class": orbit.class_name,
            "orbit_size": orbit.size,
            "point_counts": list(orbit.counts),
            "rational_lines": orbit.rational_lines,
        }
        for orbit in result.orbits
        if orbit.smooth and orbit.class_name
    ]
    with open(path, "w", encoding="utf-8") as file:
        yaml.safe_dump({"q": result.q, "orbits": entries}, file, allow_unicode=True, sort_keys=False)
    logger.info(f"已寫入 {len(entries)} 筆普查夾具至 {path}")
    return len(entries)


def expected_smooth_orbit_mass(context: Optional[WeylContext] = None) -> int:
    """Σ_c #c·poly_c(2)·#PGL(4,F_2)/#W"""
    context = context or get_weyl_context()
    return sum(absolute_count(c, 2) for c in context.classes)


__all__ = [
    "GL4_ORDER",
    "CensusResult",
    "ClassTally",
    "OrbitResult",
    "census",
    "check_orbit_constancy",
    "classify_frobenius",
    "examine_form",
    "expected_smooth_orbit_mass",
    "write_fixtures",
]
