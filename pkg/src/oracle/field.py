"""
F_{2^k}（k ≤ 6）的對數 / 反對數表

元素以多項式基底的整數表示（bit i 為 x^i 的係數），加法為 XOR，
乘法查 k 固定的 Conway 多項式所建的 exp / log 表，並展開成 q×q 的 numpy 乘法表。
"""

import logging
from functools import lru_cache
from typing import Dict

import numpy as np

logger = logging.getLogger(__name__)

# Conway 多項式（皆為本原多項式），bit i 為 x^i 的係數
CONWAY_POLYNOMIALS: Dict[int, int] = {
    1: 0b11,          # x + 1
    2: 0b111,         # x^2 + x + 1
    3: 0b1011,        # x^3 + x + 1
    4: 0b10011,       # x^4 + x + 1
    5: 0b100101,      # x^5 + x^2 + 1
    6: 0b1011011,     # x^6 + x^4 + x^3 + x + 1
}

MAX_DEGREE = max(CONWAY_POLYNOMIALS)


class BinaryField:
    """F_{2^k} 的查表實作"""

    def __init__(self, k: int):
        if k not in CONWAY_POLYNOMIALS:
            raise ValueError(f"只支援 1 ≤ k ≤ {MAX_DEGREE}，收到 k={k}")
        self.k = k
        self.order = 1 << k
        self.modulus = CONWAY_POLYNOMIALS[k]
        self.exp_table = np.zeros(2 * (self.order - 1), dtype=np.int64)
        self.log_table = np.full(self.order, -1, dtype=np.int64)
        self._init_tables()
        self.mul_table = self._build_mul_table()

    def _init_tables(self) -> None:
        x = 1
        for i in range(self.order - 1):
            if self.log_table[x] != -1:
                raise ValueError(f"x 在 F_{self.order} 中不是本原元")
            self.exp_table[i] = x
            self.log_table[x] = i
            x <<= 1
            if x & self.order:
                x ^= self.modulus
        self.exp_table[self.order - 1:] = self.exp_table[: self.order - 1]

    def _build_mul_table(self) -> np.ndarray:
        n = self.order
        table = np.zeros((n, n), dtype=np.uint8)
        logs = self.log_table[1:]
        table[1:, 1:] = self.exp_table[(logs[:, None] + logs[None, :]) % (n - 1)]
        return table

    def mul(self, a, b):
        """純量或 numpy 陣列的逐元素乘法"""
        return self.mul_table[a, b]

    def square(self, a):
        return self.mul_table[a, a]

    def power(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        return int(self.exp_table[(int(self.log_table[a]) * e) % (self.order - 1)])

    def inverse(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 沒有乘法反元素")
        return int(self.exp_table[(-int(self.log_table[a])) % (self.order - 1)])

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.uint8)

    def self_test(self, samples: int = 2000, seed: int = 0) -> None:
        """檢查 Frobenius 可加性、結合律與分配律抽樣、反元素"""
        elems = self.elements()
        a, b = np.meshgrid(elems, elems, indexing="ij")
        if not np.array_equal(self.square(a ^ b), self.square(a) ^ self.square(b)):
            raise ValueError(f"F_{self.order} 的 Frobenius 不可加")
        rng = np.random.default_rng(seed)
        x, y, z = (rng.integers(0, self.order, samples) for _ in range(3))
        if not np.array_equal(self.mul(self.mul(x, y), z), self.mul(x, self.mul(y, z))):
            raise ValueError(f"F_{self.order} 乘法不滿足結合律")
        if not np.array_equal(self.mul(x, y ^ z), self.mul(x, y) ^ self.mul(x, z)):
            raise ValueError(f"F_{self.order} 不滿足分配律")
        for v in range(1, self.order):
            if self.mul(v, self.inverse(v)) != 1:
                raise ValueError(f"F_{self.order} 中 {v} 的反元素錯誤")


@lru_cache(maxsize=None)
def get_field(k: int) -> BinaryField:
    field = BinaryField(k)
    field.self_test()
    logger.debug(f"F_{field.order} 查表建立完成")
    return field
