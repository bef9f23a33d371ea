"""
共用 fixture

群、共軛類與特徵標表在整個測試 session 只建構一次。
"""

import sys
from pathlib import Path

import pytest

# 確保可以 import src 模組
project_root = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(project_root))

from src.core.chars import load_character_table
from src.core.weyl import get_weyl_context


@pytest.fixture(scope="session")
def context():
    """W(E6) 與 27 條線的共享快取"""
    return get_weyl_context()


@pytest.fixture(scope="session")
def table(context):
    """內建資料建立的特徵標表"""
    return load_character_table()


@pytest.fixture(scope="session")
def classes(context):
    """依名稱查詢共軛類"""
    return {c.name: c for c in context.classes}
