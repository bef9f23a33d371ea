# 測試模組初始化