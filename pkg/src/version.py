__version__ = "1.0.0"
APP_NAME = "立方曲面算術統計"
