"""
pytest 공통 설정: 저장소 루트를 import 경로에 추가 (main.py 와 동일한 방식)
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
