#!/usr/bin/env python3
"""
ToralKit - 토러스 G-스펙트럼 대수 모델 계산기
메인 진입점
"""

import sys
import os

# 프로젝트 경로 추가
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from src.cli import run


def main():
    """메인 함수"""
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
