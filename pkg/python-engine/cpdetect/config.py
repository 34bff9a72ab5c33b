# cpdetect/config.py

import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

from .errors import InputError

# .env 파일 로드
load_dotenv()


class Config:
    """검출 엔진 / 시뮬레이션 공통 설정"""

    # 경로
    BASE_DIR = Path(__file__).parent.parent
    PRESETS_DIR = BASE_DIR / "presets"

    # 실행 환경 (.env 에서 덮어쓰기 가능, worker 수는 workers() 에서 읽음)
    DEFAULT_WORKERS = 1
    LOG_LEVEL = os.getenv("CPDETECT_LOG_LEVEL", "WARNING")

    # 검정 기본값
    DEFAULT_GAMMA = 2.0
    DEFAULT_SEED = 20240917
    DEFAULT_TRIALS = 100

    # 수치 처리
    CLAMP_FLOOR = 1e-300
    EXTENDED_PRECISION_N = 100_000  # 이 값을 넘는 n 은 long double 누적합 사용

    # 격자 (desk-scale δ cap)
    DELTA_CAP = 0.25
    DELTA_CAP_BELOW_N = 10_000

    # 캘리브레이션 역변환 시 n 상한
    N_CLAMP = 2 ** 62

    # 혼합 prior 의 β̄ = β₁ + w·(β − β₁)
    BETA_BAR_WEIGHT = 0.6

    # trial 배치 크기 (joblib 작업 단위)
    BATCH_SIZE = 25

    @classmethod
    def workers(cls, override: Optional[int] = None) -> int:
        """명시값 > 환경변수 > 기본값 순으로 worker 수를 결정"""
        if override is not None:
            return max(1, int(override))
        env_value = os.getenv("CPDETECT_WORKERS", "").strip()
        if not env_value:
            return cls.DEFAULT_WORKERS
        try:
            value = int(env_value)
        except ValueError:
            raise InputError(f"CPDETECT_WORKERS must be a positive integer, got '{env_value}'") from None
        if value < 1:
            raise InputError(f"CPDETECT_WORKERS must be a positive integer, got '{env_value}'")
        return value
