from pydantic_settings import BaseSettings
from pydantic import ConfigDict


class Settings(BaseSettings):
    # Budget guards
    MAX_A1: int = 12
    MAX_REGISTER_WIDTH: int = 8
    EXP_SERIES_CAP_FACTOR: int = 4

    # Seeded point checks
    DEFAULT_SEED: int = 20240601
    POINT_CHECKS: int = 5
    POINT_RESAMPLE_LIMIT: int = 20

    # Evaluation
    VERIFY_SCALAR_ENDO: bool = True

    # Sweeps / guessing
    SWEEP_WORKERS: int = 1
    HELD_OUT_POINTS: int = 2

    LOG_LEVEL: str = "INFO"

    model_config = ConfigDict(env_file=".env", extra="ignore")


settings = Settings()
