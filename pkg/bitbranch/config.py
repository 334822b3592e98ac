from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="BITBRANCH_", env_file=".env", extra="ignore")

    # Oracle settings
    default_width: int = 4
    default_step_bound: int = 100_000
    max_loop_unrollings: int = 10_000  # structured interpreter only; the explorer uses step bounds

    # Transformation settings
    fresh_prefix: str = "_bb"

    # Rule suite settings
    rule_check_widths: list[int] = [4, 6]

    # Fuzz campaign settings
    fuzz_count: int = 500
    fuzz_seed: int = 0

    log_level: str = "INFO"  # Can be DEBUG, INFO, WARNING, ERROR, CRITICAL


settings = Settings()
