class Config:
    # connected sets enumerated per graph before it is skipped
    BUDGET = 2**28
    JOBS = 1
    CHUNKSIZE = 64
    DECIMALS = 6
    OUTPUT_FORMAT = "csv"
    EXHAUSTIVE_MAX_ORDER = 6
    RANDOM_COUNT = 1
    LOG_LEVEL = "WARNING"


class TestingConfig(Config):
    TESTING = True
    BUDGET = 2**20
    CHUNKSIZE = 8
