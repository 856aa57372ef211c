"""Renaissance-bank analytics: loan-book statistics, reconstruction, calibration."""

from .calibration import (
    BISECTION_STEPS,
    CANONICAL_TARGETS,
    CalibrationCell,
    CalibrationTarget,
    FOUNDING_CAPITAL,
    MODEL1_ROWS,
    MODEL2_REFERENCE_RATES,
    MODEL2_RETENTIONS,
    MODEL3_REFERENCE_RATES,
    Model1Result,
    RATE_BRACKET,
    REPRODUCIBLE_TOLERANCE_PCT,
    bisect_rate,
    calibrate_model1,
    calibrate_model2,
    calibrate_model3,
    distribution_years,
    model1_growth,
    model2_closed_form,
    model2_distributions,
    model2_end_capital,
    model2_required_rate,
    model3_distributions,
    model3_end_capital,
    model3_required_rate,
)
from .errors import (
    AllZero,
    BadRecord,
    BadTable,
    EmptyDataset,
    MediciError,
    NoBracket,
    NonPositiveCapital,
    Unsatisfiable,
)
from .records import (
    BUCKET_BOUNDS,
    BUCKET_CENTERS,
    CSV_HEADER,
    DatasetSummary,
    LoanDataset,
    LoanRecord,
    MAX_DURATION_DAYS,
    MIN_DURATION_DAYS,
    SEASONS,
    duration_buckets,
    effective_yield,
    mean_nominal_rate,
    monthly_coincidence,
    read_loans_csv,
    season_of,
    seasonality,
    summarize,
    transaction_yield,
    utilization,
    write_loans_csv,
)
from .reconstruct import (
    CANONICAL_SUMMARY,
    FOLD_YEAR,
    MOVE_BUDGET,
    reconstruct_dataset,
)

__all__ = [
    "AllZero",
    "BadRecord",
    "BadTable",
    "BISECTION_STEPS",
    "BUCKET_BOUNDS",
    "BUCKET_CENTERS",
    "CANONICAL_SUMMARY",
    "CANONICAL_TARGETS",
    "CalibrationCell",
    "CalibrationTarget",
    "CSV_HEADER",
    "DatasetSummary",
    "duration_buckets",
    "EmptyDataset",
    "effective_yield",
    "FOLD_YEAR",
    "FOUNDING_CAPITAL",
    "LoanDataset",
    "LoanRecord",
    "MAX_DURATION_DAYS",
    "mean_nominal_rate",
    "MediciError",
    "MIN_DURATION_DAYS",
    "MODEL1_ROWS",
    "MODEL2_REFERENCE_RATES",
    "MODEL2_RETENTIONS",
    "MODEL3_REFERENCE_RATES",
    "Model1Result",
    "model1_growth",
    "model2_closed_form",
    "model2_distributions",
    "model2_end_capital",
    "model2_required_rate",
    "model3_distributions",
    "model3_end_capital",
    "model3_required_rate",
    "monthly_coincidence",
    "MOVE_BUDGET",
    "NoBracket",
    "NonPositiveCapital",
    "RATE_BRACKET",
    "read_loans_csv",
    "reconstruct_dataset",
    "REPRODUCIBLE_TOLERANCE_PCT",
    "SEASONS",
    "season_of",
    "seasonality",
    "summarize",
    "transaction_yield",
    "Unsatisfiable",
    "utilization",
    "write_loans_csv",
    "bisect_rate",
    "calibrate_model1",
    "calibrate_model2",
    "calibrate_model3",
    "distribution_years",
]
