"""Online signature recognition with derivative-window features and DTW.

The pipeline: load or synthesize a corpus of pen trajectories, expand each
signature into an 8-column normalized feature matrix whose derivative columns
use a configurable window length, match with length-normalized dynamic time
warping, and evaluate identification and verification accuracy as that window
length varies.
"""

__version__ = "0.1.0"

from .corpus import (
    CHANNEL_RANGES,
    CorpusError,
    CorpusManifest,
    CorpusUser,
    Sample,
    Signature,
    SignatureFormatError,
    demo_signal,
    generate_corpus,
    load_corpus,
    parse_signature,
    write_corpus,
    write_signature,
)
from .evaluation import (
    DcfParams,
    DetCurve,
    EvalReport,
    det_points,
    eer,
    evaluate_run,
    identification_rate,
    min_dcf,
    sweep,
)
from .features import (
    DEFAULT_WINDOW_POINTS,
    FEATURE_COLUMNS,
    DeltaConfig,
    FeatureMatrix,
    centroid_center,
    delta,
    delta_delta,
    delta_regression,
    extract_features,
    simple_diff,
    zscore,
)
from .matcher import DtwResult, dtw, dtw_oracle, model_distance
from .protocol import (
    GenuineScore,
    IdentificationTrial,
    ImpostorScore,
    ProtocolRun,
    ScoreSet,
    UserModel,
    enroll,
    identify,
    run_all,
    run_identification,
    run_verification_random,
    run_verification_skilled,
)

__all__ = [
    "CHANNEL_RANGES",
    "CorpusError",
    "CorpusManifest",
    "CorpusUser",
    "DcfParams",
    "DEFAULT_WINDOW_POINTS",
    "DeltaConfig",
    "DetCurve",
    "DtwResult",
    "EvalReport",
    "FEATURE_COLUMNS",
    "FeatureMatrix",
    "GenuineScore",
    "IdentificationTrial",
    "ImpostorScore",
    "ProtocolRun",
    "Sample",
    "ScoreSet",
    "Signature",
    "SignatureFormatError",
    "UserModel",
    "centroid_center",
    "delta",
    "delta_delta",
    "delta_regression",
    "demo_signal",
    "det_points",
    "dtw",
    "dtw_oracle",
    "eer",
    "enroll",
    "evaluate_run",
    "extract_features",
    "generate_corpus",
    "identification_rate",
    "identify",
    "load_corpus",
    "min_dcf",
    "model_distance",
    "parse_signature",
    "run_all",
    "run_identification",
    "run_verification_random",
    "run_verification_skilled",
    "simple_diff",
    "sweep",
    "write_corpus",
    "write_signature",
    "zscore",
]
