"""Experiment protocols: enrollment, closed-set identification, verification.

Each user is enrolled on their first ``train_count`` genuine signatures; the
next ``test_count`` genuine signatures form the test set.  Identification
matches every test signature against every model and predicts the user with
the smallest model distance.  Verification turns distances into scores by
flipping their sign: genuine scores come from a user's own model, random-
forgery impostor scores from everyone else's tests, and skilled-forgery
impostor scores from the dedicated forgeries of each user.  All three runs
share one (models x tests) distance table per configuration.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal, NamedTuple, Sequence

import numpy as np

from .corpus import CorpusManifest, CorpusUser, Signature
from .features import DeltaConfig, FeatureMatrix, extract_features
from .matcher import model_distance

CONDITION_RANDOM = "random"
CONDITION_SKILLED = "skilled"
Condition = Literal["random", "skilled"]


@dataclass(eq=False)
class UserModel:
    """The enrolled templates of one user, all extracted with one config."""

    user_id: int
    templates: list[FeatureMatrix]
    delta_config: DeltaConfig

    def __post_init__(self):
        for t in self.templates:
            if t.user_id != self.user_id:
                raise ValueError("template user does not match model user")
            if t.kind != "genuine":
                raise ValueError("models enroll genuine signatures only")
            if t.delta_config != self.delta_config:
                raise ValueError("templates must share the model's delta config")


class IdentificationTrial(NamedTuple):
    true_user: int
    predicted_user: int
    distance: float


class GenuineScore(NamedTuple):
    user_id: int
    sample_index: int
    score: float


class ImpostorScore(NamedTuple):
    claimed_user_id: int
    source_user_id: int
    sample_index: int
    score: float


@dataclass(eq=False)
class ScoreSet:
    """Labeled genuine/impostor scores for one condition and window setting."""

    condition: Condition
    delta_points: int
    genuine: list[GenuineScore]
    impostor: list[ImpostorScore]
    skipped_users: tuple[int, ...] = ()


@dataclass(eq=False)
class ProtocolRun:
    """Results of all three protocols over one corpus and configuration."""

    trials: list[IdentificationTrial]
    random_scores: ScoreSet
    skilled_scores: ScoreSet


def _genuine_by_index(user: CorpusUser) -> dict[int, Signature]:
    return {sig.sample_index: sig for sig in user.genuine}


def enroll(
    corpus: CorpusManifest,
    user_id: int,
    cfg: DeltaConfig,
    train_count: int = 5,
) -> UserModel:
    """Build a user model from genuine signatures 1..train_count."""
    if train_count < 1:
        raise ValueError("train_count must be >= 1")
    by_index = _genuine_by_index(corpus.user(user_id))
    templates = []
    for index in range(1, train_count + 1):
        if index not in by_index:
            raise ValueError(
                f"user {user_id} has no genuine signature {index}; "
                f"cannot enroll {train_count} templates"
            )
        templates.append(extract_features(by_index[index], cfg))
    return UserModel(user_id=user_id, templates=templates, delta_config=cfg)


def identify(models: Sequence[UserModel], test: FeatureMatrix) -> tuple[int, float]:
    """Predict the enrolled user with the minimum model distance.

    Ties go to the smallest user_id, which keeps results independent of the
    model list's order.
    """
    if not models:
        raise ValueError("no models to identify against")
    for model in models:
        if model.delta_config != test.delta_config:
            raise ValueError("model and test delta configs differ")
    best_user, best_distance = None, np.inf
    for model in sorted(models, key=lambda m: m.user_id):
        d = model_distance(model, test)
        if d < best_distance:
            best_user, best_distance = model.user_id, d
    return best_user, float(best_distance)


# ---------------------------------------------------------------------------
# shared distance-table machinery

class _TestItem(NamedTuple):
    user_id: int
    sample_index: int
    features: FeatureMatrix


def _test_items(
    corpus: CorpusManifest, cfg: DeltaConfig, train_count: int, test_count: int
) -> list[_TestItem]:
    items = []
    for user in corpus.users:
        by_index = _genuine_by_index(user)
        for index in range(train_count + 1, train_count + test_count + 1):
            if index not in by_index:
                raise ValueError(
                    f"user {user.user_id} has no genuine signature {index}; "
                    f"need {train_count} train + {test_count} test"
                )
            items.append(
                _TestItem(user.user_id, index, extract_features(by_index[index], cfg))
            )
    return items


def _compute_cells(tasks, jobs: int | None) -> list[float]:
    """Evaluate (model, features) distance tasks, optionally across threads.

    Results are collected by task order, never completion order, so the
    output is identical for any worker count.
    """
    if jobs == 1:
        return [model_distance(m, f) for m, f in tasks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda mf: model_distance(mf[0], mf[1]), tasks))


def _distance_table(
    models: Sequence[UserModel], tests: Sequence[_TestItem], jobs: int | None
) -> np.ndarray:
    tasks = [(model, item.features) for model in models for item in tests]
    values = _compute_cells(tasks, jobs)
    return np.array(values).reshape(len(models), len(tests))


def _trials_from_table(
    models: Sequence[UserModel], tests: Sequence[_TestItem], table: np.ndarray
) -> list[IdentificationTrial]:
    trials = []
    user_ids = [m.user_id for m in models]
    for j, item in enumerate(tests):
        column = table[:, j]
        # ties break to the smallest user_id regardless of model order
        i = min(range(len(models)), key=lambda k: (column[k], user_ids[k]))
        trials.append(IdentificationTrial(item.user_id, user_ids[i], float(column[i])))
    return trials


def _random_scores_from_table(
    models: Sequence[UserModel],
    tests: Sequence[_TestItem],
    table: np.ndarray,
    cfg: DeltaConfig,
) -> ScoreSet:
    index_of = {m.user_id: i for i, m in enumerate(models)}
    genuine = []
    impostor = []
    for j, item in enumerate(tests):
        genuine.append(
            GenuineScore(item.user_id, item.sample_index, -float(table[index_of[item.user_id], j]))
        )
        for i, model in enumerate(models):
            if model.user_id == item.user_id:
                continue
            impostor.append(
                ImpostorScore(
                    model.user_id, item.user_id, item.sample_index, -float(table[i, j])
                )
            )
    return ScoreSet(
        condition=CONDITION_RANDOM,
        delta_points=cfg.points,
        genuine=genuine,
        impostor=impostor,
    )


def _skilled_scores(
    corpus: CorpusManifest,
    models: Sequence[UserModel],
    genuine: list[GenuineScore],
    cfg: DeltaConfig,
    jobs: int | None,
) -> ScoreSet:
    model_of = {m.user_id: m for m in models}
    tasks = []
    meta = []
    skipped = []
    for user in corpus.users:
        if not user.skilled:
            skipped.append(user.user_id)
            continue
        for sig in user.skilled:
            tasks.append((model_of[user.user_id], extract_features(sig, cfg)))
            meta.append((user.user_id, sig.forger_id, sig.sample_index))
    if skipped:
        warnings.warn(
            f"users without skilled forgeries skipped: {skipped}", stacklevel=3
        )
    values = _compute_cells(tasks, jobs)
    impostor = [
        ImpostorScore(claimed, source, index, -float(d))
        for (claimed, source, index), d in zip(meta, values)
    ]
    return ScoreSet(
        condition=CONDITION_SKILLED,
        delta_points=cfg.points,
        genuine=genuine,
        impostor=impostor,
        skipped_users=tuple(skipped),
    )


# ---------------------------------------------------------------------------
# public protocol runs

def run_all(
    corpus: CorpusManifest,
    cfg: DeltaConfig,
    train_count: int = 5,
    test_count: int = 5,
    jobs: int | None = None,
) -> ProtocolRun:
    """Run identification plus both verification protocols in one pass.

    Feature extraction and the (models x tests) distance table are computed
    once and shared; the skilled run reuses the random run's genuine scores.
    """
    models = [enroll(corpus, uid, cfg, train_count) for uid in corpus.user_ids]
    tests = _test_items(corpus, cfg, train_count, test_count)
    table = _distance_table(models, tests, jobs)
    trials = _trials_from_table(models, tests, table)
    random_scores = _random_scores_from_table(models, tests, table, cfg)
    skilled_scores = _skilled_scores(corpus, models, random_scores.genuine, cfg, jobs)
    return ProtocolRun(trials=trials, random_scores=random_scores, skilled_scores=skilled_scores)


def run_identification(
    corpus: CorpusManifest,
    cfg: DeltaConfig,
    train_count: int = 5,
    test_count: int = 5,
    jobs: int | None = None,
) -> list[IdentificationTrial]:
    """Match each user's test signatures against all models."""
    models = [enroll(corpus, uid, cfg, train_count) for uid in corpus.user_ids]
    tests = _test_items(corpus, cfg, train_count, test_count)
    table = _distance_table(models, tests, jobs)
    return _trials_from_table(models, tests, table)


def run_verification_random(
    corpus: CorpusManifest,
    cfg: DeltaConfig,
    train_count: int = 5,
    test_count: int = 5,
    jobs: int | None = None,
) -> ScoreSet:
    """Genuine scores against own models, impostor scores against all others."""
    models = [enroll(corpus, uid, cfg, train_count) for uid in corpus.user_ids]
    tests = _test_items(corpus, cfg, train_count, test_count)
    table = _distance_table(models, tests, jobs)
    return _random_scores_from_table(models, tests, table, cfg)


def run_verification_skilled(
    corpus: CorpusManifest,
    cfg: DeltaConfig,
    train_count: int = 5,
    test_count: int = 5,
    jobs: int | None = None,
) -> ScoreSet:
    """Genuine scores as in the random run; impostors are the skilled forgeries.

    The genuine side repeats the random run's own-model distances exactly
    (same pure computation), without recomputing the impostor table.
    """
    models = [enroll(corpus, uid, cfg, train_count) for uid in corpus.user_ids]
    tests = _test_items(corpus, cfg, train_count, test_count)
    model_of = {m.user_id: m for m in models}
    own = _compute_cells([(model_of[t.user_id], t.features) for t in tests], jobs)
    genuine = [
        GenuineScore(item.user_id, item.sample_index, -float(d))
        for item, d in zip(tests, own)
    ]
    return _skilled_scores(corpus, models, genuine, cfg, jobs)
