"""Enrollment, identification and verification protocol tests."""

import numpy as np
import pytest

from sigdtw import (
    CorpusManifest,
    CorpusUser,
    DeltaConfig,
    Signature,
    UserModel,
    enroll,
    extract_features,
    identification_rate,
    identify,
    model_distance,
    run_all,
    run_identification,
    run_verification_random,
    run_verification_skilled,
)

CFG = DeltaConfig(points=11)

# regression fixture: 10-user synthetic corpus, seed 7, windows of 11 points
EXPECTED_RATE_10_USERS = 0.96


class TestEnroll:
    def test_first_five_templates(self, corpus10):
        model = enroll(corpus10, 3, CFG, train_count=5)
        assert [t.sample_index for t in model.templates] == [1, 2, 3, 4, 5]
        assert all(t.kind == "genuine" for t in model.templates)

    def test_single_template(self, corpus10):
        model = enroll(corpus10, 1, CFG, train_count=1)
        assert len(model.templates) == 1

    def test_insufficient_genuine_rejected(self, corpus10):
        with pytest.raises(ValueError, match="cannot enroll"):
            enroll(corpus10, 1, CFG, train_count=11)

    def test_model_invariants_enforced(self, corpus10):
        templates = [extract_features(corpus10.users[0].genuine[0], CFG)]
        with pytest.raises(ValueError, match="user"):
            UserModel(user_id=2, templates=templates, delta_config=CFG)
        other_cfg = DeltaConfig(points=3)
        with pytest.raises(ValueError, match="delta config"):
            UserModel(user_id=1, templates=templates, delta_config=other_cfg)


@pytest.fixture(scope="module")
def models(corpus5):
    return [enroll(corpus5, uid, CFG) for uid in corpus5.user_ids]


class TestIdentify:
    def test_template_identifies_its_user_with_zero_distance(self, models):
        user, distance = identify(models, models[2].templates[0])
        assert user == models[2].user_id and distance == 0.0

    def test_single_model_always_wins(self, corpus5, models):
        test = extract_features(corpus5.users[4].genuine[9], CFG)
        user, _ = identify(models[:1], test)
        assert user == models[0].user_id

    def test_exact_tie_breaks_to_lower_user_id(self, models):
        from dataclasses import replace

        test = models[0].templates[0]
        # two models with identical templates: both sit at distance exactly 0
        clone_high = UserModel(
            user_id=99,
            templates=[replace(t, user_id=99) for t in models[0].templates],
            delta_config=CFG,
        )
        clone_low = UserModel(
            user_id=1,
            templates=[replace(t, user_id=1) for t in models[0].templates],
            delta_config=CFG,
        )
        user, distance = identify([clone_high, clone_low], test)
        assert (user, distance) == (1, 0.0)

    def test_empty_model_list_rejected(self, models):
        with pytest.raises(ValueError):
            identify([], models[0].templates[0])

    def test_config_mismatch_rejected(self, corpus5, models):
        test = extract_features(corpus5.users[0].genuine[5], DeltaConfig(points=3))
        with pytest.raises(ValueError, match="config"):
            identify(models, test)


class TestIdentification:
    def test_trial_count_and_fixture_rate(self, corpus10):
        trials = run_identification(corpus10, CFG, jobs=4)
        assert len(trials) == 50  # 10 users x 5 tests
        assert identification_rate(trials) == EXPECTED_RATE_10_USERS

    def test_tests_duplicating_training_score_perfectly(self, corpus5):
        users = []
        for user in corpus5.users:
            copies = [
                Signature(
                    user_id=s.user_id,
                    sample_index=s.sample_index + 5,
                    kind=s.kind,
                    forger_id=None,
                    sample_rate_hz=s.sample_rate_hz,
                    samples=s.samples.copy(),
                )
                for s in user.genuine[:5]
            ]
            users.append(
                CorpusUser(user_id=user.user_id, genuine=user.genuine[:5] + copies)
            )
        duplicated = CorpusManifest(users=users)
        trials = run_identification(duplicated, CFG, jobs=2)
        assert identification_rate(trials) == 1.0
        assert all(t.distance == 0.0 for t in trials)

    def test_insufficient_test_data_rejected(self, corpus2):
        with pytest.raises(ValueError, match="need"):
            run_identification(corpus2, CFG, train_count=5, test_count=6)


class TestVerificationRandom:
    def test_tiny_counts(self, corpus2):
        scores = run_verification_random(corpus2, CFG, train_count=5, test_count=1)
        assert len(scores.genuine) == 2
        assert len(scores.impostor) == 2  # 2 users x 1 other model x 1 test

    def test_counts_formula(self, corpus5):
        scores = run_verification_random(corpus5, CFG, test_count=3, jobs=4)
        assert len(scores.genuine) == 5 * 3
        assert len(scores.impostor) == 5 * 4 * 3
        assert scores.condition == "random" and scores.delta_points == 11

    def test_scores_are_negated_distances(self, corpus2):
        scores = run_verification_random(corpus2, CFG, test_count=2)
        models = {uid: enroll(corpus2, uid, CFG) for uid in corpus2.user_ids}
        feats = {
            (u.user_id, s.sample_index): extract_features(s, CFG)
            for u in corpus2.users
            for s in u.genuine
        }
        for entry in scores.genuine:
            expected = -model_distance(models[entry.user_id], feats[(entry.user_id, entry.sample_index)])
            assert entry.score == expected
        for entry in scores.impostor:
            expected = -model_distance(
                models[entry.claimed_user_id],
                feats[(entry.source_user_id, entry.sample_index)],
            )
            assert entry.score == expected

    def test_all_scores_finite(self, corpus5):
        scores = run_verification_random(corpus5, CFG, test_count=2, jobs=4)
        values = [s.score for s in scores.genuine] + [s.score for s in scores.impostor]
        assert np.isfinite(values).all()


class TestVerificationSkilled:
    def test_counts_and_shared_genuine(self, corpus5):
        random_run = run_verification_random(corpus5, CFG, jobs=4)
        skilled_run = run_verification_skilled(corpus5, CFG, jobs=4)
        assert len(skilled_run.impostor) == 5 * 10  # every forgery vs its target
        assert skilled_run.genuine == random_run.genuine
        assert skilled_run.condition == "skilled"

    def test_forgery_identical_to_template_scores_zero(self, corpus2):
        user = corpus2.users[0]
        forgery = Signature(
            user_id=user.user_id,
            sample_index=1,
            kind="skilled",
            forger_id=2,
            sample_rate_hz=100,
            samples=user.genuine[0].samples.copy(),
        )
        crafted = CorpusManifest(
            users=[
                CorpusUser(user_id=1, genuine=list(corpus2.users[0].genuine), skilled=[forgery]),
                CorpusUser(user_id=2, genuine=list(corpus2.users[1].genuine), skilled=[]),
            ]
        )
        with pytest.warns(UserWarning, match="skipped"):
            scores = run_verification_skilled(crafted, CFG)
        assert scores.impostor[0].score == 0.0  # worst case: accepted at any threshold
        assert scores.skipped_users == (2,)

    def test_skilled_scores_sit_between_random_and_genuine(self, corpus5):
        run = run_all(corpus5, CFG, jobs=4)
        genuine = np.mean([s.score for s in run.random_scores.genuine])
        random_imp = np.mean([s.score for s in run.random_scores.impostor])
        skilled_imp = np.mean([s.score for s in run.skilled_scores.impostor])
        assert random_imp < skilled_imp < genuine


class TestRunAll:
    def test_matches_standalone_runs(self, corpus2):
        run = run_all(corpus2, CFG, test_count=2, jobs=2)
        assert run.trials == run_identification(corpus2, CFG, test_count=2)
        standalone = run_verification_random(corpus2, CFG, test_count=2)
        assert run.random_scores.genuine == standalone.genuine
        assert run.random_scores.impostor == standalone.impostor
        skilled = run_verification_skilled(corpus2, CFG, test_count=2)
        assert run.skilled_scores.impostor == skilled.impostor

    def test_deterministic_across_job_counts(self, corpus5):
        one = run_all(corpus5, CFG, test_count=2, jobs=1)
        eight = run_all(corpus5, CFG, test_count=2, jobs=8)
        assert one.trials == eight.trials
        assert one.random_scores.genuine == eight.random_scores.genuine
        assert one.random_scores.impostor == eight.random_scores.impostor
        assert one.skilled_scores.impostor == eight.skilled_scores.impostor
