#!/usr/bin/env python3
"""Feature extraction and DTW matching on one enrolled user.

Distances should come out ordered: repetitions of the same signature are
closest, skilled forgeries (same shape, different dynamics) sit in the
middle, and other users' signatures are farthest.
"""

import numpy as np

from sigdtw import (
    DeltaConfig,
    FEATURE_COLUMNS,
    dtw,
    enroll,
    extract_features,
    generate_corpus,
    model_distance,
)

corpus = generate_corpus(n_users=4, n_genuine=10, n_skilled=10, seed=7)
cfg = DeltaConfig(points=11)

target = corpus.users[0]
feats = extract_features(target.genuine[0], cfg)
print(f"feature matrix: {feats.rows.shape[0]} rows x {feats.rows.shape[1]} columns")
print("columns:", ", ".join(FEATURE_COLUMNS))
print("per-column std (z-scored):", np.round(feats.rows.std(axis=0, ddof=1), 3))

reference = extract_features(target.genuine[1], cfg)
print("\npairwise DTW, user 1 genuine #1 as the reference:")
print(f"  vs own genuine #2   : {dtw(reference, feats).normalized:.3f}")
forged = extract_features(target.skilled[0], cfg)
print(f"  vs forgery of user 1: {dtw(reference, forged).normalized:.3f}")
other = extract_features(corpus.users[1].genuine[0], cfg)
print(f"  vs user 2 genuine   : {dtw(reference, other).normalized:.3f}")

model = enroll(corpus, user_id=1, cfg=cfg, train_count=5)
print("\nenrolled 5-template model for user 1; distances to fresh signatures:")
for label, sig in [
    ("own genuine #6", target.genuine[5]),
    ("forgery of user 1", target.skilled[3]),
    ("user 3 genuine", corpus.users[2].genuine[5]),
]:
    d = model_distance(model, extract_features(sig, cfg))
    print(f"  {label:18s}: {d:.3f}")
