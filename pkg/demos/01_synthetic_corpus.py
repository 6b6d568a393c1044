#!/usr/bin/env python3
"""Generate a small synthetic signature corpus and poke around in it.

Every signature is a pure function of (arguments, seed): run this twice and
you get byte-identical files.
"""

import tempfile
from pathlib import Path

from sigdtw import generate_corpus, load_corpus, write_corpus, write_signature

corpus = generate_corpus(n_users=3, n_genuine=5, n_skilled=5, seed=42)

for user in corpus.users:
    lengths = [len(s) for s in user.genuine]
    forgers = sorted({s.forger_id for s in user.skilled})
    print(
        f"user {user.user_id}: {len(user.genuine)} genuine "
        f"(lengths {min(lengths)}..{max(lengths)}), "
        f"{len(user.skilled)} forgeries by users {forgers}"
    )

sig = corpus.users[0].genuine[0]
print("\nfirst signature of user 1, serialized:")
print("\n".join(write_signature(sig).decode().splitlines()[:6]))
print(f"... ({len(sig)} samples total)")

# round trip through the on-disk layout
root = Path(tempfile.mkdtemp(prefix="sigdtw_demo_"))
written = write_corpus(corpus, root)
reloaded = load_corpus(root)
print(f"\nwrote {len(written)} files under {root}")
print("reloaded corpus identical:", reloaded == corpus)
