#!/usr/bin/env python3
# Copyright 2026 The qagen Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the small deterministic word-vector fixture used by HM-2 tests.

Vectors are pseudo-random (seeded by the token's SHA-256), so they carry no
meaning; real pretrained vectors are a user-supplied asset.
"""

import argparse
import hashlib
import struct

LEAD = "([{\"'"
TRAIL = "?.,!;:)]}\"'"


def tokens(text):
    for raw in text.split():
        if raw.startswith("|") and raw.endswith("|") and len(raw) > 2:
            yield raw.lower()
            continue
        tok = raw.lstrip(LEAD)
        trail = []
        while tok and tok[-1] in TRAIL:
            trail.append(tok[-1])
            tok = tok[:-1]
        if tok:
            yield tok.lower()
        yield from reversed(trail)


def vector(token, dim):
    out = []
    counter = 0
    while len(out) < dim:
        digest = hashlib.sha256(f"{token}#{counter}".encode()).digest()
        for i in range(0, len(digest), 4):
            (v,) = struct.unpack(">I", digest[i:i + 4])
            out.append(v / 2**32 * 2 - 1)
        counter += 1
    return out[:dim]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("templates")
    ap.add_argument("out")
    ap.add_argument("--dim", type=int, default=16)
    args = ap.parse_args()
    vocab = set()
    with open(args.templates, encoding="utf-8") as f:
        for line in f:
            if not line.strip() or line.startswith("#"):
                continue
            vocab.update(tokens(line.rstrip("\n").split("\t")[2]))
    with open(args.out, "w", encoding="utf-8") as f:
        for tok in sorted(vocab):
            f.write(tok + " " + " ".join(f"{x:.6f}" for x in vector(tok, args.dim)) + "\n")


if __name__ == "__main__":
    main()
