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

"""Python bindings for the qagen dataset generator."""

import json
import os

_packaged_data = os.path.join(os.path.dirname(__file__), "data")
if "QAGEN_DATA_DIR" not in os.environ and os.path.isdir(_packaged_data):
    os.environ["QAGEN_DATA_DIR"] = _packaged_data

from ._core import (  # noqa: F401
    QagenError,
    bleu,
    classify_lf,
    corpus_summary,
    data_dir,
    jaccard,
    lf_equal,
    parse_lf,
    preprocess_entity,
    run,
    subset_accuracy,
    synth_corpus,
    token_f1,
    tokenize,
    validate_lf,
)
from . import _core


def generate(corpus, **kwargs):
    """Returns (records, report); records are dicts in output field order."""
    lines, report = _core.generate(corpus, **kwargs)
    return [json.loads(l) for l in lines], report


def split(records, strategy="ql2", ratio=0.8, seed=42, **kwargs):
    lines = [json.dumps(r) for r in records]
    train, test = _core.split(lines, strategy, ratio, seed, **kwargs)
    return [json.loads(l) for l in train], [json.loads(l) for l in test]


def eval_answers(predictions, gold_records, em_rule="endpoint"):
    return _core.eval_answers(predictions, [json.dumps(r) for r in gold_records], em_rule)
