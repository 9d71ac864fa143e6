# Copyright 2026 The biasprobe Authors
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


"""Python bindings for the biasprobe engine."""

import json

from biasprobe._core import (
    BiasprobeError,
    __version__,
    atomic_mutants,
    intersectional_mutants,
    inv_check,
    run,
    split_sentences,
    tolerant_table_comp,
)
from biasprobe._core import metrics_json as _metrics_json


def metrics(records):
    """Metrics recomputed from a records.jsonl file, as a dict."""
    return json.loads(_metrics_json(str(records)))


__all__ = [
    "BiasprobeError",
    "__version__",
    "atomic_mutants",
    "intersectional_mutants",
    "inv_check",
    "metrics",
    "run",
    "split_sentences",
    "tolerant_table_comp",
]
