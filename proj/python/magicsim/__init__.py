# Copyright 2026 The magicsim Authors
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
"""Stabilizer simulation with magic-state inputs."""

import json
import os

from . import _core
from ._core import (ValidationError, constrained, copies_lower_bound, estimate, extent, lambda_plus,
                    named_state, noisy_state, robustness_1q, robustness_lp, sample, stab_norm)

__all__ = [
    "Problem", "ValidationError", "constrained", "copies_lower_bound", "estimate", "extent", "lambda_plus",
    "named_state", "noisy_state", "problem", "robustness_1q", "robustness_lp", "sample", "stab_norm",
]

Problem = _core.Problem


def problem(source):
    """Build a problem from a dict, a JSON string, or a path to a JSON file."""
    if isinstance(source, dict):
        return _core.parse_problem(json.dumps(source))
    if isinstance(source, os.PathLike) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        return _core.load_problem(os.fspath(source))
    return _core.parse_problem(source)
