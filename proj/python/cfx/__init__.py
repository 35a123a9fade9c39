# Copyright 2026 The Authors.
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

"""Counterfactual explanations under strategic behavior."""

import json

from cfx._cfx import *  # noqa: F401,F403
from cfx._cfx import __version__, run_experiment_json


def run_experiment(config):
    """Runs an experiment from a config dict or JSON string; returns CSV text."""
    if not isinstance(config, str):
        config = json.dumps(config)
    return run_experiment_json(config)
