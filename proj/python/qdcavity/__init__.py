# Copyright 2026 The qdcavity Authors
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
"""Python access to the qdcavity simulator."""

import json

from ._core import (
    CapacityError,
    NumericBlowup,
    ParseError,
    __version__,
    bell_fidelity_sq,
    builtin_scenarios,
    concurrence,
    config_json,
    effective_xi,
    g12_from_cph,
    g12_small_x,
    purcell_rate_mev,
    restricted_state,
    run,
    simulate,
    unnormalized_g12,
)


def config(scenario, overrides=()):
    """Resolved configuration of a builtin name or JSON file, as a dict."""
    return json.loads(config_json(scenario, list(overrides)))


__all__ = [
    "CapacityError",
    "NumericBlowup",
    "ParseError",
    "__version__",
    "bell_fidelity_sq",
    "builtin_scenarios",
    "concurrence",
    "config",
    "config_json",
    "effective_xi",
    "g12_from_cph",
    "g12_small_x",
    "purcell_rate_mev",
    "restricted_state",
    "run",
    "simulate",
    "unnormalized_g12",
]
