# Copyright 2026 The qmeasure Authors

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Indirect quantum measurement models and intersubjectivity checks."""

import json

from ._core import (
    DimensionError,
    Error,
    InvariantError,
    JointDistribution,
    JointScenario,
    MeasurementProcess,
    NonCommutingMetersError,
    NotHermitianError,
    OitReport,
    ParameterError,
    Povm,
    PreconditionError,
    Pvm,
    ReproducibilityReport,
    SampleResult,
    SchemaError,
    agreement_probability,
    as_povm,
    born_povm,
    born_pvm,
    check_reproducibility,
    compose,
    dilation_model,
    induced_povm,
    is_projective,
    joint_distribution,
    meter_distribution,
    pvm_from_observable,
    sample_outcomes,
    trine_povm,
    unsharp_qubit_povm,
    verify_oit,
    von_neumann_model,
)
from ._core import run_scenario as _run_scenario

__version__ = "0.1.0"


def run_scenario(scenario):
    """Run a scenario (dict or JSON text) and return the report as a dict."""
    text = scenario if isinstance(scenario, str) else json.dumps(scenario)
    return json.loads(_run_scenario(text))
