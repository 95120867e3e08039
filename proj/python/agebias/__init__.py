# Copyright 2026 The agebias Authors
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

"""Age-biased preferential and uniform attachment processes."""

from agebias._core import (
    ConfigError,
    Process,
    __version__,
    coupling_check,
    experiment_json,
    limit_cdf,
    limit_moment,
    r_uam_matching,
    rho_pam_matching,
    run_trials,
    simulate_csv,
    splitmix64,
    step_law,
    trial_seed,
    verify_martingale,
    verify_steplaw,
    verify_stirling,
    w_independent,
)

__all__ = [
    "ConfigError",
    "Process",
    "__version__",
    "coupling_check",
    "experiment_json",
    "limit_cdf",
    "limit_moment",
    "r_uam_matching",
    "rho_pam_matching",
    "run_trials",
    "simulate_csv",
    "splitmix64",
    "step_law",
    "trial_seed",
    "verify_martingale",
    "verify_steplaw",
    "verify_stirling",
    "w_independent",
]
