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


import json
from fractions import Fraction

import pytest

import agebias


def test_constants():
    assert agebias.r_uam_matching(1) == pytest.approx(2 / 3, abs=1e-12)
    assert 1 - agebias.rho_pam_matching(2, "0") == pytest.approx(0.6457513110645905, abs=1e-10)
    w = agebias.w_independent(10)
    assert (1 - w) ** 10 == pytest.approx(w, abs=1e-11)


def test_limit_law():
    assert agebias.limit_moment("PAM", 1, 2, "0", 1) == pytest.approx(4 / 15)
    assert agebias.limit_cdf("UAM", 1, 3, "0", 0.5) == pytest.approx(0.75)
    with pytest.raises(ValueError):
        agebias.limit_moment("PAM", 1, 1, "0", 1)


def test_step_law():
    law = [Fraction(s) for s in agebias.step_law(2, 2, "0", 1, 2)]
    assert law == [Fraction(7, 12), Fraction(1, 3), Fraction(1, 12)]


def test_exact_suites():
    assert agebias.verify_stirling()["passed"]
    result = agebias.verify_steplaw(4, 2)
    assert result["passed"] and result["cases"] > 0


def test_process_star():
    p = agebias.Process("PAM", 1, "-1", seed=3)
    p.run_to(500)
    deg = p.degrees()
    assert p.t == 500
    assert deg[0] == 501
    assert set(deg[1:]) == {1}


def test_step_and_seeds():
    p = agebias.Process("UAM", 2, seed=1)
    assert p.step() == [(1, False), (1, False)]
    assert agebias.trial_seed(3, 0) == 13757245211066428519
    assert agebias.splitmix64(0) == 0xE220A8397B1DCDAF


def test_coupling():
    coarse, fine = agebias.coupling_check(2, "1/2", 200, 2, 5)
    assert 2 * coarse >= fine


def test_simulate_and_trials():
    cfg = json.dumps({"model": "PAM", "m": 2, "delta": "1/2", "t_max": 200, "seed": 4, "root": 2})
    csv = agebias.simulate_csv(cfg)
    assert csv.startswith("t,metric,value\n")
    assert csv == agebias.simulate_csv(cfg)
    cfg = json.dumps({"model": "UAM", "m": 1, "t_max": 500, "seed": 4, "root": 2, "trials": 8})
    samples = agebias.run_trials(cfg)
    assert len(samples) == 8 and all(0 < s <= 1 for s in samples)
    report = json.loads(agebias.experiment_json(cfg))
    assert report["samples"] == samples
    assert "wall_clock_seconds" not in report


def test_config_error():
    with pytest.raises(agebias.ConfigError, match="observer"):
        agebias.run_trials(json.dumps({"m": 1, "t_max": 5, "seed": 1, "observer": "x"}))
