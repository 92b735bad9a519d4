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

import json
import math

import numpy as np
import pytest

import qdcavity as qd

SMALL = [
    "system.n_pl_levels=3",
    "system.n_ph_levels=2",
    "integrator.dt_fs=0.2",
    "integrator.t_end_fs=60",
    "integrator.record_every_fs=2",
]


def test_builtins_listed():
    names = [name for name, _ in qd.builtin_scenarios()]
    assert names[:1] == ["fig2"]
    assert {"fig3", "fig4", "fig5", "fig5_inset", "fig6", "fig7"} <= set(names)


def test_config_overrides():
    cfg = qd.config("fig3", ["system.g_mev=7.5"])
    assert cfg["system"]["g_mev"] == 7.5
    with pytest.raises(qd.ParseError):
        qd.config("fig2", ["system.not_a_key=1"])
    with pytest.raises(ValueError):
        qd.config("no-such-scenario")


def test_simulate_columns():
    cols = qd.simulate("fig2", SMALL)
    assert list(cols)[0] == "t_fs"
    t = cols["t_fs"]
    assert t[0] == 0.0 and t[-1] == pytest.approx(60.0)
    assert np.all(np.diff(t) > 0)
    assert np.max(cols["trace_err"]) < 1e-8
    assert np.all((cols["C"] >= 0) & (cols["C"] <= 1))
    # Nobody is excited before the pulse arrives, so g2 is undefined.
    assert math.isnan(cols["g2_12"][0])
    # Photon concurrence is reported for two photon levels.
    assert not np.any(np.isnan(cols["C_ph"]))


def test_run_writes_files(tmp_path):
    out = qd.run("fig6", ["integrator.t_end_fs=0", f"output.dir={tmp_path}"])
    assert out["error"] is None
    assert (tmp_path / "fig6.csv").exists()
    summary = json.loads(out["summary_json"])
    assert summary["scenario"] == "fig6"


def test_concurrence_examples():
    psi = np.array([0, 1, -1, 0]) / math.sqrt(2)
    assert qd.concurrence(np.outer(psi, psi.conj())) == pytest.approx(1.0, abs=1e-12)
    product = np.zeros((4, 4), dtype=complex)
    product[0, 0] = 1.0
    assert qd.concurrence(product) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValueError):
        qd.concurrence(np.eye(3))


def test_restricted_family_relations():
    rho = qd.restricted_state(1.0, 0.0)
    assert np.trace(rho).real == pytest.approx(1.0)
    assert qd.concurrence(rho) == pytest.approx(0.5, abs=1e-12)
    assert qd.g12_from_cph(1.0) == pytest.approx(0.0)
    assert qd.unnormalized_g12(0.25) == pytest.approx(0.75)


def test_derived_numbers():
    assert qd.purcell_rate_mev(30.0, 150.0) == pytest.approx(24.0, rel=1e-14)
    assert qd.effective_xi(1.0, 23.65, 150.0) == pytest.approx(0.268, abs=1e-3)
