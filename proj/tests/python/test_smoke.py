# SPDX-License-Identifier: Apache-2.0
import os
import subprocess

import numpy as np
import pytest

import riskey


def test_version():
    assert riskey.__version__ == "0.1.0"


def test_overhead():
    rep = riskey.overhead("enhanced", 16, 4, 256)
    assert rep.slots == 272
    assert abs(rep.reduction_vs_lskrf - 0.93359375) < 1e-12
    with pytest.raises(ValueError):
        riskey.overhead("foo", 16, 4, 256)


def test_separate_estimate_noise_free():
    real = riskey.draw_channels(4, 4, 16, 3)
    pilot = riskey.build_pilot(4, 1.0)
    plan = riskey.subgroup_plan(16, 4, 4)
    schedule = riskey.ris_schedule(plan, 0)
    blocks = [
        riskey.GroupObservation(riskey.simulate_rx(riskey.effective_channel(real, cfg), pilot, 0.0, g), cfg)
        for g, cfg in enumerate(schedule)
    ]
    est = riskey.estimate_separate(blocks, pilot, plan)
    truth = riskey.effective_channel(real, riskey.RisConfig.all_on(16))
    assert isinstance(est.H_T_hat, np.ndarray)
    assert np.linalg.norm(est.H_T_hat - truth) <= 1e-9 * np.linalg.norm(truth)
    assert est.slots_used == 16


def test_infeasible_group_raises():
    real = riskey.draw_channels(2, 2, 4, 1)
    pilot = riskey.build_pilot(2, 1.0)
    cfg = riskey.RisConfig.all_on(4)
    obs = riskey.simulate_rx(riskey.effective_channel(real, cfg), pilot, 0.0, 0)
    with pytest.raises(riskey.FeasibilityError):
        riskey.estimate_subgroup(obs, pilot, cfg)


def test_sweep_and_csv():
    cfg = riskey.parse_config("nt = 2\nnr = 2\nn = 4\nsnr_db = 0, 20\ntrials = 20\nestimators = proposed, lskrf\n")
    records = riskey.run_sweep(cfg)
    assert len(records) == 4
    assert all(r.feasible for r in records)
    csv = riskey.records_to_csv(records)
    assert csv.splitlines()[0].startswith("nt,nr,n,snr_db,estimator")
    assert riskey.records_to_csv(riskey.run_sweep(cfg)) == csv


@pytest.mark.skipif("RISKEY_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_overhead():
    out = subprocess.run(
        [os.environ["RISKEY_CLI"], "overhead", "--nt", "16", "--nr", "4", "--n", "256", "--out", "-"],
        check=True, capture_output=True, text=True,
    ).stdout
    assert "enhanced,16,4,256,272," in out
