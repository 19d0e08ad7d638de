import json

import numpy as np
import pytest

from aodepletion import scene as scene_io
from aodepletion.campaigns import CAMPAIGNS, run_campaign
from aodepletion.cli import main
from aodepletion.errors import InputError
from aodepletion.geometry import ConfigurationTriplet
from aodepletion.sampling import contact_config, random_config

SMALL = {"tightness": 200, "monotonicity": 200, "descartes": 200, "dichotomy": 100,
         "plane-reduction": 5, "inclusion-exclusion": 2, "wall": 20, "oracle": 20}


@pytest.mark.parametrize("name", sorted(CAMPAIGNS))
def test_small_campaigns_pass(name):
    rep = run_campaign(name, SMALL[name], seed=7)
    assert rep.passed, rep.to_text()
    assert rep.n_configs == SMALL[name]


def test_report_is_deterministic():
    a = run_campaign("dichotomy", 50, seed=3).to_text()
    b = run_campaign("dichotomy", 50, seed=3, workers=3).to_text()
    assert a == b


def test_unknown_campaign():
    with pytest.raises(InputError):
        run_campaign("nope", 1)


def test_failure_record_reproduces(monkeypatch, tmp_path, capsys):
    import aodepletion.campaigns as c

    def always_fail(rng, seed, i):
        cfg = random_config(rng)
        return 1.0, c._failure(seed, i, cfg.balls, 1.0, "forced", 0.1)

    monkeypatch.setitem(c.CAMPAIGNS, "tightness", always_fail)
    rep = run_campaign("tightness", 2, seed=4)
    assert not rep.passed and "result: FAIL" in rep.to_text()
    rec = rep.failures[1]
    assert rec["seed"] == 4 and rec["index"] == 1 and rec["delta"] == 0.1
    scene = {"dimension": 2, "bodies": [
        {"type": "ball", "params": {"center": b["center"], "radius": b["radius"]}} for b in rec["balls"]]}
    p = tmp_path / "f.json"
    p.write_text(json.dumps(scene))
    assert main(["delta-max", "--scene", str(p)]) == 0
    # the same configuration regenerates from (seed, index) alone
    again = random_config(np.random.default_rng([4, 1]))
    assert [b.radius for b in again] == [b["radius"] for b in rec["balls"]]
    capsys.readouterr()
    monkeypatch.setitem(c.CAMPAIGNS, "tightness", always_fail)
    assert main(["verify", "tightness", "--n-configs", "1"]) == 1


class TestSampling:
    def test_zero_gaps_give_contact(self):
        cfg = random_config(np.random.default_rng(0), (0.5, 3), (0, 0))
        from aodepletion.deltamax import pairwise_thresholds
        np.testing.assert_allclose(pairwise_thresholds(cfg).values, 0, atol=1e-12)

    def test_unit_radii_contact_is_extremal(self):
        from aodepletion.deltamax import CRITICAL_RATIO, delta_max
        cfg = random_config(np.random.default_rng(1), (1, 1), (0, 0), dimension=3)
        assert cfg.radii == (1.0, 1.0, 1.0)
        assert delta_max(cfg).delta_max == pytest.approx(CRITICAL_RATIO, abs=1e-12)

    @pytest.mark.parametrize("dim", [2, 3, 4])
    def test_valid_triplets(self, dim):
        for i in range(50):
            cfg = random_config(np.random.default_rng(i), (0.1, 10), (0, 1), dimension=dim)
            assert isinstance(cfg, ConfigurationTriplet) and cfg.dimension == dim
            assert all(0.1 <= r <= 10 for r in cfg.radii)

    def test_contact_config(self):
        cfg = contact_config([1, 2, 3])
        d = [np.linalg.norm(cfg[i].center - cfg[j].center) for i, j in [(0, 1), (0, 2), (1, 2)]]
        np.testing.assert_allclose(d, [3, 4, 5])
